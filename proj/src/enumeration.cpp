#include "jacobi/enumeration.hpp"

#include <map>

#include "jacobi/error.hpp"

namespace jacobi {

unsigned parse_filters(std::string_view text) {
  unsigned mask = kFilterAll;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('+', start);
    if (end == std::string_view::npos) end = text.size();
    auto word = text.substr(start, end - start);
    if (word == "connected") {
      mask |= kFilterConnected;
    } else if (word == "trees") {
      mask |= kFilterTrees;
    } else if (word == "nonzero") {
      mask |= kFilterNonzero;
    } else if (word != "all") {
      throw Error(ErrorCode::Parse, std::string(word), "unknown filter '" + std::string(word) + "'");
    }
    start = end + 1;
  }
  return mask;
}

namespace {

struct WorkItem {
  int t = 0;
  std::vector<int> counts;
};

void compositions(int remaining, int slots, std::vector<int>& cur, const WorkItem& base,
                  std::vector<WorkItem>& out) {
  if (slots == 1) {
    cur.push_back(remaining);
    out.push_back({base.t, cur});
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur.push_back(k);
    compositions(remaining - k, slots - 1, cur, base, out);
    cur.pop_back();
  }
}

std::vector<WorkItem> work_items(const EnumerationSpec& spec) {
  if (!spec.skeleton || spec.skeleton->size() == 0) {
    throw Error(ErrorCode::EmptySlot, {}, "enumeration needs a non-empty skeleton");
  }
  if (spec.degree < 1) {
    throw Error(ErrorCode::NonPositiveDegree, std::to_string(spec.degree), "degree must be >= 1");
  }
  if (spec.degree > spec.max_degree) {
    throw Error(ErrorCode::DegreeTooLargeForBudget, std::to_string(spec.degree),
                "degree " + std::to_string(spec.degree) + " exceeds budget " +
                    std::to_string(spec.max_degree));
  }
  std::vector<WorkItem> items;
  for (int t = 0; t <= 2 * spec.degree - 1; ++t) {
    const int u = 2 * spec.degree - t;
    std::vector<int> cur;
    compositions(u, spec.skeleton->size(), cur, {t, {}}, items);
  }
  return items;
}

using ClassMap = std::map<std::string, EnumeratedClass>;

// Matchings are built in traversal order: the lowest unmatched half-edge
// pairs with a later half-edge already in play, or opens the next vertex at
// its first slot. Every diagram whose components all touch the skeleton is
// reached this way.
class Generator {
 public:
  Generator(const SkeletonPtr& skeleton, const WorkItem& item, ClassMap& out)
      : skeleton_(skeleton), counts_(item.counts), out_(out) {
    for (int c : counts_) u_ += c;
    H_ = u_ + 3 * item.t;
    partner_.assign(H_, -1);
  }

  void run() { extend(0, u_); }

 private:
  void extend(int h, int open) {
    while (h < open && partner_[h] >= 0) ++h;
    if (h == open) {
      if (open == H_) emit();
      return;
    }
    for (int j = h + 1; j < open; ++j) {
      if (partner_[j] >= 0) continue;
      partner_[h] = j;
      partner_[j] = h;
      extend(h + 1, open);
      partner_[h] = partner_[j] = -1;
    }
    if (open < H_) {
      partner_[h] = open;
      partner_[open] = h;
      extend(h + 1, open + 3);
      partner_[h] = partner_[open] = -1;
    }
  }

  void emit() {
    DiagramParts parts;
    parts.skeleton = skeleton_;
    parts.legs.resize(counts_.size());
    int label = 0;
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      for (int i = 0; i < counts_[c]; ++i) parts.legs[c].push_back(label++);
    }
    for (int k = u_; k < H_; k += 3) parts.vertices.push_back({k, k + 1, k + 2});
    parts.partner = partner_;
    Diagram d = Diagram::from_parts(std::move(parts));
    CanonicalDiagram cd = canonicalize(d);
    auto it = out_.find(cd.digest);
    if (it != out_.end()) return;
    EnumeratedClass cls;
    cls.canonical = {cd.digest, cd.sign == 0 ? 0 : 1};
    cls.connected = is_connected(d);
    cls.tree = is_tree_diagram(d);
    out_.emplace(cd.digest, std::move(cls));
  }

  SkeletonPtr skeleton_;
  std::vector<int> counts_;
  ClassMap& out_;
  int u_ = 0;
  int H_ = 0;
  std::vector<int> partner_;
};

bool keep(const EnumeratedClass& c, unsigned filters) {
  if ((filters & kFilterConnected) && !c.connected) return false;
  if ((filters & kFilterTrees) && !c.tree) return false;
  if ((filters & kFilterNonzero) && c.canonical.sign == 0) return false;
  return true;
}

std::vector<EnumeratedClass> collect(const std::vector<ClassMap>& parts, unsigned filters) {
  ClassMap merged;
  for (const auto& m : parts) merged.insert(m.begin(), m.end());
  std::vector<EnumeratedClass> out;
  for (auto& [digest, cls] : merged) {
    if (keep(cls, filters)) out.push_back(cls);
  }
  return out;
}

}  // namespace

std::vector<EnumeratedClass> enumerate_classes(const EnumerationSpec& spec) {
  const auto items = work_items(spec);
  std::vector<ClassMap> parts(items.size());
  const long n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    Generator(spec.skeleton, items[i], parts[i]).run();
  }
  return collect(parts, spec.filters);
}

std::vector<EnumeratedClass> enumerate_classes_serial(const EnumerationSpec& spec) {
  const auto items = work_items(spec);
  std::vector<ClassMap> parts(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    Generator(spec.skeleton, items[i], parts[i]).run();
  }
  return collect(parts, spec.filters);
}

std::vector<CanonicalDiagram> enumerate_diagrams(const EnumerationSpec& spec) {
  std::vector<CanonicalDiagram> out;
  for (auto& c : enumerate_classes(spec)) out.push_back(std::move(c.canonical));
  return out;
}

}  // namespace jacobi
