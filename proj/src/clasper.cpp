#include "jacobi/clasper.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "jacobi/canonical.hpp"

namespace jacobi {

namespace {

bool is_leaf_kind(ClasperPartKind k) {
  return k == ClasperPartKind::disk_leaf || k == ClasperPartKind::annulus_leaf;
}

}  // namespace

std::vector<ClasperIssue> validate_clasper(const Clasper& c) {
  std::vector<ClasperIssue> issues;
  auto report = [&](ErrorCode code, const std::string& token, const std::string& msg) {
    issues.push_back({code, token, msg});
  };
  if (!c.skeleton) {
    report(ErrorCode::EmptySlot, c.name, "clasper has no skeleton");
    return issues;
  }

  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    const auto& p = c.parts[i];
    if (!index.emplace(p.name, static_cast<int>(i)).second) {
      report(ErrorCode::DuplicateSlot, p.name, "part '" + p.name + "' declared twice");
    }
    if (p.kind == ClasperPartKind::annulus_leaf || p.kind == ClasperPartKind::box) {
      report(ErrorCode::NotStrict, p.name,
             "part '" + p.name + "' is " + (p.kind == ClasperPartKind::box ? "a box" : "an annulus leaf") +
                 "; strict claspers have only disk-leaves, nodes and edges");
    }
    for (const auto& s : p.slots) {
      if (c.skeleton->index_of(s) < 0) {
        report(ErrorCode::EmptySlot, p.name,
               "part '" + p.name + "' meets unknown component '" + s + "'");
      }
    }
    if (!is_leaf_kind(p.kind) && !p.slots.empty()) {
      report(ErrorCode::BadValence, p.name, "only leaves may meet the skeleton");
    }
  }

  const int n = static_cast<int>(c.parts.size());
  std::vector<int> ends(n, 0);
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& e : c.edges) {
    auto ia = index.find(e.a), ib = index.find(e.b);
    bool ok = true;
    for (const auto* end : {&e.a, &e.b}) {
      if (!index.count(*end)) {
        report(ErrorCode::BadValence, *end, "edge end '" + *end + "' names no part");
        ok = false;
      }
    }
    if (!ok) continue;
    ++ends[ia->second];
    ++ends[ib->second];
    root[find(ia->second)] = find(ib->second);
  }

  int leaves = 0, nodes = 0;
  for (int i = 0; i < n; ++i) {
    const auto& p = c.parts[i];
    int want = p.kind == ClasperPartKind::node ? 3 : p.kind == ClasperPartKind::box ? -1 : 1;
    if (want > 0 && ends[i] != want) {
      report(ErrorCode::BadValence, p.name,
             "part '" + p.name + "' has " + std::to_string(ends[i]) + " edge ends, expected " +
                 std::to_string(want));
    }
    if (p.kind == ClasperPartKind::disk_leaf) ++leaves;
    if (p.kind == ClasperPartKind::node) ++nodes;
  }

  std::vector<char> has_leaf(n, 0);
  for (int i = 0; i < n; ++i) {
    if (c.parts[i].kind == ClasperPartKind::disk_leaf) has_leaf[find(i)] = 1;
  }
  if (leaves == 0) {
    report(ErrorCode::LeglessComponent, c.name, "clasper has no disk-leaf");
  } else {
    for (int i = 0; i < n; ++i) {
      if (find(i) == i && !has_leaf[i]) {
        report(ErrorCode::LeglessComponent, c.parts[i].name,
               "the component of '" + c.parts[i].name + "' has no disk-leaf");
      }
    }
  }
  if ((leaves + nodes) % 2 != 0) {
    report(ErrorCode::NonIntegerDegree, c.name,
           "disk-leaves + nodes = " + std::to_string(leaves + nodes) + " is odd");
  }
  return issues;
}

void require_valid(const Clasper& c) {
  auto issues = validate_clasper(c);
  if (!issues.empty()) throw Error(issues.front().code, issues.front().token, issues.front().message);
}

bool is_simple(const Clasper& c) {
  for (const auto& p : c.parts) {
    if (p.kind == ClasperPartKind::disk_leaf && p.slots.size() != 1) return false;
  }
  return true;
}

int degree(const Clasper& c) {
  int count = 0;
  for (const auto& p : c.parts) {
    if (p.kind == ClasperPartKind::disk_leaf || p.kind == ClasperPartKind::node) ++count;
  }
  if (count % 2 != 0) {
    throw Error(ErrorCode::NonIntegerDegree, c.name, "disk-leaves + nodes is odd");
  }
  return count / 2;
}

Diagram shadow(const Clasper& c) {
  require_valid(c);
  if (!is_simple(c)) {
    for (const auto& p : c.parts) {
      if (p.kind == ClasperPartKind::disk_leaf && p.slots.size() != 1) {
        throw Error(ErrorCode::NotSimple, p.name,
                    "disk-leaf '" + p.name + "' meets the skeleton " + std::to_string(p.slots.size()) +
                        " times");
      }
    }
  }
  std::unordered_map<std::string, int> used;
  std::unordered_map<std::string, const ClasperPart*> by_name;
  for (const auto& p : c.parts) by_name[p.name] = &p;
  auto end_token = [&](const std::string& part) {
    const ClasperPart* p = by_name.at(part);
    if (p->kind == ClasperPartKind::disk_leaf) return p->name;
    return p->name + "." + std::to_string(++used[part]);
  };

  std::vector<LegSpec> legs;
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
  for (const auto& p : c.parts) {
    if (p.kind == ClasperPartKind::disk_leaf) legs.push_back({p.name, p.slots.front()});
    if (p.kind == ClasperPartKind::node) {
      vertices.push_back({p.name, {p.name + ".1", p.name + ".2", p.name + ".3"}});
    }
  }
  for (const auto& e : c.edges) {
    std::string a = end_token(e.a);
    edges.push_back({a, end_token(e.b)});
  }
  return build_diagram(c.skeleton, legs, vertices, edges);
}

std::string_view to_string(LedgerKind kind) {
  return kind == LedgerKind::slide ? "slide" : "zip-absorption";
}

bool Ledger::sound(int n) const {
  for (const auto& e : entries) {
    if (e.bound() < n) return false;
  }
  return true;
}

namespace {

// The pair is unordered: which block counts as first depends on the vertex
// orientation of whichever representative was expanded.
LedgerEntry entry(LedgerKind kind, int n1, int n2) {
  return {kind, std::min(n1, n2), std::max(n1, n2)};
}

}  // namespace

Ledger ledger_from_events(const std::vector<SlideEvent>& events) {
  Ledger out;
  for (const auto& e : events) {
    if (e.depth == 0) {
      out.entries.push_back(entry(LedgerKind::slide, e.n1, e.n2));
    } else {
      out.entries.push_back(entry(LedgerKind::zip_absorption, e.outer1, e.outer2));
    }
  }
  return out;
}

Ledger ledger_from_certificate(const Certificate& cert) {
  const auto& steps = cert.steps;
  // Split degrees of each STU step that disconnects its component, if any.
  std::vector<std::pair<int, int>> split(steps.size(), {0, 0});
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].kind != StepKind::StuExpand) continue;
    Diagram parent = diagram_from_digest(cert.skeleton, steps[i].parent);
    const int leg = parse_canonical_leg_token(steps[i].location);
    auto result = step_move9(parent, leg);
    if (result.split) split[i] = {result.split->degree1, result.split->degree2};
  }

  Ledger out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k].kind != StepKind::SlideJoin) continue;
    int splits = 0, slides = 0;
    std::pair<int, int> top{0, 0};
    std::string current = steps[k].parent;
    std::size_t pos = k;
    while (current != cert.input) {
      std::size_t j = pos;
      bool found = false;
      while (j-- > 0) {
        if (sgn(steps[j].children.coefficient(current)) != 0) {
          found = true;
          break;
        }
      }
      if (!found) break;
      if (steps[j].kind == StepKind::SlideJoin) ++slides;
      if (split[j].first > 0) {
        ++splits;
        top = split[j];
      }
      current = steps[j].parent;
      pos = j;
    }
    const bool nested = splits - slides > 1;
    out.entries.push_back(entry(nested ? LedgerKind::zip_absorption : LedgerKind::slide, top.first,
                                top.second));
  }
  return out;
}

ClasperReduction reduce_clasper(const Clasper& c, const ReductionOptions& opts) {
  Diagram d = shadow(c);
  auto res = reduce_to_trees(d, opts);
  ClasperReduction out{std::move(res.combination), std::move(res.certificate),
                       ledger_from_events(res.slides)};
  const int n = degree(c);
  if (is_connected(d) && !out.ledger.sound(n)) {
    throw Error(ErrorCode::DegreeMismatch, c.name,
                "a ledger entry has n1 + n2 below the clasper degree " + std::to_string(n));
  }
  return out;
}

}  // namespace jacobi
