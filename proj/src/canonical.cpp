#include "jacobi/canonical.hpp"

#include <charconv>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

constexpr std::string_view kAlphabet =
    "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

int decode_char(char c) {
  auto pos = kAlphabet.find(c);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

// Branch-and-bound search for the lexicographically least traversal code.
//
// Legs are labelled first, in slot order (every rotation is tried on circle
// components). Then the labelled half-edges are scanned in label order; when a
// partner sits on an unlabelled vertex, that vertex is labelled entry-first
// and both orders of its two remaining half-edges are explored. Each branch
// fixes an orientation per vertex, so the branch carries the sign relating the
// input to the canonical orientation. Two optimal branches with different
// signs differ by an odd automorphism, which makes the class zero.
class Search {
 public:
  explicit Search(const Diagram& d)
      : d_(d), H_(d.half_edge_count()), label_(H_, -1), vertex_done_(d.vertex_count(), 0) {
    order_.reserve(H_);
    code_.reserve(H_);
  }

  Canonicalization run() {
    const auto& legs = d_.legs();
    const int ncomp = static_cast<int>(legs.size());
    std::vector<int> rotation(ncomp, 0);
    while (true) {
      start(rotation);
      visit(0);
      // Odometer over circle rotations.
      int c = 0;
      for (; c < ncomp; ++c) {
        if (d_.skeleton().kind(c) != ComponentKind::circle || legs[c].empty()) continue;
        if (++rotation[c] < static_cast<int>(legs[c].size())) break;
        rotation[c] = 0;
      }
      if (c == ncomp) break;
    }

    Canonicalization out;
    out.label_of = best_label_;
    out.witness_sign = best_sign_;
    out.canonical.sign = zero_ ? 0 : best_sign_;
    std::vector<int> counts;
    for (const auto& comp : legs) counts.push_back(static_cast<int>(comp.size()));
    out.canonical.digest = encode_code(counts, best_code_);
    return out;
  }

 private:
  void start(const std::vector<int>& rotation) {
    std::fill(label_.begin(), label_.end(), -1);
    std::fill(vertex_done_.begin(), vertex_done_.end(), 0);
    order_.clear();
    code_.clear();
    sign_ = 1;
    less_at_ = -1;
    const auto& legs = d_.legs();
    for (std::size_t c = 0; c < legs.size(); ++c) {
      const int k = static_cast<int>(legs[c].size());
      for (int i = 0; i < k; ++i) assign(legs[c][(rotation[c] + i) % k]);
    }
  }

  void assign(int h) {
    label_[h] = static_cast<int>(order_.size());
    order_.push_back(h);
  }

  void unassign(int count) {
    for (int i = 0; i < count; ++i) {
      label_[order_.back()] = -1;
      order_.pop_back();
    }
  }

  bool push(int p, int value) {
    code_.push_back(value);
    if (!have_best_) {
      if (less_at_ < 0) less_at_ = p;
      return true;
    }
    if (less_at_ >= 0) return true;
    if (value > best_code_[p]) {
      code_.pop_back();
      return false;
    }
    if (value < best_code_[p]) less_at_ = p;
    return true;
  }

  void pop(int p) {
    code_.pop_back();
    if (less_at_ == p) less_at_ = -1;
  }

  void complete() {
    if (!have_best_ || less_at_ >= 0) {
      best_code_ = code_;
      best_label_ = label_;
      best_sign_ = sign_;
      zero_ = false;
      have_best_ = true;
      less_at_ = -1;
    } else if (sign_ != best_sign_) {
      zero_ = true;
    }
  }

  void enter_vertex(int w, int first, int second, int third, int parity) {
    assign(first);
    assign(second);
    assign(third);
    vertex_done_[w] = 1;
    sign_ *= parity;
  }

  void leave_vertex(int w, int parity) {
    unassign(3);
    vertex_done_[w] = 0;
    sign_ *= parity;
  }

  void visit(int p) {
    if (p == static_cast<int>(order_.size())) {
      if (p < H_) {
        // Only legless components remain: try every start vertex and entry.
        for (int w = 0; w < d_.vertex_count(); ++w) {
          if (vertex_done_[w]) continue;
          const auto& tri = d_.vertex(w);
          for (int k = 0; k < 3; ++k) {
            for (int parity : {1, -1}) {
              int x = tri[(k + 1) % 3], y = tri[(k + 2) % 3];
              if (parity < 0) std::swap(x, y);
              enter_vertex(w, tri[k], x, y, parity);
              visit(p);
              leave_vertex(w, parity);
            }
          }
        }
        return;
      }
      complete();
      return;
    }

    const int h = order_[p];
    const int q = d_.partner(h);
    if (label_[q] >= 0) {
      if (push(p, label_[q])) {
        visit(p + 1);
        pop(p);
      }
      return;
    }
    const int w = d_.vertex_of(q);
    const int k = d_.position_in_vertex(q);
    const auto& tri = d_.vertex(w);
    for (int parity : {1, -1}) {
      int x = tri[(k + 1) % 3], y = tri[(k + 2) % 3];
      if (parity < 0) std::swap(x, y);
      enter_vertex(w, q, x, y, parity);
      if (push(p, label_[q])) {
        visit(p + 1);
        pop(p);
      }
      leave_vertex(w, parity);
    }
  }

  const Diagram& d_;
  const int H_;
  std::vector<int> label_;
  std::vector<char> vertex_done_;
  std::vector<int> order_;
  std::vector<int> code_;
  int sign_ = 1;
  int less_at_ = -1;

  bool have_best_ = false;
  std::vector<int> best_code_;
  std::vector<int> best_label_;
  int best_sign_ = 1;
  bool zero_ = false;
};

}  // namespace

std::string encode_code(const std::vector<int>& legs_per_component, const std::vector<int>& partner) {
  if (partner.size() > static_cast<std::size_t>(kMaxHalfEdges)) {
    throw Error(ErrorCode::DegreeTooLargeForBudget, {},
                "diagram has more half-edges than the digest alphabet supports");
  }
  std::string out;
  for (std::size_t c = 0; c < legs_per_component.size(); ++c) {
    if (c) out += '.';
    out += std::to_string(legs_per_component[c]);
  }
  out += '_';
  for (int q : partner) out += kAlphabet[q];
  return out;
}

Canonicalization canonicalize_with_labels(const Diagram& d) {
  if (d.half_edge_count() > kMaxHalfEdges) {
    throw Error(ErrorCode::DegreeTooLargeForBudget, {},
                "diagram has more half-edges than the digest alphabet supports");
  }
  return Search(d).run();
}

CanonicalDiagram canonicalize(const Diagram& d) { return canonicalize_with_labels(d).canonical; }

std::optional<int> is_isomorphic(const Diagram& d1, const Diagram& d2) {
  if (!d1.skeleton().same_shape(d2.skeleton())) return std::nullopt;
  auto c1 = canonicalize_with_labels(d1);
  auto c2 = canonicalize_with_labels(d2);
  if (c1.canonical.digest != c2.canonical.digest) return std::nullopt;
  return c1.witness_sign * c2.witness_sign;
}

namespace {

struct DecodedDigest {
  std::vector<int> counts;
  std::vector<int> partner;
};

DecodedDigest decode(std::string_view digest) {
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::MalformedDigest, std::string(digest),
                 "malformed digest '" + std::string(digest) + "': " + why);
  };
  auto sep = digest.find('_');
  if (sep == std::string_view::npos) throw bad("missing '_'");
  DecodedDigest out;
  auto head = digest.substr(0, sep);
  std::size_t start = 0;
  while (start <= head.size()) {
    auto end = head.find('.', start);
    if (end == std::string_view::npos) end = head.size();
    auto word = head.substr(start, end - start);
    int value = -1;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || ptr != word.data() + word.size() || value < 0) {
      throw bad("bad leg count");
    }
    out.counts.push_back(value);
    start = end + 1;
  }
  for (char c : digest.substr(sep + 1)) {
    int q = decode_char(c);
    if (q < 0) throw bad("bad code character");
    out.partner.push_back(q);
  }
  return out;
}

}  // namespace

int digest_degree(std::string_view digest) {
  auto dec = decode(digest);
  int u = 0;
  for (int c : dec.counts) u += c;
  const int H = static_cast<int>(dec.partner.size());
  if (H < u || (H - u) % 3 != 0) {
    throw Error(ErrorCode::MalformedDigest, std::string(digest), "inconsistent digest length");
  }
  return (u + (H - u) / 3) / 2;
}

Diagram diagram_from_digest(const SkeletonPtr& skeleton, std::string_view digest) {
  auto dec = decode(digest);
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::MalformedDigest, std::string(digest),
                 "malformed digest '" + std::string(digest) + "': " + why);
  };
  if (static_cast<int>(dec.counts.size()) != skeleton->size()) {
    throw bad("component count does not match skeleton");
  }
  int u = 0;
  for (int c : dec.counts) u += c;
  const int H = static_cast<int>(dec.partner.size());
  if (H < u || (H - u) % 3 != 0) throw bad("inconsistent length");
  for (int h = 0; h < H; ++h) {
    int q = dec.partner[h];
    if (q >= H || q == h || dec.partner[q] != h) throw bad("partner code is not a matching");
  }
  DiagramParts parts;
  parts.skeleton = skeleton;
  parts.partner = dec.partner;
  parts.legs.resize(dec.counts.size());
  int label = 0;
  for (std::size_t c = 0; c < dec.counts.size(); ++c) {
    for (int i = 0; i < dec.counts[c]; ++i) parts.legs[c].push_back(label++);
  }
  const int t = (H - u) / 3;
  for (int k = 0; k < t; ++k) {
    parts.vertices.push_back({u + 3 * k, u + 3 * k + 1, u + 3 * k + 2});
    parts.vertex_names.push_back("v" + std::to_string(k + 1));
  }
  parts.names.resize(H);
  for (int h = 0; h < H; ++h) {
    parts.names[h] = h < u ? canonical_leg_token(h) : "h" + std::to_string(h - u + 1);
  }
  return Diagram::from_parts(std::move(parts));
}

bool is_canonical_digest(const SkeletonPtr& skeleton, std::string_view digest) {
  try {
    return canonicalize(diagram_from_digest(skeleton, digest)).digest == digest;
  } catch (const Error&) {
    return false;
  }
}

std::string canonical_leg_token(int label) { return "l" + std::to_string(label + 1); }

int parse_canonical_leg_token(std::string_view token) {
  if (token.size() < 2 || token[0] != 'l') return -1;
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 1) return -1;
  return value - 1;
}

}  // namespace jacobi
