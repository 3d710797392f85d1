#include "jacobi/reduction.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>

#include "jacobi/canonical.hpp"
#include "jacobi/elimination.hpp"
#include "jacobi/relations.hpp"

namespace jacobi {

Strategy parse_strategy(std::string_view text) {
  if (text == "cycle-first") return Strategy::cycle_first;
  if (text == "nearest-cycle") return Strategy::nearest_cycle;
  if (text == "first-leg") return Strategy::first_leg;
  throw Error(ErrorCode::Parse, std::string(text), "unknown strategy '" + std::string(text) + "'");
}

Fallback parse_fallback(std::string_view text) {
  if (text == "error") return Fallback::error;
  if (text == "linear-solve") return Fallback::linear_solve;
  throw Error(ErrorCode::Parse, std::string(text), "unknown fallback '" + std::string(text) + "'");
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::cycle_first: return "cycle-first";
    case Strategy::nearest_cycle: return "nearest-cycle";
    case Strategy::first_leg: return "first-leg";
  }
  return "?";
}

std::string_view to_string(Fallback f) {
  return f == Fallback::error ? "error" : "linear-solve";
}

Diagram named_copy(const Diagram& d) {
  if (!d.parts().names.empty()) return d;
  DiagramParts parts = d.parts();
  parts.names.resize(d.half_edge_count());
  for (int h = 0; h < d.half_edge_count(); ++h) parts.names[h] = d.name(h);
  parts.vertex_names.resize(d.vertex_count());
  for (int v = 0; v < d.vertex_count(); ++v) parts.vertex_names[v] = d.vertex_name(v);
  return Diagram::from_parts(std::move(parts));
}

// ------------------------------------------------------------ leg choice

namespace {

// Vertices incident to an internal edge that is not a bridge.
std::vector<char> cycle_vertices(const Diagram& d) {
  const int t = d.vertex_count();
  std::vector<char> on(t, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(t);  // (neighbour, edge id)
  int edge_id = 0;
  for (int h = 0; h < d.half_edge_count(); ++h) {
    const int q = d.partner(h);
    if (h > q || d.is_leg(h) || d.is_leg(q)) continue;
    const int x = d.vertex_of(h), y = d.vertex_of(q);
    if (x == y) {
      on[x] = 1;
      continue;
    }
    adj[x].push_back({y, edge_id});
    adj[y].push_back({x, edge_id});
    ++edge_id;
  }
  for (int x = 0; x < t; ++x) {
    for (auto [y, e] : adj[x]) {
      if (y < x) continue;
      // Is y reachable from x without edge e?
      std::vector<char> seen(t, 0);
      std::deque<int> queue{x};
      seen[x] = 1;
      while (!queue.empty() && !seen[y]) {
        int w = queue.front();
        queue.pop_front();
        for (auto [z, f] : adj[w]) {
          if (f == e || seen[z]) continue;
          seen[z] = 1;
          queue.push_back(z);
        }
      }
      if (seen[y]) on[x] = on[y] = 1;
    }
  }
  return on;
}

}  // namespace

std::vector<int> distance_to_cycle(const Diagram& d) {
  const int t = d.vertex_count();
  auto on = cycle_vertices(d);
  std::vector<int> dist(t, -1);
  std::deque<int> queue;
  for (int v = 0; v < t; ++v) {
    if (on[v]) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int h : d.vertex(v)) {
      int q = d.partner(h);
      if (d.is_leg(q)) continue;
      int w = d.vertex_of(q);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace {

int pick(const Diagram& d, Strategy strategy, const std::vector<int>& candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::NoEligibleLeg, {}, "no leg ends at an internal vertex");
  }
  if (strategy == Strategy::first_leg) return candidates.front();
  // cycle-first prefers distance 0 and otherwise falls back to the nearest
  // cycle, so both strategies minimise (distance, slot).
  auto dist = distance_to_cycle(d);
  int best = candidates.front();
  int best_dist = std::numeric_limits<int>::max();
  for (int leg : candidates) {
    int k = dist[d.vertex_of(d.partner(leg))];
    if (k < 0) continue;
    if (k < best_dist) {
      best = leg;
      best_dist = k;
    }
  }
  return best;
}

}  // namespace

int choose_leg(const Diagram& d, Strategy strategy) {
  return pick(d, strategy, vertex_adjacent_legs(d));
}

int choose_leg(const Diagram& d, Strategy strategy, const ComponentPartition& parts, int component) {
  std::vector<int> candidates;
  for (int leg : vertex_adjacent_legs(d)) {
    if (parts.of_half_edge[leg] == component) candidates.push_back(leg);
  }
  return pick(d, strategy, candidates);
}

// ------------------------------------------------------------- move 9

CaseResult step_move9(const Diagram& d, int leg) {
  CaseResult out{stu_expand(d, leg), std::nullopt};
  const Diagram& t = out.expansion.t_term;
  auto parts = component_partition(t);
  const int ca = parts.of_half_edge[out.expansion.a];
  const int cb = parts.of_half_edge[out.expansion.b];
  if (ca == cb) return out;
  const int comp = d.leg_component(leg);
  SplitRecord split{restrict_to_component(t, parts, ca),
                    restrict_to_component(t, parts, cb),
                    component_degree(t, parts, ca),
                    component_degree(t, parts, cb),
                    {},
                    {},
                    {comp, d.leg_slot(leg), 1, 1}};
  split.g1_slots.resize(t.legs().size());
  split.g2_slots.resize(t.legs().size());
  for (std::size_t c = 0; c < t.legs().size(); ++c) {
    for (std::size_t s = 0; s < t.legs()[c].size(); ++s) {
      int h = t.legs()[c][s];
      if (parts.of_half_edge[h] == ca) split.g1_slots[c].push_back(static_cast<int>(s));
      if (parts.of_half_edge[h] == cb) split.g2_slots[c].push_back(static_cast<int>(s));
    }
  }
  out.split = std::move(split);
  return out;
}

// ----------------------------------------------------------------- slides

namespace {

std::vector<int> block_positions(const Diagram& tau, const InterleaveRecord& rec) {
  auto bad = [](const std::string& why) {
    return Error(ErrorCode::NotSlidePair, {}, "slide record does not fit: " + why);
  };
  if (rec.component < 0 || rec.component >= static_cast<int>(tau.legs().size())) {
    throw bad("component out of range");
  }
  const int k = static_cast<int>(tau.legs()[rec.component].size());
  if (rec.p < 0 || rec.q < 0 || rec.p + rec.q > k || rec.start < 0 || rec.start >= std::max(k, 1)) {
    throw bad("block sizes out of range");
  }
  const bool circle = tau.skeleton().kind(rec.component) == ComponentKind::circle;
  std::vector<int> pos;
  for (int i = 0; i < rec.p + rec.q; ++i) {
    int s = rec.start + i;
    if (s >= k) {
      if (!circle) throw bad("blocks run past the end of an interval");
      s -= k;
    }
    pos.push_back(s);
  }
  return pos;
}

Diagram with_order(const Diagram& d, int component, const std::vector<int>& pos,
                   const std::vector<int>& arrangement) {
  DiagramParts parts = d.parts();
  for (std::size_t i = 0; i < pos.size(); ++i) parts.legs[component][pos[i]] = arrangement[i];
  return Diagram::from_parts(std::move(parts));
}

// Replaces the adjacent legs x (at slot sx) and y by one new leg joined to a
// fresh vertex (new leg edge, x edge, y edge).
Diagram join_pair(const Diagram& d, int component, int sx, int x, int y, const std::string& name) {
  const int H = d.half_edge_count();
  std::vector<int> remap(H, -1);
  int next = 0;
  for (int h = 0; h < H; ++h) {
    if (h != x && h != y) remap[h] = next++;
  }
  const int n = next, wn = next + 1, wx = next + 2, wy = next + 3;
  DiagramParts out;
  out.skeleton = d.skeleton_ptr();
  out.legs.resize(d.legs().size());
  for (std::size_t c = 0; c < d.legs().size(); ++c) {
    for (std::size_t s = 0; s < d.legs()[c].size(); ++s) {
      int h = d.legs()[c][s];
      if (static_cast<int>(c) == component && static_cast<int>(s) == sx) {
        out.legs[c].push_back(n);
      } else if (h != x && h != y) {
        out.legs[c].push_back(remap[h]);
      }
    }
  }
  for (int v = 0; v < d.vertex_count(); ++v) {
    const auto& tri = d.vertex(v);
    out.vertices.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
    out.vertex_names.push_back(d.vertex_name(v));
  }
  out.vertices.push_back({wn, wx, wy});
  out.vertex_names.push_back("w" + std::to_string(d.vertex_count() + 1));
  out.partner.assign(next + 4, -1);
  const int px = d.partner(x), py = d.partner(y);
  for (int h = 0; h < H; ++h) {
    if (remap[h] < 0 || h == px || h == py) continue;
    out.partner[remap[h]] = remap[d.partner(h)];
  }
  out.partner[n] = wn;
  out.partner[wn] = n;
  if (px == y) {
    out.partner[wx] = wy;
    out.partner[wy] = wx;
  } else {
    out.partner[wx] = remap[px];
    out.partner[remap[px]] = wx;
    out.partner[wy] = remap[py];
    out.partner[remap[py]] = wy;
  }
  if (!d.parts().names.empty()) {
    out.names.resize(next + 4);
    for (int h = 0; h < H; ++h) {
      if (remap[h] >= 0) out.names[remap[h]] = d.name(h);
    }
    std::string base = name.empty() ? "~j" : name;
    out.names[n] = base;
    out.names[wn] = base + ".0";
    out.names[wx] = base + ".1";
    out.names[wy] = base + ".2";
  }
  return Diagram::from_parts(std::move(out));
}

}  // namespace

SlideTerms slide_terms(const Diagram& tau, const InterleaveRecord& rec,
                       const std::string& joined_name) {
  auto pos = block_positions(tau, rec);
  const auto& slots = tau.legs()[rec.component];
  std::vector<int> arr;
  for (int s : pos) arr.push_back(slots[s]);
  std::vector<int> ys(arr.begin() + rec.p, arr.end());

  std::vector<Diagram> joined;
  for (int j = 0; j < rec.q; ++j) {
    int at = rec.p + j;
    while (at > j) {
      Diagram config = with_order(tau, rec.component, pos, arr);
      joined.push_back(join_pair(config, rec.component, pos[at - 1], arr[at - 1], arr[at], joined_name));
      std::swap(arr[at - 1], arr[at]);
      --at;
    }
  }
  return {with_order(tau, rec.component, pos, arr), std::move(joined)};
}

LinearCombination slide_expansion(const Diagram& t_term, const Diagram& u_term,
                                  const InterleaveRecord& rec) {
  auto terms = slide_terms(t_term, rec);
  if (canonicalize(terms.sigma) != canonicalize(u_term)) {
    throw Error(ErrorCode::NotSlidePair, {}, "U is not T with the recorded blocks exchanged");
  }
  LinearCombination out;
  for (const auto& s : terms.joined) out.add(canonicalize(s), 1);
  return out;
}

LinearCombination slide_expansion(const Diagram& t_term, const Diagram& u_term) {
  if (!t_term.skeleton().same_shape(u_term.skeleton()) || degree(t_term) != degree(u_term)) {
    throw Error(ErrorCode::NotSlidePair, {}, "terms live on different skeletons or degrees");
  }
  const auto target = canonicalize(u_term);
  if (canonicalize(t_term) == target) return {};
  for (int c = 0; c < static_cast<int>(t_term.legs().size()); ++c) {
    const int k = static_cast<int>(t_term.legs()[c].size());
    const bool circle = t_term.skeleton().kind(c) == ComponentKind::circle;
    for (int start = 0; start < k; ++start) {
      for (int p = 1; p < k; ++p) {
        for (int q = 1; p + q <= k; ++q) {
          if (!circle && start + p + q > k) continue;
          InterleaveRecord rec{c, start, p, q};
          auto terms = slide_terms(t_term, rec);
          if (canonicalize(terms.sigma) != target) continue;
          LinearCombination out;
          for (const auto& s : terms.joined) out.add(canonicalize(s), 1);
          return out;
        }
      }
    }
  }
  throw Error(ErrorCode::NotSlidePair, {}, "no single block slide turns T into U");
}

// -------------------------------------------------------------- reducer

namespace {

struct BudgetExceeded {};

class Reducer {
 public:
  Reducer(const ReductionOptions& opts, Certificate& cert, std::vector<SlideEvent>& events)
      : opts_(opts), cert_(cert), events_(events) {}

  LinearCombination run(const Diagram& input, const std::string& digest) {
    pending_.add(digest, 1);
    Diagram x = named_copy(input);
    for (int h = 0; h < x.half_edge_count(); ++h) used_.insert(x.name(h));

    auto parts = component_partition(x);
    std::vector<std::string> anchors;
    for (int c = 0; c < parts.count; ++c) {
      if (component_is_tree(x, parts, c)) continue;
      for (int h : x.legs_in_slot_order()) {
        if (parts.of_half_edge[h] == c) {
          anchors.push_back(x.name(h));
          break;
        }
      }
    }
    std::vector<Diagram> leaves{x};
    for (const auto& anchor : anchors) {
      std::vector<Diagram> next;
      for (const auto& leaf : leaves) append(next, reduce(leaf, anchor, 0, {0, 0}));
      leaves = dedupe(next);
    }
    return pending_;
  }

 private:
  static bool component_is_tree(const Diagram& d, const ComponentPartition& parts, int c) {
    int edges = 0, vertices = 0;
    for (int h = 0; h < d.half_edge_count(); ++h) {
      const int q = d.partner(h);
      if (h < q && !d.is_leg(h) && !d.is_leg(q) && parts.of_half_edge[h] == c) ++edges;
    }
    for (int v = 0; v < d.vertex_count(); ++v) {
      if (parts.of_vertex[v] == c) ++vertices;
    }
    return vertices == 0 || edges == vertices - 1;
  }

  std::string fresh() {
    while (true) {
      std::string s = "~" + std::to_string(++counter_);
      if (used_.insert(s).second) return s;
    }
  }

  void emit(StepKind kind, const std::string& parent, std::string location,
            const LinearCombination& children) {
    if (static_cast<int>(cert_.steps.size()) >= opts_.max_steps) throw BudgetExceeded{};
    const mpq_class c = pending_.coefficient(parent);
    pending_.add(parent, -c);
    pending_.add(children, c);
    cert_.steps.push_back({static_cast<int>(cert_.steps.size()) + 1, kind, parent,
                           std::move(location), children});
  }

  bool descends(std::string name, const std::string& root) const {
    while (true) {
      if (name == root) return true;
      auto it = parent_of_.find(name);
      if (it == parent_of_.end()) return false;
      name = it->second;
    }
  }

  static void append(std::vector<Diagram>& out, std::vector<Diagram>&& more) {
    for (auto& d : more) out.push_back(std::move(d));
  }

  static std::vector<Diagram> dedupe(std::vector<Diagram>& in) {
    std::vector<Diagram> out;
    std::set<std::string> seen;
    for (auto& d : in) {
      if (seen.insert(canonicalize(d).digest).second) out.push_back(std::move(d));
    }
    return out;
  }

  std::vector<Diagram> reduce(const Diagram& x, const std::string& anchor, int depth,
                              std::pair<int, int> outer) {
    const auto cl = canonicalize_with_labels(x);
    if (sgn(pending_.coefficient(cl.canonical.digest)) == 0) return {};
    const auto parts = component_partition(x);
    const int anchor_h = x.find(anchor);
    const int comp = parts.of_half_edge[anchor_h];
    if (component_is_tree(x, parts, comp)) return {x};

    const int leg = choose_leg(x, opts_.strategy, parts, comp);
    const std::string leg_name = x.name(leg);
    const std::string na = fresh(), nb = fresh();
    parent_of_[na] = leg_name;
    parent_of_[nb] = leg_name;
    auto ex = stu_expand(x, leg, na, nb);

    const int sx = cl.canonical.sign;
    LinearCombination children;
    children.add(canonicalize(ex.t_term), sx);
    children.add(canonicalize(ex.u_term), -sx);
    emit(StepKind::StuExpand, cl.canonical.digest, canonical_leg_token(cl.label_of[leg]), children);

    const auto tparts = component_partition(ex.t_term);
    const int ca = tparts.of_half_edge[ex.a];
    const int cb = tparts.of_half_edge[ex.b];
    if (ca == cb) {
      const std::string next_anchor = anchor == leg_name ? na : anchor;
      auto out = reduce(ex.t_term, next_anchor, depth, outer);
      append(out, reduce(ex.u_term, next_anchor, depth, outer));
      return out;
    }

    const int d1 = component_degree(ex.t_term, tparts, ca);
    const int d2 = component_degree(ex.t_term, tparts, cb);
    const auto enclosing = depth == 0 ? std::make_pair(d1, d2) : outer;
    auto both = [&](const Diagram& term) {
      std::vector<Diagram> out;
      for (const auto& first : reduce(term, na, depth + 1, enclosing)) {
        append(out, reduce(first, nb, depth + 1, enclosing));
      }
      return dedupe(out);
    };
    auto t_leaves = both(ex.t_term);
    auto u_leaves = both(ex.u_term);

    std::vector<Diagram> out;
    std::vector<Diagram> sigmas;
    for (const auto& tau : t_leaves) {
      const auto ct = canonicalize_with_labels(tau);
      if (sgn(pending_.coefficient(ct.canonical.digest)) == 0) continue;
      auto [rec, first_leg] = blocks_of(tau, na, nb);
      const std::string joined = fresh();
      parent_of_[joined] = leg_name;
      auto terms = slide_terms(tau, rec, joined);
      const int st = ct.canonical.sign;
      LinearCombination kids;
      kids.add(canonicalize(terms.sigma), st);
      for (const auto& s : terms.joined) kids.add(canonicalize(s), st);
      emit(StepKind::SlideJoin, ct.canonical.digest,
           canonical_leg_token(ct.label_of[first_leg]) + "." + std::to_string(rec.p) + "." +
               std::to_string(rec.q),
           kids);
      events_.push_back({depth, d1, d2, enclosing.first, enclosing.second});
      append(out, std::move(terms.joined));
      sigmas.push_back(std::move(terms.sigma));
    }
    // Whatever did not cancel stays pending and is handed back as well.
    for (auto* list : {&t_leaves, &u_leaves, &sigmas}) {
      for (auto& leaf : *list) {
        if (sgn(pending_.coefficient(canonicalize(leaf).digest)) != 0) out.push_back(leaf);
      }
    }
    return dedupe(out);
  }

  // The descendants of the two new legs form adjacent blocks on one
  // skeleton component.
  std::pair<InterleaveRecord, int> blocks_of(const Diagram& tau, const std::string& a,
                                             const std::string& b) const {
    for (int c = 0; c < static_cast<int>(tau.legs().size()); ++c) {
      const auto& slots = tau.legs()[c];
      const int k = static_cast<int>(slots.size());
      std::vector<int> tag(k, 0);
      int p = 0, q = 0;
      for (int s = 0; s < k; ++s) {
        const std::string name = tau.name(slots[s]);
        if (descends(name, a)) {
          tag[s] = 1;
          ++p;
        } else if (descends(name, b)) {
          tag[s] = 2;
          ++q;
        }
      }
      if (p == 0 && q == 0) continue;
      for (int start = 0; start < k; ++start) {
        if (tag[start] != 1 || tag[(start + k - 1) % k] == 1) continue;
        bool ok = true;
        for (int i = 0; i < p + q && ok; ++i) {
          int s = start + i;
          if (s >= k) {
            if (tau.skeleton().kind(c) != ComponentKind::circle) ok = false;
            s -= k;
          }
          if (ok) ok = tag[s] == (i < p ? 1 : 2);
        }
        if (ok) return {InterleaveRecord{c, start, p, q}, slots[start]};
      }
      break;
    }
    throw Error(ErrorCode::NotSlidePair, {}, "split blocks are not adjacent");
  }

  const ReductionOptions& opts_;
  Certificate& cert_;
  std::vector<SlideEvent>& events_;
  LinearCombination pending_;
  std::unordered_map<std::string, std::string> parent_of_;
  std::set<std::string> used_;
  long counter_ = 0;
};

bool all_trees(const SkeletonPtr& skeleton, const LinearCombination& lc) {
  for (const auto& [digest, c] : lc.terms()) {
    if (!is_tree_diagram(diagram_from_digest(skeleton, digest))) return false;
  }
  return true;
}

}  // namespace

ReductionResult reduce_to_trees(const Diagram& d, const ReductionOptions& opts) {
  if (opts.max_steps < 1) {
    throw Error(ErrorCode::StepBudgetExhausted, {}, "step budget must be at least 1");
  }
  if (has_legless_component(d)) {
    throw Error(ErrorCode::LeglessComponent, {},
                "an internal component has no leg, so no leg can be chosen");
  }
  const CanonicalDiagram cd = canonicalize(d);
  ReductionResult out;
  out.certificate.skeleton = d.skeleton_ptr();
  out.certificate.input = cd.digest;
  if (cd.is_zero()) {
    out.certificate.steps.push_back({1, StepKind::CanonicalZero, cd.digest, "-", {}});
    return out;
  }
  if (is_tree_diagram(d)) {
    out.certificate.result = LinearCombination::single(cd.digest);
    out.combination = LinearCombination::of(cd);
    return out;
  }

  bool budget_hit = false;
  try {
    Reducer reducer(opts, out.certificate, out.slides);
    out.certificate.result = reducer.run(d, cd.digest);
  } catch (const BudgetExceeded&) {
    budget_hit = true;
  }
  if (!budget_hit && all_trees(d.skeleton_ptr(), out.certificate.result)) {
    out.combination = cd.sign * out.certificate.result;
    return out;
  }
  if (opts.fallback == Fallback::error) {
    throw Error(ErrorCode::StepBudgetExhausted, cd.digest,
                "rewriting did not reach trees within " + std::to_string(opts.max_steps) + " steps");
  }

  std::unique_ptr<RelationSystem> own_sys;
  std::unique_ptr<SpanSolver> own_solver;
  const RelationSystem* sys = opts.system;
  if (!sys || sys->degree != degree(d) || !sys->skeleton->same_shape(d.skeleton())) {
    own_sys = std::make_unique<RelationSystem>(generate_relations(d.skeleton_ptr(), degree(d)));
    sys = own_sys.get();
  }
  const SpanSolver* solver = sys == opts.system ? opts.solver : nullptr;
  if (!solver) {
    own_solver = std::make_unique<SpanSolver>(*sys);
    solver = own_solver.get();
  }
  auto expr = express_in_tree_basis(diagram_from_digest(d.skeleton_ptr(), cd.digest), *sys, *solver);
  if (!expr) {
    throw Error(ErrorCode::StepBudgetExhausted, cd.digest,
                "step budget exhausted and no tree expression exists");
  }
  out.slides.clear();
  out.certificate.steps = {{1, StepKind::OracleSolved, cd.digest, "-", *expr}};
  out.certificate.result = *expr;
  out.combination = cd.sign * *expr;
  out.oracle_solved = true;
  return out;
}

std::vector<ReductionOutcome> reduce_all(const std::vector<Diagram>& inputs,
                                         const ReductionOptions& opts) {
  std::vector<std::optional<ReductionOutcome>> slots(inputs.size());
  const long n = static_cast<long>(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      slots[i] = reduce_to_trees(inputs[i], opts);
    } catch (const Error& e) {
      slots[i] = e;
    }
  }
  std::vector<ReductionOutcome> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<ReductionOutcome> reduce_all_serial(const std::vector<Diagram>& inputs,
                                                const ReductionOptions& opts) {
  std::vector<ReductionOutcome> out;
  out.reserve(inputs.size());
  for (const auto& d : inputs) {
    try {
      out.emplace_back(reduce_to_trees(d, opts));
    } catch (const Error& e) {
      out.emplace_back(e);
    }
  }
  return out;
}

}  // namespace jacobi
