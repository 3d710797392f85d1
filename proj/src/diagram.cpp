#include "jacobi/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "jacobi/error.hpp"

namespace jacobi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DanglingHalfEdge: return "DanglingHalfEdge";
    case ErrorCode::NonTrivalentVertex: return "NonTrivalentVertex";
    case ErrorCode::UnmatchedHalfEdge: return "UnmatchedHalfEdge";
    case ErrorCode::EmptySlot: return "EmptySlot";
    case ErrorCode::DuplicateSlot: return "DuplicateSlot";
    case ErrorCode::NonPositiveDegree: return "NonPositiveDegree";
    case ErrorCode::MalformedDigest: return "MalformedDigest";
    case ErrorCode::LegNotAdjacentToVertex: return "LegNotAdjacentToVertex";
    case ErrorCode::DegreeTooLargeForBudget: return "DegreeTooLargeForBudget";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::NoEligibleLeg: return "NoEligibleLeg";
    case ErrorCode::LeglessComponent: return "LeglessComponent";
    case ErrorCode::StepBudgetExhausted: return "StepBudgetExhausted";
    case ErrorCode::NotSlidePair: return "NotSlidePair";
    case ErrorCode::NotStrict: return "NotStrict";
    case ErrorCode::BadValence: return "BadValence";
    case ErrorCode::NonIntegerDegree: return "NonIntegerDegree";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::UnknownDigest: return "UnknownDigest";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::Parse: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Skeleton

Skeleton::Skeleton(std::string name, std::vector<SkeletonComponent> components)
    : name_(std::move(name)), components_(std::move(components)) {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (components_[i].id == components_[j].id) {
        throw Error(ErrorCode::DuplicateSlot, components_[i].id,
                    "skeleton component id '" + components_[i].id + "' is not unique");
      }
    }
  }
}

Skeleton Skeleton::from_shape(std::string_view shape) {
  std::vector<SkeletonComponent> comps;
  std::size_t start = 0;
  while (start <= shape.size()) {
    auto end = shape.find(',', start);
    if (end == std::string_view::npos) end = shape.size();
    auto word = shape.substr(start, end - start);
    std::string id = "c" + std::to_string(comps.size() + 1);
    if (word == "interval") {
      comps.push_back({id, ComponentKind::interval});
    } else if (word == "circle") {
      comps.push_back({id, ComponentKind::circle});
    } else {
      throw Error(ErrorCode::Parse, std::string(word),
                  "unknown skeleton component kind '" + std::string(word) + "'");
    }
    start = end + 1;
  }
  return Skeleton("S", std::move(comps));
}

int Skeleton::index_of(std::string_view id) const {
  for (int i = 0; i < size(); ++i) {
    if (components_[i].id == id) return i;
  }
  return -1;
}

bool Skeleton::same_shape(const Skeleton& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (kind(i) != other.kind(i)) return false;
  }
  return true;
}

std::string Skeleton::shape() const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += kind(i) == ComponentKind::interval ? "interval" : "circle";
  }
  return out;
}

SkeletonPtr make_skeleton(std::string_view shape) {
  return std::make_shared<const Skeleton>(Skeleton::from_shape(shape));
}

// ----------------------------------------------------------------- Diagram

Diagram::Diagram(DiagramParts parts) : parts_(std::move(parts)) {}

Diagram Diagram::from_parts(DiagramParts parts) {
  if (!parts.skeleton) {
    throw Error(ErrorCode::EmptySlot, {}, "diagram has no skeleton");
  }
  const int H = static_cast<int>(parts.partner.size());
  const bool named = !parts.names.empty();
  if (named && static_cast<int>(parts.names.size()) != H) {
    throw Error(ErrorCode::DanglingHalfEdge, {}, "token table does not cover all half-edges");
  }
  auto token = [&](int h) { return named ? parts.names[h] : "h" + std::to_string(h); };

  if (static_cast<int>(parts.legs.size()) != parts.skeleton->size()) {
    throw Error(ErrorCode::EmptySlot, {}, "leg orders do not match skeleton components");
  }

  Diagram d(std::move(parts));
  auto& p = d.parts_;
  d.vertex_of_.assign(H, -2);
  d.position_.assign(H, -1);
  d.leg_component_.assign(H, -1);
  d.leg_slot_.assign(H, -1);

  auto claim = [&](int h) {
    if (h < 0 || h >= H) {
      throw Error(ErrorCode::DanglingHalfEdge, std::to_string(h), "half-edge id out of range");
    }
    if (d.vertex_of_[h] != -2) {
      throw Error(ErrorCode::DuplicateSlot, token(h),
                  "half-edge '" + token(h) + "' is attached twice");
    }
  };
  for (int c = 0; c < static_cast<int>(p.legs.size()); ++c) {
    for (int s = 0; s < static_cast<int>(p.legs[c].size()); ++s) {
      int h = p.legs[c][s];
      claim(h);
      d.vertex_of_[h] = -1;
      d.leg_component_[h] = c;
      d.leg_slot_[h] = s;
      ++d.leg_count_;
    }
  }
  for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) {
    for (int k = 0; k < 3; ++k) {
      int h = p.vertices[v][k];
      claim(h);
      d.vertex_of_[h] = v;
      d.position_[h] = k;
    }
  }
  for (int h = 0; h < H; ++h) {
    if (d.vertex_of_[h] == -2) {
      throw Error(ErrorCode::DanglingHalfEdge, token(h),
                  "half-edge '" + token(h) + "' is neither a leg nor at a vertex");
    }
    int q = p.partner[h];
    if (q < 0 || q >= H || q == h || p.partner[q] != h) {
      throw Error(ErrorCode::UnmatchedHalfEdge, token(h),
                  "half-edge '" + token(h) + "' is not properly matched");
    }
  }
  if (d.leg_count_ + d.vertex_count() == 0) {
    throw Error(ErrorCode::NonPositiveDegree, {}, "empty diagram has degree 0");
  }
  if (named) {
    std::unordered_map<std::string, int> seen;
    for (int h = 0; h < H; ++h) {
      if (!seen.emplace(p.names[h], h).second) {
        throw Error(ErrorCode::DuplicateSlot, p.names[h],
                    "token '" + p.names[h] + "' names two half-edges");
      }
    }
  }
  return d;
}

std::string Diagram::name(int h) const {
  if (!parts_.names.empty()) return parts_.names[h];
  return (is_leg(h) ? "l" : "h") + std::to_string(h);
}

std::string Diagram::vertex_name(int v) const {
  if (!parts_.vertex_names.empty()) return parts_.vertex_names[v];
  return "v" + std::to_string(v + 1);
}

int Diagram::find(std::string_view token) const {
  for (int h = 0; h < half_edge_count(); ++h) {
    if (name(h) == token) return h;
  }
  return -1;
}

std::vector<int> Diagram::legs_in_slot_order() const {
  std::vector<int> out;
  out.reserve(leg_count_);
  for (const auto& comp : parts_.legs) out.insert(out.end(), comp.begin(), comp.end());
  return out;
}

Diagram build_diagram(SkeletonPtr skeleton, const std::vector<LegSpec>& legs,
                      const std::vector<VertexSpec>& vertices,
                      const std::vector<EdgeSpec>& edges) {
  if (!skeleton) throw Error(ErrorCode::EmptySlot, {}, "diagram has no skeleton");
  DiagramParts parts;
  parts.skeleton = skeleton;
  parts.legs.resize(skeleton->size());
  std::unordered_map<std::string, int> id;

  auto declare = [&](const std::string& name) {
    if (name.empty()) throw Error(ErrorCode::DanglingHalfEdge, name, "empty half-edge token");
    auto [it, fresh] = id.emplace(name, static_cast<int>(parts.names.size()));
    if (!fresh) {
      throw Error(ErrorCode::DuplicateSlot, name, "half-edge '" + name + "' declared twice");
    }
    parts.names.push_back(name);
    return it->second;
  };

  for (const auto& leg : legs) {
    int c = skeleton->index_of(leg.component);
    if (c < 0) {
      throw Error(ErrorCode::EmptySlot, leg.name,
                  "leg '" + leg.name + "' sits on unknown component '" + leg.component + "'");
    }
    parts.legs[c].push_back(declare(leg.name));
  }
  for (const auto& v : vertices) {
    if (v.half_edges.size() != 3) {
      throw Error(ErrorCode::NonTrivalentVertex, v.name,
                  "vertex '" + v.name + "' has " + std::to_string(v.half_edges.size()) +
                      " half-edges, expected 3");
    }
    parts.vertices.push_back({declare(v.half_edges[0]), declare(v.half_edges[1]),
                              declare(v.half_edges[2])});
    parts.vertex_names.push_back(v.name);
  }
  parts.partner.assign(parts.names.size(), -1);
  auto lookup = [&](const std::string& name) {
    auto it = id.find(name);
    if (it == id.end()) {
      throw Error(ErrorCode::DanglingHalfEdge, name,
                  "edge mentions undeclared half-edge '" + name + "'");
    }
    return it->second;
  };
  for (const auto& e : edges) {
    int a = lookup(e.a);
    int b = lookup(e.b);
    if (a == b) {
      throw Error(ErrorCode::UnmatchedHalfEdge, e.a, "half-edge '" + e.a + "' matched to itself");
    }
    for (int h : {a, b}) {
      if (parts.partner[h] >= 0) {
        throw Error(ErrorCode::DuplicateSlot, parts.names[h],
                    "half-edge '" + parts.names[h] + "' occurs in two edges");
      }
    }
    parts.partner[a] = b;
    parts.partner[b] = a;
  }
  for (std::size_t h = 0; h < parts.partner.size(); ++h) {
    if (parts.partner[h] < 0) {
      throw Error(ErrorCode::UnmatchedHalfEdge, parts.names[h],
                  "half-edge '" + parts.names[h] + "' is not in any edge");
    }
  }
  return Diagram::from_parts(std::move(parts));
}

Diagram relabeled(const Diagram& d, std::mt19937_64& rng) {
  const int H = d.half_edge_count();
  std::vector<int> perm(H);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  DiagramParts p;
  p.skeleton = d.skeleton_ptr();
  p.partner.assign(H, -1);
  for (int h = 0; h < H; ++h) p.partner[perm[h]] = perm[d.partner(h)];
  for (int c = 0; c < static_cast<int>(d.legs().size()); ++c) {
    std::vector<int> slots;
    for (int h : d.legs()[c]) slots.push_back(perm[h]);
    if (d.skeleton().kind(c) == ComponentKind::circle && !slots.empty()) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(slots.size()) - 1);
      std::rotate(slots.begin(), slots.begin() + pick(rng), slots.end());
    }
    p.legs.push_back(std::move(slots));
  }
  std::vector<int> order(d.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> turn(0, 2);
  for (int v : order) {
    const auto& t = d.vertex(v);
    const int r = turn(rng);
    p.vertices.push_back({perm[t[r]], perm[t[(r + 1) % 3]], perm[t[(r + 2) % 3]]});
  }
  return Diagram::from_parts(std::move(p));
}

// ------------------------------------------------------ derived quantities

int degree(const Diagram& d) { return (d.leg_count() + d.vertex_count()) / 2; }

int edge_count(const Diagram& d) { return d.half_edge_count() / 2; }

int internal_edge_count(const Diagram& d) {
  int n = 0;
  for (int h = 0; h < d.half_edge_count(); ++h) {
    int q = d.partner(h);
    if (h < q && !d.is_leg(h) && !d.is_leg(q)) ++n;
  }
  return n;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ComponentPartition component_partition(const Diagram& d) {
  // Nodes: vertices first, then one node per leg half-edge.
  const int t = d.vertex_count();
  const int H = d.half_edge_count();
  auto node = [&](int h) { return d.is_leg(h) ? t + h : d.vertex_of(h); };
  UnionFind uf(t + H);
  for (int h = 0; h < H; ++h) uf.join(node(h), node(d.partner(h)));

  ComponentPartition out;
  out.of_half_edge.assign(H, -1);
  out.of_vertex.assign(t, -1);
  std::vector<int> id(t + H, -1);
  // Number components by first appearance in slot order, then by vertex index.
  auto assign = [&](int n) {
    int r = uf.find(n);
    if (id[r] < 0) id[r] = out.count++;
    return id[r];
  };
  for (int h : d.legs_in_slot_order()) assign(node(h));
  for (int v = 0; v < t; ++v) assign(v);
  for (int h = 0; h < H; ++h) out.of_half_edge[h] = assign(node(h));
  for (int v = 0; v < t; ++v) out.of_vertex[v] = assign(v);
  return out;
}

int betti(const Diagram& d) {
  auto parts = component_partition(d);
  std::vector<char> has_vertex(parts.count, 0);
  for (int c : parts.of_vertex) has_vertex[c] = 1;
  int components = static_cast<int>(std::count(has_vertex.begin(), has_vertex.end(), 1));
  return internal_edge_count(d) - d.vertex_count() + components;
}

bool is_tree_diagram(const Diagram& d) { return betti(d) == 0; }

bool is_connected(const Diagram& d) { return component_partition(d).count == 1; }

bool has_legless_component(const Diagram& d) {
  auto parts = component_partition(d);
  std::vector<char> has_leg(parts.count, 0);
  for (int h = 0; h < d.half_edge_count(); ++h) {
    if (d.is_leg(h)) has_leg[parts.of_half_edge[h]] = 1;
  }
  return std::find(has_leg.begin(), has_leg.end(), 0) != has_leg.end();
}

int component_degree(const Diagram& d, const ComponentPartition& parts, int component) {
  int n = 0;
  for (int h = 0; h < d.half_edge_count(); ++h) {
    if (d.is_leg(h) && parts.of_half_edge[h] == component) ++n;
  }
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (parts.of_vertex[v] == component) ++n;
  }
  return n / 2;
}

Diagram restrict_to_component(const Diagram& d, const ComponentPartition& parts, int component) {
  const int H = d.half_edge_count();
  std::vector<int> remap(H, -1);
  int next = 0;
  for (int h = 0; h < H; ++h) {
    if (parts.of_half_edge[h] == component) remap[h] = next++;
  }
  DiagramParts out;
  out.skeleton = d.skeleton_ptr();
  out.legs.resize(d.legs().size());
  for (std::size_t c = 0; c < d.legs().size(); ++c) {
    for (int h : d.legs()[c]) {
      if (remap[h] >= 0) out.legs[c].push_back(remap[h]);
    }
  }
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (parts.of_vertex[v] != component) continue;
    const auto& tri = d.vertex(v);
    out.vertices.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
    out.vertex_names.push_back(d.vertex_name(v));
  }
  out.partner.assign(next, -1);
  out.names.resize(next);
  for (int h = 0; h < H; ++h) {
    if (remap[h] < 0) continue;
    out.partner[remap[h]] = remap[d.partner(h)];
    out.names[remap[h]] = d.name(h);
  }
  return Diagram::from_parts(std::move(out));
}

std::vector<Diagram> internal_components(const Diagram& d) {
  auto parts = component_partition(d);
  std::vector<Diagram> out;
  out.reserve(parts.count);
  for (int c = 0; c < parts.count; ++c) out.push_back(restrict_to_component(d, parts, c));
  return out;
}

}  // namespace jacobi
