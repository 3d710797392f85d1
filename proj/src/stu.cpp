#include "jacobi/stu.hpp"

#include <unordered_set>

#include "jacobi/canonical.hpp"
#include "jacobi/error.hpp"

namespace jacobi {

namespace {

std::string fresh_name(const Diagram& d, const std::string& wanted, const std::string& avoid) {
  if (!wanted.empty()) return wanted;
  std::unordered_set<std::string> used;
  for (int h = 0; h < d.half_edge_count(); ++h) used.insert(d.name(h));
  for (int k = 1;; ++k) {
    std::string s = "~" + std::to_string(k);
    if (!used.count(s) && s != avoid) return s;
  }
}

Diagram build_term(const Diagram& d, int leg, int v, const std::array<int, 3>& rot,
                   bool swap_order, const std::string& name_a, const std::string& name_b) {
  const int H = d.half_edge_count();
  std::vector<int> remap(H, -1);
  int next = 0;
  for (int h = 0; h < H; ++h) {
    if (h == leg || d.vertex_of(h) == v) continue;
    remap[h] = next++;
  }
  const int a = next, b = next + 1;
  const int p1 = d.partner(rot[1]);
  const int p2 = d.partner(rot[2]);

  DiagramParts out;
  out.skeleton = d.skeleton_ptr();
  out.legs.resize(d.legs().size());
  for (std::size_t c = 0; c < d.legs().size(); ++c) {
    for (int h : d.legs()[c]) {
      if (h == leg) {
        out.legs[c].push_back(swap_order ? b : a);
        out.legs[c].push_back(swap_order ? a : b);
      } else {
        out.legs[c].push_back(remap[h]);
      }
    }
  }
  const bool named = !d.parts().names.empty();
  for (int w = 0; w < d.vertex_count(); ++w) {
    if (w == v) continue;
    const auto& tri = d.vertex(w);
    out.vertices.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
    out.vertex_names.push_back(d.vertex_name(w));
  }
  out.partner.assign(next + 2, -1);
  for (int h = 0; h < H; ++h) {
    if (remap[h] >= 0 && h != p1 && h != p2) out.partner[remap[h]] = remap[d.partner(h)];
  }
  if (p1 == rot[2]) {
    // e1 and e2 form a loop at v: the new legs become a chord.
    out.partner[a] = b;
    out.partner[b] = a;
  } else {
    out.partner[a] = remap[p1];
    out.partner[remap[p1]] = a;
    out.partner[b] = remap[p2];
    out.partner[remap[p2]] = b;
  }
  if (named) {
    out.names.resize(next + 2);
    for (int h = 0; h < H; ++h) {
      if (remap[h] >= 0) out.names[remap[h]] = d.name(h);
    }
    out.names[a] = name_a;
    out.names[b] = name_b;
  }
  return Diagram::from_parts(std::move(out));
}

}  // namespace

StuExpansion stu_expand(const Diagram& d, int leg, const std::string& name_a,
                        const std::string& name_b) {
  if (leg < 0 || leg >= d.half_edge_count() || !d.is_leg(leg) || d.is_leg(d.partner(leg))) {
    std::string token = leg >= 0 && leg < d.half_edge_count() ? d.name(leg) : std::to_string(leg);
    throw Error(ErrorCode::LegNotAdjacentToVertex, token,
                "leg '" + token + "' does not end at an internal vertex");
  }
  const int h0 = d.partner(leg);
  const int v = d.vertex_of(h0);
  const int k = d.position_in_vertex(h0);
  const auto& tri = d.vertex(v);
  const std::array<int, 3> rot{tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]};

  std::string na, nb;
  if (!d.parts().names.empty()) {
    na = fresh_name(d, name_a, {});
    nb = fresh_name(d, name_b, na);
  }
  StuExpansion out{build_term(d, leg, v, rot, false, na, nb),
                   build_term(d, leg, v, rot, true, na, nb), v, -1, -1};
  const int H = d.half_edge_count();
  out.a = H - 4;
  out.b = H - 3;
  return out;
}

LinearCombination stu_row(const Diagram& d, int leg) {
  auto ex = stu_expand(d, leg);
  LinearCombination row;
  row.add(canonicalize(d), 1);
  row.add(canonicalize(ex.t_term), -1);
  row.add(canonicalize(ex.u_term), 1);
  return row;
}

std::vector<int> vertex_adjacent_legs(const Diagram& d) {
  std::vector<int> out;
  for (int h : d.legs_in_slot_order()) {
    if (!d.is_leg(d.partner(h))) out.push_back(h);
  }
  return out;
}

namespace {

Diagram with_vertices(const Diagram& d, int x, const std::array<int, 3>& tx, int y,
                      const std::array<int, 3>& ty) {
  DiagramParts parts = d.parts();
  parts.vertices[x] = tx;
  parts.vertices[y] = ty;
  return Diagram::from_parts(std::move(parts));
}

}  // namespace

std::vector<IhxTriple> ihx_instances(const Diagram& d) {
  std::vector<IhxTriple> out;
  for (int h = 0; h < d.half_edge_count(); ++h) {
    const int g = d.partner(h);
    if (d.is_leg(h) || d.is_leg(g) || h > g) continue;
    const int x = d.vertex_of(h), y = d.vertex_of(g);
    if (x == y) continue;
    const auto& vx = d.vertex(x);
    const auto& vy = d.vertex(y);
    const int kx = d.position_in_vertex(h), ky = d.position_in_vertex(g);
    const int A = vx[(kx + 1) % 3], B = vx[(kx + 2) % 3];
    const int C = vy[(ky + 1) % 3], D = vy[(ky + 2) % 3];
    IhxTriple t{with_vertices(d, x, {h, A, B}, y, {g, C, D}),
                with_vertices(d, x, {h, A, C}, y, {g, B, D}),
                with_vertices(d, x, {h, B, C}, y, {g, A, D})};
    // Rewiring can cut off a leg-free piece; such terms live outside the space.
    if (has_legless_component(t.h) || has_legless_component(t.x)) continue;
    out.push_back(std::move(t));
  }
  return out;
}

LinearCombination ihx_row(const IhxTriple& triple) {
  LinearCombination row;
  row.add(canonicalize(triple.i), 1);
  row.add(canonicalize(triple.h), -1);
  row.add(canonicalize(triple.x), 1);
  return row;
}

}  // namespace jacobi
