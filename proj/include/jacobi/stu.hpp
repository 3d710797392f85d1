#ifndef JACOBI_STU_HPP
#define JACOBI_STU_HPP

#include <string>
#include <vector>

#include "jacobi/diagram.hpp"
#include "jacobi/linear_combination.hpp"

namespace jacobi {

/// The two leg orderings produced by removing the vertex v next to `leg`.
/// Reading v's cyclic order from the leg edge as (e0, e1, e2): in T the new
/// legs a (on e1) and b (on e2) occupy the old slot in the order a, b; in U
/// the order is b, a. `a`/`b` are the new half-edge ids in each term.
struct StuExpansion {
  Diagram t_term;
  Diagram u_term;
  int vertex = -1;
  int a = -1;
  int b = -1;
};

/// Throws LegNotAdjacentToVertex if `leg` is not a leg whose edge ends at a
/// vertex. New legs are named `name_a`/`name_b` when the input carries tokens.
StuExpansion stu_expand(const Diagram& d, int leg, const std::string& name_a = {},
                        const std::string& name_b = {});

/// D - T + U, canonicalized.
LinearCombination stu_row(const Diagram& d, int leg);

/// Legs whose edge ends at an internal vertex, in slot order.
std::vector<int> vertex_adjacent_legs(const Diagram& d);

/// One IHX triple around an internal edge x-y. With x = (e, A, B) and
/// y = (e', C, D'): i = (e,A,B | e',C,D'), h = (e,A,C | e',B,D'),
/// x = (e,B,C | e',A,D'). The relation is I - H + X = 0.
struct IhxTriple {
  Diagram i;
  Diagram h;
  Diagram x;
};

/// Every IHX triple of d: one per internal edge joining two distinct
/// vertices, unless a rewired term gets a component without legs.
std::vector<IhxTriple> ihx_instances(const Diagram& d);

LinearCombination ihx_row(const IhxTriple& triple);

}  // namespace jacobi

#endif  // JACOBI_STU_HPP
