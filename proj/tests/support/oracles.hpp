#ifndef JACOBI_TESTS_ORACLES_HPP
#define JACOBI_TESTS_ORACLES_HPP

// Independent reference implementations used only by tests. None of these
// call into the code paths they check beyond Diagram construction and
// canonicalize() (for the enumeration oracle, which checks completeness of
// the generator, not the canonical form).

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "jacobi/diagram.hpp"
#include "jacobi/linear_combination.hpp"

namespace oracle {

/// Digest -> zero flag for every class of the degree reachable with at most
/// `max_half_edges` half-edges, found by trying every perfect matching.
std::map<std::string, bool> brute_force_classes(const jacobi::SkeletonPtr& sk, int degree,
                                                int max_half_edges);

/// Internal vertices encoded by a digest.
int digest_vertices(const std::string& digest);

/// Parities (0 even, 1 odd) of all isomorphisms d1 -> d2 that keep slot
/// order (rotations allowed on circles). Exhaustive over vertex bijections
/// and the six local maps per vertex.
std::set<int> isomorphism_parities(const jacobi::Diagram& d1, const jacobi::Diagram& d2);

/// True when some automorphism reverses an odd number of vertex orders.
inline bool killed_by_symmetry(const jacobi::Diagram& d) {
  return isomorphism_parities(d, d).count(1) > 0;
}

/// BFS over the internal graph.
int betti(const jacobi::Diagram& d);
/// Vertex components plus chords.
int component_count(const jacobi::Diagram& d);
bool has_legless_component(const jacobi::Diagram& d);

/// Rank of the rows over Q by plain Gaussian elimination on a dense table.
int rational_rank(const std::vector<jacobi::LinearCombination>& rows);
/// True when v is in the rational span of rows (rank test).
bool in_rational_span(const std::vector<jacobi::LinearCombination>& rows,
                      const jacobi::LinearCombination& v);

}  // namespace oracle

#endif
