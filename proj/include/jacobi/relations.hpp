#ifndef JACOBI_RELATIONS_HPP
#define JACOBI_RELATIONS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "jacobi/diagram.hpp"
#include "jacobi/enumeration.hpp"
#include "jacobi/linear_combination.hpp"

namespace jacobi {

/// STU relations of one degree on one skeleton. The basis is the nonzero
/// classes in digest order; rows are deduplicated and sorted.
struct RelationSystem {
  SkeletonPtr skeleton;
  int degree = 0;
  std::vector<std::string> basis;
  std::vector<char> basis_is_tree;
  std::vector<LinearCombination> rows;

  /// Basis index of a digest, or -1.
  int index_of(std::string_view digest) const;
};

struct RelationOptions {
  int max_degree = kDefaultDegreeBudget;
};

/// One row per (class, vertex-adjacent leg). Classes killed by antisymmetry
/// contribute rows too, with their own term dropped.
RelationSystem generate_relations(const SkeletonPtr& skeleton, int degree,
                                  const RelationOptions& opts = {});
RelationSystem generate_relations_serial(const SkeletonPtr& skeleton, int degree,
                                         const RelationOptions& opts = {});

/// One row per line, `digest: p/q, ...`.
std::string serialize_relations(const RelationSystem& sys);

}  // namespace jacobi

#endif  // JACOBI_RELATIONS_HPP
