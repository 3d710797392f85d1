#ifndef JACOBI_ENUMERATION_HPP
#define JACOBI_ENUMERATION_HPP

#include <string_view>
#include <vector>

#include "jacobi/canonical.hpp"
#include "jacobi/diagram.hpp"

namespace jacobi {

/// Composable filters; `all` is the empty mask.
enum Filter : unsigned {
  kFilterAll = 0,
  kFilterConnected = 1u << 0,
  kFilterTrees = 1u << 1,
  kFilterNonzero = 1u << 2,
};

/// Parses "all", "connected", "trees", "nonzero" or a '+'-joined mix.
unsigned parse_filters(std::string_view text);

constexpr int kDefaultDegreeBudget = 4;

struct EnumerationSpec {
  SkeletonPtr skeleton;
  int degree = 1;
  unsigned filters = kFilterAll;
  int max_degree = kDefaultDegreeBudget;
};

/// One isomorphism class. `sign` is 0 for classes killed by antisymmetry
/// and +1 otherwise (the digest is its own representative).
struct EnumeratedClass {
  CanonicalDiagram canonical;
  bool connected = false;
  bool tree = false;
};

/// Every class of the given degree whose internal components all carry a
/// leg, in digest order. Parallel over (vertex count, leg composition).
std::vector<EnumeratedClass> enumerate_classes(const EnumerationSpec& spec);
/// Single-threaded reference; same output.
std::vector<EnumeratedClass> enumerate_classes_serial(const EnumerationSpec& spec);

std::vector<CanonicalDiagram> enumerate_diagrams(const EnumerationSpec& spec);

}  // namespace jacobi

#endif  // JACOBI_ENUMERATION_HPP
