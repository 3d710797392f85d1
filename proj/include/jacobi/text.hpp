#ifndef JACOBI_TEXT_HPP
#define JACOBI_TEXT_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jacobi/clasper.hpp"
#include "jacobi/diagram.hpp"

namespace jacobi {

/// Everything declared in one input file, in declaration order.
struct Document {
  std::vector<SkeletonPtr> skeletons;
  std::vector<std::pair<std::string, Diagram>> diagrams;
  std::vector<Clasper> claspers;

  SkeletonPtr skeleton(std::string_view name) const;
};

/// Syntax errors raise ParseError; diagram validation errors raise the
/// corresponding Error. Claspers are parsed but not validated.
Document parse_document(std::string_view text);

/// A single `skeleton S { ... }` declaration.
SkeletonPtr parse_skeleton(std::string_view text);

std::string to_text(const Skeleton& s);
/// One line, using the diagram's own tokens.
std::string to_text(const Diagram& d, std::string_view name);
/// The canonical representative with tokens l1.., v1.., h1...
std::string canonical_text(const SkeletonPtr& skeleton, std::string_view digest,
                           std::string_view name);
std::string to_text(const Clasper& c);

}  // namespace jacobi

#endif  // JACOBI_TEXT_HPP
