#ifndef JACOBI_CANONICAL_HPP
#define JACOBI_CANONICAL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacobi/diagram.hpp"

namespace jacobi {

/// Isomorphism class of a diagram with antisymmetry folded in.
///
/// The digest is `<legs per component, '.'-joined>_<partner code>`, where the
/// partner code lists, for every canonical half-edge label in order, the
/// label of its partner as one base-62 character. Legs take labels
/// 0..u-1 in slot order; vertex k owns labels u+3k..u+3k+2 in its canonical
/// cyclic order. `sign` relates the input to the diagram rebuilt from the
/// digest: input = sign * canonical, and sign == 0 means the class is killed
/// by an orientation-reversing automorphism.
struct CanonicalDiagram {
  std::string digest;
  int sign = 1;

  bool is_zero() const { return sign == 0; }
  friend bool operator==(const CanonicalDiagram&, const CanonicalDiagram&) = default;
};

struct Canonicalization {
  CanonicalDiagram canonical;
  /// label_of[h] = canonical label of half-edge h (the witness relabeling).
  std::vector<int> label_of;
  /// Orientation sign of the witness labeling (nonzero even for zero classes).
  int witness_sign = 1;
};

Canonicalization canonicalize_with_labels(const Diagram& d);
CanonicalDiagram canonicalize(const Diagram& d);

/// s with d1 = s * d2 when isomorphic (same skeleton shape), else empty.
/// For zero classes the returned sign is the one realised by the witness maps.
std::optional<int> is_isomorphic(const Diagram& d1, const Diagram& d2);

/// Rebuilds the canonical representative. Tokens are l1.., v1.., h1.. in
/// digest order. Throws MalformedDigest when the string is not a valid code
/// for this skeleton (it need not be minimal; see is_canonical_digest).
Diagram diagram_from_digest(const SkeletonPtr& skeleton, std::string_view digest);

/// True when the digest decodes and is its own canonical form.
bool is_canonical_digest(const SkeletonPtr& skeleton, std::string_view digest);

/// Degree encoded by a digest, without rebuilding the diagram.
int digest_degree(std::string_view digest);

/// Encodes a label-form diagram (legs 0..u-1 per component, vertex k at
/// u+3k..u+3k+2) into digest syntax. Used by enumeration.
std::string encode_code(const std::vector<int>& legs_per_component, const std::vector<int>& partner);

/// Token for canonical leg label `label` ("l1" for label 0).
std::string canonical_leg_token(int label);
/// Inverse of canonical_leg_token; -1 when malformed.
int parse_canonical_leg_token(std::string_view token);

constexpr int kMaxHalfEdges = 62;

}  // namespace jacobi

#endif  // JACOBI_CANONICAL_HPP
