#ifndef JACOBI_CLASPER_HPP
#define JACOBI_CLASPER_HPP

#include <string>
#include <vector>

#include "jacobi/certificate.hpp"
#include "jacobi/diagram.hpp"
#include "jacobi/error.hpp"
#include "jacobi/linear_combination.hpp"
#include "jacobi/reduction.hpp"

namespace jacobi {

enum class ClasperPartKind { disk_leaf, node, annulus_leaf, box };

struct ClasperPart {
  std::string name;
  ClasperPartKind kind = ClasperPartKind::disk_leaf;
  /// Skeleton component ids met by a leaf, in textual order.
  std::vector<std::string> slots;
};

struct ClasperEdge {
  std::string a;
  std::string b;
};

/// Combinatorial presentation of a graph clasper. A node's cyclic order is
/// the order in which its edge ends appear in `edges`; a component's slot
/// order is the textual order of the leaf slots on it.
struct Clasper {
  std::string name;
  SkeletonPtr skeleton;
  std::vector<ClasperPart> parts;
  std::vector<ClasperEdge> edges;
};

struct ClasperIssue {
  ErrorCode code;
  std::string token;
  std::string message;
};

/// Every violated invariant, in a fixed order; empty when valid.
std::vector<ClasperIssue> validate_clasper(const Clasper& c);
/// Throws the first issue.
void require_valid(const Clasper& c);

bool is_simple(const Clasper& c);
/// (disk-leaves + nodes) / 2; throws NonIntegerDegree when odd.
int degree(const Clasper& c);

/// One leg per disk-leaf, one vertex per node. Throws NotSimple.
Diagram shadow(const Clasper& c);

enum class LedgerKind { slide, zip_absorption };

std::string_view to_string(LedgerKind kind);

/// n1 <= n2; the two block degrees form an unordered pair.
struct LedgerEntry {
  LedgerKind kind = LedgerKind::slide;
  int n1 = 0;
  int n2 = 0;
  int bound() const { return n1 + n2; }

  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

struct Ledger {
  std::vector<LedgerEntry> entries;
  /// True when every entry has n1 + n2 >= n.
  bool sound(int n) const;
};

/// Top-level slides carry their block degrees; nested ones are absorbed at
/// the cost of the enclosing top-level split.
Ledger ledger_from_events(const std::vector<SlideEvent>& events);

/// Recomputes the ledger from a certificate alone: each SLIDE-JOIN is
/// traced back through the steps to the split moves above it.
Ledger ledger_from_certificate(const Certificate& cert);

struct ClasperReduction {
  LinearCombination combination;
  Certificate certificate;
  Ledger ledger;
};

/// Throws as reduce_to_trees, plus DegreeMismatch if a ledger entry falls
/// below the clasper degree.
ClasperReduction reduce_clasper(const Clasper& c, const ReductionOptions& opts = {});

}  // namespace jacobi

#endif  // JACOBI_CLASPER_HPP
