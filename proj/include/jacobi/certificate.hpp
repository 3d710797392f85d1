#ifndef JACOBI_CERTIFICATE_HPP
#define JACOBI_CERTIFICATE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "jacobi/diagram.hpp"
#include "jacobi/linear_combination.hpp"

namespace jacobi {

struct RelationSystem;
class SpanSolver;

enum class StepKind { StuExpand, SlideJoin, CanonicalZero, OracleSolved };

std::string_view to_string(StepKind kind);

/// One rewrite: the parent's whole current coefficient c is replaced by
/// c * children.
struct CertificateStep {
  int index = 0;
  StepKind kind = StepKind::StuExpand;
  std::string parent;
  std::string location;  // "-" when the step has none
  LinearCombination children;
};

/// Replayable proof that the canonical input equals `result` modulo STU.
/// The input is certified in canonical orientation: a diagram d with
/// canonical sign s reduces to s * result.
struct Certificate {
  SkeletonPtr skeleton;
  std::string input;
  std::vector<CertificateStep> steps;
  LinearCombination result;
};

std::string serialize_certificate(const Certificate& cert);
/// Throws ParseError with the offending line number.
Certificate parse_certificate(std::string_view text);

/// Applies the steps to [input]. Throws UnknownDigest when a step refers to
/// a digest that neither the input nor an earlier step introduced.
LinearCombination replay(const Certificate& cert);

struct VerificationReport {
  bool ok = false;
  /// 1-based index of the first failing step; 0 when the failure is in the
  /// final comparison or span check; -1 when everything passed.
  int failing_step = -1;
  std::string diagnostics;
};

/// Regenerates every step from its parent digest and location, replays the
/// rewrite, compares with RESULT and checks input - RESULT against the span.
/// Throws UnknownDigest and DegreeMismatch.
VerificationReport verify_certificate(const Certificate& cert, const RelationSystem& sys);
VerificationReport verify_certificate(const Certificate& cert, const RelationSystem& sys,
                                      const SpanSolver& solver);

}  // namespace jacobi

#endif  // JACOBI_CERTIFICATE_HPP
