#ifndef JACOBI_REDUCTION_HPP
#define JACOBI_REDUCTION_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jacobi/certificate.hpp"
#include "jacobi/diagram.hpp"
#include "jacobi/error.hpp"
#include "jacobi/linear_combination.hpp"
#include "jacobi/stu.hpp"

namespace jacobi {

struct RelationSystem;
class SpanSolver;

enum class Strategy { cycle_first, nearest_cycle, first_leg };
enum class Fallback { error, linear_solve };

Strategy parse_strategy(std::string_view text);
Fallback parse_fallback(std::string_view text);
std::string_view to_string(Strategy s);
std::string_view to_string(Fallback f);

struct ReductionOptions {
  Strategy strategy = Strategy::cycle_first;
  int max_steps = 10000;
  Fallback fallback = Fallback::linear_solve;
  /// Used by the linear-solve fallback; generated on demand when null.
  const RelationSystem* system = nullptr;
  const SpanSolver* solver = nullptr;
};

/// Vertex-adjacent leg picked by the strategy; ties go to the earlier slot.
/// Throws NoEligibleLeg when no leg ends at a vertex.
int choose_leg(const Diagram& d, Strategy strategy);
/// Same, restricted to legs of one internal component.
int choose_leg(const Diagram& d, Strategy strategy, const ComponentPartition& parts, int component);

/// Internal-graph distance from each vertex to the nearest vertex on a
/// cycle; -1 for vertices in acyclic components.
std::vector<int> distance_to_cycle(const Diagram& d);

/// Two adjacent leg blocks on one skeleton component: slots start..start+p-1
/// then the next q slots (wrapping on circles).
struct InterleaveRecord {
  int component = 0;
  int start = 0;
  int p = 0;
  int q = 0;
};

struct SplitRecord {
  Diagram g1;  // component of T holding the first new leg
  Diagram g2;
  int degree1 = 0;
  int degree2 = 0;
  /// Slot of each component's legs in T, per skeleton component.
  std::vector<std::vector<int>> g1_slots;
  std::vector<std::vector<int>> g2_slots;
  InterleaveRecord interleave;
};

struct CaseResult {
  StuExpansion expansion;
  std::optional<SplitRecord> split;  // empty for Case 1

  int which() const { return split ? 2 : 1; }
};

CaseResult step_move9(const Diagram& d, int leg);

struct SlideTerms {
  Diagram sigma;                // blocks exchanged
  std::vector<Diagram> joined;  // one per adjacent transposition
};

/// tau = sigma + sum(joined). The joined leg is named `joined_name` when tau
/// carries tokens. Throws NotSlidePair when the record does not fit tau.
SlideTerms slide_terms(const Diagram& tau, const InterleaveRecord& rec,
                       const std::string& joined_name = {});

/// T - U as a sum of joined terms. Throws NotSlidePair unless U is T with
/// the recorded blocks exchanged.
LinearCombination slide_expansion(const Diagram& t_term, const Diagram& u_term,
                                  const InterleaveRecord& rec);
/// Searches for a block pair (first in slot order) whose exchange gives U.
/// When several fit, the result is one of several STU-equivalent sums.
LinearCombination slide_expansion(const Diagram& t_term, const Diagram& u_term);

struct SlideEvent {
  int depth = 0;
  int n1 = 0;  // degrees of the two blocks' components after the split
  int n2 = 0;
  int outer1 = 0;  // split degrees of the enclosing top-level split
  int outer2 = 0;
};

struct ReductionResult {
  LinearCombination combination;
  Certificate certificate;
  std::vector<SlideEvent> slides;
  bool oracle_solved = false;
};

/// Throws LeglessComponent, StepBudgetExhausted.
ReductionResult reduce_to_trees(const Diagram& d, const ReductionOptions& opts = {});

using ReductionOutcome = std::variant<ReductionResult, Error>;

std::vector<ReductionOutcome> reduce_all(const std::vector<Diagram>& inputs,
                                         const ReductionOptions& opts = {});
std::vector<ReductionOutcome> reduce_all_serial(const std::vector<Diagram>& inputs,
                                                const ReductionOptions& opts = {});

/// Copy of d whose half-edges carry explicit tokens.
Diagram named_copy(const Diagram& d);

}  // namespace jacobi

#endif  // JACOBI_REDUCTION_HPP
