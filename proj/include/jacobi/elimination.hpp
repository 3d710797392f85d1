#ifndef JACOBI_ELIMINATION_HPP
#define JACOBI_ELIMINATION_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "jacobi/diagram.hpp"
#include "jacobi/linear_combination.hpp"
#include "jacobi/relations.hpp"

namespace jacobi {

/// Sparse fraction-free row echelon form of a relation system. Columns are
/// ordered non-tree classes first, then trees, each in digest order, so the
/// normal form of anything equivalent to a tree combination is supported on
/// trees.
class SpanSolver {
 public:
  explicit SpanSolver(const RelationSystem& sys, bool track_expressions = false);
  /// Same, with extra rows appended after the system's own.
  SpanSolver(const RelationSystem& sys, const std::vector<LinearCombination>& extra_rows,
             bool track_expressions = false);

  int rank() const { return static_cast<int>(pivots_.size()); }

  /// Remainder after reducing by the echelon rows. Throws BasisMismatch on
  /// digests outside the basis.
  LinearCombination normal_form(const LinearCombination& v) const;
  bool contains(const LinearCombination& v) const { return normal_form(v).empty(); }

  /// Coefficients c with v = sum c_i rows_i, or empty. Needs tracking.
  std::optional<std::vector<mpq_class>> express(const LinearCombination& v) const;

 private:
  struct Entry {
    int col;
    mpz_class value;
  };
  struct PivotRow {
    std::vector<Entry> entries;
    std::vector<std::pair<int, mpq_class>> expression;
  };

  void build(const RelationSystem& sys, const std::vector<LinearCombination>& extra);
  void insert(std::vector<Entry> row, std::vector<std::pair<int, mpq_class>> expr);
  std::map<int, mpq_class> to_columns(const LinearCombination& v) const;
  LinearCombination reduce(const LinearCombination& v, std::map<int, mpq_class>* expr) const;

  const RelationSystem* sys_;
  bool track_;
  std::vector<int> column_of_basis_;
  std::vector<int> basis_of_column_;
  std::vector<int> pivot_of_column_;
  std::vector<PivotRow> pivots_;
  int row_count_ = 0;
};

int sparse_rank(const RelationSystem& sys);
/// Bareiss elimination on the dense row matrix.
int dense_rank(const RelationSystem& sys);
/// Fraction-free Bareiss rank of an integer matrix.
int dense_rank(std::vector<std::vector<mpz_class>> matrix);

/// Row coefficients expressing v, or empty when v is not in the span.
std::optional<std::vector<mpq_class>> in_span(const LinearCombination& v, const RelationSystem& sys);

/// A tree-supported combination equal to d modulo the rows, or empty.
std::optional<LinearCombination> express_in_tree_basis(const Diagram& d, const RelationSystem& sys);
std::optional<LinearCombination> express_in_tree_basis(const Diagram& d, const RelationSystem& sys,
                                                       const SpanSolver& solver);

struct DimensionReport {
  int total_classes = 0;
  int relation_rows = 0;
  int relation_rank = 0;
  int dense_relation_rank = 0;
  int quotient_rank = 0;
  int tree_span_rank = 0;
  int connected_classes = 0;
  int connected_in_tree_span = 0;
};

DimensionReport dimension_report(const SkeletonPtr& skeleton, int degree,
                                 const RelationOptions& opts = {});

}  // namespace jacobi

#endif  // JACOBI_ELIMINATION_HPP
