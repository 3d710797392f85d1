#include "jacobi/elimination.hpp"

#include <algorithm>
#include <numeric>

#include "jacobi/canonical.hpp"
#include "jacobi/error.hpp"

namespace jacobi {

SpanSolver::SpanSolver(const RelationSystem& sys, bool track_expressions)
    : sys_(&sys), track_(track_expressions) {
  build(sys, {});
}

SpanSolver::SpanSolver(const RelationSystem& sys, const std::vector<LinearCombination>& extra_rows,
                       bool track_expressions)
    : sys_(&sys), track_(track_expressions) {
  build(sys, extra_rows);
}

void SpanSolver::build(const RelationSystem& sys, const std::vector<LinearCombination>& extra) {
  const int n = static_cast<int>(sys.basis.size());
  column_of_basis_.assign(n, -1);
  basis_of_column_.clear();
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < n; ++i) {
      if ((sys.basis_is_tree[i] != 0) == (pass == 1)) {
        column_of_basis_[i] = static_cast<int>(basis_of_column_.size());
        basis_of_column_.push_back(i);
      }
    }
  }
  pivot_of_column_.assign(n, -1);

  auto add_row = [&](const LinearCombination& lc) {
    auto cols = to_columns(lc);
    mpz_class den = 1;
    for (auto& [c, q] : cols) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Entry> row;
    for (auto& [c, q] : cols) row.push_back({c, mpz_class(q * den)});
    std::vector<std::pair<int, mpq_class>> expr;
    if (track_) expr.emplace_back(row_count_, mpq_class(den));
    ++row_count_;
    insert(std::move(row), std::move(expr));
  };
  for (const auto& r : sys.rows) add_row(r);
  for (const auto& r : extra) add_row(r);
}

std::map<int, mpq_class> SpanSolver::to_columns(const LinearCombination& v) const {
  std::map<int, mpq_class> out;
  for (const auto& [digest, c] : v.terms()) {
    int i = sys_->index_of(digest);
    if (i < 0) {
      throw Error(ErrorCode::BasisMismatch, digest,
                  "digest '" + digest + "' is not a basis class of this system");
    }
    out.emplace(column_of_basis_[i], c);
  }
  return out;
}

namespace {

template <typename T>
void axpy_expr(std::vector<std::pair<int, T>>& x, const T& a,
               const std::vector<std::pair<int, T>>& y, const T& b) {
  // x <- a*x + b*y, both sorted by index.
  std::vector<std::pair<int, T>> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, b * y[j].second);
      ++j;
    } else {
      T v = a * x[i].second + b * y[j].second;
      if (sgn(v) != 0) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  x = std::move(out);
}

}  // namespace

void SpanSolver::insert(std::vector<Entry> row, std::vector<std::pair<int, mpq_class>> expr) {
  while (!row.empty()) {
    const int lead = row.front().col;
    const int p = pivot_of_column_[lead];
    if (p < 0) {
      mpz_class g = 0;
      for (const auto& e : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
      if (sgn(row.front().value) < 0) g = -g;
      for (auto& e : row) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
      mpq_class inv(1, 1);
      inv /= mpq_class(g);
      for (auto& [k, c] : expr) c *= inv;
      pivot_of_column_[lead] = static_cast<int>(pivots_.size());
      pivots_.push_back({std::move(row), std::move(expr)});
      return;
    }
    const PivotRow& P = pivots_[p];
    const mpz_class a = P.entries.front().value;
    const mpz_class b = row.front().value;
    // row <- a*row - b*P, then strip the content.
    std::vector<Entry> out;
    out.reserve(row.size() + P.entries.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < P.entries.size()) {
      if (j == P.entries.size() || (i < row.size() && row[i].col < P.entries[j].col)) {
        out.push_back({row[i].col, a * row[i].value});
        ++i;
      } else if (i == row.size() || P.entries[j].col < row[i].col) {
        out.push_back({P.entries[j].col, -b * P.entries[j].value});
        ++j;
      } else {
        mpz_class v = a * row[i].value - b * P.entries[j].value;
        if (sgn(v) != 0) out.push_back({row[i].col, std::move(v)});
        ++i;
        ++j;
      }
    }
    if (track_) axpy_expr<mpq_class>(expr, mpq_class(a), P.expression, mpq_class(-b));
    mpz_class g = 0;
    for (const auto& e : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
    if (g > 1) {
      for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
      for (auto& [k, c] : expr) c /= mpq_class(g);
    }
    row = std::move(out);
  }
}

LinearCombination SpanSolver::reduce(const LinearCombination& v,
                                     std::map<int, mpq_class>* expr) const {
  auto cols = to_columns(v);
  auto it = cols.begin();
  while (it != cols.end()) {
    const int p = pivot_of_column_[it->first];
    if (p < 0) {
      ++it;
      continue;
    }
    const int lead = it->first;
    const PivotRow& P = pivots_[p];
    const mpq_class factor = it->second / mpq_class(P.entries.front().value);
    for (const auto& e : P.entries) {
      auto [pos, fresh] = cols.try_emplace(e.col, 0);
      pos->second -= factor * mpq_class(e.value);
      if (sgn(pos->second) == 0) cols.erase(pos);
    }
    if (expr) {
      for (const auto& [k, c] : P.expression) {
        auto& slot = (*expr)[k];
        slot += factor * c;
      }
    }
    it = cols.upper_bound(lead);
  }
  LinearCombination out;
  for (const auto& [c, q] : cols) out.add(sys_->basis[basis_of_column_[c]], q);
  return out;
}

LinearCombination SpanSolver::normal_form(const LinearCombination& v) const {
  return reduce(v, nullptr);
}

std::optional<std::vector<mpq_class>> SpanSolver::express(const LinearCombination& v) const {
  if (!track_) {
    throw Error(ErrorCode::BasisMismatch, {}, "solver was built without expression tracking");
  }
  std::map<int, mpq_class> expr;
  if (!reduce(v, &expr).empty()) return std::nullopt;
  std::vector<mpq_class> out(row_count_, 0);
  for (const auto& [k, c] : expr) out[k] = c;
  return out;
}

int sparse_rank(const RelationSystem& sys) { return SpanSolver(sys).rank(); }

int dense_rank(std::vector<std::vector<mpz_class>> m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  mpz_class prev = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (sgn(m[r][c]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int k = c + 1; k < cols; ++k) {
        mpz_class v = m[rank][c] * m[r][k] - m[r][c] * m[rank][k];
        if (!mpz_divisible_p(v.get_mpz_t(), prev.get_mpz_t())) {
          throw Error(ErrorCode::BasisMismatch, {}, "Bareiss step lost exact divisibility");
        }
        mpz_divexact(m[r][k].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

int dense_rank(const RelationSystem& sys) {
  const std::size_t n = sys.basis.size();
  std::vector<std::vector<mpz_class>> m;
  m.reserve(sys.rows.size());
  for (const auto& row : sys.rows) {
    std::vector<mpz_class> dense(n, 0);
    mpz_class den = 1;
    for (const auto& [d, c] : row.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [d, c] : row.terms()) {
      int i = sys.index_of(d);
      if (i < 0) throw Error(ErrorCode::BasisMismatch, d, "row digest outside basis");
      dense[i] = mpz_class(c * den);
    }
    m.push_back(std::move(dense));
  }
  return dense_rank(std::move(m));
}

std::optional<std::vector<mpq_class>> in_span(const LinearCombination& v, const RelationSystem& sys) {
  return SpanSolver(sys, true).express(v);
}

std::optional<LinearCombination> express_in_tree_basis(const Diagram& d, const RelationSystem& sys,
                                                       const SpanSolver& solver) {
  if (degree(d) != sys.degree || !d.skeleton().same_shape(*sys.skeleton)) {
    throw Error(ErrorCode::BasisMismatch, {}, "diagram degree or skeleton differs from the system");
  }
  const CanonicalDiagram cd = canonicalize(d);
  LinearCombination v = LinearCombination::of(cd);
  if (cd.is_zero()) return v;
  if (is_tree_diagram(d)) return v;
  LinearCombination nf = solver.normal_form(v);
  for (const auto& [digest, c] : nf.terms()) {
    if (!sys.basis_is_tree[sys.index_of(digest)]) return std::nullopt;
  }
  return nf;
}

std::optional<LinearCombination> express_in_tree_basis(const Diagram& d, const RelationSystem& sys) {
  return express_in_tree_basis(d, sys, SpanSolver(sys));
}

DimensionReport dimension_report(const SkeletonPtr& skeleton, int degree,
                                 const RelationOptions& opts) {
  RelationSystem sys = generate_relations(skeleton, degree, opts);
  DimensionReport r;
  r.total_classes = static_cast<int>(sys.basis.size());
  r.relation_rows = static_cast<int>(sys.rows.size());
  SpanSolver solver(sys);
  r.relation_rank = solver.rank();
  r.dense_relation_rank = dense_rank(sys);
  r.quotient_rank = r.total_classes - r.relation_rank;
  std::vector<LinearCombination> trees;
  for (std::size_t i = 0; i < sys.basis.size(); ++i) {
    if (sys.basis_is_tree[i]) trees.push_back(LinearCombination::single(sys.basis[i]));
  }
  r.tree_span_rank = SpanSolver(sys, trees).rank() - r.relation_rank;
  for (std::size_t i = 0; i < sys.basis.size(); ++i) {
    Diagram d = diagram_from_digest(skeleton, sys.basis[i]);
    if (!is_connected(d)) continue;
    ++r.connected_classes;
    if (express_in_tree_basis(d, sys, solver)) ++r.connected_in_tree_span;
  }
  return r;
}

}  // namespace jacobi
