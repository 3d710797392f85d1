#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "jacobi/elimination.hpp"
#include "jacobi/error.hpp"
#include "jacobi/relations.hpp"
#include "jacobi/stu.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

LinearCombination combine(const RelationSystem& sys, const std::vector<mpq_class>& coeffs) {
  LinearCombination out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.add(sys.rows[i], coeffs[i]);
  return out;
}

}  // namespace

TEST_CASE("no relations at degree 1") {
  auto sys = generate_relations(make_skeleton("interval"), 1);
  CHECK(sys.rows.empty());
  CHECK(sys.basis.size() == 1);
  CHECK(sparse_rank(sys) == 0);
}

TEST_CASE("sparse, dense and oracle ranks agree") {
  struct Case {
    const char* shape;
    int degree;
    int quotient;
  };
  // quotient ranks: 1, 2, 3 on an interval; 1, 2 on a circle
  for (auto [shape, n, q] : {Case{"interval", 1, 1}, Case{"interval", 2, 2}, Case{"interval", 3, 3},
                             Case{"circle", 1, 1}, Case{"circle", 2, 2}}) {
    auto sys = generate_relations(make_skeleton(shape), n);
    const int sparse = sparse_rank(sys);
    INFO(shape << " n=" << n);
    CHECK(sparse == dense_rank(sys));
    CHECK(sparse == oracle::rational_rank(sys.rows));
    CHECK(static_cast<int>(sys.basis.size()) - sparse == q);
  }
}

TEST_CASE("rows stay inside the enumerated basis") {
  auto sk = make_skeleton("interval");
  for (int n = 1; n <= 3; ++n) {
    auto sys = generate_relations(sk, n);
    for (const auto& row : sys.rows) {
      CHECK_FALSE(row.empty());
      for (const auto& [d, c] : row.terms()) CHECK(sys.index_of(d) >= 0);
      CHECK(sgn(row.terms().begin()->second) > 0);
    }
  }
}

TEST_CASE("in_span: rows, zero, and the theta row") {
  auto sk = make_skeleton("interval");
  auto sys = generate_relations(sk, 2);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    auto e = in_span(sys.rows[i], sys);
    REQUIRE(e);
    CHECK(combine(sys, *e) == sys.rows[i]);
  }
  auto zero = in_span(LinearCombination{}, sys);
  REQUIRE(zero);
  for (const auto& c : *zero) CHECK(c == 0);

  auto th = fixtures::theta();
  auto ex = stu_expand(th, vertex_adjacent_legs(th).front());
  LinearCombination v = LinearCombination::of(canonicalize(th));
  v -= LinearCombination::of(canonicalize(ex.t_term)) - LinearCombination::of(canonicalize(ex.u_term));
  auto e = in_span(v, sys);
  REQUIRE(e);
  CHECK(combine(sys, *e) == v);

  // a single tree is not a relation
  CHECK_FALSE(in_span(LinearCombination::single("2_10"), generate_relations(sk, 1)));
}

TEST_CASE("foreign digests are rejected") {
  auto sys = generate_relations(make_skeleton("interval"), 2);
  try {
    in_span(LinearCombination::single("2_10"), sys);
    FAIL("expected BasisMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BasisMismatch);
  }
}

TEST_CASE("connected classes are expressible in trees") {
  for (auto shape : {"interval", "circle"}) {
    auto sk = make_skeleton(shape);
    for (int n = 1; n <= (std::string(shape) == "interval" ? 3 : 2); ++n) {
      auto sys = generate_relations(sk, n);
      for (const auto& d : fixtures::corpus(sk, n, kFilterConnected)) {
        auto t = express_in_tree_basis(d, sys);
        REQUIRE(t);
        for (const auto& [digest, c] : t->terms()) CHECK(oracle::betti(diagram_from_digest(sk, digest)) == 0);
        CHECK(oracle::in_rational_span(sys.rows, LinearCombination::of(canonicalize(d)) - *t));
      }
    }
  }
}

TEST_CASE("dimension report") {
  auto r1 = dimension_report(make_skeleton("interval"), 1);
  CHECK(r1.total_classes == 1);
  CHECK(r1.quotient_rank == 1);
  CHECK(r1.tree_span_rank == 1);
  auto r2 = dimension_report(make_skeleton("interval"), 2);
  CHECK(r2.relation_rank == r2.dense_relation_rank);
  auto r3 = dimension_report(make_skeleton("interval"), 3);
  CHECK(r3.connected_in_tree_span == r3.connected_classes);
  CHECK(r3.quotient_rank == r3.tree_span_rank);
}

TEST_CASE("dense Bareiss rank on small integer matrices") {
  using M = std::vector<std::vector<mpz_class>>;
  CHECK(dense_rank(M{{1, 2}, {2, 4}}) == 1);
  CHECK(dense_rank(M{{0, 1}, {1, 0}}) == 2);
  CHECK(dense_rank(M{{0, 0}, {0, 0}}) == 0);
  CHECK(dense_rank(M{{2, 4, 6}, {1, 3, 5}, {3, 7, 11}}) == 2);
}
