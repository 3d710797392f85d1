#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "jacobi/enumeration.hpp"
#include "jacobi/error.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

std::map<std::string, bool> as_map(const std::vector<EnumeratedClass>& classes, int max_vertices = 1 << 20) {
  std::map<std::string, bool> out;
  for (const auto& c : classes) {
    if (oracle::digest_vertices(c.canonical.digest) <= max_vertices) out[c.canonical.digest] = c.canonical.is_zero();
  }
  return out;
}

}  // namespace

TEST_CASE("degree 1 on an interval: the chord and the killed tadpole") {
  auto sk = make_skeleton("interval");
  auto all = enumerate_classes({sk, 1});
  CHECK(all.size() == 2);
  auto nonzero = enumerate_diagrams({sk, 1, kFilterNonzero});
  REQUIRE(nonzero.size() == 1);
  CHECK(nonzero.front().digest == "2_10");
  CHECK(as_map(all) == oracle::brute_force_classes(sk, 1, 64));
}

TEST_CASE("complete against every perfect matching") {
  struct Case {
    const char* shape;
    int degree;
  };
  for (auto [shape, n] : {Case{"interval", 2}, Case{"circle", 2}, Case{"interval,circle", 2},
                          Case{"interval,interval", 2}, Case{"circle", 1}}) {
    auto sk = make_skeleton(shape);
    INFO(shape << " n=" << n);
    CHECK(as_map(enumerate_classes({sk, n})) == oracle::brute_force_classes(sk, n, 64));
  }
}

TEST_CASE("degree 3 agrees with the oracle up to four vertices") {
  for (auto shape : {"interval", "circle"}) {
    auto sk = make_skeleton(shape);
    INFO(shape);
    CHECK(as_map(enumerate_classes({sk, 3}), 4) == oracle::brute_force_classes(sk, 3, 14));
  }
}

TEST_CASE("frozen class counts") {
  // Cross-checked by the matching oracle: fully at n <= 2 here, and once
  // over all 16-half-edge matchings at n = 3 (about 13 s, too slow to keep).
  auto interval = make_skeleton("interval");
  CHECK(enumerate_classes({interval, 2}).size() == 13);
  CHECK(enumerate_classes({interval, 2, kFilterNonzero}).size() == 5);
  CHECK(enumerate_classes({interval, 3}).size() == 116);
  CHECK(enumerate_classes({interval, 3, kFilterNonzero}).size() == 41);
  auto circle = make_skeleton("circle");
  CHECK(enumerate_classes({circle, 2}).size() == 10);
  CHECK(enumerate_classes({circle, 2, kFilterNonzero}).size() == 4);
  CHECK(enumerate_classes({circle, 3}).size() == 52);
  CHECK(enumerate_classes({circle, 3, kFilterNonzero}).size() == 15);
}

TEST_CASE("filters compose and match the oracle predicates") {
  auto sk = make_skeleton("interval");
  auto all = enumerate_classes({sk, 3});
  auto pick = [&](unsigned f) { return as_map(enumerate_classes({sk, 3, f})); };
  std::map<std::string, bool> trees, connected, both;
  for (const auto& c : all) {
    auto d = diagram_from_digest(sk, c.canonical.digest);
    const bool tree = oracle::betti(d) == 0;
    const bool conn = oracle::component_count(d) == 1;
    if (tree) trees[c.canonical.digest] = c.canonical.is_zero();
    if (conn) connected[c.canonical.digest] = c.canonical.is_zero();
    if (tree && conn && !c.canonical.is_zero()) both[c.canonical.digest] = false;
  }
  CHECK(pick(kFilterTrees) == trees);
  CHECK(pick(kFilterConnected) == connected);
  CHECK(pick(parse_filters("trees+connected+nonzero")) == both);
  CHECK(parse_filters("all") == kFilterAll);
  CHECK_THROWS_AS(parse_filters("bogus"), Error);
}

TEST_CASE("no class has a legless component and every zero flag is an odd symmetry") {
  auto sk = make_skeleton("interval");
  for (const auto& c : enumerate_classes({sk, 3})) {
    auto d = diagram_from_digest(sk, c.canonical.digest);
    CHECK_FALSE(oracle::has_legless_component(d));
    if (c.canonical.is_zero() && d.vertex_count() <= 4) CHECK(oracle::killed_by_symmetry(d));
  }
}

TEST_CASE("degree budget") {
  auto sk = make_skeleton("interval");
  try {
    enumerate_classes({sk, 5});
    FAIL("expected DegreeTooLargeForBudget");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeTooLargeForBudget);
  }
  CHECK_THROWS_AS(enumerate_classes({sk, 0}), Error);
}
