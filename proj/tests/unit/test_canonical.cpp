#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "common.hpp"
#include "jacobi/canonical.hpp"
#include "jacobi/error.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

// Same diagram with one vertex triple transposed (an odd change).
Diagram flip_vertex(const Diagram& d, int v) {
  DiagramParts p = d.parts();
  std::swap(p.vertices[v][1], p.vertices[v][2]);
  return Diagram::from_parts(std::move(p));
}

Diagram rotate_vertex(const Diagram& d, int v) {
  DiagramParts p = d.parts();
  auto& t = p.vertices[v];
  t = {t[1], t[2], t[0]};
  return Diagram::from_parts(std::move(p));
}

int oracle_sign(const Diagram& a, const Diagram& b) {
  auto par = oracle::isomorphism_parities(a, b);
  REQUIRE(par.size() == 1);
  return *par.begin() ? -1 : 1;
}

}  // namespace

TEST_CASE("theta digest is stable under relabeling") {
  auto a = fixtures::theta();
  auto b = fixtures::parse(
      "diagram T2 on S { legs: p@c1, q@c1; vertices: m(m0,m1,m2), k(k0,k2,k1);"
      " edges: p-m0, q-k0, m1-k1, m2-k2; }");
  CHECK(canonicalize(a) == canonicalize(b));
  CHECK(canonicalize(a).digest == "2_25067134");
}

TEST_CASE("cyclic rotation of a triple is even, a transposition is odd") {
  auto th = fixtures::theta();
  CHECK(canonicalize(rotate_vertex(th, 0)) == canonicalize(th));
  auto y = fixtures::y_diagram();
  auto flipped = flip_vertex(y, 0);
  CHECK(is_isomorphic(y, y) == std::optional<int>(1));
  CHECK(is_isomorphic(y, flipped) == std::optional<int>(-1));
  CHECK(oracle_sign(y, flipped) == -1);
  CHECK_FALSE(is_isomorphic(fixtures::chord(), y).has_value());
}

TEST_CASE("tadpoles are killed by antisymmetry") {
  auto d = fixtures::tadpole();
  CHECK(oracle::killed_by_symmetry(d));
  CHECK(canonicalize(d).is_zero());
  auto big = fixtures::diagram("tadpole.dg");
  CHECK(oracle::killed_by_symmetry(big));
  CHECK(canonicalize(big).is_zero());
}

TEST_CASE("zero flag matches the exhaustive automorphism search") {
  struct Case {
    const char* shape;
    int degree;
  };
  for (auto [shape, n] : {Case{"interval", 1}, Case{"interval", 2}, Case{"interval", 3},
                          Case{"circle", 2}, Case{"interval,circle", 2}}) {
    auto sk = make_skeleton(shape);
    for (const auto& c : enumerate_classes({sk, n})) {
      if (oracle::digest_vertices(c.canonical.digest) > 4) continue;
      auto d = diagram_from_digest(sk, c.canonical.digest);
      INFO(shape << " " << c.canonical.digest);
      CHECK(c.canonical.is_zero() == oracle::killed_by_symmetry(d));
    }
  }
}

TEST_CASE("canonicalization is idempotent and relabeling invariant") {
  std::mt19937_64 rng(20241018);
  std::vector<Diagram> samples{fixtures::theta(), fixtures::y_diagram(), fixtures::diagram("bigon_pendant.dg"),
                               fixtures::diagram("theta_circle.dg"), fixtures::diagram("tadpole.dg")};
  for (const auto& d : samples) {
    const auto c = canonicalize(d);
    if (!c.is_zero()) {
      CHECK(canonicalize(diagram_from_digest(d.skeleton_ptr(), c.digest)) == CanonicalDiagram{c.digest, 1});
    }
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
      if (canonicalize(relabeled(d, rng)) != c) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("is_isomorphic signs agree with the oracle on random pairs") {
  std::mt19937_64 rng(99);
  auto sk = make_skeleton("interval");
  for (const auto& c : enumerate_classes({sk, 3, kFilterNonzero})) {
    if (oracle::digest_vertices(c.canonical.digest) > 3) continue;
    auto d = diagram_from_digest(sk, c.canonical.digest);
    auto r = relabeled(d, rng);
    if (r.vertex_count() > 0 && rng() % 2) r = flip_vertex(r, 0);
    auto s = is_isomorphic(d, r);
    REQUIRE(s.has_value());
    CHECK(*s == oracle_sign(d, r));
  }
}

TEST_CASE("circle rotation does not change the digest") {
  auto d = fixtures::parse(
      "diagram D on C { legs: a@c1, b@c1, c@c1, d@c1; edges: a-c, b-d; }", "skeleton C { circle c1; }\n");
  auto e = fixtures::parse(
      "diagram D on C { legs: b@c1, c@c1, d@c1, a@c1; edges: a-c, b-d; }", "skeleton C { circle c1; }\n");
  CHECK(canonicalize(d) == canonicalize(e));
  // on an interval the same two orders are different classes
  auto f = fixtures::parse("diagram D on S { legs: a@c1, b@c1, c@c1, d@c1; edges: a-b, c-d; }");
  auto g = fixtures::parse("diagram D on S { legs: b@c1, c@c1, d@c1, a@c1; edges: a-b, c-d; }");
  CHECK(canonicalize(f) != canonicalize(g));
}

TEST_CASE("digest syntax") {
  auto sk = make_skeleton("interval");
  CHECK(is_canonical_digest(sk, "2_10"));
  CHECK(digest_degree("2_25067134") == 2);
  CHECK_THROWS_AS(diagram_from_digest(sk, "2_1"), Error);
  CHECK_THROWS_AS(diagram_from_digest(sk, "garbage"), Error);
  CHECK(canonical_leg_token(0) == "l1");
  CHECK(parse_canonical_leg_token("l12") == 11);
  CHECK(parse_canonical_leg_token("x1") == -1);
}
