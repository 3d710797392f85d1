#include <catch2/catch_amalgamated.hpp>

#include <omp.h>

#include "common.hpp"
#include "jacobi/certificate.hpp"
#include "jacobi/enumeration.hpp"
#include "jacobi/reduction.hpp"
#include "jacobi/relations.hpp"

using namespace jacobi;

// The OpenMP kernels against their serial references, at several thread
// counts (more threads than cores still exercises the merge order).

TEST_CASE("enumeration is thread-count independent") {
  for (auto shape : {"interval", "circle", "interval,circle"}) {
    auto sk = make_skeleton(shape);
    for (int n = 1; n <= 3; ++n) {
      auto serial = enumerate_classes_serial({sk, n});
      for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        auto par = enumerate_classes({sk, n});
        REQUIRE(par.size() == serial.size());
        for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i].canonical == serial[i].canonical);
      }
    }
  }
}

TEST_CASE("relation systems are thread-count independent") {
  auto sk = make_skeleton("interval");
  for (int n = 2; n <= 3; ++n) {
    const auto serial = serialize_relations(generate_relations_serial(sk, n));
    for (int threads : {1, 3}) {
      omp_set_num_threads(threads);
      CHECK(serialize_relations(generate_relations(sk, n)) == serial);
    }
  }
}

TEST_CASE("reduce_all matches reduce_all_serial") {
  auto sk = make_skeleton("interval");
  auto inputs = fixtures::corpus(sk, 3, kFilterAll);
  auto serial = reduce_all_serial(inputs);
  for (int threads : {1, 4}) {
    omp_set_num_threads(threads);
    auto par = reduce_all(inputs);
    REQUIRE(par.size() == serial.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      REQUIRE(std::holds_alternative<ReductionResult>(par[i]));
      CHECK(serialize_certificate(std::get<ReductionResult>(par[i]).certificate) ==
            serialize_certificate(std::get<ReductionResult>(serial[i]).certificate));
    }
  }
}
