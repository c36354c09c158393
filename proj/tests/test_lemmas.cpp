#include <doctest.h>

#include <cmath>
#include <random>

#include "deleeuw/error.hpp"
#include "deleeuw/experiment.hpp"
#include "deleeuw/lemmas.hpp"
#include "deleeuw/operators.hpp"
#include "oracles.hpp"

using namespace deleeuw;

namespace {

TrigPolynomial random_poly(std::mt19937_64& rng, int deg) {
  std::normal_distribution<double> n01;
  std::map<int, cplx> a;
  for (int k = -deg; k <= deg; ++k) a[k] = {n01(rng), n01(rng)};
  return build_trigpoly(a);
}

}  // namespace

TEST_SUITE("lemmas") {
  TEST_CASE("realtoro: smooth Gaussian converges monotonically") {
    const auto f = named_function("custom_gaussian", {.dx = 1.0 / 64, .radius = 8, .sigma = 1.0});
    const auto ts = geometric_sequence(0.5, 1.0 / 64, 6);
    for (auto [p, q] : {std::pair{2.0, 2.0}, {1.0, 3.0}, {3.0, 1.0}}) {
      const auto rep = check_lemma_realtoro(f, p, q, ts);
      CHECK(rep.passed());
      CHECK(rep.sweep.back().gap <= 0.02);
    }
  }

  TEST_CASE("realtoro: indicators inside one period are exact") {
    std::vector<cplx> v(32, 0.0);
    for (int i = 4; i < 20; ++i) v[static_cast<std::size_t>(i)] = (i % 3 == 0) ? 2.0 : 1.0;
    const SampledFunction f(v, -1.0, 1.0 / 16);
    const auto rep = check_lemma_realtoro(f, 1.5, 2.0, geometric_sequence(0.5, 0.125, 3));
    for (const auto& pt : rep.sweep) {
      CHECK(pt.extra.at("support_fits").get<bool>());
      CHECK(pt.extra.at("distribution_identity").get<bool>());
      CHECK(pt.gap <= 1e-12);
    }
    CHECK(rep.passed());
  }

  TEST_CASE("realtoro rejects bad sweeps") {
    const auto f = named_function("bump", {.dx = 1.0 / 64, .radius = 1});
    const std::vector<double> up{0.25, 0.5};
    CHECK_THROWS_AS(check_lemma_realtoro(f, 2, 2, up), DomainError);
    const std::vector<double> empty;
    CHECK_THROWS_AS(check_lemma_realtoro(f, 2, 2, empty), DomainError);
  }

  TEST_CASE("tororealdos equality") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_poly(rng, 1 + trial);
      for (int k : {1, 2, 8}) {
        for (auto [p, q] : {std::pair{3.0, 1.0}, {0.5, kInf}, {2.0, 2.0}}) {
          const auto rep = check_lemma_tororealdos(f, p, q, k);
          CHECK(rep.passed());
          CHECK(rep.summary.at("rel_gap").get<double>() <= 1e-10);
        }
      }
    }
    CHECK_THROWS_AS(check_lemma_tororealdos(TrigPolynomial(), 2, 2, 0), DomainError);
  }

  TEST_CASE("sandwich: diagonal limit and bounds") {
    std::mt19937_64 rng(8);
    const auto phi = named_function("custom_gaussian", {.dx = 1.0 / 64, .radius = 8});
    const auto eps = geometric_sequence(0.5, 1.0 / 256, 8);
    const auto f = random_poly(rng, 3);
    const auto diag = check_lemma_sandwich(f, phi, 2.0, 2.0, eps);
    CHECK(diag.passed());
    REQUIRE(diag.verdict("diagonal_limit"));
    const auto off = check_lemma_sandwich(f, phi, 2.0, 1.0, eps);
    CHECK(off.passed());
    CHECK(off.summary.at("lower_bound").get<double>() <= off.summary.at("upper_bound").get<double>());
    const auto weak = check_lemma_sandwich(f, phi, 2.0, kInf, eps);
    CHECK(weak.passed());
    CHECK_FALSE(weak.verdict("lower_bound"));
  }

  TEST_CASE("windowed torus function is aligned with the torus cells") {
    const auto ft = sample_on_torus(build_trigpoly({{0, 1.0}, {1, 0.5}}), 16);
    const auto phi = named_function("custom_gaussian", {.dx = 1.0 / 16, .radius = 8});
    const auto w = windowed_torus_function(ft, phi, 2.0, 0.5);
    CHECK(w.dx() == ft.dx());
    const double frac = (w.x0() - ft.x0()) - std::round(w.x0() - ft.x0());
    CHECK(frac == 0.0);
    CHECK(std::abs(w.at(1.0 / 32)) == doctest::Approx(std::abs(ft.at(1.0 / 32)) * std::sqrt(0.5) * std::abs(phi.at(1.0 / 64))));
  }
}
