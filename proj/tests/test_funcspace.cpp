#include <doctest.h>

#include <cmath>

#include "deleeuw/error.hpp"
#include "deleeuw/funcspace.hpp"
#include "oracles.hpp"

using namespace deleeuw;

TEST_SUITE("funcspace") {
  TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec({1, 0.0, 0.1}).validate(), DomainError);
    CHECK_THROWS_AS(GridSpec({4, 0.0, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS(GridSpec({4, 0.0, NAN}).validate(), DomainError);
    CHECK_NOTHROW(GridSpec({4, 0.0, 0.25}).validate());
    const auto g = GridSpec::centered(8, 0.25);
    CHECK(g.x0 == -1.0);
    CHECK(g.end() == 1.0);
    const auto c = GridSpec::covering(-2.0, 2.0, 0.5);
    CHECK(c.cells == 8);
    CHECK_THROWS_AS(GridSpec::covering(0.0, 1.0, 0.3), DomainError);
  }

  TEST_CASE("step function basics") {
    SampledFunction f({1.0, cplx(0, 2), 0.0, -1.0}, -1.0, 0.5);
    CHECK(f.at(-0.9) == cplx(1.0));
    CHECK(f.at(-0.5) == cplx(0, 2));
    CHECK(f.at(1.0) == cplx{});
    CHECK(f.at(-1.01) == cplx{});
    CHECK(f.integral() == cplx(0.0, 1.0));
    CHECK(f.integral_abs() == doctest::Approx(2.0));
    CHECK(f.support_measure() == 1.5);
    CHECK(f.max_abs() == 2.0);
    SampledFunction z({0.0, 0.0, 3.0, 0.0}, 0.0, 1.0);
    const auto t = z.trimmed();
    CHECK(t.size() == 1);
    CHECK(t.x0() == 2.0);
  }

  TEST_CASE("construction errors") {
    CHECK_THROWS_AS(SampledFunction({}, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(SampledFunction({1.0}, 0.0, -1.0), DomainError);
    CHECK_THROWS_AS(SampledFunction({cplx(NAN, 0)}, 0.0, 1.0), DomainError);
    const std::vector<cplx> v{1.0, 2.0};
    CHECK_THROWS_AS(build_sampled(v, {3, 0.0, 1.0}), DomainError);
  }

  TEST_CASE("trig polynomial evaluation and periodicity") {
    const std::map<int, cplx> a{{-3, cplx(0.2, -0.1)}, {0, 1.0}, {2, cplx(0, 0.5)}, {5, 0.0}};
    const auto f = build_trigpoly(a);
    CHECK(f.degree() == 3);
    CHECK(f.coeff(2) == cplx(0, 0.5));
    CHECK(f.coeff(7) == cplx{});
    for (double x : {-0.43, -0.1, 0.0, 0.17, 0.49}) CHECK(std::abs(f(x) - oracle::trig(a, x)) < 1e-14);
    for (double x : {-0.4375, -0.125, 0.0, 0.171875, 0.4990234375}) CHECK(f(x) == f(x + 1.0));
    CHECK(TrigPolynomial().is_zero());
    CHECK_THROWS_AS(TrigPolynomial(std::vector<cplx>{1.0, 2.0}), DomainError);
  }

  TEST_CASE("torus sampling for low and high degree") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n01;
    for (int deg : {3, 40, 90}) {
      std::map<int, cplx> a;
      for (int k = -deg; k <= deg; ++k) a[k] = {n01(rng), n01(rng)};
      const auto f = build_trigpoly(a);
      const auto s = sample_on_torus(f, 256);
      CHECK(s.x0() == -0.5);
      CHECK(s.dx() == 1.0 / 256);
      double worst = 0;
      for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(s.samples()[i] - oracle::trig(a, s.midpoint(i))));
      CHECK(worst < 1e-11 * f.coeff_l1());
    }
  }

  TEST_CASE("named functions") {
    const auto box = named_function("box_phi", {.dx = 1.0 / 64});
    CHECK(box.integral().real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(box.x0() == -0.5);
    const auto g = named_function("gauss_psi", {.dx = 1.0 / 64, .radius = 8});
    CHECK(std::abs(g.integral().real() - 1.0) < 1e-12);
    const auto gc = named_function("gauss_psi_check", {.dx = 1.0 / 64, .radius = 4});
    CHECK(std::abs(gc.integral().real() - 1.0 / std::sqrt(kPi)) < 1e-12);
    // odd centered grid: the origin is a sample point
    const auto mid = g.size() / 2;
    CHECK(std::abs(g.midpoint(mid)) < 1e-15);
    const auto bump = named_function("bump", {.dx = 1.0 / 128, .radius = 2, .sigma = 1});
    CHECK(bump.max_abs() == doctest::Approx(1.0));
    CHECK(bump.at(1.5) == cplx{});
    CHECK_THROWS_AS(named_function("gauss_psi", {.dx = 0.1, .radius = 2}), NumericalError);
    CHECK_THROWS_AS(named_function("box_phi", {.dx = 0.3}), DomainError);
    CHECK_THROWS_AS(named_function("nope"), DomainError);
  }
}
