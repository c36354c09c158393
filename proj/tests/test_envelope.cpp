#include <doctest.h>

#include <cmath>

#include "deleeuw/envelope.hpp"
#include "deleeuw/error.hpp"
#include "oracles.hpp"

using namespace deleeuw;

TEST_SUITE("envelope") {
  TEST_CASE("constants") {
    const auto c = compute_constants(2.0, 2.0);
    CHECK(c.r_aoki == doctest::Approx(2.0 / 3.0));
    CHECK(c.c_lower == doctest::Approx(1.0));
    CHECK(c.c_upper == doctest::Approx(1.0));
    CHECK(c.aoki_factor() == doctest::Approx(std::pow(4.0, 1.5)));
    for (auto [p, q] : {std::pair{3.0, 1.0}, {0.5, 2.0}, {4.0 / 3, 3.0}}) {
      const auto k = compute_constants(p, q);
      CHECK(k.r_min == std::min(p, q));
      CHECK(k.s_max == std::max(p, q));
      CHECK(k.c_lower == doctest::Approx(oracle::sandwich_constant(p, std::max(p, q))));
      CHECK(k.c_upper == doctest::Approx(oracle::sandwich_constant(p, std::min(p, q))));
      CHECK(k.c_lower <= k.c_upper);
    }
    CHECK_THROWS_AS(compute_constants(kInf, 1.0), DomainError);
    CHECK_THROWS_AS(compute_constants(1.0, 0.0), DomainError);
  }

  TEST_CASE("upper and lower envelopes bracket a radial profile") {
    auto phi = [](double r) { return std::exp(-r * r); };
    for (double lambda : {0.5, 0.125}) {
      const auto up = dyadic_envelope(phi, lambda, EnvelopeSide::Upper, 6.0);
      const auto lo = dyadic_envelope(phi, lambda, EnvelopeSide::Lower, 6.0);
      for (double x = -5.9; x < 5.9; x += 0.0371) {
        CHECK(up(x) >= phi(std::abs(x)));
        CHECK(lo(x) <= phi(std::abs(x)));
      }
      CHECK(up(0.4 * lambda) == 1.0);
      CHECK(lo(0.4 * lambda) == doctest::Approx(phi(0.5 * lambda)));
    }
  }

  TEST_CASE("closed forms agree with the profile norms") {
    const DyadicEnvelope e(0.25, EnvelopeSide::Upper, {1.0, 0.8, 0.5, 0.5, 0.1});
    const auto prof = e.profile();
    CHECK(prof.breaks().size() == 6);
    CHECK(prof.breaks()[1] == 0.25);
    CHECK(prof.breaks()[2] == 0.5);
    CHECK(prof.breaks()[5] == 4.0);
    for (double p : {1.0, 2.0, 3.0}) {
      CHECK(e.lp_norm(p) == doctest::Approx(lorentz_norm(prof, p, p)).epsilon(1e-13));
      for (double r : {0.5, 1.0, 4.0}) CHECK(e.lorentz_closed_form(p, r) == doctest::Approx(lorentz_norm(prof, p, r)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(DyadicEnvelope(0.25, EnvelopeSide::Upper, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(DyadicEnvelope(0.0, EnvelopeSide::Upper, {1.0}), DomainError);
  }

  TEST_CASE("sampled profiles") {
    const auto g = named_function("custom_gaussian", {.dx = 1.0 / 64, .radius = 8});
    CHECK_NOTHROW(require_radial_decreasing(g));
    const auto e = dyadic_envelope(g, 0.5, EnvelopeSide::Upper);
    CHECK(e.values().front() == doctest::Approx(g.max_abs()));
    const auto prof = step_envelope(g, 0.5, EnvelopeSide::Lower);
    CHECK(prof.total_measure() > 8.0);
    const SampledFunction shifted(std::vector<cplx>(g.samples().begin(), g.samples().end()), g.x0() + 0.5, g.dx());
    CHECK_THROWS_AS(require_radial_decreasing(shifted), DomainError);
    const SampledFunction bumpy({0.5, 1.0, 0.2, 1.0, 0.5}, -2.5, 1.0);
    CHECK_THROWS_AS(require_radial_decreasing(bumpy), DomainError);
  }
}
