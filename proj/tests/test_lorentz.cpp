#include <doctest.h>

#include <cmath>
#include <cstring>

#include "deleeuw/error.hpp"
#include "deleeuw/lorentz.hpp"
#include "oracles.hpp"

using namespace deleeuw;

namespace {

SampledFunction from_mags(const std::vector<double>& m, double dx, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ph(0.0, 2 * kPi);
  std::vector<cplx> v;
  for (double x : m) v.push_back(std::polar(x, ph(rng)));
  return SampledFunction(v, -0.3, dx);
}

}  // namespace

TEST_SUITE("lorentz") {
  TEST_CASE("exponent validation") {
    CHECK_THROWS_AS(LorentzExponents::make(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(LorentzExponents::make(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(LorentzExponents::make(kInf, 2.0), DomainError);
    CHECK_NOTHROW(LorentzExponents::make(kInf, kInf));
    CHECK(LorentzExponents::make(2.0, kInf).weak());
  }

  TEST_CASE("indicator of a unit interval has norm one") {
    const SampledFunction box(std::vector<cplx>(16, 1.0), 0.0, 1.0 / 16);
    for (double p : {0.5, 1.0, 4.0 / 3, 2.0, 3.0})
      for (double q : {0.5, 1.0, 2.0, 3.0, kInf}) {
        CHECK(lorentz_norm(box, LorentzExponents::make(p, q)) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(lorentz_norm(box, LorentzExponents::make(p, q), NormMethod::DistributionIntegral) ==
              doctest::Approx(1.0).epsilon(1e-14));
      }
  }

  TEST_CASE("hand-computed two-level function") {
    // 2 on [0, 1), 1 on [1, 3)
    const SampledFunction f({2.0, 1.0, 1.0}, 0.0, 1.0);
    CHECK(lorentz_norm(f, LorentzExponents::make(2, 2)) == doctest::Approx(std::sqrt(6.0)));
    CHECK(lorentz_norm(f, LorentzExponents::make(2, 1)) == doctest::Approx(1.0 + std::sqrt(3.0)));
    // sup_t t f*(t) at right endpoints: max(2 * 1, 1 * 3)
    CHECK(lorentz_norm(f, LorentzExponents::make(1, kInf)) == doctest::Approx(3.0));
    CHECK(weak_norm(f, 1.0) == doctest::Approx(3.0));
    CHECK(lorentz_norm(f, LorentzExponents::make(kInf, kInf)) == 2.0);
  }

  TEST_CASE("both routes agree with the distribution oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      const auto mags = oracle::random_magnitudes(rng, 40);
      const auto f = from_mags(mags, 0.125, rng);
      if (f.is_zero()) continue;
      for (double p : {0.5, 1.0, 4.0 / 3, 2.0, 3.0})
        for (double q : {0.5, 1.0, 2.0, 3.0, kInf}) {
          const auto e = LorentzExponents::make(p, q);
          const double ref = oracle::lorentz(mags, 0.125, p, q);
          CHECK(oracle::rel(lorentz_norm(f, e), ref) < 1e-12);
          CHECK(oracle::rel(lorentz_norm(f, e, NormMethod::DistributionIntegral), ref) < 1e-12);
        }
    }
  }

  TEST_CASE("weak norm equals the q = inf route bit for bit") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = from_mags(oracle::random_magnitudes(rng, 25), 0.5, rng);
      for (double p : {0.5, 1.0, 2.0, 3.0}) {
        const double a = weak_norm(f, p);
        const double b = lorentz_norm(f, LorentzExponents::make(p, kInf));
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
      }
    }
  }

  TEST_CASE("rearrangement is equimeasurable and nonincreasing") {
    std::mt19937_64 rng(9);
    const auto f = from_mags(oracle::random_magnitudes(rng, 60), 0.1, rng);
    const auto prof = rearrangement(f);
    for (std::size_t i = 1; i < prof.levels().size(); ++i) CHECK(prof.levels()[i] < prof.levels()[i - 1]);
    for (double lam : {0.0, 0.3, 1.0, 1.5, 1.4999, 2.2, 3.5}) CHECK(prof.distribution(lam) == doctest::Approx(distribution(f, lam)));
    CHECK_THROWS_AS(distribution(f, -1.0), DomainError);
    CHECK(prof.total_measure() == doctest::Approx(f.support_measure()));
  }

  TEST_CASE("double star dominates f* and decreases") {
    const SampledFunction f({3.0, 1.0, 2.0, 0.5}, 0.0, 1.0);
    double prev = kInf;
    for (double t : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 8.0}) {
      const double ds = double_star(f, t);
      CHECK(ds >= rearrangement(f)(t) - 1e-15);
      CHECK(ds <= prev + 1e-15);
      prev = ds;
    }
    CHECK(double_star(f, 1.0) == doctest::Approx(3.0));
    CHECK(double_star(f, 2.0) == doctest::Approx(2.5));
    CHECK(double_star(f, 8.0) == doctest::Approx(6.5 / 8));
  }

  TEST_CASE("profile norm matches function norm") {
    const SampledFunction f({3.0, 1.0, 2.0, 0.5}, 0.0, 0.5);
    const auto prof = rearrangement(f);
    CHECK(lorentz_norm(prof, 2.0, 1.0) == doctest::Approx(lorentz_norm(f, LorentzExponents::make(2, 1))));
  }

  TEST_CASE("zero function") {
    const SampledFunction z({0.0, 0.0}, 0.0, 1.0);
    CHECK(lorentz_norm(z, LorentzExponents::make(2, 2)) == 0.0);
    CHECK(weak_norm(z, 2.0) == 0.0);
  }
}
