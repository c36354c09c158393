#include <doctest.h>

#include <cmath>

#include "deleeuw/error.hpp"
#include "deleeuw/operators.hpp"
#include "oracles.hpp"

using namespace deleeuw;

namespace {

const GridSpec kLine{256, -8.0, 1.0 / 16};

SampledFunction gauss(double s, double y = 0.0, double w = 0.0, const GridSpec& g = kLine) {
  return sample_function(
      [=](double x) { return std::exp(-kPi * (x - y) * (x - y) / (s * s)) * std::polar(1.0, 2 * kPi * w * x); }, g);
}

std::vector<double> probe_points() {
  std::vector<double> xs;
  for (double x = -3.0; x <= 3.0; x += 0.375) xs.push_back(x + 1.0 / 32);
  return xs;
}

}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("exact dilation regrids and scales norms") {
    const auto f = gauss(1.0);
    for (double t : {0.25, 0.5, 2.0, 4.0}) {
      const auto d = dilate(f, t, 2.0);
      CHECK(d.dx() == t * f.dx());
      CHECK(d.x0() == t * f.x0());
      CHECK(d.samples()[17] == f.samples()[17] * std::pow(t, -0.5));
    }
    CHECK_THROWS_AS(dilate(f, 0.0), DomainError);
    CHECK_THROWS_AS(dilate(SampledFunction({1.0, 1.0}, 0.1, 0.1), 1.0 / 3.0), DomainError);
    CHECK_THROWS_AS(dilate_grid(kLine, -1.0), DomainError);
  }

  TEST_CASE("dilate_onto interpolates a smooth function") {
    const auto f = gauss(1.0);
    const GridSpec target{300, -6.0, 0.04};
    const auto d = dilate_onto(f, 1.5, kInf, target);
    double worst = 0;
    for (std::size_t i = 0; i < target.cells; ++i) {
      const double x = target.midpoint(i);
      worst = std::max(worst, std::abs(d.samples()[i].real() - std::exp(-kPi * x * x / 2.25)));
    }
    // documented bound (h^2 / 8) sup|f''| with h the dilated midpoint spacing
    const double h = 1.5 * f.dx();
    CHECK(worst <= h * h / 8 * 2 * kPi / 2.25 + 1e-12);
  }

  TEST_CASE("modulation keeps magnitudes") {
    const auto f = gauss(1.3, 0.4);
    const auto m = modulate(f, 1.75);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(std::abs(std::abs(m.samples()[i]) - std::abs(f.samples()[i])) <= 4e-16 * std::abs(f.samples()[i]) + 1e-300);
      const double x = f.midpoint(i);
      CHECK(std::abs(m.samples()[i] - f.samples()[i] * std::polar(1.0, 2 * kPi * 1.75 * x)) < 1e-14);
    }
    const auto p = build_trigpoly({{1, 2.0}, {-2, cplx(0, 1)}});
    const auto mp = modulate(p, 3);
    CHECK(mp.coeff(4) == cplx(2.0));
    CHECK(mp.coeff(1) == cplx(0, 1));
  }

  TEST_CASE("translation") {
    const auto f = gauss(1.0);
    const auto t = translate(f, 0.5);
    CHECK(t.x0() == f.x0() + 0.5);
    CHECK(t.at(0.5 + 1.0 / 32) == f.at(1.0 / 32));
    CHECK_THROWS_AS(translate(f, 0.01), DomainError);
    CHECK(translate(f, 0.01, GridMode::Free).x0() == f.x0() + 0.01);
    const std::map<int, cplx> a{{-2, 0.5}, {1, cplx(1, -1)}, {3, 0.25}};
    const auto p = translate(build_trigpoly(a), 0.3);
    for (double x : {-0.4, 0.0, 0.33}) CHECK(std::abs(p(x) - oracle::trig(a, x - 0.3)) < 1e-14);
  }

  TEST_CASE("Fourier transform of Gaussians") {
    for (double s : {0.75, 1.0, 2.0}) {
      const auto f = gauss(s);
      for (double xi : {0.0, 0.3, 1.0, 2.5}) {
        CHECK(std::abs(fourier_at(f, xi) - cplx(oracle::gauss_hat(1.0 / (s * s), xi))) < 1e-12);
      }
    }
    const auto band = frequency_band(3, 5);
    CHECK(band.cells == 35);
    CHECK(band.midpoint(2) == doctest::Approx(-3.0));
    CHECK_THROWS_AS(frequency_band(3, 4), DomainError);
  }

  TEST_CASE("linear multiplier with a constant symbol is the identity") {
    const auto f = gauss(1.0, 0.5, 0.5);
    const auto id = make_symbol_1d(spec::Constant1{1.0});
    const GridSpec out{64, -2.0, 1.0 / 16};
    const auto r = apply_multiplier_1d(id, f, frequency_band(5), out);
    for (std::size_t i = 0; i < out.cells; ++i) CHECK(std::abs(r.samples()[i] - f.at(out.midpoint(i))) < 1e-6);
  }

  TEST_CASE("periodization routes") {
    for (double s : {0.8, 1.0}) {
      const auto f = gauss(s, 0.1);
      const auto P = periodize(f);
      for (int k = -P.degree(); k <= P.degree(); ++k) {
        const cplx ref = s * std::exp(-kPi * s * s * k * k) * std::polar(1.0, -2 * kPi * k * 0.1);
        CHECK(std::abs(P.coeff(k) - ref) < 1e-12);
      }
      std::vector<double> xs;
      for (int i = 0; i < 16; ++i) xs.push_back(-0.5 + (i + 0.5) / 16.0);
      const auto shift = periodize_shift_sum(f, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(shift[i] - P(xs[i])) < 1e-9);
      const auto cells = periodize_cells(f);
      CHECK(cells.size() == 16);
      CHECK(cells.x0() == -0.5);
      for (std::size_t i = 0; i < cells.size(); ++i) CHECK(std::abs(cells.samples()[i] - shift[i]) < 1e-15);
    }
    const SampledFunction box(std::vector<cplx>(16, 1.0), -0.5, 1.0 / 64);
    CHECK_THROWS_AS(periodize(box), NumericalError);
    CHECK_THROWS_AS(periodize_cells(SampledFunction({1.0, 1.0}, 0.0, 0.3)), DomainError);
  }

  TEST_CASE("C_m with the constant symbol is the product") {
    const auto f = gauss(1.2, 0.3, 0.5), g = gauss(1.7, -0.6, -1.0);
    const auto xs = probe_points();
    const auto r = apply_Cm_at(make_symbol(spec::Constant{1.0}), f, g, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(r[i] - f.at(xs[i]) * g.at(xs[i])) < 1e-6);
  }

  TEST_CASE("C_m with a shift symbol translates") {
    const auto f = gauss(1.2, 0.3, 0.5), g = gauss(1.7, -0.6, -1.0);
    const auto xs = probe_points();
    const double a = 0.25, b = -0.5;
    const auto r = apply_Cm_at(make_symbol(spec::Shift{a, b}), f, g, xs);
    auto ex = [](double x, double s, double y, double w) {
      return std::exp(-kPi * (x - y) * (x - y) / (s * s)) * std::polar(1.0, 2 * kPi * w * x);
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
      // exact values of the smooth functions at shifted points, not step values
      const cplx ref = ex(xs[i] + a, 1.2, 0.3, 0.5) * ex(xs[i] + b, 1.7, -0.6, -1.0);
      CHECK(std::abs(r[i] - ref) < 1e-6);
    }
  }

  TEST_CASE("separable path agrees with the naive sum") {
    const auto f = gauss(1.2, 0.3, 0.5), g = gauss(1.7, -0.6, -1.0);
    const auto xs = probe_points();
    for (const auto& sp : std::vector<spec::Symbol2D>{spec::Gaussian2D{1.0}, spec::Shift{0.3, 0.1},
                                                     spec::Product{spec::Sign1{}, spec::Phase1{0.2}}}) {
      const auto m = make_symbol(sp);
      CmOptions fast, naive;
      naive.allow_separable = false;
      const auto a = apply_Cm_at(m, f, g, xs, fast);
      const auto b = apply_Cm_at(m, f, g, xs, naive);
      for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-8);
    }
  }

  TEST_CASE("band edge guard") {
    const auto f = gauss(0.3);
    const auto xs = probe_points();
    CHECK_THROWS_AS(apply_Cm_at(make_symbol(spec::Constant{1.0}), f, f, xs), NumericalError);
  }

  TEST_CASE("P_m is the exact coefficient sum") {
    const std::map<int, cplx> a{{-1, 0.5}, {0, 1.0}, {2, cplx(0, 0.3)}};
    const std::map<int, cplx> b{{1, cplx(0.2, 0.1)}, {-3, 0.7}};
    const auto f = build_trigpoly(a), g = build_trigpoly(b);
    const auto prod = apply_Pm(make_symbol(spec::Constant{1.0}), 1.0, f, g);
    for (double x : {-0.3, 0.05, 0.41}) CHECK(std::abs(prod(x) - oracle::trig(a, x) * oracle::trig(b, x)) < 1e-14);
    const auto sh = apply_Pm(make_symbol(spec::Shift{0.125, -0.3}), 1.0, f, g);
    for (double x : {-0.3, 0.05, 0.41})
      CHECK(std::abs(sh(x) - oracle::trig(a, x + 0.125) * oracle::trig(b, x - 0.3)) < 1e-14);
    const auto d = DiscreteSymbol::from_symbol(make_symbol(spec::SignAlpha{2.0}), 0.5, 4, 4);
    const auto p1 = apply_Pm(d, f, g);
    const auto p2 = apply_Pm(make_symbol(spec::SignAlpha{2.0}), 0.5, f, g);
    for (int k = -5; k <= 5; ++k) CHECK(p1.coeff(k) == p2.coeff(k));
  }

  TEST_CASE("windowed C_m tends to P_m") {
    const auto f = build_trigpoly({{0, 1.0}, {1, 0.5}});
    const auto g = build_trigpoly({{-1, 0.75}, {2, cplx(0, 0.25)}});
    const auto m = make_symbol(spec::Gaussian2D{3.0});
    const std::vector<double> xs{-0.4, 0.0, 0.2};
    const auto P = apply_Pm(m, 1.0, f, g);
    double prev = kInf;
    for (double eps : {0.25, 0.0625, 0.015625}) {
      const auto w = apply_Cm_windowed(m, 1.0, f, g, eps, xs);
      double gap = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) gap = std::max(gap, std::abs(w[i] - P(xs[i])));
      CHECK(gap <= prev);
      prev = gap;
    }
    CHECK(prev < 1e-3);
  }
}
