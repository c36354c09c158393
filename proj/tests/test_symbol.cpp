#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "deleeuw/error.hpp"
#include "deleeuw/symbol.hpp"
#include "oracles.hpp"

using namespace deleeuw;

namespace {

bool has_flag(const Symbol2D& m, const std::string& f) {
  return std::find(m.flags().begin(), m.flags().end(), f) != m.flags().end();
}

spec::Table small_table() {
  spec::Table t;
  t.xi = {-1.0, 0.0, 2.0};
  t.eta = {-1.0, 1.0};
  t.values = {{1.0, 2.0, 3.0}, {cplx(0, 1), 0.0, -1.0}};
  return t;
}

}  // namespace

TEST_SUITE("symbol") {
  TEST_CASE("closed-form symbols") {
    const auto c = make_symbol(spec::Constant{cplx(0.5, 0.5)});
    CHECK(c(3.0, -1.0) == cplx(0.5, 0.5));
    CHECK(c.bound() == doctest::Approx(std::sqrt(0.5)));

    const auto s = make_symbol(spec::SignAlpha{2.0});
    CHECK(s(1.0, 0.0) == cplx(1.0));
    CHECK(s(1.0, -1.0) == cplx(-1.0));
    CHECK(s(2.0, -1.0) == cplx(0.0));
    CHECK(s.regularity() == Regularity::GRegulated);
    REQUIRE(s.ridge());
    CHECK(s.ridge()->second == 2.0);
    CHECK(s.flags().empty());

    const auto g = make_symbol(spec::Gaussian2D{2.0});
    CHECK(g(1.0, 1.0).real() == doctest::Approx(std::exp(-0.5)));
    REQUIRE(g.factors());

    const auto sh = make_symbol(spec::Shift{0.25, -0.5});
    CHECK(std::abs(sh(1.0, 1.0) - std::polar(1.0, 2 * kPi * (-0.25))) < 1e-15);
    CHECK(sh.is_shift());

    const auto pr = make_symbol(spec::Product{spec::Sign1{}, spec::Cutoff1{1.0}});
    CHECK(pr(-2.0, 0.5) == cplx(-1.0));
    CHECK(pr(-2.0, 1.5) == cplx(0.0));
    CHECK(pr.regularity() != Regularity::Continuous);
  }

  TEST_CASE("degenerate alpha is flagged") {
    CHECK(has_flag(make_symbol(spec::SignAlpha{0.0}), "alpha_outside_bilinear_hilbert_range"));
    CHECK(has_flag(make_symbol(spec::SignAlpha{1.0}), "alpha_outside_bilinear_hilbert_range"));
    CHECK_FALSE(has_flag(make_symbol(spec::SignAlpha{-1.0}), "alpha_outside_bilinear_hilbert_range"));
    CHECK_THROWS_AS(make_symbol(spec::SignAlpha{NAN}), DomainError);
  }

  TEST_CASE("tables interpolate bilinearly and vanish outside") {
    const auto m = make_symbol(small_table());
    CHECK(m(-1.0, -1.0) == cplx(1.0));
    CHECK(m(1.0, -1.0) == cplx(2.5));
    CHECK(m(-0.5, 0.0) == cplx(0.75, 0.25));
    CHECK(m(3.0, 0.0) == cplx{});
    CHECK(m.regularity() == Regularity::Measurable);
    auto bad = small_table();
    bad.values[1].pop_back();
    CHECK_THROWS_AS(make_symbol(bad), DomainError);
    bad = small_table();
    bad.xi = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS(make_symbol(bad), DomainError);
  }

  TEST_CASE("dilation evaluates m(t xi, t eta) and keeps structure") {
    const std::vector<spec::Symbol2D> specs{spec::Constant{2.0},
                                            spec::SignAlpha{2.0},
                                            spec::Gaussian2D{1.5},
                                            spec::Shift{0.25, 0.75},
                                            spec::Product{spec::Phase1{0.3}, spec::Cutoff1{2.0}},
                                            spec::Product{spec::Gaussian1{1.0}, spec::Sign1{}},
                                            small_table()};
    for (const auto& sp : specs) {
      const auto m = make_symbol(sp);
      for (double t : {0.125, 0.5, 3.0}) {
        const auto d = m.dilated(t);
        CHECK(static_cast<bool>(d.factors()) == static_cast<bool>(m.factors()));
        CHECK(static_cast<bool>(d.ridge()) == static_cast<bool>(m.ridge()));
        for (double xi : {-1.3, 0.0, 0.7})
          for (double eta : {-0.4, 0.2, 1.1}) {
            CHECK(std::abs(d(xi, eta) - m(t * xi, t * eta)) < 1e-14);
            if (d.factors()) {
              CHECK(std::abs(d.factors()->first(xi) * d.factors()->second(eta) - d(xi, eta)) < 1e-14);
            }
          }
      }
    }
  }

  TEST_CASE("discrete restriction") {
    const auto m = make_symbol(spec::SignAlpha{2.0});
    const auto d = DiscreteSymbol::from_symbol(m, 0.5, 3, 2);
    CHECK(d(1, 1) == cplx(1.0));
    CHECK(d(2, -1) == cplx(0.0));
    CHECK(d(-3, 1) == cplx(-1.0));
    CHECK(d(4, 0) == cplx{});
    DiscreteSymbol e(-1, 1, -1, 1);
    CHECK_THROWS_AS(e.set(2, 0, 1.0), DomainError);
    CHECK_THROWS_AS(DiscreteSymbol(1, 0, 0, 0), DomainError);
  }

  TEST_CASE("psi_alpha matches its closed form") {
    for (double alpha : {-3.0, 0.5, 2.0, 7.0})
      for (double t = -5.0; t <= 5.0; t += 0.37) CHECK(std::abs(psi_alpha(alpha, t) - oracle::psi_alpha(alpha, t)) < 1e-12);
  }

  TEST_CASE("mollified sign ridge is an erf") {
    for (double alpha : {2.0, -0.5}) {
      const auto m = make_symbol(spec::SignAlpha{alpha});
      for (double eps : {0.5, 0.125}) {
        const auto mol = mollify_symbol(m, eps);
        CHECK(mol.regularity() == Regularity::Continuous);
        for (auto [x, y] : {std::pair{0.3, 0.1}, {-0.2, 0.05}, {1.0, -0.7}, {0.01, 0.0}}) {
          const double ref = oracle::mollified_sign(alpha, x, y, eps);
          CHECK(std::abs(mol(x, y) - ref) < 1e-9);
          CHECK(std::abs(ridge_mollified(m.ridge()->first, alpha, x + alpha * y, eps) - ref) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("mollified Gaussian by tensor Gauss-Hermite") {
    const auto m = make_symbol(spec::Gaussian2D{1.0});
    for (double eps : {1.0, 0.25}) {
      const auto mol = mollify_symbol(m, eps);
      for (auto [x, y] : {std::pair{0.0, 0.0}, {0.5, -1.0}, {2.0, 1.0}})
        CHECK(std::abs(mol(x, y).real() - oracle::mollified_gaussian(1.0, x, y, eps)) < 1e-12);
    }
    CHECK_THROWS_AS(mollify_symbol(m, 0.0), DomainError);
  }

  TEST_CASE("regularity names") {
    CHECK(std::string(to_string(Regularity::Continuous)) == "continuous");
    CHECK(std::string(to_string(Regularity::GRegulated)) == "g_regulated");
    CHECK(std::string(to_string(Regularity::Measurable)) == "measurable");
  }
}
