#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "deleeuw/funcspace.hpp"

namespace deleeuw {

enum class Regularity { Continuous, GRegulated, Measurable };

const char* to_string(Regularity r);

// ---- symbol descriptions -------------------------------------------------

namespace spec {

struct Constant1 { cplx value{1.0}; };
/// e^{-xi^2 / sigma^2}
struct Gaussian1 { double sigma = 1.0; };
/// e^{2 pi i a xi}
struct Phase1 { double a = 0.0; };
/// sign(xi), sign(0) = 0
struct Sign1 {};
/// indicator of |xi| <= cutoff
struct Cutoff1 { double cutoff = 1.0; };

using Symbol1D = std::variant<Constant1, Gaussian1, Phase1, Sign1, Cutoff1>;

struct Constant { cplx value{1.0}; };
struct Product { Symbol1D m1; Symbol1D m2; };
/// sign(xi + alpha eta), sign(0) = 0
struct SignAlpha { double alpha = 1.0; };
/// e^{-(xi^2 + eta^2) / sigma^2}
struct Gaussian2D { double sigma = 1.0; };
/// e^{2 pi i (a xi + b eta)}
struct Shift { double a = 0.0; double b = 0.0; };
/// Bilinear interpolation of values[j][i] at (xi[i], eta[j]); zero outside the table.
struct Table {
  std::vector<double> xi;
  std::vector<double> eta;
  std::vector<std::vector<cplx>> values;
  Regularity regularity = Regularity::Measurable;
};

using Symbol2D = std::variant<Constant, Product, SignAlpha, Gaussian2D, Shift, Table>;

}  // namespace spec

/// Bounded function on the real line used as a linear multiplier or a factor.
class Symbol1D {
 public:
  Symbol1D(std::function<cplx(double)> rule, double bound, Regularity regularity, std::string id);

  cplx operator()(double xi) const { return rule_(xi); }
  double bound() const { return bound_; }
  Regularity regularity() const { return regularity_; }
  const std::string& id() const { return id_; }

 private:
  std::function<cplx(double)> rule_;
  double bound_;
  Regularity regularity_;
  std::string id_;
};

Symbol1D make_symbol_1d(const spec::Symbol1D& s);

/// Bounded function m(xi, eta) on the frequency plane.
///
/// Symbols built from a spec remember it, together with structural facts
/// used by fast paths: separability m = m1(xi) m2(eta), and ridge form
/// m = m1(xi + alpha eta).
class Symbol2D {
 public:
  Symbol2D(std::function<cplx(double, double)> rule, double bound, Regularity regularity, std::string id);

  cplx operator()(double xi, double eta) const { return rule_(xi, eta); }
  double bound() const { return bound_; }
  Regularity regularity() const { return regularity_; }
  const std::string& id() const { return id_; }
  const std::vector<std::string>& flags() const { return flags_; }
  const std::optional<spec::Symbol2D>& description() const { return description_; }

  /// Factors (m1, m2) when m(xi, eta) = m1(xi) m2(eta).
  const std::optional<std::pair<Symbol1D, Symbol1D>>& factors() const { return factors_; }
  /// (profile, alpha) when m(xi, eta) = profile(xi + alpha eta).
  const std::optional<std::pair<Symbol1D, double>>& ridge() const { return ridge_; }
  bool is_shift() const;

  /// (xi, eta) -> m(t xi, t eta). Structure is carried over.
  Symbol2D dilated(double t) const;

  // Construction helpers used by make_symbol.
  Symbol2D& with_factors(Symbol1D m1, Symbol1D m2);
  Symbol2D& with_ridge(Symbol1D profile, double alpha);
  Symbol2D& with_description(spec::Symbol2D d);
  Symbol2D& with_flag(std::string flag);

 private:
  std::function<cplx(double, double)> rule_;
  double bound_;
  Regularity regularity_;
  std::string id_;
  std::vector<std::string> flags_;
  std::optional<spec::Symbol2D> description_;
  std::optional<std::pair<Symbol1D, Symbol1D>> factors_;
  std::optional<std::pair<Symbol1D, double>> ridge_;
  double dilation_ = 1.0;
};

/// Builds a symbol from its description. Throws DomainError on unbounded
/// or malformed specs. sign_alpha with alpha in {0, 1} is built but flagged.
Symbol2D make_symbol(const spec::Symbol2D& s);

/// Finite window of multiplier values m_{k1,k2}, zero outside.
class DiscreteSymbol {
 public:
  DiscreteSymbol(int k1_min, int k1_max, int k2_min, int k2_max);

  /// Restriction of a continuous symbol to the lattice: m(t k1, t k2).
  static DiscreteSymbol from_symbol(const Symbol2D& m, double t, int k1_max, int k2_max);

  cplx operator()(int k1, int k2) const;
  void set(int k1, int k2, cplx v);
  int k1_min() const { return k1_min_; }
  int k1_max() const { return k1_max_; }
  int k2_min() const { return k2_min_; }
  int k2_max() const { return k2_max_; }

 private:
  std::size_t index(int k1, int k2) const;
  int k1_min_, k1_max_, k2_min_, k2_max_;
  std::vector<cplx> values_;
};

struct MollifyOptions {
  int hermite_nodes = 64;
  double abs_tol = 1e-11;
  /// Truncation radius of the Gaussian weight for the adaptive path.
  double radius = 8.0;
};

/// (x, y) -> int int m(x - eps t, y - eps s) G(t, s) dt ds with
/// G(t, s) = pi^{-1} e^{-(t^2 + s^2)}.
///
/// Continuous symbols use a tensor Gauss-Hermite rule. Symbols that may jump
/// use iterated globally adaptive Gauss-Kronrod on [-radius, radius]^2, which
/// resolves the discontinuity to the requested tolerance.
Symbol2D mollify_symbol(const Symbol2D& m, double eps, const MollifyOptions& opts = {});

/// psi_alpha(t) = int_R G(t - alpha s, s) ds, by adaptive quadrature.
double psi_alpha(double alpha, double t);

/// int_R profile(u - eps t) psi_alpha(t) dt: the one-dimensional reduction of
/// the mollified ridge symbol profile(xi + alpha eta) at u = xi + alpha eta.
cplx ridge_mollified(const Symbol1D& profile, double alpha, double u, double eps);

}  // namespace deleeuw
