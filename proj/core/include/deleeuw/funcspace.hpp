#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace deleeuw {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Uniform grid of `cells` cells of width `dx` starting at `x0`.
struct GridSpec {
  std::size_t cells = 0;
  double x0 = 0.0;
  double dx = 0.0;

  /// Throws DomainError unless cells >= 2 and dx > 0 (both finite).
  void validate() const;
  double midpoint(std::size_t i) const { return x0 + (static_cast<double>(i) + 0.5) * dx; }
  double end() const { return x0 + static_cast<double>(cells) * dx; }

  /// Grid of `cells` cells centered on the origin: [-cells*dx/2, cells*dx/2).
  static GridSpec centered(std::size_t cells, double dx);
  /// Grid covering [a, b) with the given cell width; b - a must be a multiple of dx.
  static GridSpec covering(double a, double b, double dx);
};

/// Compactly supported step function on the real line.
///
/// Cell i is [x0 + i*dx, x0 + (i+1)*dx) and carries the constant value
/// samples[i]; the function vanishes outside [x0, x0 + N*dx). Smooth
/// functions are represented by their values at cell midpoints, so every
/// measure and norm computed from a SampledFunction is exact for the step
/// function it stands for.
class SampledFunction {
 public:
  SampledFunction(std::vector<cplx> samples, double x0, double dx);

  std::span<const cplx> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double x0() const { return x0_; }
  double dx() const { return dx_; }
  double x_end() const { return x0_ + static_cast<double>(samples_.size()) * dx_; }
  double midpoint(std::size_t i) const { return x0_ + (static_cast<double>(i) + 0.5) * dx_; }
  GridSpec grid() const { return {samples_.size(), x0_, dx_}; }

  /// Step evaluation; zero outside the support.
  cplx at(double x) const;

  cplx integral() const;
  double integral_abs() const;
  /// Lebesgue measure of {f != 0}.
  double support_measure() const;
  bool is_zero() const;
  double max_abs() const;

  /// Drops leading and trailing zero cells (keeps at least one cell).
  SampledFunction trimmed() const;

 private:
  std::vector<cplx> samples_;
  double x0_;
  double dx_;
};

/// Build a step function from explicit cell values. Throws on length
/// mismatch or non-finite values.
SampledFunction build_sampled(std::span<const cplx> values, const GridSpec& grid);

/// Sample a callable at the midpoints of `grid`.
template <class F>
SampledFunction sample_function(F&& fn, const GridSpec& grid) {
  grid.validate();
  std::vector<cplx> values(grid.cells);
  for (std::size_t i = 0; i < grid.cells; ++i) values[i] = cplx(fn(grid.midpoint(i)));
  return SampledFunction(std::move(values), grid.x0, grid.dx);
}

/// Finite two-sided Fourier series sum_{|k|<=N} a_k e^{2 pi i k x}.
class TrigPolynomial {
 public:
  /// The zero polynomial.
  TrigPolynomial() : coeffs_{cplx{}}, degree_(0) {}
  /// `centered` holds a_{-N}, ..., a_N (odd length). Trailing zero
  /// coefficients are trimmed so degree() is the true degree.
  explicit TrigPolynomial(std::vector<cplx> centered);

  int degree() const { return degree_; }
  cplx coeff(int k) const;
  std::span<const cplx> centered() const { return coeffs_; }
  std::map<int, cplx> to_map() const;
  bool is_zero() const;
  double coeff_l1() const;

  /// Exact finite sum. The argument is reduced modulo 1 first, so
  /// f(x) and f(x + 1) agree bit-for-bit whenever x + 1 is exact.
  cplx operator()(double x) const;

 private:
  std::vector<cplx> coeffs_;
  int degree_;
};

TrigPolynomial build_trigpoly(const std::map<int, cplx>& coeffs);
cplx eval_trigpoly(const TrigPolynomial& f, double theta);

/// Torus step function: `cells` cells of width 1/cells on [-1/2, 1/2),
/// values taken at cell midpoints. Torus measure is normalized Lebesgue
/// measure on that interval.
SampledFunction sample_on_torus(const TrigPolynomial& f, std::size_t cells);

struct NamedParams {
  double dx = 1.0 / 256.0;
  double radius = 8.0;
  /// Width parameter for bump and custom_gaussian.
  double sigma = 1.0;
  /// Maximum mass allowed outside the truncation radius.
  double tail_tolerance = 1e-12;
};

/// Fixed gadget functions:
///   box_phi          chi_[-1/2,1/2]
///   gauss_psi        pi^{-1/2} e^{-x^2}
///   gauss_psi_check  e^{-pi^2 x^2}  (inverse transform of gauss_psi)
///   bump             exp(1 - 1/(1 - (x/sigma)^2)) on |x| < sigma
///   custom_gaussian  exp(-x^2 / (2 sigma^2))
/// Smooth functions live on an odd, origin-centered grid so x = 0 is a
/// sample point; box_phi lives on [-1/2, 1/2) and needs 1/dx to be an
/// integer.
SampledFunction named_function(std::string_view name, const NamedParams& params = {});

}  // namespace deleeuw
