#pragma once

#include <span>
#include <vector>

#include "deleeuw/funcspace.hpp"
#include "deleeuw/lorentz.hpp"
#include "deleeuw/symbol.hpp"

namespace deleeuw {

// ---- dilation, modulation, translation ------------------------------------

/// Grid with cell width t*dx and origin t*x0. Throws DomainError if either
/// product is inexact in floating point.
GridSpec dilate_grid(const GridSpec& grid, double t);

/// D_t^p f(x) = t^{-1/p} f(x / t), exact regridding: dx' = t dx, x0' = t x0.
/// Throws DomainError unless t > 0 and both products are exact.
SampledFunction dilate(const SampledFunction& f, double t, double p = kInf);

/// D_t^p f re-evaluated on `target` by linear interpolation between cell
/// midpoints of f. For smooth f the pointwise error is at most
/// (dx^2 / 8) sup|f''| plus the truncation at the support edges.
SampledFunction dilate_onto(const SampledFunction& f, double t, double p, const GridSpec& target);

/// M_y f(x) = e^{2 pi i y x} f(x), using the cell midpoint as x.
SampledFunction modulate(const SampledFunction& f, double y);
/// M_y on the torus; y must be an integer.
TrigPolynomial modulate(const TrigPolynomial& f, int y);

enum class GridMode { Exact, Free };

/// T_y f(x) = f(x - y). In Exact mode y must be a multiple of dx and the result
/// sits on the same lattice as f; Free mode shifts the origin by y.
SampledFunction translate(const SampledFunction& f, double y, GridMode mode = GridMode::Exact);
TrigPolynomial translate(const TrigPolynomial& f, double y);

// ---- Fourier transform ------------------------------------------------------

/// f^(xi) = dx sum_i f(x_i) e^{-2 pi i x_i xi} at the midpoints of freq_grid.
SampledFunction fourier_sampled(const SampledFunction& f, const GridSpec& freq_grid);
cplx fourier_at(const SampledFunction& f, double xi);

/// Band [-K - 1/2, K + 1/2) with `per_unit` (odd) cells per unit, so the
/// integers are midpoints.
GridSpec frequency_band(int K, int per_unit = 17);

/// Linear multiplier: sum_j dxi f^(xi_j) m(t xi_j) e^{2 pi i xi_j x} on out.
SampledFunction apply_multiplier_1d(const Symbol1D& m, const SampledFunction& f, const GridSpec& freq_grid,
                                    const GridSpec& out, double t = 1.0);

// ---- periodization ----------------------------------------------------------

struct PeriodizeOptions {
  double tail_tolerance = 1e-12;
  /// Largest degree examined; 0 means the Nyquist limit of the grid.
  int max_degree = 0;
};

/// Coefficient route: a_k = f^(k), truncated at the smallest K with
/// sum_{|k|>K} |f^(k)| <= tail_tolerance. Throws NumericalError if the
/// coefficients have not decayed by max_degree.
TrigPolynomial periodize(const SampledFunction& f, const PeriodizeOptions& opts = {});

/// Shift-sum route: sum_k f(x + k) at each point (step evaluation).
std::vector<cplx> periodize_shift_sum(const SampledFunction& f, std::span<const double> points);

/// Exact periodization of the step function as a torus step function with
/// cells of width dx, laid out on [-1/2, 1/2) when the cell edges allow it.
/// Needs 1/dx to be an integer.
SampledFunction periodize_cells(const SampledFunction& f);

// ---- bilinear multipliers ---------------------------------------------------

struct CmOptions {
  GridSpec xi_grid = frequency_band(5);
  GridSpec eta_grid = frequency_band(5);
  /// Evaluates C_t, i.e. the symbol m(t xi, t eta).
  double t = 1.0;
  bool allow_separable = true;
  /// Largest admitted |f^| on the outer cells of the band, relative to max |f^|.
  double tail_tolerance = 1e-8;
};

/// C_t(f, g)(x) = int int f^(xi) g^(eta) m(t xi, t eta) e^{2 pi i (xi + eta) x}
/// by the midpoint rule on the product frequency grid, at the midpoints of out.
/// Symbols with known factors m1(xi) m2(eta) take a separable path.
SampledFunction apply_Cm(const Symbol2D& m, const SampledFunction& f, const SampledFunction& g, const GridSpec& out,
                         const CmOptions& opts = {});
std::vector<cplx> apply_Cm_at(const Symbol2D& m, const SampledFunction& f, const SampledFunction& g,
                              std::span<const double> points, const CmOptions& opts = {});

/// C_t(f_eps, g_eps) at the given points for f_eps(x) = e^{-pi^2 eps^2 x^2} f(x)
/// with trigonometric f, g. The spectrum of f_eps is a sum of Gaussians of width
/// eps centered at the integers, so each pair (k1, k2) is a two-dimensional
/// Gauss-Hermite integral.
std::vector<cplx> apply_Cm_windowed(const Symbol2D& m, double t, const TrigPolynomial& f, const TrigPolynomial& g,
                                    double eps, std::span<const double> points, int nodes = 64);

/// P_m(f, g) = sum sum a_k1 b_k2 m_{k1,k2} e^{2 pi i (k1 + k2) x}, exact.
TrigPolynomial apply_Pm(const DiscreteSymbol& m, const TrigPolynomial& f, const TrigPolynomial& g);
/// P_t(f, g) with m_{k1,k2} = m(t k1, t k2).
TrigPolynomial apply_Pm(const Symbol2D& m, double t, const TrigPolynomial& f, const TrigPolynomial& g);

}  // namespace deleeuw
