#pragma once

#include <span>
#include <vector>

#include "deleeuw/envelope.hpp"
#include "deleeuw/funcspace.hpp"
#include "deleeuw/lorentz.hpp"
#include "deleeuw/report.hpp"

namespace deleeuw {

struct RealToroOptions {
  /// Relative gap allowed at the last sweep point.
  double tail_gap = 0.02;
  /// Relative gap treated as equality once the dilated support fits in one period.
  double exact_gap = 1e-12;
  /// Allowed increase between consecutive gaps.
  double monotone_noise = 1e-12;
};

/// t^{-1/p} ||(D_t f)~||_{L^{p,q}(T)} against ||f||_{L^{p,q}(R)} along a
/// decreasing t sequence. D_t f is an exact regridding, and its periodization
/// is exact cell by cell, so each t needs 1/(t dx) to be an integer.
ExperimentReport check_lemma_realtoro(const SampledFunction& f, double p, double q, std::span<const double> t_seq,
                                      const RealToroOptions& opts = {});

struct TororealdosOptions {
  /// Torus cells; the line grid on [-k/2, k/2] uses the same cell width.
  std::size_t cells = 256;
  double tolerance = 1e-10;
};

/// ||f||_{L^{p,q}(T)} against ||f D_k^p phi||_{L^{p,q}(R)} for phi the
/// indicator of [-1/2, 1/2], with f evaluated at the cell midpoints.
ExperimentReport check_lemma_tororealdos(const TrigPolynomial& f, double p, double q, int k,
                                         const TororealdosOptions& opts = {});

struct SandwichOptions {
  std::size_t cells = 128;
  double slack = 0.05;
  /// Relative tolerance for the diagonal limit ||phi||_p ||f||_p (p = q).
  double diagonal_tolerance = 0.01;
};

/// ||f D_{1/eps}^p phi||_{L^{p,q}(R)} along eps_seq for a torus function f
/// (a step function on N cells of width 1/N) and a radial decreasing phi.
/// The liminf and limsup are estimated by min and max over the tail half of
/// the sweep and compared with
///   c_lower ||phi||_{p,s} ||f||  and  c_upper ||phi||_{p,r} ||f||,
/// widened by the slack. For q = inf only the upper bound
/// ||phi||_{L^p} ||f||_{L^{p,inf}(T)} is checked.
ExperimentReport check_lemma_sandwich(const SampledFunction& f_torus, const SampledFunction& phi, double p, double q,
                                      std::span<const double> eps_seq, const SandwichOptions& opts = {});
ExperimentReport check_lemma_sandwich(const TrigPolynomial& f, const SampledFunction& phi, double p, double q,
                                      std::span<const double> eps_seq, const SandwichOptions& opts = {});

/// Values f(x_i) eps^{1/p} phi(eps x_i) on the line grid with cell width
/// f_torus.dx() covering the support of phi(eps .), aligned with the torus cells.
SampledFunction windowed_torus_function(const SampledFunction& f_torus, const SampledFunction& phi, double p,
                                        double eps);

}  // namespace deleeuw
