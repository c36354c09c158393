#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "deleeuw/estimators.hpp"
#include "deleeuw/report.hpp"
#include "deleeuw/symbol.hpp"

namespace deleeuw {

/// Powers A * (B/A)^{i/(n-1)}, i = 0 .. n-1.
std::vector<double> geometric_sequence(double a, double b, int n);

struct BridgeResult {
  std::vector<double> sweep;
  /// sup over the probe points of the bridge gap at each sweep value
  std::vector<double> gaps;
  /// For shift symbols: deviation of the computed operators from their closed forms.
  std::vector<double> closed_form_gaps;
};

/// sup_x |P_t(f, g)(x) - C_t(f_eps, g_eps)(x)| with f_eps(x) = e^{-pi^2 eps^2 x^2} f(x).
BridgeResult forward_bridge(const Symbol2D& m, double t, const TrigPolynomial& f, const TrigPolynomial& g,
                            std::span<const double> eps_seq, std::span<const double> points);

/// sup_x |C_1(f, g)(x) - P_t((D_t f)~, (D_t g)~)(t x)|.
BridgeResult reverse_bridge(const Symbol2D& m, const SampledFunction& f, const SampledFunction& g,
                            std::span<const double> t_seq, std::span<const double> points, const CmOptions& cm = {});

struct BridgeOptions {
  /// Forward bridge windows. For t > 1 the sequence is divided by t, which
  /// keeps the window width fixed in the coordinates of m(t xi, t eta).
  std::vector<double> eps_seq = geometric_sequence(0.25, 1.0 / 256.0, 7);
  std::vector<double> t_seq = geometric_sequence(1.0 / 16.0, 1.0 / 128.0, 4);
  /// Forward bridge dilations; empty means every t of the experiment grid.
  std::vector<double> forward_ts;
};

struct ExperimentThresholds {
  /// Largest admitted (max - min) / max of the per-t torus maxima.
  double uniformity_spread = 0.2;
  double bridge_tail = 1e-3;
  double bridge_exact = 1e-9;
};

struct ExperimentConfig {
  Exponents6 exps{};
  std::vector<double> t_grid = geometric_sequence(1.0 / 16.0, 16.0, 9);
  int trials = 200;
  int real_trials = 24;
  std::uint64_t seed = 0;
  bool bridges = false;
  ExperimentThresholds thresholds{};
  TorusEstimatorOptions torus{};
  RealEstimatorOptions real{};
  BridgeOptions bridge{};
};

/// Torus ratio statistics at every t, the line estimate, optional bridges,
/// and verdicts:
///   uniformity     spread of the per-t maxima
///   consistency    line max <= prod_i 4^{1/r_i} * sup_t torus max
///   dilation       line statistics at t in {1/2, 1, 2} agree within spread
///   bridges        tail gaps <= bridge_tail, forward gaps nonincreasing;
///                  shift symbols also match their closed forms to bridge_exact
ExperimentReport run_transference_experiment(const Symbol2D& m, const ExperimentConfig& cfg);

struct GCheckOptions {
  double tail = 1e-2;
  double noise = 1e-3;
  double erf_tolerance = 1e-6;
  double psi_tolerance = 1e-9;
  MollifyOptions mollify{};
};

/// |mollify(m, eps)(x, y) - m(x, y)| along eps_seq at each probe point. For
/// sign ridges sign(xi + alpha eta) the mollified values are also compared
/// with erf((x + alpha y) / (eps sqrt(1 + alpha^2))), both in two dimensions
/// and through the one-dimensional reduction against psi_alpha.
ExperimentReport check_g_regulated(const Symbol2D& m, std::span<const std::pair<double, double>> points,
                                   std::span<const double> eps_seq, const GCheckOptions& opts = {});

}  // namespace deleeuw
