#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deleeuw/funcspace.hpp"
#include "deleeuw/lorentz.hpp"
#include "deleeuw/operators.hpp"
#include "deleeuw/symbol.hpp"

namespace deleeuw {

/// (p1, q1, p2, q2, p3, q3) with 1/p1 + 1/p2 = 1/p3.
struct Exponents6 {
  double p1 = 2, q1 = 2, p2 = 2, q2 = 2, p3 = 1, q3 = 1;

  /// Throws DomainError on invalid pairs or when |1/p1 + 1/p2 - 1/p3| > 1e-12.
  void validate() const;
  std::vector<double> as_vector() const { return {p1, q1, p2, q2, p3, q3}; }
  static Exponents6 from_vector(const std::vector<double>& v);
};

struct RatioStats {
  std::vector<double> ratios;
  std::vector<std::string> ids;
  std::size_t skipped = 0;
  double max = 0.0;
  double min = 0.0;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  std::string argmax;

  void add(double ratio, std::string id);
  /// Fills the order statistics from `ratios`.
  void finalize();
  nlohmann::json to_json(bool with_samples = false) const;
};

/// Deterministic engine for trial `index` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// The input pairs of the torus estimator, in evaluation order.
/// Ids of pairs with g = f contain "f=g".
struct TorusPair {
  std::string id;
  TrigPolynomial f;
  TrigPolynomial g;
};
std::vector<TorusPair> torus_family(int trials, std::uint64_t seed, int max_degree = 32);

struct TorusEstimatorOptions {
  std::size_t cells = 1024;
  int max_degree = 32;
};

using TorusOperator = std::function<TrigPolynomial(const TrigPolynomial&, const TrigPolynomial&)>;

/// ||P(f, g)||_{p3,q3} / (||f||_{p1,q1} ||g||_{p2,q2}) over torus_family.
RatioStats estimate_norm_torus(const TorusOperator& op, const Exponents6& e, int trials, std::uint64_t seed,
                               const TorusEstimatorOptions& opts = {});
RatioStats estimate_norm_torus(const DiscreteSymbol& m, const Exponents6& e, int trials, std::uint64_t seed,
                               const TorusEstimatorOptions& opts = {});
RatioStats estimate_norm_torus(const Symbol2D& m, double t, const Exponents6& e, int trials, std::uint64_t seed,
                               const TorusEstimatorOptions& opts = {});

struct RealEstimatorOptions {
  /// Input and output grid: [-8, 8) with cell width 1/16.
  GridSpec grid{256, -8.0, 1.0 / 16.0};
  CmOptions cm{};
  /// Dilations at which the ratio statistics are compared with t = 1.
  std::vector<double> dilation_checks{0.5, 1.0, 2.0};
};

struct RealPair {
  std::string id;
  SampledFunction f;
  SampledFunction g;
};
/// Sums of modulated, translated and dilated Gaussians e^{-pi (x - y)^2 / s^2} e^{2 pi i w x}
/// with s in [1, 2], |y| <= 2 and |w| <= 1.5, sampled on `grid`.
std::vector<RealPair> real_family(int trials, std::uint64_t seed, const GridSpec& grid);

/// Single ratio ||C_t(f, g)||_{p3,q3} / (||f|| ||g||) with the output on f's grid.
double real_ratio(const Symbol2D& m, const SampledFunction& f, const SampledFunction& g, const Exponents6& e,
                  const CmOptions& cm);

struct RealEstimate {
  RatioStats stats;
  /// (t, stats) for each entry of dilation_checks.
  std::vector<std::pair<double, RatioStats>> dilations;
  bool dilation_consistent = true;
  nlohmann::json to_json() const;
};

RealEstimate estimate_norm_real(const Symbol2D& m, const Exponents6& e, int trials, std::uint64_t seed,
                                const RealEstimatorOptions& opts = {});

}  // namespace deleeuw
