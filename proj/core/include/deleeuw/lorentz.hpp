#pragma once

#include <limits>
#include <span>
#include <vector>

#include "deleeuw/funcspace.hpp"

namespace deleeuw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Domain { Line, Torus };

/// Exponent pair (p, q) selecting L^{p,q}. p = inf is only admitted with q = inf.
struct LorentzExponents {
  double p = 2.0;
  double q = 2.0;
  Domain domain = Domain::Line;

  static LorentzExponents make(double p, double q, Domain domain = Domain::Line);
  void validate() const;
  bool weak() const { return q == kInf; }
};

/// Nonincreasing step profile: levels[i] on [breaks[i], breaks[i+1]), zero past breaks.back().
class StepProfile {
 public:
  StepProfile() : breaks_{0.0} {}
  StepProfile(std::vector<double> breaks, std::vector<double> levels);

  std::span<const double> breaks() const { return breaks_; }
  std::span<const double> levels() const { return levels_; }
  std::size_t pieces() const { return levels_.size(); }
  double total_measure() const { return breaks_.back(); }

  /// Value at t >= 0 (right-continuous).
  double operator()(double t) const;
  /// |{s : profile(s) > lambda}|.
  double distribution(double lambda) const;
  /// Average over [0, t].
  double average(double t) const;

 private:
  std::vector<double> breaks_;
  std::vector<double> levels_;
};

/// Measure of {|f| > lambda} (strict). Throws for lambda < 0.
double distribution(const SampledFunction& f, double lambda);

/// f*: magnitudes sorted descending, equal magnitudes merged, breakpoints
/// at (count * dx). Zero cells are dropped.
StepProfile rearrangement(const SampledFunction& f);

enum class NormMethod { Rearrangement, DistributionIntegral };

/// ||f||*_{p,q}. Both methods are closed forms on step functions:
///   Rearrangement:        (sum_i v_i^q (t_i^{q/p} - t_{i-1}^{q/p}))^{1/q}
///   DistributionIntegral: (sum_j (l_j^q - l_{j-1}^q) mu(l_{j-1})^{q/p})^{1/q}
/// q = inf gives sup_t t^{1/p} f*(t); DistributionIntegral then routes to weak_norm.
double lorentz_norm(const SampledFunction& f, const LorentzExponents& exps,
                    NormMethod method = NormMethod::Rearrangement);

/// Closed-form quasi-norm of a profile.
double lorentz_norm(const StepProfile& profile, double p, double q);

/// sup_{lambda > 0} lambda mu_f(lambda)^{1/p}, evaluated as lambda increases
/// to each distinct sample magnitude.
double weak_norm(const SampledFunction& f, double p);

/// f**(t) = (1/t) int_0^t f*(s) ds.
double double_star(const SampledFunction& f, double t);

}  // namespace deleeuw
