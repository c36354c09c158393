#pragma once

#include <functional>
#include <vector>

#include "deleeuw/funcspace.hpp"
#include "deleeuw/lorentz.hpp"

namespace deleeuw {

struct Constants {
  double p = 0.0;
  double q = 0.0;
  /// 1 / log2(2^{1/p + 1} max(2^{1/q - 1}, 1))
  double r_aoki = 0.0;
  double r_min = 0.0;
  double s_max = 0.0;
  /// (2^{s/p} - 1)^{-1/s}
  double c_lower = 0.0;
  /// (2^{r/p} - 1)^{-1/r}
  double c_upper = 0.0;

  /// 4^{1/r_aoki}, the two-sided factor of the periodization limits.
  double aoki_factor() const;
};

/// Throws DomainError unless 0 < p, q < inf.
Constants compute_constants(double p, double q);

enum class EnvelopeSide { Lower, Upper };

/// Radial dyadic step function built from samples of a radial profile phi:
///   Upper: phi(0) on |x| <= lambda/2, phi(lambda 2^{n-1}) on lambda 2^{n-1} < |x| <= lambda 2^n
///   Lower: phi(lambda/2) on |x| <= lambda/2, phi(lambda 2^n) on the same annuli
/// for n = 0 .. annuli-1, and zero beyond.
class DyadicEnvelope {
 public:
  DyadicEnvelope(double lambda, EnvelopeSide side, std::vector<double> values);

  double lambda() const { return lambda_; }
  EnvelopeSide side() const { return side_; }
  /// values()[0] is the center level, values()[n + 1] the level on annulus n.
  const std::vector<double>& values() const { return values_; }

  double operator()(double x) const;
  /// Decreasing rearrangement: breakpoints 0, lambda, 2 lambda, 4 lambda, ...
  StepProfile profile() const;
  /// (lambda v0^p + sum_n lambda 2^n v_{n+1}^p)^{1/p}
  double lp_norm(double p) const;
  /// (lambda^{r/p} v0^r + (2^{r/p} - 1) sum_n (lambda 2^n)^{r/p} v_{n+1}^r)^{1/r}
  double lorentz_closed_form(double p, double r) const;

 private:
  double lambda_;
  EnvelopeSide side_;
  std::vector<double> values_;
};

/// Envelope of a radial, nonincreasing profile given as a callable on [0, inf).
/// Annuli are added until lambda 2^{n-1} exceeds `radius`.
DyadicEnvelope dyadic_envelope(const std::function<double(double)>& radial, double lambda, EnvelopeSide side,
                               double radius);

/// Checks that |phi| is even and nonincreasing in |x| on its grid (within
/// `tol` relative to max |phi|). Throws DomainError otherwise.
void require_radial_decreasing(const SampledFunction& phi, double tol = 1e-12);

/// Envelope of a sampled radial decreasing phi, read off its step values.
DyadicEnvelope dyadic_envelope(const SampledFunction& phi, double lambda, EnvelopeSide side);

/// The rearranged envelope as a profile.
StepProfile step_envelope(const SampledFunction& phi, double lambda, EnvelopeSide side);

}  // namespace deleeuw
