#include "deleeuw/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "deleeuw/detail/summation.hpp"
#include "deleeuw/error.hpp"

namespace deleeuw {

double Constants::aoki_factor() const { return std::pow(4.0, 1.0 / r_aoki); }

Constants compute_constants(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError("constants need 0 < p, q < inf");
  }
  Constants c;
  c.p = p;
  c.q = q;
  c.r_aoki = 1.0 / std::log2(std::pow(2.0, 1.0 / p + 1.0) * std::max(std::pow(2.0, 1.0 / q - 1.0), 1.0));
  c.r_min = std::min(p, q);
  c.s_max = std::max(p, q);
  c.c_lower = std::pow(std::pow(2.0, c.s_max / p) - 1.0, -1.0 / c.s_max);
  c.c_upper = std::pow(std::pow(2.0, c.r_min / p) - 1.0, -1.0 / c.r_min);
  return c;
}

DyadicEnvelope::DyadicEnvelope(double lambda, EnvelopeSide side, std::vector<double> values)
    : lambda_(lambda), side_(side), values_(std::move(values)) {
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) throw DomainError("envelope needs lambda > 0");
  if (values_.empty()) throw DomainError("envelope needs a center value");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0)) throw DomainError("envelope levels must be >= 0");
    if (i > 0 && values_[i] > values_[i - 1]) throw DomainError("envelope levels must be nonincreasing");
  }
}

double DyadicEnvelope::operator()(double x) const {
  const double a = std::abs(x);
  if (a <= 0.5 * lambda_) return values_[0];
  // annulus n: lambda 2^{n-1} < a <= lambda 2^n
  double hi = lambda_;
  for (std::size_t n = 1; n < values_.size(); ++n, hi *= 2.0) {
    if (a <= hi) return values_[n];
  }
  return 0.0;
}

StepProfile DyadicEnvelope::profile() const {
  std::vector<double> breaks{0.0, lambda_};
  double w = lambda_;
  for (std::size_t n = 1; n < values_.size(); ++n, w *= 2.0) breaks.push_back(2.0 * w);
  return StepProfile(std::move(breaks), values_);
}

double DyadicEnvelope::lp_norm(double p) const {
  detail::CompensatedSum acc;
  acc.add(lambda_ * std::pow(values_[0], p));
  double w = lambda_;
  for (std::size_t n = 1; n < values_.size(); ++n, w *= 2.0) acc.add(w * std::pow(values_[n], p));
  return std::pow(acc.value(), 1.0 / p);
}

double DyadicEnvelope::lorentz_closed_form(double p, double r) const {
  const double a = r / p;
  detail::CompensatedSum acc;
  acc.add(std::pow(lambda_, a) * std::pow(values_[0], r));
  detail::CompensatedSum tail;
  double w = lambda_;
  for (std::size_t n = 1; n < values_.size(); ++n, w *= 2.0) tail.add(std::pow(w, a) * std::pow(values_[n], r));
  acc.add((std::pow(2.0, a) - 1.0) * tail.value());
  return std::pow(acc.value(), 1.0 / r);
}

DyadicEnvelope dyadic_envelope(const std::function<double(double)>& radial, double lambda, EnvelopeSide side,
                               double radius) {
  if (!(lambda > 0.0)) throw DomainError("envelope needs lambda > 0");
  std::vector<double> v;
  const bool upper = side == EnvelopeSide::Upper;
  v.push_back(upper ? radial(0.0) : radial(0.5 * lambda));
  double lo = 0.5 * lambda;  // annulus n spans (lo, 2 lo]
  while (lo <= radius) {
    v.push_back(upper ? radial(lo) : radial(2.0 * lo));
    lo *= 2.0;
  }
  // Profiles can be flat, and rounding of the samples must not break monotonicity.
  for (std::size_t i = 1; i < v.size(); ++i) v[i] = std::min(v[i], v[i - 1]);
  return DyadicEnvelope(lambda, side, std::move(v));
}

void require_radial_decreasing(const SampledFunction& phi, double tol) {
  const double top = phi.max_abs();
  const double slack = tol * top;
  const auto s = phi.samples();
  // midpoints must be symmetric about 0 for the check to be meaningful
  const double center = 0.5 * (phi.x0() + phi.x_end());
  if (std::abs(center) > 1e-9 * phi.dx()) {
    throw DomainError("radial profile must live on an origin-centered grid");
  }
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (std::abs(std::abs(s[i]) - std::abs(s[n - 1 - i])) > slack) throw DomainError("profile is not radial");
  }
  for (std::size_t i = n / 2; i + 1 < n; ++i) {
    if (std::abs(s[i + 1]) > std::abs(s[i]) + slack) throw DomainError("profile is not nonincreasing in |x|");
  }
}

DyadicEnvelope dyadic_envelope(const SampledFunction& phi, double lambda, EnvelopeSide side) {
  require_radial_decreasing(phi);
  const double radius = 0.5 * (phi.x_end() - phi.x0());
  auto radial = [&phi](double r) { return std::abs(phi.at(r)); };
  return dyadic_envelope(radial, lambda, side, radius);
}

StepProfile step_envelope(const SampledFunction& phi, double lambda, EnvelopeSide side) {
  return dyadic_envelope(phi, lambda, side).profile();
}

}  // namespace deleeuw
