#include "deleeuw/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include "deleeuw/detail/summation.hpp"
#include "deleeuw/error.hpp"

namespace deleeuw {

LorentzExponents LorentzExponents::make(double p, double q, Domain domain) {
  LorentzExponents e{p, q, domain};
  e.validate();
  return e;
}

void LorentzExponents::validate() const {
  if (std::isnan(p) || std::isnan(q) || !(p > 0.0) || !(q > 0.0)) {
    throw DomainError("Lorentz exponents must satisfy p > 0 and q > 0");
  }
  if (p == kInf && q != kInf) throw DomainError("p = inf is only admitted together with q = inf");
}

StepProfile::StepProfile(std::vector<double> breaks, std::vector<double> levels)
    : breaks_(std::move(breaks)), levels_(std::move(levels)) {
  if (breaks_.size() != levels_.size() + 1 || breaks_.front() != 0.0) {
    throw DomainError("step profile needs breakpoints 0 = t_0 < ... < t_M and M levels");
  }
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i] > breaks_[i - 1])) throw DomainError("step profile breakpoints must increase strictly");
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!(levels_[i] >= 0.0) || !std::isfinite(levels_[i])) throw DomainError("step profile levels must be finite and >= 0");
    if (i > 0 && levels_[i] > levels_[i - 1]) throw DomainError("step profile levels must be nonincreasing");
  }
}

double StepProfile::operator()(double t) const {
  if (t < 0.0) throw DomainError("profile argument must be >= 0");
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const auto i = static_cast<std::size_t>(it - breaks_.begin());
  return i == 0 || i > levels_.size() ? 0.0 : levels_[i - 1];
}

double StepProfile::distribution(double lambda) const {
  // Levels are nonincreasing: count the leading pieces above lambda.
  const auto it = std::partition_point(levels_.begin(), levels_.end(), [lambda](double v) { return v > lambda; });
  return breaks_[static_cast<std::size_t>(it - levels_.begin())];
}

double StepProfile::average(double t) const {
  if (!(t > 0.0)) throw DomainError("f** needs t > 0");
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < levels_.size() && breaks_[i] < t; ++i) {
    acc.add(levels_[i] * (std::min(breaks_[i + 1], t) - breaks_[i]));
  }
  return acc.value() / t;
}

namespace {

std::vector<double> magnitudes(const SampledFunction& f) {
  std::vector<double> m;
  m.reserve(f.size());
  for (const auto& s : f.samples()) {
    if (const double a = std::abs(s); a > 0.0) m.push_back(a);
  }
  return m;
}

void check_domain(const SampledFunction& f, Domain domain) {
  if (domain == Domain::Torus && f.x_end() - f.x0() > 1.0 + 1e-9) {
    throw DomainError("torus function must live on a grid of total length at most 1");
  }
}

double norm_from_distribution(const SampledFunction& f, double p, double q) {
  auto mags = magnitudes(f);
  if (mags.empty()) return 0.0;
  std::sort(mags.begin(), mags.end());
  const double top = mags.back();
  const double dx = f.dx();
  const double a = q / p;
  detail::CompensatedSum acc;
  double prev = 0.0;
  std::size_t j = 0;
  while (j < mags.size()) {
    const double level = mags[j];
    // For lambda in [prev, level): mu(lambda) = dx * #{|f| >= level}.
    const double mu = static_cast<double>(mags.size() - j) * dx;
    acc.add((std::pow(level / top, q) - std::pow(prev / top, q)) * std::pow(mu, a));
    prev = level;
    j = static_cast<std::size_t>(std::upper_bound(mags.begin() + static_cast<std::ptrdiff_t>(j), mags.end(), level) -
                                 mags.begin());
  }
  return top * std::pow(acc.value(), 1.0 / q);
}

}  // namespace

double distribution(const SampledFunction& f, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("distribution function needs lambda >= 0");
  std::size_t count = 0;
  for (const auto& s : f.samples()) count += std::abs(s) > lambda ? 1 : 0;
  return static_cast<double>(count) * f.dx();
}

StepProfile rearrangement(const SampledFunction& f) {
  auto mags = magnitudes(f);
  std::stable_sort(mags.begin(), mags.end(), std::greater<>());
  std::vector<double> breaks{0.0};
  std::vector<double> levels;
  std::size_t i = 0;
  while (i < mags.size()) {
    std::size_t j = i;
    while (j < mags.size() && mags[j] == mags[i]) ++j;
    levels.push_back(mags[i]);
    breaks.push_back(static_cast<double>(j) * f.dx());
    i = j;
  }
  return StepProfile(std::move(breaks), std::move(levels));
}

double lorentz_norm(const StepProfile& profile, double p, double q) {
  LorentzExponents{p, q}.validate();
  const auto levels = profile.levels();
  const auto breaks = profile.breaks();
  if (levels.empty()) return 0.0;
  if (p == kInf) return levels.front();
  if (q == kInf) {
    double best = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      best = std::max(best, levels[i] * std::pow(breaks[i + 1], 1.0 / p));
    }
    return best;
  }
  const double top = levels.front();
  if (top == 0.0) return 0.0;
  const double a = q / p;
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    acc.add(std::pow(levels[i] / top, q) * (std::pow(breaks[i + 1], a) - std::pow(breaks[i], a)));
  }
  return top * std::pow(acc.value(), 1.0 / q);
}

double lorentz_norm(const SampledFunction& f, const LorentzExponents& exps, NormMethod method) {
  exps.validate();
  check_domain(f, exps.domain);
  if (exps.p == kInf) return f.max_abs();
  if (exps.q == kInf) {
    return method == NormMethod::DistributionIntegral ? weak_norm(f, exps.p)
                                                      : lorentz_norm(rearrangement(f), exps.p, exps.q);
  }
  if (method == NormMethod::DistributionIntegral) return norm_from_distribution(f, exps.p, exps.q);
  return lorentz_norm(rearrangement(f), exps.p, exps.q);
}

double weak_norm(const SampledFunction& f, double p) {
  if (std::isnan(p) || !(p > 0.0) || p == kInf) throw DomainError("weak norm needs 0 < p < inf");
  auto mags = magnitudes(f);
  std::sort(mags.begin(), mags.end());
  double best = 0.0;
  std::size_t j = 0;
  while (j < mags.size()) {
    // lambda increasing to mags[j]: mu = dx * #{|f| >= mags[j]}.
    const double mu = static_cast<double>(mags.size() - j) * f.dx();
    best = std::max(best, mags[j] * std::pow(mu, 1.0 / p));
    j = static_cast<std::size_t>(std::upper_bound(mags.begin() + static_cast<std::ptrdiff_t>(j), mags.end(), mags[j]) -
                                 mags.begin());
  }
  return best;
}

double double_star(const SampledFunction& f, double t) {
  if (!(t > 0.0)) throw DomainError("f** needs t > 0");
  return rearrangement(f).average(t);
}

}  // namespace deleeuw
