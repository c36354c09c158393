#include "deleeuw/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deleeuw/detail/summation.hpp"
#include "deleeuw/error.hpp"
#include "deleeuw/report.hpp"

namespace deleeuw {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void GridSpec::validate() const {
  if (cells < 2) throw DomainError("grid needs at least 2 cells");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw DomainError("grid cell width must be positive and finite");
  if (!std::isfinite(x0)) throw DomainError("grid origin must be finite");
}

GridSpec GridSpec::centered(std::size_t cells, double dx) {
  GridSpec g{cells, -0.5 * static_cast<double>(cells) * dx, dx};
  g.validate();
  return g;
}

GridSpec GridSpec::covering(double a, double b, double dx) {
  const double n = (b - a) / dx;
  const double rounded = std::round(n);
  if (!(b > a) || std::abs(n - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw DomainError("interval length is not a multiple of the cell width");
  }
  GridSpec g{static_cast<std::size_t>(rounded), a, dx};
  g.validate();
  return g;
}

SampledFunction::SampledFunction(std::vector<cplx> samples, double x0, double dx)
    : samples_(std::move(samples)), x0_(x0), dx_(dx) {
  if (samples_.empty()) throw DomainError("sampled function needs at least one cell");
  if (!(dx_ > 0.0) || !std::isfinite(dx_)) throw DomainError("cell width must be positive and finite");
  if (!std::isfinite(x0_)) throw DomainError("grid origin must be finite");
  for (const auto& s : samples_) {
    if (!finite(s)) throw DomainError("non-finite sample value");
  }
}

cplx SampledFunction::at(double x) const {
  const double u = (x - x0_) / dx_;
  if (!(u >= 0.0)) return {};
  const auto i = static_cast<std::size_t>(std::floor(u));
  return i < samples_.size() ? samples_[i] : cplx{};
}

cplx SampledFunction::integral() const {
  detail::CompensatedComplexSum acc;
  for (const auto& s : samples_) acc.add(s);
  return acc.value() * dx_;
}

double SampledFunction::integral_abs() const {
  detail::CompensatedSum acc;
  for (const auto& s : samples_) acc.add(std::abs(s));
  return acc.value() * dx_;
}

double SampledFunction::support_measure() const {
  const auto nonzero = std::count_if(samples_.begin(), samples_.end(), [](cplx s) { return s != cplx{}; });
  return static_cast<double>(nonzero) * dx_;
}

bool SampledFunction::is_zero() const {
  return std::all_of(samples_.begin(), samples_.end(), [](cplx s) { return s == cplx{}; });
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, std::abs(s));
  return m;
}

SampledFunction SampledFunction::trimmed() const {
  auto nz = [](cplx s) { return s != cplx{}; };
  const auto first = std::find_if(samples_.begin(), samples_.end(), nz);
  if (first == samples_.end()) return SampledFunction({cplx{}}, x0_, dx_);
  const auto last = std::find_if(samples_.rbegin(), samples_.rend(), nz).base();
  const auto offset = static_cast<double>(first - samples_.begin());
  return SampledFunction(std::vector<cplx>(first, last), x0_ + offset * dx_, dx_);
}

SampledFunction build_sampled(std::span<const cplx> values, const GridSpec& grid) {
  grid.validate();
  if (values.size() != grid.cells) {
    throw DomainError("sample count " + std::to_string(values.size()) + " does not match grid size " +
                      std::to_string(grid.cells));
  }
  return SampledFunction(std::vector<cplx>(values.begin(), values.end()), grid.x0, grid.dx);
}

TrigPolynomial::TrigPolynomial(std::vector<cplx> centered) {
  if (centered.size() % 2 == 0) throw DomainError("centered coefficient vector must have odd length");
  for (const auto& c : centered) {
    if (!finite(c)) throw DomainError("non-finite trigonometric coefficient");
  }
  int n = static_cast<int>(centered.size() / 2);
  int deg = n;
  while (deg > 0 && centered[static_cast<std::size_t>(n - deg)] == cplx{} &&
         centered[static_cast<std::size_t>(n + deg)] == cplx{}) {
    --deg;
  }
  coeffs_.assign(centered.begin() + (n - deg), centered.begin() + (n + deg + 1));
  degree_ = deg;
}

cplx TrigPolynomial::coeff(int k) const {
  if (k < -degree_ || k > degree_) return {};
  return coeffs_[static_cast<std::size_t>(k + degree_)];
}

std::map<int, cplx> TrigPolynomial::to_map() const {
  std::map<int, cplx> out;
  for (int k = -degree_; k <= degree_; ++k) {
    if (auto c = coeff(k); c != cplx{}) out.emplace(k, c);
  }
  return out;
}

bool TrigPolynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

double TrigPolynomial::coeff_l1() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

cplx TrigPolynomial::operator()(double x) const {
  const double r = x - std::floor(x);
  cplx acc{};
  for (int k = -degree_; k <= degree_; ++k) {
    const cplx c = coeffs_[static_cast<std::size_t>(k + degree_)];
    if (c == cplx{}) continue;
    acc += c * detail::unit_phase(static_cast<double>(k) * r);
  }
  return acc;
}

TrigPolynomial build_trigpoly(const std::map<int, cplx>& coeffs) {
  int deg = 0;
  for (const auto& [k, c] : coeffs) {
    if (!finite(c)) throw DomainError("non-finite coefficient at k=" + std::to_string(k));
    if (c != cplx{}) deg = std::max(deg, std::abs(k));
  }
  std::vector<cplx> dense(static_cast<std::size_t>(2 * deg + 1));
  for (const auto& [k, c] : coeffs) {
    if (std::abs(k) <= deg) dense[static_cast<std::size_t>(k + deg)] = c;
  }
  return TrigPolynomial(std::move(dense));
}

cplx eval_trigpoly(const TrigPolynomial& f, double theta) { return f(theta); }

SampledFunction sample_on_torus(const TrigPolynomial& f, std::size_t cells) {
  if (cells < 2) throw DomainError("torus grid needs at least 2 cells");
  const double dx = 1.0 / static_cast<double>(cells);
  const int n = f.degree();
  std::vector<cplx> values(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const double x = -0.5 + (static_cast<double>(j) + 0.5) * dx;
    if (n > 64) {
      values[j] = f(x);
      continue;
    }
    // powers of a unit phasor; the drift after 64 products stays near 1e-14
    const cplx z = detail::unit_phase(x);
    cplx zk{1.0, 0.0};
    cplx acc = f.coeff(0);
    for (int k = 1; k <= n; ++k) {
      zk *= z;
      acc += f.coeff(k) * zk + f.coeff(-k) * std::conj(zk);
    }
    values[j] = acc;
  }
  return SampledFunction(std::move(values), -0.5, dx);
}

namespace {

// Origin-centered grid with an odd number of cells: midpoints at j*dx, |j| <= M.
GridSpec odd_centered(double radius, double dx) {
  const auto m = static_cast<std::size_t>(std::ceil(radius / dx - 1e-9));
  const std::size_t cells = 2 * m + 1;
  return {cells, -(static_cast<double>(m) + 0.5) * dx, dx};
}

void require_tail(double tail, double tol, std::string_view name) {
  if (tail > tol) {
    throw NumericalError("truncation radius too small for " + std::string(name) + ": tail mass " +
                         sci(tail) + " exceeds tolerance");
  }
}

}  // namespace

SampledFunction named_function(std::string_view name, const NamedParams& params) {
  if (!(params.dx > 0.0) || !(params.radius > 0.0)) throw DomainError("named function needs dx > 0 and radius > 0");
  const double dx = params.dx;
  const double r = params.radius;

  if (name == "box_phi") {
    const double n = 1.0 / dx;
    if (std::abs(n - std::round(n)) > 1e-9 * n) throw DomainError("box_phi needs 1/dx to be an integer");
    const auto cells = static_cast<std::size_t>(std::round(n));
    return SampledFunction(std::vector<cplx>(cells, cplx{1.0}), -0.5, dx);
  }
  if (name == "gauss_psi") {
    require_tail(std::erfc(r), params.tail_tolerance, name);
    const double c = 1.0 / std::sqrt(kPi);
    return sample_function([c](double x) { return c * std::exp(-x * x); }, odd_centered(r, dx));
  }
  if (name == "gauss_psi_check") {
    require_tail(std::erfc(kPi * r) / std::sqrt(kPi), params.tail_tolerance, name);
    return sample_function([](double x) { return std::exp(-kPi * kPi * x * x); }, odd_centered(r, dx));
  }
  if (name == "bump") {
    const double s = params.sigma;
    if (!(s > 0.0)) throw DomainError("bump needs sigma > 0");
    if (r < s) require_tail(1.0, params.tail_tolerance, name);
    return sample_function(
        [s](double x) {
          const double u = x / s;
          return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
        },
        odd_centered(r, dx));
  }
  if (name == "custom_gaussian") {
    const double s = params.sigma;
    if (!(s > 0.0)) throw DomainError("custom_gaussian needs sigma > 0");
    require_tail(s * std::sqrt(2.0 * kPi) * std::erfc(r / (s * std::sqrt(2.0))), params.tail_tolerance, name);
    return sample_function([s](double x) { return std::exp(-x * x / (2.0 * s * s)); }, odd_centered(r, dx));
  }
  throw DomainError("unknown named function '" + std::string(name) + "'");
}

}  // namespace deleeuw
