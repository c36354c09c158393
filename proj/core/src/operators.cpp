#include "deleeuw/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deleeuw/detail/summation.hpp"
#include "deleeuw/error.hpp"
#include "deleeuw/report.hpp"
#include "deleeuw/quadrature.hpp"

namespace deleeuw {

using detail::unit_phase;

namespace {

double amplitude(double t, double p) {
  if (std::isnan(p) || !(p > 0.0)) throw DomainError("dilation exponent must satisfy p > 0");
  return p == kInf ? 1.0 : std::pow(t, -1.0 / p);
}

void require_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("dilation needs finite t > 0");
}

std::vector<double> midpoints(const GridSpec& g) {
  std::vector<double> xs(g.cells);
  for (std::size_t i = 0; i < g.cells; ++i) xs[i] = g.midpoint(i);
  return xs;
}

// max |F| on the two outer cells at each end, relative to max |F|.
double edge_ratio(const SampledFunction& F) {
  const auto s = F.samples();
  const double top = F.max_abs();
  if (top == 0.0) return 0.0;
  double edge = 0.0;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < std::min<std::size_t>(2, n); ++i) {
    edge = std::max({edge, std::abs(s[i]), std::abs(s[n - 1 - i])});
  }
  return edge / top;
}

// sum_j w_j e^{2 pi i xi_j x} for the midpoints xi_j of a grid.
cplx synth(std::span<const cplx> w, const GridSpec& g, double x) {
  cplx acc{};
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != cplx{}) acc += w[j] * unit_phase(g.midpoint(j) * x);
  }
  return acc;
}

}  // namespace

GridSpec dilate_grid(const GridSpec& grid, double t) {
  require_t(t);
  GridSpec out{grid.cells, t * grid.x0, t * grid.dx};
  if (std::fma(t, grid.dx, -out.dx) != 0.0 || std::fma(t, grid.x0, -out.x0) != 0.0) {
    throw DomainError("dilation by t is not exact on this grid");
  }
  return out;
}

SampledFunction dilate(const SampledFunction& f, double t, double p) {
  const double c = amplitude(t, p);
  const GridSpec g = dilate_grid(f.grid(), t);
  if (t == 1.0 && c == 1.0) return f;
  std::vector<cplx> s(f.samples().begin(), f.samples().end());
  if (c != 1.0) {
    for (auto& v : s) v *= c;
  }
  return SampledFunction(std::move(s), g.x0, g.dx);
}

SampledFunction dilate_onto(const SampledFunction& f, double t, double p, const GridSpec& target) {
  require_t(t);
  target.validate();
  const double c = amplitude(t, p);
  const auto s = f.samples();
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  auto sample = [&](std::ptrdiff_t i) { return i < 0 || i >= n ? cplx{} : s[static_cast<std::size_t>(i)]; };
  std::vector<cplx> out(target.cells);
  for (std::size_t j = 0; j < target.cells; ++j) {
    const double u = (target.midpoint(j) / t - f.x0()) / f.dx() - 0.5;
    const double fl = std::floor(u);
    const auto i = static_cast<std::ptrdiff_t>(fl);
    const double w = u - fl;
    out[j] = c * (w == 0.0 ? sample(i) : (1.0 - w) * sample(i) + w * sample(i + 1));
  }
  return SampledFunction(std::move(out), target.x0, target.dx);
}

SampledFunction modulate(const SampledFunction& f, double y) {
  if (!std::isfinite(y)) throw DomainError("modulation frequency must be finite");
  std::vector<cplx> s(f.samples().begin(), f.samples().end());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= unit_phase(y * f.midpoint(i));
  return SampledFunction(std::move(s), f.x0(), f.dx());
}

TrigPolynomial modulate(const TrigPolynomial& f, int y) {
  std::map<int, cplx> m;
  for (const auto& [k, c] : f.to_map()) m.emplace(k + y, c);
  return build_trigpoly(m);
}

SampledFunction translate(const SampledFunction& f, double y, GridMode mode) {
  if (!std::isfinite(y)) throw DomainError("translation must be finite");
  std::vector<cplx> s(f.samples().begin(), f.samples().end());
  if (mode == GridMode::Free) return SampledFunction(std::move(s), f.x0() + y, f.dx());
  const double n = y / f.dx();
  const double r = std::round(n);
  if (std::abs(n - r) > 1e-9 * std::max(1.0, std::abs(r))) {
    throw DomainError("translation by " + sci(y) + " is not a multiple of the cell width");
  }
  return SampledFunction(std::move(s), f.x0() + r * f.dx(), f.dx());
}

TrigPolynomial translate(const TrigPolynomial& f, double y) {
  if (!std::isfinite(y)) throw DomainError("translation must be finite");
  std::map<int, cplx> m;
  for (const auto& [k, c] : f.to_map()) m.emplace(k, c * unit_phase(-static_cast<double>(k) * y));
  return build_trigpoly(m);
}

cplx fourier_at(const SampledFunction& f, double xi) {
  const auto s = f.samples();
  cplx acc{};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != cplx{}) acc += s[i] * unit_phase(-f.midpoint(i) * xi);
  }
  return acc * f.dx();
}

SampledFunction fourier_sampled(const SampledFunction& f, const GridSpec& freq_grid) {
  freq_grid.validate();
  std::vector<cplx> out(freq_grid.cells);
  for (std::size_t j = 0; j < freq_grid.cells; ++j) out[j] = fourier_at(f, freq_grid.midpoint(j));
  return SampledFunction(std::move(out), freq_grid.x0, freq_grid.dx);
}

GridSpec frequency_band(int K, int per_unit) {
  if (K < 0 || per_unit < 1 || per_unit % 2 == 0) throw DomainError("frequency band needs K >= 0 and odd cells per unit");
  GridSpec g{static_cast<std::size_t>((2 * K + 1) * per_unit), -K - 0.5, 1.0 / per_unit};
  g.validate();
  return g;
}

SampledFunction apply_multiplier_1d(const Symbol1D& m, const SampledFunction& f, const GridSpec& freq_grid,
                                    const GridSpec& out, double t) {
  out.validate();
  const auto F = fourier_sampled(f, freq_grid);
  std::vector<cplx> w(freq_grid.cells);
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = F.samples()[j] * m(t * freq_grid.midpoint(j)) * freq_grid.dx;
  std::vector<cplx> vals(out.cells);
  for (std::size_t i = 0; i < out.cells; ++i) vals[i] = synth(w, freq_grid, out.midpoint(i));
  return SampledFunction(std::move(vals), out.x0, out.dx);
}

TrigPolynomial periodize(const SampledFunction& f, const PeriodizeOptions& opts) {
  const int nyquist = static_cast<int>(std::floor(0.5 / f.dx()));
  const int kmax = opts.max_degree > 0 ? std::min(opts.max_degree, nyquist) : nyquist;
  if (kmax < 1) throw NumericalError("grid too coarse to periodize");
  std::vector<cplx> coeff(static_cast<std::size_t>(2 * kmax + 1));
  for (int k = -kmax; k <= kmax; ++k) coeff[static_cast<std::size_t>(k + kmax)] = fourier_at(f, k);
  // tail[K] = sum_{K < |k| <= kmax} |a_k|
  std::vector<double> tail(static_cast<std::size_t>(kmax + 1), 0.0);
  for (int K = kmax - 1; K >= 0; --K) {
    tail[static_cast<std::size_t>(K)] = tail[static_cast<std::size_t>(K + 1)] +
                                        std::abs(coeff[static_cast<std::size_t>(kmax + K + 1)]) +
                                        std::abs(coeff[static_cast<std::size_t>(kmax - K - 1)]);
  }
  if (tail[static_cast<std::size_t>(kmax / 2)] > opts.tail_tolerance) {
    throw NumericalError("insufficient decay: Fourier coefficients beyond degree " + std::to_string(kmax / 2) +
                         " carry mass " + sci(tail[static_cast<std::size_t>(kmax / 2)]));
  }
  int K = 0;
  while (tail[static_cast<std::size_t>(K)] > opts.tail_tolerance) ++K;
  return TrigPolynomial(std::vector<cplx>(coeff.begin() + (kmax - K), coeff.begin() + (kmax + K + 1)));
}

std::vector<cplx> periodize_shift_sum(const SampledFunction& f, std::span<const double> points) {
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const double x : points) {
    const auto k0 = static_cast<long>(std::floor(f.x0() - x)) - 1;
    const auto k1 = static_cast<long>(std::ceil(f.x_end() - x)) + 1;
    cplx acc{};
    for (long k = k0; k <= k1; ++k) acc += f.at(x + static_cast<double>(k));
    out.push_back(acc);
  }
  return out;
}

SampledFunction periodize_cells(const SampledFunction& f) {
  const double n = 1.0 / f.dx();
  const double r = std::round(n);
  if (std::abs(n - r) > 1e-9 * r || r < 2.0) throw DomainError("exact periodization needs 1/dx to be an integer >= 2");
  const auto N = static_cast<std::size_t>(r);
  std::vector<cplx> cells(N);
  const auto s = f.samples();
  const double r0 = f.x0() - std::floor(f.x0() + 0.5);
  const double off = (r0 + 0.5) / f.dx();
  const double o = std::round(off);
  if (std::abs(off - o) > 1e-9) {
    // cells not aligned with -1/2: keep the reduced origin
    for (std::size_t i = 0; i < s.size(); ++i) cells[i % N] += s[i];
    return SampledFunction(std::move(cells), r0, f.dx());
  }
  const auto shift = static_cast<std::size_t>(o) % N;
  for (std::size_t i = 0; i < s.size(); ++i) cells[(i + shift) % N] += s[i];
  return SampledFunction(std::move(cells), -0.5, f.dx());
}

std::vector<cplx> apply_Cm_at(const Symbol2D& m, const SampledFunction& f, const SampledFunction& g,
                              std::span<const double> points, const CmOptions& opts) {
  require_t(opts.t);
  const GridSpec& X = opts.xi_grid;
  const GridSpec& Y = opts.eta_grid;
  X.validate();
  Y.validate();
  const auto F = fourier_sampled(f, X);
  const auto G = fourier_sampled(g, Y);
  if (edge_ratio(F) > opts.tail_tolerance || edge_ratio(G) > opts.tail_tolerance) {
    throw NumericalError("frequency band too small: transform at the band edge exceeds tail tolerance");
  }
  const double t = opts.t;
  std::vector<cplx> out(points.size());

  if (opts.allow_separable && m.factors()) {
    const auto& [m1, m2] = *m.factors();
    std::vector<cplx> wf(X.cells), wg(Y.cells);
    for (std::size_t i = 0; i < X.cells; ++i) wf[i] = F.samples()[i] * m1(t * X.midpoint(i)) * X.dx;
    for (std::size_t j = 0; j < Y.cells; ++j) wg[j] = G.samples()[j] * m2(t * Y.midpoint(j)) * Y.dx;
    for (std::size_t k = 0; k < points.size(); ++k) out[k] = synth(wf, X, points[k]) * synth(wg, Y, points[k]);
    return out;
  }

  // M[i][j] = dxi deta f^_i g^_j m(t xi_i, t eta_j); rows with f^_i = 0 are skipped.
  const std::size_t nx = X.cells;
  const std::size_t ny = Y.cells;
  std::vector<cplx> M(nx * ny);
  std::vector<char> live(nx, 0);
  for (std::size_t i = 0; i < nx; ++i) {
    const cplx fi = F.samples()[i] * X.dx;
    if (fi == cplx{}) continue;
    live[i] = 1;
    for (std::size_t j = 0; j < ny; ++j) M[i * ny + j] = fi * G.samples()[j] * Y.dx * m(t * X.midpoint(i), t * Y.midpoint(j));
  }
  std::vector<cplx> ex(nx), ey(ny);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double x = points[k];
    for (std::size_t i = 0; i < nx; ++i) ex[i] = live[i] ? unit_phase(X.midpoint(i) * x) : cplx{};
    for (std::size_t j = 0; j < ny; ++j) ey[j] = unit_phase(Y.midpoint(j) * x);
    cplx acc{};
    for (std::size_t i = 0; i < nx; ++i) {
      if (!live[i]) continue;
      cplx row{};
      const cplx* Mi = &M[i * ny];
      for (std::size_t j = 0; j < ny; ++j) row += Mi[j] * ey[j];
      acc += ex[i] * row;
    }
    out[k] = acc;
  }
  return out;
}

SampledFunction apply_Cm(const Symbol2D& m, const SampledFunction& f, const SampledFunction& g, const GridSpec& out,
                         const CmOptions& opts) {
  out.validate();
  const auto xs = midpoints(out);
  return SampledFunction(apply_Cm_at(m, f, g, xs, opts), out.x0, out.dx);
}

std::vector<cplx> apply_Cm_windowed(const Symbol2D& m, double t, const TrigPolynomial& f, const TrigPolynomial& g,
                                    double eps, std::span<const double> points, int nodes) {
  require_t(t);
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("window width needs eps > 0");
  const auto rule = quad::gauss_hermite(nodes);
  const std::size_t n = rule.nodes.size();
  const auto fa = f.to_map();
  const auto gb = g.to_map();
  std::vector<cplx> out(points.size());
  std::vector<cplx> ph(n);

  if (m.factors()) {
    const auto& [m1, m2] = *m.factors();
    // A_k(x) = pi^{-1/2} sum_i w_i m1(t (k + eps u_i)) e^{2 pi i eps u_i x}
    auto table = [&](const std::map<int, cplx>& coeffs, const Symbol1D& s) {
      std::vector<std::vector<cplx>> w;
      for (const auto& [k, c] : coeffs) {
        std::vector<cplx> row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = c * rule.weights[i] * s(t * (k + eps * rule.nodes[i]));
        w.push_back(std::move(row));
      }
      return w;
    };
    const auto wf = table(fa, m1);
    const auto wg = table(gb, m2);
    auto side = [&](const std::map<int, cplx>& coeffs, const std::vector<std::vector<cplx>>& w, double x) {
      cplx acc{};
      std::size_t r = 0;
      for (const auto& [k, c] : coeffs) {
        cplx s{};
        for (std::size_t i = 0; i < n; ++i) s += w[r][i] * ph[i];
        acc += s * unit_phase(static_cast<double>(k) * x);
        ++r;
      }
      return acc / std::sqrt(kPi);
    };
    for (std::size_t p = 0; p < points.size(); ++p) {
      for (std::size_t i = 0; i < n; ++i) ph[i] = unit_phase(eps * rule.nodes[i] * points[p]);
      out[p] = side(fa, wf, points[p]) * side(gb, wg, points[p]);
    }
    return out;
  }

  struct Pair {
    int k;
    std::vector<cplx> M;
  };
  std::vector<Pair> pairs;
  for (const auto& [k1, a] : fa) {
    for (const auto& [k2, b] : gb) {
      Pair pr{k1 + k2, std::vector<cplx>(n * n)};
      for (std::size_t i = 0; i < n; ++i) {
        const double xi = t * (k1 + eps * rule.nodes[i]);
        for (std::size_t j = 0; j < n; ++j) {
          pr.M[i * n + j] = a * b * rule.weights[i] * rule.weights[j] * m(xi, t * (k2 + eps * rule.nodes[j]));
        }
      }
      pairs.push_back(std::move(pr));
    }
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double x = points[p];
    for (std::size_t i = 0; i < n; ++i) ph[i] = unit_phase(eps * rule.nodes[i] * x);
    cplx acc{};
    for (const auto& pr : pairs) {
      cplx s{};
      for (std::size_t i = 0; i < n; ++i) {
        cplx row{};
        for (std::size_t j = 0; j < n; ++j) row += pr.M[i * n + j] * ph[j];
        s += ph[i] * row;
      }
      acc += s * unit_phase(static_cast<double>(pr.k) * x);
    }
    out[p] = acc / kPi;
  }
  return out;
}

namespace {

template <class M>
TrigPolynomial pm_sum(const TrigPolynomial& f, const TrigPolynomial& g, M&& m) {
  const int n1 = f.degree();
  const int n2 = g.degree();
  std::vector<cplx> out(static_cast<std::size_t>(2 * (n1 + n2) + 1));
  for (int k1 = -n1; k1 <= n1; ++k1) {
    const cplx a = f.coeff(k1);
    if (a == cplx{}) continue;
    for (int k2 = -n2; k2 <= n2; ++k2) {
      const cplx b = g.coeff(k2);
      if (b == cplx{}) continue;
      out[static_cast<std::size_t>(k1 + k2 + n1 + n2)] += a * b * m(k1, k2);
    }
  }
  return TrigPolynomial(std::move(out));
}

}  // namespace

TrigPolynomial apply_Pm(const DiscreteSymbol& m, const TrigPolynomial& f, const TrigPolynomial& g) {
  return pm_sum(f, g, [&m](int k1, int k2) { return m(k1, k2); });
}

TrigPolynomial apply_Pm(const Symbol2D& m, double t, const TrigPolynomial& f, const TrigPolynomial& g) {
  require_t(t);
  return pm_sum(f, g, [&m, t](int k1, int k2) { return m(t * k1, t * k2); });
}

}  // namespace deleeuw
