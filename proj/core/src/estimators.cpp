#include "deleeuw/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "deleeuw/error.hpp"
#include "deleeuw/report.hpp"

namespace deleeuw {

void Exponents6::validate() const {
  LorentzExponents{p1, q1}.validate();
  LorentzExponents{p2, q2}.validate();
  LorentzExponents{p3, q3}.validate();
  const double d = 1.0 / p1 + 1.0 / p2 - 1.0 / p3;
  if (std::abs(d) > 1e-12) throw DomainError("exponents must satisfy 1/p1 + 1/p2 = 1/p3");
}

Exponents6 Exponents6::from_vector(const std::vector<double>& v) {
  if (v.size() != 6) throw DomainError("exponent tuple needs six entries p1,q1,p2,q2,p3,q3");
  Exponents6 e{v[0], v[1], v[2], v[3], v[4], v[5]};
  e.validate();
  return e;
}

void RatioStats::add(double ratio, std::string id) {
  ratios.push_back(ratio);
  ids.push_back(std::move(id));
}

void RatioStats::finalize() {
  if (ratios.empty()) {
    max = min = median = q10 = q90 = 0.0;
    argmax.clear();
    return;
  }
  const auto it = std::max_element(ratios.begin(), ratios.end());
  max = *it;
  argmax = ids[static_cast<std::size_t>(it - ratios.begin())];
  min = *std::min_element(ratios.begin(), ratios.end());
  auto sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&sorted](double a) {
    const double pos = a * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  median = quantile(0.5);
  q10 = quantile(0.1);
  q90 = quantile(0.9);
}

nlohmann::json RatioStats::to_json(bool with_samples) const {
  nlohmann::json j{{"count", ratios.size()}, {"skipped", skipped},         {"max", max},   {"min", min},
                   {"median", median},       {"q10", q10},                 {"q90", q90},   {"argmax", argmax}};
  if (with_samples) {
    j["ratios"] = ratios;
    j["ids"] = ids;
  }
  return j;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

TrigPolynomial from_fn(int n, const std::function<cplx(int)>& c) {
  std::vector<cplx> v(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) v[static_cast<std::size_t>(k + n)] = c(k);
  return TrigPolynomial(std::move(v));
}

TrigPolynomial single(int k) { return build_trigpoly({{k, cplx{1.0}}}); }
TrigPolynomial dirichlet(int n) { return from_fn(n, [](int) { return cplx{1.0}; }); }
TrigPolynomial fejer(int n) {
  return from_fn(n, [n](int k) { return cplx{1.0 - std::abs(k) / (n + 1.0)}; });
}
TrigPolynomial lacunary(int max_degree) {
  std::map<int, cplx> m;
  for (int k = 1; k <= max_degree; k *= 2) m.emplace(k, cplx{1.0});
  return build_trigpoly(m);
}

TrigPolynomial random_poly(std::mt19937_64& eng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const int d = deg(eng);
  return from_fn(d, [&](int) {
    const double re = normal(eng);
    const double im = normal(eng);
    return cplx{re, im};
  });
}

}  // namespace

std::vector<TorusPair> torus_family(int trials, std::uint64_t seed, int max_degree) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (max_degree < 1) throw DomainError("max degree must be >= 1");
  std::vector<TorusPair> out;
  auto same = [&out](std::string id, const TrigPolynomial& f) { out.push_back({id + ",f=g", f, f}); };
  same("single(1)", single(1));
  out.push_back({"single(0),single(3)", single(0), single(std::min(3, max_degree))});
  out.push_back({"single(1),single(1)", single(1), single(1)});
  for (int n : {1, 4, 16, max_degree}) {
    if (n <= max_degree) same("dirichlet(" + std::to_string(n) + ")", dirichlet(n));
  }
  out.push_back({"dirichlet(4),dirichlet(" + std::to_string(max_degree) + ")", dirichlet(std::min(4, max_degree)),
                 dirichlet(max_degree)});
  for (int n : {4, 16}) {
    if (n <= max_degree) same("fejer(" + std::to_string(n) + ")", fejer(n));
  }
  same("lacunary", lacunary(max_degree));
  out.push_back({"lacunary,dirichlet(1)", lacunary(max_degree), dirichlet(1)});

  for (int i = 0; i < trials; ++i) {
    std::mt19937_64 eng(trial_seed(seed, static_cast<std::uint64_t>(i)));
    const auto f = random_poly(eng, max_degree);
    const std::string id = "random#" + std::to_string(i);
    if (i % 2 == 1) {
      same(id, f);
    } else {
      out.push_back({id, f, random_poly(eng, max_degree)});
    }
  }
  return out;
}

RatioStats estimate_norm_torus(const TorusOperator& op, const Exponents6& e, int trials, std::uint64_t seed,
                               const TorusEstimatorOptions& opts) {
  e.validate();
  const auto e1 = LorentzExponents::make(e.p1, e.q1, Domain::Torus);
  const auto e2 = LorentzExponents::make(e.p2, e.q2, Domain::Torus);
  const auto e3 = LorentzExponents::make(e.p3, e.q3, Domain::Torus);
  RatioStats stats;
  for (const auto& pair : torus_family(trials, seed, opts.max_degree)) {
    const double nf = lorentz_norm(sample_on_torus(pair.f, opts.cells), e1);
    const double ng = lorentz_norm(sample_on_torus(pair.g, opts.cells), e2);
    if (!(nf > 0.0) || !(ng > 0.0)) {
      ++stats.skipped;
      continue;
    }
    const double np = lorentz_norm(sample_on_torus(op(pair.f, pair.g), opts.cells), e3);
    stats.add(np / (nf * ng), pair.id);
  }
  stats.finalize();
  return stats;
}

RatioStats estimate_norm_torus(const DiscreteSymbol& m, const Exponents6& e, int trials, std::uint64_t seed,
                               const TorusEstimatorOptions& opts) {
  return estimate_norm_torus([&m](const TrigPolynomial& f, const TrigPolynomial& g) { return apply_Pm(m, f, g); }, e,
                             trials, seed, opts);
}

RatioStats estimate_norm_torus(const Symbol2D& m, double t, const Exponents6& e, int trials, std::uint64_t seed,
                               const TorusEstimatorOptions& opts) {
  return estimate_norm_torus(
      [&m, t](const TrigPolynomial& f, const TrigPolynomial& g) { return apply_Pm(m, t, f, g); }, e, trials, seed,
      opts);
}

namespace {

struct Bump {
  cplx c;
  double y, s, w;
};

SampledFunction gaussian_sum(const std::vector<Bump>& terms, const GridSpec& grid) {
  return sample_function(
      [&terms](double x) {
        cplx acc{};
        for (const auto& b : terms) {
          const double u = (x - b.y) / b.s;
          acc += b.c * std::exp(-kPi * u * u) * std::polar(1.0, 2.0 * kPi * b.w * x);
        }
        return acc;
      },
      grid);
}

std::vector<Bump> random_bumps(std::mt19937_64& eng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> ys(-2.0, 2.0), ss(1.0, 2.0), ws(-1.5, 1.5);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<Bump> out(static_cast<std::size_t>(count(eng)));
  for (auto& b : out) {
    const double re = normal(eng);
    const double im = normal(eng);
    b.c = {re, im};
    b.y = ys(eng);
    b.s = ss(eng);
    b.w = ws(eng);
  }
  return out;
}

}  // namespace

std::vector<RealPair> real_family(int trials, std::uint64_t seed, const GridSpec& grid) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  grid.validate();
  std::vector<RealPair> out;
  const auto gauss = gaussian_sum({{1.0, 0.0, 1.0, 0.0}}, grid);
  out.push_back({"gauss,f=g", gauss, gauss});
  const auto wide = gaussian_sum({{1.0, 0.0, 2.0, 0.0}}, grid);
  out.push_back({"gauss(s=2),f=g", wide, wide});
  out.push_back({"gauss,gauss(y=1)", gauss, gaussian_sum({{1.0, 1.0, 1.0, 0.0}}, grid)});
  out.push_back({"gauss(w=1),gauss(w=-1)", gaussian_sum({{1.0, 0.0, 1.0, 1.0}}, grid),
                 gaussian_sum({{1.0, 0.0, 1.0, -1.0}}, grid)});
  out.push_back({"gauss(w=1),gauss(w=1)", gaussian_sum({{1.0, 0.0, 1.0, 1.0}}, grid),
                 gaussian_sum({{1.0, 0.0, 1.0, 1.0}}, grid)});
  for (int i = 0; i < trials; ++i) {
    std::mt19937_64 eng(trial_seed(seed, static_cast<std::uint64_t>(i)));
    const auto f = gaussian_sum(random_bumps(eng), grid);
    const std::string id = "random#" + std::to_string(i);
    if (i % 2 == 1) {
      out.push_back({id + ",f=g", f, f});
    } else {
      out.push_back({id, f, gaussian_sum(random_bumps(eng), grid)});
    }
  }
  return out;
}

double real_ratio(const Symbol2D& m, const SampledFunction& f, const SampledFunction& g, const Exponents6& e,
                  const CmOptions& cm) {
  const double nf = lorentz_norm(f, LorentzExponents::make(e.p1, e.q1));
  const double ng = lorentz_norm(g, LorentzExponents::make(e.p2, e.q2));
  if (!(nf > 0.0) || !(ng > 0.0)) return std::nan("");
  const auto out = apply_Cm(m, f, g, f.grid(), cm);
  return lorentz_norm(out, LorentzExponents::make(e.p3, e.q3)) / (nf * ng);
}

nlohmann::json RealEstimate::to_json() const {
  nlohmann::json d = nlohmann::json::array();
  for (const auto& [t, s] : dilations) d.push_back({{"t", t}, {"stats", s.to_json()}});
  return {{"stats", stats.to_json()}, {"dilations", d}, {"dilation_consistent", dilation_consistent}};
}

RealEstimate estimate_norm_real(const Symbol2D& m, const Exponents6& e, int trials, std::uint64_t seed,
                                const RealEstimatorOptions& opts) {
  e.validate();
  const auto family = real_family(trials, seed, opts.grid);
  auto run = [&](double t) {
    CmOptions cm = opts.cm;
    cm.t = t;
    RatioStats s;
    for (const auto& pair : family) {
      const double r = real_ratio(m, pair.f, pair.g, e, cm);
      if (std::isnan(r)) {
        ++s.skipped;
        continue;
      }
      s.add(r, pair.id);
    }
    s.finalize();
    return s;
  };
  RealEstimate out;
  out.stats = run(opts.cm.t);
  const double spread = out.stats.max - out.stats.min;
  for (const double t : opts.dilation_checks) {
    auto s = t == opts.cm.t ? out.stats : run(t * opts.cm.t);
    if (std::abs(s.max - out.stats.max) > std::max(spread, 1e-9 * out.stats.max)) out.dilation_consistent = false;
    out.dilations.emplace_back(t, std::move(s));
  }
  return out;
}

}  // namespace deleeuw
