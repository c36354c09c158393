#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "deleeuw/estimators.hpp"
#include "deleeuw/lorentz.hpp"
#include "deleeuw/operators.hpp"
#include "deleeuw/symbol.hpp"

using namespace deleeuw;

namespace {

SampledFunction gaussian(std::size_t cells) {
  const double dx = 16.0 / static_cast<double>(cells);
  std::vector<cplx> v(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double x = -8.0 + (static_cast<double>(i) + 0.5) * dx;
    v[i] = std::exp(-x * x);
  }
  return SampledFunction(std::move(v), -8.0, dx);
}

TrigPolynomial poly(int degree) {
  std::vector<cplx> c(static_cast<std::size_t>(2 * degree + 1));
  for (int k = -degree; k <= degree; ++k) c[static_cast<std::size_t>(k + degree)] = cplx(1.0 / (1 + k * k), 0.5 * k);
  return TrigPolynomial(std::move(c));
}

void BM_lorentz_norm(benchmark::State& state) {
  const auto f = gaussian(static_cast<std::size_t>(state.range(0)));
  const auto e = LorentzExponents::make(4.0 / 3, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_norm(f, e));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_lorentz_norm)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);

void BM_apply_Cm(benchmark::State& state) {
  const auto f = gaussian(256);
  const auto m = make_symbol(spec::Gaussian2D{1.0});
  const GridSpec out{.cells = 256, .x0 = -8.0, .dx = 1.0 / 16};
  CmOptions opts;
  opts.allow_separable = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(apply_Cm(m, f, f, out, opts));
}
BENCHMARK(BM_apply_Cm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_apply_Pm(benchmark::State& state) {
  const auto f = poly(static_cast<int>(state.range(0)));
  const auto m = make_symbol(spec::SignAlpha{2.0});
  for (auto _ : state) benchmark::DoNotOptimize(apply_Pm(m, 0.5, f, f));
}
BENCHMARK(BM_apply_Pm)->RangeMultiplier(2)->Range(4, 64);

void BM_mollify_symbol(benchmark::State& state) {
  const auto m = state.range(0) == 0 ? make_symbol(spec::Gaussian2D{1.0}) : make_symbol(spec::SignAlpha{1.5});
  const auto mm = mollify_symbol(m, 0.125);
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mm(x, -0.2));
    x = x > 1.0 ? 0.3 : x + 0.01;
  }
}
BENCHMARK(BM_mollify_symbol)->Arg(0)->Arg(1);

void BM_estimate_norm_torus(benchmark::State& state) {
  const auto m = make_symbol(spec::SignAlpha{2.0});
  const Exponents6 e{};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_norm_torus(m, 0.25, e, static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_estimate_norm_torus)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
