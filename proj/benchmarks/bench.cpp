#include <benchmark/benchmark.h>

#include <memory>

#include "eisen/eisen.hpp"
#include "eisen/parallel.hpp"
#include "eisen/specfun.hpp"

namespace {

using eisen::cplx;

void BM_TranslationSumBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eisen::TranslationSum(cplx(2.3, 0.7), 0.37));
}
BENCHMARK(BM_TranslationSumBuild);

void BM_TranslationSumEval(benchmark::State& state) {
  const eisen::TranslationSum sum(cplx(2.3, 0.7), 0.37);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sum(x));
    x += 0.6180339887;
  }
}
BENCHMARK(BM_TranslationSumEval);

void BM_BesselK(benchmark::State& state) {
  const cplx nu(0.5 + static_cast<double>(state.range(0)), 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(eisen::bessel_k(nu, 2.5));
}
BENCHMARK(BM_BesselK)->Arg(0)->Arg(4)->Arg(16);

const eisen::EisensteinSystem& level11(double c_max) {
  static const auto form = std::make_shared<const eisen::CuspForm>(eisen::eta_product_expansion(11, 600));
  static eisen::EisensteinSystem sys(eisen::Gamma0(11), form, form, eisen::CharacterSpec::trivial(),
                                     eisen::TruncationPolicy(c_max, 1e-8));
  return sys;
}

// Family up to (m, n) at one point, coset tables warm.
void BM_EvalEFamily(benchmark::State& state) {
  eisen::set_thread_budget(1);
  const auto& sys = level11(400.0);
  const int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const eisen::UpperHalfPoint z(0.13, 0.8);
  benchmark::DoNotOptimize(eisen::eval_e_family(sys, 0, m, n, z, cplx(2.0, 0.5)));
  for (auto _ : state) benchmark::DoNotOptimize(eisen::eval_e_family(sys, 0, m, n, z, cplx(2.0, 0.5)));
}
BENCHMARK(BM_EvalEFamily)->Args({0, 0})->Args({1, 0})->Args({1, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
