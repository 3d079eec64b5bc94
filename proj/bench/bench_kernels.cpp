#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cfd/kernels.hpp"
#include "cfd/pade.hpp"
#include "cfd/solver.hpp"

using namespace cfd;

namespace {

std::vector<double> random_vector(int n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

const SymmetricFormula<double>& order10_stencil() {
  static const auto d = formula_cast<double>(optimal_formulas(2, 2).d);
  return d;
}

void BM_apply_D_serial(benchmark::State& state) {
  const auto v = random_vector(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::apply_D_serial(order10_stencil(), v));
  state.SetComplexityN(state.range(0));
}

void BM_apply_D_parallel(benchmark::State& state) {
  const auto v = random_vector(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::apply_D_parallel(order10_stencil(), v));
  state.SetComplexityN(state.range(0));
}

void BM_dst_naive_serial(benchmark::State& state) {
  const auto v = random_vector(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dst1_naive_serial(v));
}

void BM_dst_naive_parallel(benchmark::State& state) {
  const auto v = random_vector(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dst1_naive_parallel(v));
}

void BM_dst_fftw(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto v = random_vector(n);
  const kernels::SineTransform dst(n);
  for (auto _ : state) benchmark::DoNotOptimize(dst(v));
}

void inverse_row_sums(benchmark::State& state, kernels::Backend backend) {
  const int N = static_cast<int>(state.range(0));
  const auto lambda = eigenvalues_of_scheme(formula_to_poly(optimal_formulas(2, 2).d), N);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::inverse_abs_row_sums(std::span<const double>(lambda), {}, backend));
}

void BM_inverse_row_sums_serial(benchmark::State& state) { inverse_row_sums(state, kernels::Backend::serial); }
void BM_inverse_row_sums_parallel(benchmark::State& state) { inverse_row_sums(state, kernels::Backend::parallel); }

}  // namespace

BENCHMARK(BM_apply_D_serial)->RangeMultiplier(8)->Range(1 << 10, 1 << 20);
BENCHMARK(BM_apply_D_parallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 20);
BENCHMARK(BM_dst_naive_serial)->RangeMultiplier(4)->Range(255, 4095);
BENCHMARK(BM_dst_naive_parallel)->RangeMultiplier(4)->Range(255, 4095);
BENCHMARK(BM_dst_fftw)->RangeMultiplier(4)->Range(255, 4095);
BENCHMARK(BM_inverse_row_sums_serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_inverse_row_sums_parallel)->Arg(64)->Arg(128)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
