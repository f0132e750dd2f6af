#include <benchmark/benchmark.h>

#include <random>

#include "whs/kernels.hpp"

namespace {

using whs::kernels::cplx;

std::vector<cplx> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

std::vector<double> random_logs(std::size_t n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  double acc = 0.0;
  for (auto& x : v) x = (acc += d(rng));
  return v;
}

template <bool Parallel>
void BM_convolve(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = random_vec(n, 1), g = random_vec(n, 2);
  for (auto _ : st) {
    auto out = Parallel ? whs::kernels::convolve(f, g, n) : whs::kernels::convolve_serial(f, g, n);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_log_self_convolve(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = random_logs(n);
  for (auto _ : st) {
    auto out = Parallel ? whs::kernels::log_self_convolve(x, n) : whs::kernels::log_self_convolve_serial(x, n);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_matvec(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_vec(n * n, 4), x = random_vec(n, 5);
  std::vector<cplx> y(n);
  for (auto _ : st) {
    if (Parallel)
      whs::kernels::matvec(a, n, n, x, y);
    else
      whs::kernels::matvec_serial(a, n, n, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_max_log_excess(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = random_logs(n);
  for (auto _ : st) {
    double v = Parallel ? whs::kernels::max_log_excess(x, n) : whs::kernels::max_log_excess_serial(x, n);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(BM_convolve<false>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_convolve<true>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_log_self_convolve<false>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_log_self_convolve<true>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_matvec<false>)->Arg(512)->Arg(1024);
BENCHMARK(BM_matvec<true>)->Arg(512)->Arg(1024);
BENCHMARK(BM_max_log_excess<false>)->Arg(1024)->Arg(2187);
BENCHMARK(BM_max_log_excess<true>)->Arg(1024)->Arg(2187);

BENCHMARK_MAIN();
