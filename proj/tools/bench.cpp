// Serial-vs-OpenMP comparison for the pairwise kernels.
// Run: ./kernel_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "dynsbm/generator.hpp"
#include "dynsbm/kernels.hpp"

namespace {

using namespace dynsbm;

struct Fixture {
  Membership g;
  BinaryMatrix prev, cur;
  BlockMatrix W, f, h;

  explicit Fixture(int n) {
    const int k = 4;
    g.k = k;
    g.labels.resize(n);
    for (int i = 0; i < n; ++i) g.labels[i] = i % k + 1;
    W = BlockMatrix::Constant(k, k, 0.05);
    W.diagonal().setConstant(0.3);
    f = 0.5 * W;
    h = f.array() + 0.5;
    prev = kernels::sample_sbm(g, W, 7, 1);
    cur = kernels::step_markov(prev, g, f, h, 7, 2);
  }
};

void bm_block_counts_serial(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::block_pair_counts_serial(fx.cur, fx.g));
  }
}

void bm_block_counts_omp(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::block_pair_counts(fx.cur, fx.g));
  }
}

void bm_transition_counts_serial(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::transition_counts_serial(fx.prev, fx.cur, fx.g));
  }
}

void bm_transition_counts_omp(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::transition_counts(fx.prev, fx.cur, fx.g));
  }
}

void bm_comembership_serial(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  std::vector<std::int32_t> acc(fx.g.labels.size() * fx.g.labels.size(), 0);
  for (auto _ : state) {
    kernels::accumulate_comembership_serial(fx.g, acc);
    benchmark::ClobberMemory();
  }
}

void bm_comembership_omp(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  std::vector<std::int32_t> acc(fx.g.labels.size() * fx.g.labels.size(), 0);
  for (auto _ : state) {
    kernels::accumulate_comembership(fx.g, acc);
    benchmark::ClobberMemory();
  }
}

void bm_sample_serial(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::sample_sbm_serial(fx.g, fx.W, 11, 1));
  }
}

void bm_sample_omp(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::sample_sbm(fx.g, fx.W, 11, 1));
  }
}

void bm_step_serial(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::step_markov_serial(fx.prev, fx.g, fx.f, fx.h, 11, 2));
  }
}

void bm_step_omp(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::step_markov(fx.prev, fx.g, fx.f, fx.h, 11, 2));
  }
}

}  // namespace

BENCHMARK(bm_block_counts_serial)->Arg(500)->Arg(2000);
BENCHMARK(bm_block_counts_omp)->Arg(500)->Arg(2000);
BENCHMARK(bm_transition_counts_serial)->Arg(500)->Arg(2000);
BENCHMARK(bm_transition_counts_omp)->Arg(500)->Arg(2000);
BENCHMARK(bm_comembership_serial)->Arg(500)->Arg(2000);
BENCHMARK(bm_comembership_omp)->Arg(500)->Arg(2000);
BENCHMARK(bm_sample_serial)->Arg(500)->Arg(2000);
BENCHMARK(bm_sample_omp)->Arg(500)->Arg(2000);
BENCHMARK(bm_step_serial)->Arg(500)->Arg(2000);
BENCHMARK(bm_step_omp)->Arg(500)->Arg(2000);

BENCHMARK_MAIN();
