// Serial vs OpenMP miner, prune levels, and oracle vs miner on seeded data.

#include <benchmark/benchmark.h>

#include "tempo/approx.hpp"
#include "tempo/htpgm.hpp"
#include "tempo/oracle.hpp"
#include "tempo/synth.hpp"

using namespace tempo;

namespace {

SymbolicDatabase workload(std::size_t n_vars, std::size_t len) {
  GeneratorSpec spec;
  spec.seed = 2024;
  spec.n_vars = n_vars;
  spec.grid_len = len;
  spec.alphabet = {{"lo", "mid", "hi"}};
  spec.correlation_groups = {CorrelationGroup{{0, 1, 2, 3}, 0.8}, CorrelationGroup{{4, 5, 6}, 0.6}};
  return generate(spec);
}

const SymbolicDatabase& symbolic() {
  static const auto db = workload(12, 3000);
  return db;
}

const SequenceDatabase& sequences() {
  static const auto db = split_sequences(symbolic(), SplitConfig{20, 0});
  return db;
}

MiningConfig base_config() {
  MiningConfig cfg;
  cfg.sigma = 0.3;
  cfg.delta = 0.3;
  cfg.t_max = 20;
  cfg.k_max = 3;
  return cfg;
}

void BM_htpgm_threads(benchmark::State& state) {
  auto cfg = base_config();
  cfg.threads = static_cast<int>(state.range(0));
  std::size_t patterns = 0;
  for (auto _ : state) {
    auto r = htpgm(sequences(), cfg);
    patterns = r.patterns.size();
    benchmark::DoNotOptimize(r);
  }
  state.counters["patterns"] = static_cast<double>(patterns);
}
BENCHMARK(BM_htpgm_threads)->UseRealTime()->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_htpgm_prune(benchmark::State& state) {
  auto cfg = base_config();
  cfg.prune = static_cast<PruneLevel>(state.range(0));
  MiningCounters c;
  for (auto _ : state) {
    auto r = htpgm(sequences(), cfg);
    c = r.counters;
    benchmark::DoNotOptimize(r);
  }
  state.SetLabel(std::string(to_string(cfg.prune)));
  state.counters["candidate_nodes"] = static_cast<double>(c.candidate_nodes);
  state.counters["relation_checks"] = static_cast<double>(c.relation_checks);
}
BENCHMARK(BM_htpgm_prune)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_a_htpgm(benchmark::State& state) {
  auto cfg = base_config();
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = a_htpgm(symbolic(), sequences(), cfg, CorrelationConfig::from(cfg));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_a_htpgm)->UseRealTime()->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_correlation_graph(benchmark::State& state) {
  static const auto wide = workload(40, 3000);
  const CorrelationConfig cfg{std::nullopt, 0.3, 0.3};
  for (auto _ : state) {
    auto g = build_correlation_graph(wide, cfg, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_correlation_graph)->UseRealTime()->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

// Small database inside the oracle guard.
const SequenceDatabase& small() {
  static const auto db = [] {
    GeneratorSpec spec;
    spec.seed = 7;
    spec.n_vars = 4;
    spec.grid_len = 96;
    spec.correlation_groups = {CorrelationGroup{{0, 1}, 0.8}};
    return split_sequences(generate(spec), SplitConfig{8, 0});
  }();
  return db;
}

void BM_small_oracle(benchmark::State& state) {
  auto cfg = base_config();
  cfg.t_max = 8;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_mine(small(), cfg));
}
BENCHMARK(BM_small_oracle)->Unit(benchmark::kMicrosecond);

void BM_small_htpgm(benchmark::State& state) {
  auto cfg = base_config();
  cfg.t_max = 8;
  for (auto _ : state) benchmark::DoNotOptimize(htpgm(small(), cfg));
}
BENCHMARK(BM_small_htpgm)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
