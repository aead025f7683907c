#include <benchmark/benchmark.h>

#include "phishpond/config_io.hpp"
#include "phishpond/kernels/batch.hpp"
#include "phishpond/kernels/simulate.hpp"
#include "phishpond/prng.hpp"

using namespace phishpond;

namespace {

struct Fixture {
  const Ruleset& rules = default_ruleset();
  const corpus::Corpus& corpus = corpus::shipped_corpus();
  analyzer::Analyzer analyzer{rules.cues, rules.brands};
  game::GameEngine engine{rules.game, corpus, analyzer};
  std::vector<std::string> urls;

  Fixture() {
    const std::vector<std::string> hosts = {"www.hsbc.co.uk", "81.153.192.106", "hsbc-secure.com",
                                            "paypa1.com", "a.b.c.d.example.org", "login.natwest.com"};
    Xoshiro256 rng(1);
    for (int i = 0; i < 20000; ++i)
      urls.push_back(std::string(rng.below(2) ? "https://" : "http://") + hosts[rng.below(hosts.size())] +
                     "/path/" + std::to_string(rng.below(1000)));
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_AnalyzeUrlsSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::analyze_urls_serial(f.urls, f.analyzer));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.urls.size()));
}

void BM_AnalyzeUrlsParallel(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::analyze_urls(f.urls, f.analyzer));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.urls.size()));
}

kernels::SimOptions sim_options(benchmark::State& state) {
  kernels::SimOptions o;
  o.players = static_cast<int>(state.range(0));
  o.seed = 7;
  o.policy = kernels::Policy::Random;
  return o;
}

void BM_SimulateSerial(benchmark::State& state) {
  const auto& f = fixture();
  const auto opts = sim_options(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::simulate_serial(f.engine, f.rules.ttat, opts));
  state.SetItemsProcessed(state.iterations() * opts.players);
}

void BM_SimulateParallel(benchmark::State& state) {
  const auto& f = fixture();
  const auto opts = sim_options(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::simulate(f.engine, f.rules.ttat, opts));
  state.SetItemsProcessed(state.iterations() * opts.players);
}

}  // namespace

BENCHMARK(BM_AnalyzeUrlsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeUrlsParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateSerial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
