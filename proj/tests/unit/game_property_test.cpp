#include <gtest/gtest.h>

#include <set>

#include "oracles/fuzz.hpp"
#include "phishpond/prng.hpp"
#include "world.hpp"

using namespace phishpond;

namespace {

void run_batch(const game::GameEngine& e, std::uint64_t base, int scripts) {
  for (int i = 0; i < scripts; ++i) {
    const auto seed = derive_seed(base, i);
    const auto mode = i % 2 ? Mode::Email : Mode::Url;
    const auto script = oracle::random_script(seed, 160);
    const auto r = oracle::check_script(e, mode, seed, script);
    ASSERT_TRUE(r.violations.empty()) << "seed " << seed << ": " << r.violations.front();
  }
}

}  // namespace

TEST(GameFuzz, DefaultConfig) { run_batch(testworld::world().engine, 1, 500); }

TEST(GameFuzz, ShortLevels) {
  const auto& w = testworld::world();
  const game::GameEngine e(oracle::short_levels_config(), w.corpus, w.analyzer);
  run_batch(e, 2, 500);
}

TEST(GameFuzz, GuidedScriptsOnDefaultConfig) {
  const auto& e = testworld::world().engine;
  int completed = 0;
  for (int i = 0; i < 200; ++i) {
    const auto seed = derive_seed(3, i);
    const auto r = oracle::check_script(e, Mode::Url, seed, oracle::guided_script(e, Mode::Url, seed, 400, 0.97));
    ASSERT_TRUE(r.violations.empty()) << "seed " << seed << ": " << r.violations.front();
    completed += r.final_state.completed_all ? 1 : 0;
  }
  EXPECT_GT(completed, 0);
}

TEST(GameFuzz, ScriptsReachEveryPhase) {
  const auto& w = testworld::world();
  const game::GameEngine e(oracle::short_levels_config(), w.corpus, w.analyzer);
  std::set<game::Phase> phases;
  bool completed = false;
  for (int i = 0; i < 400; ++i) {
    const auto r = oracle::check_script(e, Mode::Url, i, oracle::random_script(i, 160));
    phases.insert(r.final_state.phase);
  }
  for (int i = 0; i < 200; ++i) {
    const auto r = oracle::check_script(e, Mode::Email, i, oracle::guided_script(e, Mode::Email, i, 160, 0.95));
    ASSERT_TRUE(r.violations.empty()) << "seed " << i << ": " << r.violations.front();
    phases.insert(r.final_state.phase);
    completed = completed || r.final_state.completed_all;
  }
  EXPECT_EQ(phases.size(), 4u);
  EXPECT_TRUE(completed);
}

// Same seed and script, same final state.
TEST(GameFuzz, ScriptReplayIsIdentical) {
  const auto& e = testworld::world().engine;
  for (int i = 0; i < 100; ++i) {
    const auto script = oracle::random_script(1000 + i, 120);
    const auto a = oracle::check_script(e, Mode::Url, i, script);
    const auto b = oracle::check_script(e, Mode::Url, i, script);
    EXPECT_EQ(a.final_state, b.final_state);
  }
}
