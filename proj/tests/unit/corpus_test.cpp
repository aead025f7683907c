#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "phishpond/corpus/corpus.hpp"
#include "phishpond/error.hpp"
#include "phishpond/prng.hpp"
#include "world.hpp"

using namespace phishpond;
using namespace phishpond::corpus;

namespace {

LevelPlan plan(Tier t, Mode m, int count, double fraction, std::uint64_t seed) {
  return LevelPlan{t, m, count, fraction, Millis{60000}, seed};
}

}  // namespace

TEST(LoadCorpus, SingleLegitUrl) {
  const auto c = load_corpus(R"([{"id":"w1","mode":"url","tier":"beginner","truth":"legit",
                                  "url":"https://www.hsbc.co.uk/"}])");
  ASSERT_EQ(c.worms.size(), 1u);
  EXPECT_EQ(c.worms[0].truth, Label::Legit);
  EXPECT_EQ(*c.worms[0].url(), "https://www.hsbc.co.uk/");
}

TEST(LoadCorpus, IpUrlAsPhish) {
  const auto c = load_corpus(R"({"version":"t","lexicon":"default","worms":[
    {"id":"ip","mode":"url","tier":"beginner","truth":"phish","url":"http://81.153.192.106/www.hsbc.co.uk"}]})");
  EXPECT_EQ(c.version, "t");
  EXPECT_EQ(c.worms.at(0).truth, Label::Phish);
  EXPECT_EQ(c.worms.at(0).tier, Tier::Beginner);
}

TEST(LoadCorpus, DuplicateId) {
  try {
    load_corpus(R"([{"id":"w1","mode":"url","tier":"beginner","truth":"legit","url":"https://a.com/"},
                    {"id":"w1","mode":"url","tier":"beginner","truth":"phish","url":"http://1.2.3.4/"}])");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
    EXPECT_EQ(e.detail(), "w1");
  }
}

TEST(LoadCorpus, ParseErrorNamesTheRecordLine) {
  try {
    load_corpus("[\n{\"id\":\"a\",\"mode\":\"url\",\"tier\":\"beginner\",\"truth\":\"legit\",\"url\":\"https://a.com/\"},\n"
                "{\"id\":\"b\",\"mode\":\"url\",\"tier\":\"expert\",\"truth\":\"legit\",\"url\":\"https://b.com/\"}\n]");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    load_corpus("[\n{\"id\": \n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.line(), 2);
  }
}

TEST(LoadCorpus, EmailRecord) {
  const auto c = load_corpus(R"([{"id":"e","mode":"email","tier":"advanced","truth":"phish","tip":"look closer",
    "email":{"sender_address":"a@b.com","salutation":"Dear customer","links":[{"display_text":"x","target_url":"y"}],
             "attachments":["a.zip"],"claimed_brand_logo":"hsbc"}}])");
  const auto* m = c.worms.at(0).email();
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->links.size(), 1u);
  EXPECT_EQ(m->attachments.at(0).filename, "a.zip");
  EXPECT_EQ(c.worms[0].tip_override, "look closer");
}

TEST(ValidateCorpus, ShippedCorpusIsClean) {
  const auto& w = testworld::world();
  const auto r = validate_corpus(w.corpus, w.analyzer);
  for (const auto& f : r.findings) ADD_FAILURE() << f.worm_id << ": " << f.message;
  EXPECT_GE(w.corpus.worms.size(), 60u);
  for (Tier t : kTiers)
    for (Mode m : {Mode::Url, Mode::Email}) {
      const auto n = std::count_if(w.corpus.worms.begin(), w.corpus.worms.end(),
                                   [&](const WormSpec& s) { return s.tier == t && s.mode == m; });
      EXPECT_GE(n, 10) << to_string(t) << "/" << to_string(m);
    }
}

TEST(ValidateCorpus, Findings) {
  const auto& a = testworld::world().analyzer;
  const auto c = load_corpus(R"([
    {"id":"clean-phish","mode":"url","tier":"intermediate","truth":"phish","url":"https://example.com/"},
    {"id":"weak-beginner","mode":"url","tier":"beginner","truth":"phish","url":"http://example.com/"},
    {"id":"obvious-advanced","mode":"url","tier":"advanced","truth":"phish","url":"http://10.1.2.3/"},
    {"id":"legit-flagged","mode":"url","tier":"beginner","truth":"legit","url":"http://10.1.2.3/"}])");
  const auto r = validate_corpus(c, a);
  auto has = [&](Finding::Kind k, const std::string& id) {
    return std::any_of(r.findings.begin(), r.findings.end(),
                       [&](const Finding& f) { return f.kind == k && f.worm_id == id; });
  };
  EXPECT_TRUE(has(Finding::Kind::Unlearnable, "clean-phish"));
  EXPECT_TRUE(has(Finding::Kind::TierViolation, "weak-beginner"));
  EXPECT_TRUE(has(Finding::Kind::TierViolation, "obvious-advanced"));
  EXPECT_TRUE(has(Finding::Kind::LabelMismatch, "legit-flagged"));
  EXPECT_TRUE(has(Finding::Kind::Coverage, ""));
}

TEST(GenerateLevelSet, DeterministicAndExactPhishCount) {
  const auto& c = testworld::world().corpus;
  const auto p = plan(Tier::Intermediate, Mode::Url, 10, 0.5, 42);
  const auto a = generate_level_set(c, p);
  EXPECT_EQ(a, generate_level_set(c, p));
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(std::count_if(a.begin(), a.end(), [](const WormSpec& w) { return w.truth == Label::Phish; }), 5);
  std::set<std::string> ids;
  for (const auto& w : a) {
    ids.insert(w.id);
    EXPECT_EQ(w.tier, Tier::Intermediate);
    EXPECT_EQ(w.mode, Mode::Url);
  }
  EXPECT_EQ(ids.size(), 10u);
  EXPECT_NE(a, generate_level_set(c, plan(Tier::Intermediate, Mode::Url, 10, 0.5, 43)));
}

TEST(GenerateLevelSet, Insufficient) {
  const auto c = load_corpus(R"([
    {"id":"a","mode":"url","tier":"beginner","truth":"legit","url":"https://a.com/"},
    {"id":"b","mode":"url","tier":"beginner","truth":"legit","url":"https://b.com/"},
    {"id":"c","mode":"url","tier":"beginner","truth":"phish","url":"http://1.2.3.4/"},
    {"id":"d","mode":"url","tier":"beginner","truth":"phish","url":"http://1.2.3.5/"},
    {"id":"e","mode":"url","tier":"beginner","truth":"phish","url":"http://1.2.3.6/"},
    {"id":"f","mode":"url","tier":"beginner","truth":"legit","url":"https://f.com/"}])");
  try {
    generate_level_set(c, plan(Tier::Beginner, Mode::Url, 10, 0.5, 1));
    FAIL();
  } catch (const InsufficientCorpus& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientCorpus);
    EXPECT_EQ(e.needed(), 10);
    EXPECT_EQ(e.available(), 6);
    EXPECT_EQ(e.tier(), Tier::Beginner);
  }
  EXPECT_THROW(generate_level_set(c, plan(Tier::Beginner, Mode::Email, 1, 0.5, 1)), InsufficientCorpus);
}

// Labels must not leak through position: over 1000 seeds every slot holds a
// phish worm about half the time and position/label correlation is ~0.
TEST(GenerateLevelSet, PositionIndependentOfLabel) {
  const auto& c = testworld::world().corpus;
  constexpr int kSeeds = 1000;
  constexpr int kCount = 10;
  std::array<int, kCount> phish_at{};
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  int n = 0;
  for (int s = 0; s < kSeeds; ++s) {
    const auto set = generate_level_set(c, plan(Tier::Intermediate, Mode::Url, kCount, 0.5, derive_seed(77, s)));
    for (int i = 0; i < kCount; ++i) {
      const double y = set[i].truth == Label::Phish ? 1.0 : 0.0;
      phish_at[i] += static_cast<int>(y);
      sx += i;
      sy += y;
      sxx += i * i;
      syy += y * y;
      sxy += i * y;
      ++n;
    }
  }
  for (int i = 0; i < kCount; ++i) EXPECT_NEAR(phish_at[i] / double(kSeeds), 0.5, 0.08) << "slot " << i;
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double r = cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) * (syy / n - (sy / n) * (sy / n)));
  EXPECT_LT(std::abs(r), 0.05);
}

TEST(Prng, SplitMix64Reference) {
  std::uint64_t s = 0;
  EXPECT_EQ(splitmix64(s), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(s), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(splitmix64(s), 0x06c45d188009454fULL);
}

// xoshiro256** restated from its published definition on SplitMix64 state.
TEST(Prng, XoshiroMatchesReferenceStep) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL}) {
    std::uint64_t sm = seed;
    std::uint64_t st[4];
    for (auto& v : st) v = splitmix64(sm);
    auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    Xoshiro256 rng(seed);
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t want = rotl(st[1] * 5, 7) * 9;
      const std::uint64_t t = st[1] << 17;
      st[2] ^= st[0];
      st[3] ^= st[1];
      st[1] ^= st[2];
      st[0] ^= st[3];
      st[2] ^= t;
      st[3] = rotl(st[3], 45);
      ASSERT_EQ(rng.next(), want);
    }
  }
}

TEST(Prng, BoundedAndUnit) {
  Xoshiro256 rng(3);
  std::array<int, 7> hist{};
  for (int i = 0; i < 70000; ++i) ++hist[rng.below(7)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
  EXPECT_EQ(derive_seed(1, 1), derive_seed(1, 1));
}
