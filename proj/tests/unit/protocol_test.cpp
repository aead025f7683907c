#include <gtest/gtest.h>

#include "phishpond/frontdoor/protocol.hpp"
#include "phishpond/frontdoor/registry.hpp"
#include "phishpond/persistence/replay.hpp"
#include "world.hpp"

using namespace phishpond;
using namespace phishpond::frontdoor;
using nlohmann::json;

namespace {

void expect_v1(const std::vector<json>& msgs) {
  for (const auto& m : msgs) {
    EXPECT_EQ(m.at("v"), 1) << m.dump();
    EXPECT_TRUE(m.at("type").is_string()) << m.dump();
  }
}

std::string type_of(const json& m) { return m.at("type").get<std::string>(); }

SessionRegistry make_registry(persistence::ProfileStore* store = nullptr) {
  const auto& w = testworld::world();
  return SessionRegistry(w.engine, w.rules, store, 9);
}

}  // namespace

TEST(Protocol, ParsesClientMessages) {
  const auto s = std::get<StartSession>(parse_client_message(
      R"({"v":1,"type":"start_session","mode":"email","player_id":"p-1","display_name":"P","seed":7})"));
  EXPECT_EQ(s.mode, Mode::Email);
  EXPECT_EQ(s.player_id, "p-1");
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(std::get<ActionRequest>(parse_client_message(R"({"type":"action","action":"teacher"})")).move,
            PlayerMove::Teacher);
  EXPECT_TRUE(std::holds_alternative<NextLevel>(parse_client_message(R"({"type":"next_level"})")));
  EXPECT_TRUE(std::holds_alternative<QuitRequest>(parse_client_message(R"({"v":1,"type":"quit"})")));
}

TEST(Protocol, RejectsBadMessages) {
  for (const char* bad : {"", "nope", "[]", R"({"v":2,"type":"quit"})", R"({"type":"dance"})",
                          R"({"type":"start_session"})", R"({"type":"start_session","mode":"sms"})",
                          R"({"type":"start_session","mode":"url","player_id":"../x"})",
                          R"({"type":"start_session","mode":"url","seed":-1})",
                          R"({"type":"action","action":"bite"})", R"({"type":"quit","extra":1})",
                          R"({"v":"1","type":"quit"})"})
    EXPECT_THROW(parse_client_message(bad), BadMessage) << bad;
}

TEST(Protocol, WormMessageHidesTheAnswer) {
  const auto& w = testworld::world();
  for (auto mode : {Mode::Url, Mode::Email}) {
    const auto s = w.engine.new_session(mode, 3, "x");
    const auto m = worm_message(s);
    EXPECT_EQ(m.at("v"), 1);
    EXPECT_EQ(m.at("position"), 0);
    const auto& worm = m.at("worm");
    for (const char* hidden : {"truth", "cues", "tip", "tier", "tip_override"})
      EXPECT_FALSE(worm.contains(hidden)) << hidden;
    EXPECT_FALSE(m.dump().find("\"phish\"") != std::string::npos);
    EXPECT_FALSE(m.dump().find("\"legit\"") != std::string::npos);
  }
}

TEST(Registry, FullSessionFlow) {
  auto reg = make_registry();
  const auto c = reg.connect();
  const auto none = reg.handle(c, R"({"type":"action","action":"eat"})");
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0].at("code"), "no_session");

  auto r = reg.handle(c, R"({"v":1,"type":"start_session","mode":"url","seed":11})");
  expect_v1(r);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(type_of(r[0]), "session_started");
  EXPECT_EQ(r[0].at("time_limit_ms"), 180000);
  EXPECT_EQ(type_of(r[1]), "worm");
  EXPECT_EQ(type_of(reg.handle(c, R"({"type":"start_session","mode":"url"})").at(0)), "error");

  r = reg.handle(c, R"({"type":"action","action":"teacher"})");
  expect_v1(r);
  EXPECT_EQ(type_of(r.at(0)), "outcome");
  EXPECT_TRUE(r[0].at("tip").is_object());
  EXPECT_EQ(r[0].at("score_delta"), 0);
  r = reg.handle(c, R"({"type":"action","action":"teacher"})");
  EXPECT_EQ(r.at(0).at("code"), "rule_violation");

  r = reg.tick(c, Millis{1000});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(type_of(r[0]), "clock");
  EXPECT_EQ(r[0].at("clock_remaining_ms"), 179000);

  r = reg.handle(c, R"({"type":"next_level"})");
  EXPECT_EQ(r.at(0).at("code"), "rule_violation");

  bool finished = false;
  for (int i = 0; i < 200 && !finished; ++i) {
    r = reg.handle(c, R"({"type":"action","action":"reject"})");
    expect_v1(r);
    EXPECT_EQ(type_of(r.at(0)), "outcome");
    for (const auto& m : r) {
      if (type_of(m) == "level_complete") {
        const auto next = reg.handle(c, R"({"type":"next_level"})");
        expect_v1(next);
        EXPECT_EQ(type_of(next.at(0)), "level_started");
      }
      finished = finished || type_of(m) == "session_summary";
    }
  }
  ASSERT_TRUE(finished);
  EXPECT_EQ(type_of(reg.handle(c, R"({"type":"quit"})").at(0)), "error");
  EXPECT_TRUE(reg.tick(c, Millis{1000}).empty());

  const auto events = reg.session_events(c);
  const auto& w = testworld::world();
  EXPECT_NO_THROW(persistence::replay(events, w.engine, w.rules.hash(), w.rules.ttat));
}

TEST(Registry, EveryInputGetsAReply) {
  auto reg = make_registry();
  const auto c = reg.connect();
  for (const char* text : {"", "{}", "garbage", R"({"type":"quit"})", R"({"type":"next_level"})",
                           R"({"type":"action","action":"eat"})", R"({"type":"start_session","mode":"email"})",
                           R"({"type":"action","action":"eat"})", R"({"type":"quit"})", R"({"type":"quit"})"}) {
    const auto r = reg.handle(c, text);
    EXPECT_FALSE(r.empty()) << text;
    expect_v1(r);
  }
  reg.disconnect(c);
  EXPECT_EQ(reg.handle(c, R"({"type":"quit"})").at(0).at("code"), "no_session");
  EXPECT_EQ(reg.connection_count(), 0u);
}

TEST(Registry, TimeoutEndsSession) {
  auto reg = make_registry();
  const auto c = reg.connect();
  reg.handle(c, R"({"type":"start_session","mode":"url","seed":1})");
  const auto r = reg.tick(c, Millis{180000});
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(type_of(r[0]), "session_summary");
  EXPECT_EQ(r[0].at("summary").at("timed_out"), true);
  EXPECT_EQ(r[0].at("reference_guide_url"), "http://education.apwg.org/");
}

TEST(Registry, NamedPlayerIsSavedToProfile) {
  persistence::ProfileStore store(testworld::scratch_dir("registry"));
  auto reg = make_registry(&store);
  const auto c = reg.connect();
  for (int round = 0; round < 2; ++round) {
    reg.handle(c, R"({"type":"start_session","mode":"url","player_id":"bob","display_name":"Bob"})");
    reg.handle(c, R"({"type":"action","action":"eat"})");
    const auto r = reg.handle(c, R"({"type":"quit"})");
    EXPECT_EQ(type_of(r.at(0)), "session_summary");
    EXPECT_EQ(r.size(), 1u);
  }
  const auto p = store.load("bob");
  EXPECT_EQ(p.display_name, "Bob");
  ASSERT_EQ(p.sessions.size(), 2u);
  EXPECT_NE(p.sessions[0].session_id, p.sessions[1].session_id);
  EXPECT_TRUE(std::filesystem::exists(store.session_log_path(p.sessions[0].session_id)));
}
