#include "cli.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "phishpond/codec.hpp"
#include "phishpond/config_io.hpp"
#include "phishpond/corpus/corpus.hpp"
#include "phishpond/error.hpp"
#include "phishpond/frontdoor/registry.hpp"
#include "phishpond/frontdoor/server.hpp"
#include "phishpond/kernels/simulate.hpp"
#include "phishpond/persistence/replay.hpp"

namespace phishpond::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;

// Ruleset, corpus and the engine built over them.
struct World {
  Ruleset rules;
  corpus::Corpus corpus;
  std::unique_ptr<analyzer::Analyzer> analyzer;
  std::unique_ptr<game::GameEngine> engine;

  analyzer::Analyzer& make_analyzer() {
    analyzer = std::make_unique<analyzer::Analyzer>(rules.cues, rules.brands);
    return *analyzer;
  }
  game::GameEngine& make_engine() {
    if (!analyzer) make_analyzer();
    engine = std::make_unique<game::GameEngine>(rules.game, corpus, *analyzer);
    return *engine;
  }
};

World load_world(const std::string& config, const std::string& corpus_file, bool want_corpus) {
  World w{config.empty() ? default_ruleset() : load_ruleset(config), {}, nullptr, nullptr};
  if (want_corpus) w.corpus = corpus_file.empty() ? corpus::shipped_corpus() : corpus::load_corpus_file(corpus_file);
  return w;
}

std::string weight_text(analyzer::Weight w) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.3f", w.value());
  return buf;
}

void print_verdict(std::ostream& out, const analyzer::Verdict& v) {
  for (const auto& c : v.cues)
    out << "cue      " << std::left << std::setw(24) << analyzer::to_string(c.kind) << weight_text(c.weight)
        << "  " << c.evidence << "\n";
  if (v.cues.empty()) out << "cue      (none)\n";
  out << "risk     " << weight_text(v.risk) << "\n";
  out << "verdict  " << (v.label == Label::Phish ? "Phish" : "Legit") << "\n";
  out << "tip      " << analyzer::tip_for(v.cues).text << "\n";
}

json verdict_report(const analyzer::Verdict& v) {
  auto j = codec::to_json(v);
  j["tip"] = codec::to_json(analyzer::tip_for(v.cues));
  return j;
}

int lint_url(const std::string& url, const std::string& config, bool as_json, std::ostream& out,
             std::ostream& err) {
  auto world = load_world(config, {}, false);
  const auto& a = world.make_analyzer();
  analyzer::Verdict v;
  try {
    v = a.analyze_url(url);
  } catch (const Error& e) {
    err << "lint-url: " << e.detail() << "\n";
    return kFindings;
  }
  if (as_json) {
    auto j = verdict_report(v);
    j["url"] = url;
    out << j.dump(2) << "\n";
  } else {
    out << "url      " << url << "\n";
    print_verdict(out, v);
  }
  return kOk;
}

int lint_email(const std::string& file, const std::string& config, bool as_json, std::ostream& out,
               std::ostream& err) {
  auto world = load_world(config, {}, false);
  const auto& a = world.make_analyzer();
  analyzer::EmailMessage m;
  try {
    m = codec::email_from_json(json::parse(read_text_file(file)));
  } catch (const json::exception& e) {
    err << "lint-email: " << file << " is not valid JSON: " << e.what() << "\n";
    return kFindings;
  } catch (const codec::CodecError& e) {
    err << "lint-email: " << e.what() << "\n";
    return kFindings;
  }
  const auto v = a.analyze_email(m);
  if (as_json) {
    out << verdict_report(v).dump(2) << "\n";
  } else {
    out << "from     " << m.sender_display << " <" << m.sender_address << ">\n";
    out << "subject  " << m.subject << "\n";
    print_verdict(out, v);
  }
  return kOk;
}

int corpus_validate(const std::string& file, const std::string& config, std::ostream& out, std::ostream& err) {
  auto world = load_world(config, {}, false);
  const auto& a = world.make_analyzer();
  corpus::Corpus c;
  try {
    c = corpus::load_corpus_file(file);
  } catch (const ParseError& e) {
    out << file << ":" << e.line() << ": " << e.detail() << "\n";
    return kFindings;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotFound) {
      err << "corpus validate: " << e.detail() << "\n";
      return kUsage;
    }
    out << file << ": " << to_string(e.code()) << ": " << e.detail() << "\n";
    return kFindings;
  }
  const auto report = corpus::validate_corpus(c, a);
  for (const auto& f : report.findings)
    out << to_string(f.kind) << " " << (f.worm_id.empty() ? "-" : f.worm_id) << ": " << f.message << "\n";
  out << c.worms.size() << " worms, " << report.findings.size() << " findings\n";
  return report.ok() ? kOk : kFindings;
}

int simulate(const kernels::SimOptions& opts, const std::string& config, const std::string& corpus_file,
             bool serial, std::ostream& out, std::ostream& err) {
  auto world = load_world(config, corpus_file, true);
  try {
    const auto& engine = world.make_engine();
    const auto runs = serial ? kernels::simulate_serial(engine, world.rules.ttat, opts)
                             : kernels::simulate(engine, world.rules.ttat, opts);
    out << kernels::report_json(opts, runs).dump(2) << "\n";
  } catch (const Error& e) {
    err << "simulate: " << to_string(e.code()) << ": " << e.detail() << "\n";
    return kFindings;
  }
  return kOk;
}

// Script: one client message per line (or a JSON array of them). The extra
// {"type":"wait","ms":N} advances the session clock by N milliseconds.
int play_headless(const std::string& script, const std::string& config, const std::string& corpus_file,
                  const std::optional<std::string>& data, bool verify, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_text_file(script);
  } catch (const Error& e) {
    err << "play: " << e.detail() << "\n";
    return kUsage;
  }
  std::vector<std::string> lines;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      for (const auto& m : json::parse(text)) lines.push_back(m.dump());
    } catch (const json::exception& e) {
      err << "play: script is not a valid JSON array: " << e.what() << "\n";
      return kUsage;
    }
  } else {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
      if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }

  auto world = load_world(config, corpus_file, true);
  const auto& engine = world.make_engine();
  std::optional<persistence::ProfileStore> store;
  if (data) store.emplace(persistence::resolve_data_dir(data));
  frontdoor::SessionRegistry registry(engine, world.rules, store ? &*store : nullptr, 0);
  const auto conn = registry.connect();

  for (const auto& line : lines) {
    std::vector<json> replies;
    const auto j = json::parse(line, nullptr, false);
    if (j.is_object() && j.value("type", "") == "wait") {
      const auto ms = j.value("ms", 0LL);
      if (ms < 0) {
        replies.push_back(frontdoor::error_message("bad_message", "wait needs a non-negative ms"));
      } else {
        replies = registry.tick(conn, Millis{ms});
      }
    } else {
      replies = registry.handle(conn, line);
    }
    for (const auto& r : replies) out << r.dump() << "\n";
  }

  if (verify) {
    const auto events = registry.session_events(conn);
    if (!events.empty() && std::holds_alternative<persistence::SessionEnded>(events.back().body)) {
      try {
        persistence::replay(events, engine, world.rules.hash(), world.rules.ttat);
        err << "replay: ok (" << events.size() << " events)\n";
      } catch (const Error& e) {
        err << "replay: " << to_string(e.code()) << ": " << e.detail() << "\n";
        return kFindings;
      }
    } else {
      err << "replay: skipped, session did not end\n";
    }
  }
  return kOk;
}

frontdoor::Server* g_server = nullptr;

extern "C" void stop_server(int) {
  if (g_server) g_server->stop();
}

int serve(frontdoor::ServerOptions opts, const std::string& config, const std::string& corpus_file,
          const std::optional<std::string>& data, std::ostream& out, std::ostream& err) {
  auto world = load_world(config, corpus_file, true);
  const auto& engine = world.make_engine();
  persistence::ProfileStore store(persistence::resolve_data_dir(data));
  std::random_device rd;
  const std::uint64_t base_seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  frontdoor::SessionRegistry registry(engine, world.rules, &store, base_seed);
  try {
    frontdoor::Server server(registry, &store, opts);
    out << "phishpond listening on http://" << opts.address << ":" << server.port() << " (data "
        << store.dir().string() << ")" << std::endl;
    g_server = &server;
    std::signal(SIGINT, stop_server);
    std::signal(SIGTERM, stop_server);
    server.run();
    g_server = nullptr;
  } catch (const std::exception& e) {
    err << "serve: " << e.what() << "\n";
    return kFindings;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"phishpond: anti-phishing training game"};
  app.require_subcommand(1);

  std::string config;
  std::string corpus_file;
  std::optional<std::string> data;
  bool as_json = false;

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP/websocket server");
  frontdoor::ServerOptions server_opts;
  std::string static_dir;
  serve_cmd->add_option("--port", server_opts.port, "TCP port (0 picks one)");
  serve_cmd->add_option("--address", server_opts.address, "Address to bind");
  serve_cmd->add_option("--data", data, "Data directory (default $PHISHPOND_DATA)");
  serve_cmd->add_option("--config", config, "Config file");
  serve_cmd->add_option("--corpus", corpus_file, "Corpus file");
  serve_cmd->add_option("--static", static_dir, "Directory of web client assets");

  auto* play_cmd = app.add_subcommand("play", "Play a scripted session");
  bool headless = false;
  bool verify = false;
  std::string script;
  play_cmd->add_flag("--headless", headless, "No UI; read client messages from --script");
  play_cmd->add_option("--script", script, "Script of client messages")->required();
  play_cmd->add_option("--config", config, "Config file");
  play_cmd->add_option("--corpus", corpus_file, "Corpus file");
  play_cmd->add_option("--data", data, "Data directory for logs and profiles");
  play_cmd->add_flag("--verify-replay", verify, "Replay the session log and report to stderr");

  auto* url_cmd = app.add_subcommand("lint-url", "Show the cues and verdict for a URL");
  std::string url;
  url_cmd->add_option("url", url, "URL to analyze")->required();
  url_cmd->add_option("--config", config, "Config file");
  url_cmd->add_flag("--json", as_json, "JSON output");

  auto* email_cmd = app.add_subcommand("lint-email", "Show the cues and verdict for an email (JSON file)");
  std::string email_file;
  email_cmd->add_option("file", email_file, "Email JSON file")->required();
  email_cmd->add_option("--config", config, "Config file");
  email_cmd->add_flag("--json", as_json, "JSON output");

  auto* corpus_cmd = app.add_subcommand("corpus", "Corpus tools");
  corpus_cmd->require_subcommand(1);
  auto* validate_cmd = corpus_cmd->add_subcommand("validate", "Check labels, tiers and coverage");
  std::string validate_file;
  validate_cmd->add_option("file", validate_file, "Corpus JSON file")->required();
  validate_cmd->add_option("--config", config, "Config file");

  auto* sim_cmd = app.add_subcommand("simulate", "Play many scripted players headlessly");
  kernels::SimOptions sim;
  std::string policy = "perfect";
  std::string mode;
  bool serial = false;
  sim_cmd->add_option("--players", sim.players, "Number of players")->check(CLI::Range(0, 1000000));
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--policy", policy, "perfect, random or cue-threshold")
      ->check(CLI::IsMember({"perfect", "random", "cue-threshold"}));
  sim_cmd->add_option("--mode", mode, "url or email (default alternates)")->check(CLI::IsMember({"url", "email"}));
  sim_cmd->add_option("--config", config, "Config file");
  sim_cmd->add_option("--corpus", corpus_file, "Corpus file");
  sim_cmd->add_flag("--serial", serial, "Use the single-threaded reference path");

  std::vector<const char*> argv{"phishpond"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "phishpond: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kUsage;
  }

  try {
    if (*serve_cmd) {
      server_opts.static_dir = static_dir;
      return serve(server_opts, config, corpus_file, data, out, err);
    }
    if (*play_cmd) {
      if (!headless) {
        err << "play: only --headless play is available from the command line\n";
        return kUsage;
      }
      return play_headless(script, config, corpus_file, data, verify, out, err);
    }
    if (*url_cmd) return lint_url(url, config, as_json, out, err);
    if (*email_cmd) return lint_email(email_file, config, as_json, out, err);
    if (*validate_cmd) return corpus_validate(validate_file, config, out, err);
    if (*sim_cmd) {
      sim.policy = *kernels::parse_policy(policy);
      if (!mode.empty()) sim.mode = parse_mode(mode);
      return simulate(sim, config, corpus_file, serial, out, err);
    }
  } catch (const Error& e) {
    err << "phishpond: " << to_string(e.code()) << ": " << e.detail() << "\n";
    return e.code() == ErrorCode::NotFound ? kUsage : kFindings;
  }
  return kUsage;
}

}  // namespace phishpond::cli
