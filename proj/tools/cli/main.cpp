/* Copyright 2026 The SkillForge Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skillforge/service/config.hpp"
#include "skillforge/service/server.hpp"
#include "skillforge/service/sessions.hpp"
#include "skillforge/service/workbench.hpp"

namespace {

using namespace skillforge;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

service::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw StorageError("cannot write '" + path + "'");
  out << body;
}

struct Options {
  std::string config;
  std::string store;

  std::string program;
  std::string situation = "Flat";
  std::uint64_t seed = 0;
  bool seed_set = false;

  std::string skill;
  int episodes = 0;
  std::string out;
  std::string ecm_out;

  std::string inject;
  std::string inject_mode = "FailHard";
  double inject_probability = 1.0;
  double inject_bias = 0.0;
  int budget = 0;
  bool random_selection = false;

  std::string scenario;
  bool play_first = false;

  std::string host;
  int port = -1;

  std::string export_ecm;
  std::string export_curve;
  bool export_blame = false;
};

service::ServiceConfig make_config(const Options& o) {
  service::ServiceConfig config;
  if (auto path = service::resolve_config_path(o.config.empty() ? std::nullopt : std::optional(o.config))) {
    config = service::load_config(*path);
  }
  if (!o.store.empty()) config.store_path = o.store;
  if (!o.host.empty()) config.host = o.host;
  if (o.port >= 0) config.port = o.port;
  return config;
}

int cmd_run(const Options& o) {
  service::Workbench wb(make_config(o));
  const auto program = skills::parse_program(read_file(o.program));
  const auto record = wb.run_program(program, sim::parse_situation(o.situation), o.seed, o.program);
  std::cout << "execution " << record.id << ' ' << (record.success ? "succeeded" : "failed") << " ticks "
            << record.sensor.ticks << '\n';
  if (!record.success) std::cout << "failure: " << record.failure << '\n';
  return record.success ? kOk : kDomainFailure;
}

playing::PlayResult run_play(service::Workbench& wb, const Options& o, bool verbose) {
  service::PlayRequest request;
  if (o.episodes > 0) request.episodes = o.episodes;
  if (o.seed_set) request.seed = o.seed;
  int last_printed = 0;
  auto result = wb.play(o.skill, request, [&](const playing::EpisodeReport& e, const playing::Ecm&) {
    if (verbose && e.episode - last_printed >= 100) {
      std::cerr << "episode " << e.episode << " running mean " << e.running_mean << '\n';
      last_printed = e.episode;
    }
  });
  return result;
}

int cmd_play(const Options& o) {
  service::Workbench wb(make_config(o));
  const auto result = run_play(wb, o, true);
  std::cout << "skill " << o.skill << " episodes " << result.episodes.size() << " trailing-100 success "
            << result.trailing_success(100) << '\n';
  if (!o.out.empty()) write_output(o.out, result.curve_csv());
  if (!o.ecm_out.empty()) write_output(o.ecm_out, result.ecm.to_json());
  return kOk;
}

int cmd_diagnose(const Options& o) {
  service::Workbench wb(make_config(o));
  service::DiagnosisRequest request;
  if (o.budget > 0) request.budget = o.budget;
  if (o.seed_set) request.seed = o.seed;
  if (!o.inject.empty()) {
    request.inject = sim::FaultSpec{o.inject, sim::parse_fault_mode(o.inject_mode), o.inject_probability, o.inject_bias};
  }
  if (o.random_selection) request.selection = diagnosis::Selection::Random;
  const auto session = wb.diagnose(request, [](const diagnosis::SessionStep& s) {
    std::cerr << "test " << s.skill << ' ' << (s.success ? "success" : "failure");
    if (s.fail_time) std::cerr << " t_fail " << s.fail_time->tick;
    std::cerr << " -> " << s.posterior.argmax() << ' ' << s.posterior.max() << '\n';
  });
  std::cout << "tests " << session.steps.size() << '\n';
  std::cout << diagnosis::blame_report(session.posterior(), 10);
  std::cout << "argmax " << session.posterior().argmax() << '\n';
  if (!o.out.empty()) write_output(o.out, session.csv());
  return kOk;
}

int cmd_probe(const Options& o) {
  service::Workbench wb(make_config(o));
  if (o.play_first) run_play(wb, o, false);
  std::optional<sim::ScenarioId> scenario;
  if (!o.scenario.empty()) scenario = sim::parse_scenario(o.scenario);
  const auto doa = wb.probe_doa(o.skill, scenario, o.seed);
  for (const auto& [situation, success] : doa.probed) {
    std::cout << situation.describe() << ' ' << (success ? "success" : "failure") << '\n';
  }
  std::cout << doa.successes() << '/' << doa.probed.size() << '\n';
  return doa.successes() == doa.probed.size() ? kOk : kDomainFailure;
}

int cmd_serve(const Options& o) {
  const auto config = make_config(o);
  service::Workbench wb(config);
  service::SessionManager sessions;
  service::Server server(wb, sessions);
  const int port = server.bind(config.host, config.port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << config.host << ':' << port << "/v1" << std::endl;
  server.run();
  g_server = nullptr;
  sessions.shutdown();
  return kOk;
}

int cmd_export(const Options& o) {
  service::Workbench wb(make_config(o));
  std::optional<std::string> body;
  if (!o.export_ecm.empty()) {
    body = wb.store().get_document("ecm", o.export_ecm);
  } else if (!o.export_curve.empty()) {
    body = wb.store().get_document("curve", o.export_curve);
  } else if (o.export_blame) {
    body = wb.store().get_document("blame", "latest");
  } else {
    throw ValidationError("export needs one of --ecm, --curve or --blame");
  }
  if (!body) {
    std::cerr << "nothing stored to export\n";
    return kDomainFailure;
  }
  write_output(o.out, *body);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SkillForge robot-skill workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "Config file (defaults to $SKILLFORGE_CONFIG)");
  app.add_option("--store", o.store, "Experience store path (overrides the config)");

  auto seed_option = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { o.seed = v; o.seed_set = true; }, "RNG seed");
  };

  auto* run = app.add_subcommand("run", "Run a program against a scenario situation");
  run->add_option("--program", o.program, "Program AST (JSON)")->required();
  run->add_option("--scenario", o.situation, "Situation, e.g. Flat or Book{orientation=Deg90}");
  seed_option(run);

  auto* play = app.add_subcommand("play", "Train a skill by autonomous playing");
  play->add_option("--skill", o.skill)->required();
  play->add_option("--episodes", o.episodes)->check(CLI::PositiveNumber);
  play->add_option("--out", o.out, "Success curve CSV");
  play->add_option("--ecm-out", o.ecm_out, "Trained ECM document");
  seed_option(play);

  auto* diagnose = app.add_subcommand("diagnose", "Localize a fault by skill-centric testing");
  diagnose->add_option("--inject", o.inject, "Function to break");
  diagnose->add_option("--mode", o.inject_mode, "FailHard or DegradeSensors");
  diagnose->add_option("--probability", o.inject_probability)->check(CLI::Range(0.0, 1.0));
  diagnose->add_option("--bias", o.inject_bias, "Sensor bias for DegradeSensors");
  diagnose->add_option("--budget", o.budget)->check(CLI::PositiveNumber);
  diagnose->add_flag("--random", o.random_selection, "Pick tests uniformly instead of by information gain");
  diagnose->add_option("--out", o.out, "Session log CSV");
  seed_option(diagnose);

  auto* probe = app.add_subcommand("probe-doa", "Execute a skill in every situation of its scenario");
  probe->add_option("--skill", o.skill)->required();
  probe->add_option("--scenario", o.scenario);
  probe->add_flag("--play", o.play_first, "Train by playing first");
  probe->add_option("--episodes", o.episodes)->check(CLI::PositiveNumber);
  seed_option(probe);

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--host", o.host);
  serve->add_option("--port", o.port)->check(CLI::Range(0, 65535));

  auto* exp = app.add_subcommand("export", "Export stored ECMs, success curves or blame reports");
  exp->add_option("--ecm", o.export_ecm, "Skill id");
  exp->add_option("--curve", o.export_curve, "Skill id");
  exp->add_flag("--blame", o.export_blame, "Latest diagnosis session");
  exp->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(o);
    if (*play) return cmd_play(o);
    if (*diagnose) return cmd_diagnose(o);
    if (*probe) return cmd_probe(o);
    if (*serve) return cmd_serve(o);
    if (*exp) return cmd_export(o);
  } catch (const NotFoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
  return kUsage;
}
