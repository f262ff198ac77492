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

#include "skillforge/service/server.hpp"

#include <httplib.h>

#include <atomic>
#include <sstream>

#include "codec.hpp"
#include "skillforge/common.hpp"

namespace skillforge::service {
namespace {

using codec::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON body: ") + e.what());
  }
}

std::optional<std::uint64_t> optional_seed(const json& body) {
  if (!body.contains("seed")) return std::nullopt;
  return body["seed"].get<std::uint64_t>();
}

std::uint64_t query_u64(const httplib::Request& req, const char* name, std::uint64_t fallback) {
  if (!req.has_param(name)) return fallback;
  try {
    return std::stoull(req.get_param_value(name));
  } catch (const std::exception&) {
    throw ValidationError(std::string("query parameter '") + name + "' must be an unsigned integer");
  }
}

std::set<std::string> split_csv(const std::string& text) {
  std::set<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

// Maps the error hierarchy onto status codes.
template <typename F>
httplib::Server::Handler guarded(F handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const skills::ProgramError& e) {
      json diagnostics = json::array();
      for (const auto& d : e.diagnostics()) diagnostics.push_back({{"path", d.path}, {"message", d.message}});
      send_json(res, 422, {{"error", e.what()}, {"diagnostics", diagnostics}});
    } catch (const NotFoundError& e) {
      send_error(res, 404, e.what());
    } catch (const ValidationError& e) {
      send_error(res, 422, e.what());
    } catch (const ConflictError& e) {
      send_error(res, 409, e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  };
}

std::string sse_frame(const EventEnvelope& e) {
  std::string out = "id: " + std::to_string(e.sequence) + "\nevent: " + e.kind + "\ndata: " + e.payload + "\n\n";
  return out;
}

}  // namespace

struct Server::Impl {
  Impl(Workbench& wb, SessionManager& sm) : workbench(wb), sessions(sm) {
    // SO_REUSEADDR only, so a taken port fails to bind.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    routes();
  }

  void routes();
  json session_created(const std::shared_ptr<Session>& s) const {
    return {{"session_id", s->id()}, {"kind", to_string(s->kind())}, {"seed", s->seed()},
            {"events", "/v1/sessions/" + s->id() + "/events"}};
  }

  Workbench& workbench;
  SessionManager& sessions;
  httplib::Server http;
  std::atomic<bool> stopping{false};
};

void Server::Impl::routes() {
  auto& engine = workbench.engine();

  http.Get("/v1/hardware", guarded([&](const httplib::Request&, httplib::Response& res) {
             json out = json::array();
             for (const auto& name : engine.hardware().names()) {
               const auto handle = engine.hardware().acquire(name);
               out.push_back({{"name", name},
                              {"kind", sim::to_string(handle->kind)},
                              {"instance_id", handle->instance_id},
                              {"rows", handle->row_names()}});
             }
             send_json(res, 200, out);
           }));

  http.Get("/v1/behaviours", guarded([&](const httplib::Request&, httplib::Response& res) {
             json out = json::array();
             for (const auto& d : engine.palette()) out.push_back(codec::behaviour(d));
             send_json(res, 200, out);
           }));

  http.Get("/v1/skills", guarded([&](const httplib::Request& req, httplib::Response& res) {
             std::vector<std::string> ids = req.has_param("hardware")
                                                ? engine.list_skills_for_hardware(split_csv(req.get_param_value("hardware")))
                                                : engine.skill_ids();
             json out = json::array();
             for (const auto& id : ids) out.push_back(codec::skill(engine.skill(id), engine.coverage(id)));
             send_json(res, 200, out);
           }));

  http.Get("/v1/skills/:id", guarded([&](const httplib::Request& req, httplib::Response& res) {
             const auto& id = req.path_params.at("id");
             send_json(res, 200, codec::skill(engine.skill(id), engine.coverage(id)));
           }));

  http.Post("/v1/skills", guarded([&](const httplib::Request& req, httplib::Response& res) {
              const auto body = parse_body(req);
              const auto id = body.at("id").get<std::string>();
              const auto program = body.contains("program")
                                       ? skills::parse_program(body["program"].dump())
                                       : workbench.load_program(body.at("program_id").get<std::string>());
              auto hardware = body.value("hardware", std::set<std::string>{});
              const auto s = workbench.create_skill(id, program, body.at("predicate").get<std::string>(),
                                                    std::move(hardware));
              send_json(res, 201, codec::skill(s, engine.coverage(s.id)));
            }));

  http.Post("/v1/skills/:id/play", guarded([&](const httplib::Request& req, httplib::Response& res) {
              const auto id = req.path_params.at("id");
              const auto body = parse_body(req);
              engine.skill(id);
              PlayRequest request;
              if (body.contains("episodes")) request.episodes = body["episodes"].get<int>();
              if (body.contains("reward")) request.reward = body["reward"].get<double>();
              if (body.contains("damping")) request.damping = body["damping"].get<double>();
              if (body.contains("setup")) request.setup = codec::setup(body["setup"]);
              request.seed = optional_seed(body).value_or(workbench.config().play_seed);
              if (!request.setup && !playing::default_playing_setup(id)) {
                throw ValidationError("skill '" + id + "' needs a playing setup");
              }
              auto session = sessions.submit(SessionKind::Playing, *request.seed, [this, id, request](Session& s) {
                auto result = workbench.play(id, request, [&s](const playing::EpisodeReport& e, const playing::Ecm&) {
                  s.publish("episode-result", codec::episode(e).dump());
                });
                return json{{"skill", id},
                            {"episodes", result.episodes.size()},
                            {"trailing_success", result.trailing_success(100)},
                            {"ecm", json::parse(result.ecm.to_json())}}
                    .dump();
              });
              send_json(res, 202, session_created(session));
            }));

  http.Get("/v1/skills/:id/ecm", guarded([&](const httplib::Request& req, httplib::Response& res) {
             const auto& id = req.path_params.at("id");
             const auto s = engine.skill(id);
             if (s.ecm) {
               res.set_content(s.ecm->to_json(), "application/json");
               return;
             }
             const auto stored = workbench.store().get_document("ecm", id);
             if (!stored) throw NotFoundError("skill '" + id + "' has no trained ECM");
             res.set_content(*stored, "application/json");
           }));

  http.Get("/v1/skills/:id/doa", guarded([&](const httplib::Request& req, httplib::Response& res) {
             const auto& id = req.path_params.at("id");
             std::optional<sim::ScenarioId> scenario;
             if (req.has_param("scenario")) scenario = sim::parse_scenario(req.get_param_value("scenario"));
             const auto doa = workbench.probe_doa(id, scenario, query_u64(req, "seed", 0), false);
             send_json(res, 200, codec::doa(doa));
           }));

  http.Post("/v1/programs", guarded([&](const httplib::Request& req, httplib::Response& res) {
              const auto body = parse_body(req);
              const auto id = body.at("id").get<std::string>();
              if (workbench.store().get_document("program", id)) throw ConflictError("program '" + id + "' exists");
              const auto program = skills::parse_program(body.at("program").dump());
              auto diagnostics = engine.validate_program(program);
              if (!diagnostics.empty()) throw skills::ProgramError(std::move(diagnostics));
              workbench.save_program(id, program);
              send_json(res, 201, {{"id", id}, {"program", json::parse(skills::serialize_program(program))}});
            }));

  http.Get("/v1/programs/:id", guarded([&](const httplib::Request& req, httplib::Response& res) {
             const auto& id = req.path_params.at("id");
             const auto program = workbench.load_program(id);
             send_json(res, 200, {{"id", id}, {"program", json::parse(skills::serialize_program(program))}});
           }));

  http.Put("/v1/programs/:id", guarded([&](const httplib::Request& req, httplib::Response& res) {
             const auto& id = req.path_params.at("id");
             const auto body = parse_body(req);
             const auto program = skills::parse_program((body.contains("program") ? body["program"] : body).dump());
             auto diagnostics = engine.validate_program(program);
             if (!diagnostics.empty()) throw skills::ProgramError(std::move(diagnostics));
             workbench.save_program(id, program);
             send_json(res, 200, {{"id", id}, {"program", json::parse(skills::serialize_program(program))}});
           }));

  http.Post("/v1/programs/:id/run", guarded([&](const httplib::Request& req, httplib::Response& res) {
              const auto id = req.path_params.at("id");
              const auto body = parse_body(req);
              const auto program = workbench.load_program(id);
              const auto situation = sim::parse_situation(body.value("situation", body.value("scenario", "Flat")));
              const auto seed = optional_seed(body).value_or(0);
              auto session = sessions.submit(SessionKind::ProgramRun, seed, [this, id, program, situation, seed](Session&) {
                return codec::record_summary(workbench.run_program(program, situation, seed, id)).dump();
              });
              send_json(res, 202, session_created(session));
            }));

  http.Post("/v1/diagnosis", guarded([&](const httplib::Request& req, httplib::Response& res) {
              const auto body = parse_body(req);
              DiagnosisRequest request;
              if (body.contains("budget")) request.budget = body["budget"].get<int>();
              if (request.budget && *request.budget < 1) throw ValidationError("budget must be at least 1");
              if (body.contains("inject")) {
                request.inject = codec::fault(body["inject"]);
                if (!engine.functions().contains(request.inject->function_id)) {
                  throw NotFoundError("unknown function '" + request.inject->function_id + "'");
                }
              }
              if (body.value("selection", "information-gain") == "random") {
                request.selection = diagnosis::Selection::Random;
              }
              request.seed = optional_seed(body).value_or(workbench.config().diagnosis_seed);
              auto session = sessions.submit(SessionKind::Diagnosis, *request.seed, [this, request](Session& s) {
                auto result = workbench.diagnose(request, [&s](const diagnosis::SessionStep& step) {
                  s.publish("blame-snapshot", codec::step(step).dump());
                });
                return result.to_json();
              });
              send_json(res, 202, session_created(session));
            }));

  http.Get("/v1/diagnosis/:sid/blame", guarded([&](const httplib::Request& req, httplib::Response& res) {
             const auto session = sessions.find(req.path_params.at("sid"));
             if (session->kind() != SessionKind::Diagnosis) throw NotFoundError("not a diagnosis session");
             json out = {{"session_id", session->id()}, {"state", to_string(session->state())}};
             const auto events = session->events_after(0);
             for (auto it = events.rbegin(); it != events.rend(); ++it) {
               if (it->kind == "blame-snapshot") {
                 out["step"] = it->sequence;
                 out["blame"] = json::parse(it->payload).at("posterior");
                 break;
               }
             }
             if (!out.contains("blame")) {
               out["step"] = 0;
               out["blame"] = codec::blame(diagnosis::BlameDistribution::uniform(engine.functions().ids()));
             }
             send_json(res, 200, out);
           }));

  http.Get("/v1/executions", guarded([&](const httplib::Request& req, httplib::Response& res) {
             memory::ExecutionFilter filter;
             if (req.has_param("subject")) filter.subject = req.get_param_value("subject");
             if (req.has_param("success")) {
               const auto v = req.get_param_value("success");
               if (v != "true" && v != "false") throw ValidationError("success must be true or false");
               filter.success = v == "true";
             }
             filter.limit = query_u64(req, "limit", filter.limit);
             json out = json::array();
             for (const auto& r : workbench.store().fetch_executions(filter)) out.push_back(codec::record_summary(r));
             send_json(res, 200, out);
           }));

  auto fetch = [this](const httplib::Request& req) {
    std::int64_t id = 0;
    try {
      id = std::stoll(req.path_params.at("id"));
    } catch (const std::exception&) {
      throw ValidationError("execution id must be an integer");
    }
    auto record = workbench.store().fetch_execution(id);
    if (!record) throw NotFoundError("no execution " + std::to_string(id));
    return *record;
  };

  http.Get("/v1/executions/:id", guarded([fetch](const httplib::Request& req, httplib::Response& res) {
             send_json(res, 200, codec::record_summary(fetch(req)));
           }));
  http.Get("/v1/executions/:id/sensors", guarded([fetch](const httplib::Request& req, httplib::Response& res) {
             send_json(res, 200, codec::sensor(fetch(req).sensor));
           }));
  http.Get("/v1/executions/:id/profile", guarded([fetch](const httplib::Request& req, httplib::Response& res) {
             send_json(res, 200, codec::profile(fetch(req).profile));
           }));

  http.Get("/v1/sessions", guarded([&](const httplib::Request&, httplib::Response& res) {
             json out = json::array();
             for (const auto& s : sessions.list()) out.push_back(json::parse(s->to_json()));
             send_json(res, 200, out);
           }));

  http.Get("/v1/sessions/:sid", guarded([&](const httplib::Request& req, httplib::Response& res) {
             res.set_content(sessions.find(req.path_params.at("sid"))->to_json(), "application/json");
           }));

  // Resumable stream: Last-Event-ID (or ?after=) skips delivered events.
  http.Get("/v1/sessions/:sid/events", guarded([&](const httplib::Request& req, httplib::Response& res) {
             auto session = sessions.find(req.path_params.at("sid"));
             std::uint64_t after = query_u64(req, "after", 0);
             if (req.has_header("Last-Event-ID")) {
               try {
                 after = std::stoull(req.get_header_value("Last-Event-ID"));
               } catch (const std::exception&) {
                 throw ValidationError("Last-Event-ID must be an event sequence number");
               }
             }
             auto cursor = std::make_shared<std::uint64_t>(after);
             res.set_header("Cache-Control", "no-cache");
             res.set_chunked_content_provider(
                 "text/event-stream", [this, session, cursor](std::size_t, httplib::DataSink& sink) {
                   const auto events = session->events_after(*cursor, std::chrono::milliseconds(200));
                   for (const auto& e : events) {
                     const auto frame = sse_frame(e);
                     if (!sink.write(frame.data(), frame.size())) return false;
                     *cursor = e.sequence;
                     if (e.kind == kTerminalEvent) {
                       sink.done();
                       return true;
                     }
                   }
                   if (stopping) {
                     sink.done();
                     return true;
                   }
                   return true;
                 });
           }));
}

Server::Server(Workbench& workbench, SessionManager& sessions)
    : impl_(std::make_unique<Impl>(workbench, sessions)) {}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw ConflictError("cannot bind " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) throw ConflictError("port " + std::to_string(port) + " is busy");
  return port;
}

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop() {
  impl_->stopping = true;
  impl_->http.stop();
}

bool Server::running() const { return impl_->http.is_running(); }

}  // namespace skillforge::service
