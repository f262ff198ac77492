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

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace skillforge::service {

enum class SessionKind { ProgramRun, Playing, Diagnosis };
enum class SessionState { Pending, Running, Done, Failed };

std::string_view to_string(SessionKind kind);
std::string_view to_string(SessionState state);

struct EventEnvelope {
  std::string session;
  std::uint64_t sequence = 0;  // 1-based, gapless
  std::string kind;            // episode-result, walk-path, blame-snapshot, execution-finished
  std::string payload;         // JSON document
};

inline constexpr std::string_view kTerminalEvent = "execution-finished";

class Session {
 public:
  Session(std::string id, SessionKind kind, std::uint64_t seed);

  const std::string& id() const { return id_; }
  SessionKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

  SessionState state() const;
  std::string error() const;
  std::string result() const;  // JSON, empty until Done

  // Pending -> Running -> (Done | Failed); anything else throws ConflictError.
  void transition(SessionState next);
  void finish(SessionState terminal, std::string result, std::string error);

  std::uint64_t publish(std::string kind, std::string payload);
  std::size_t event_count() const;

  // Events with sequence > `after`. Waits up to `timeout` when none are
  // available yet and the session is still live.
  std::vector<EventEnvelope> events_after(std::uint64_t after,
                                          std::chrono::milliseconds timeout = std::chrono::milliseconds(0)) const;
  bool terminal() const;

  std::string to_json() const;

 private:
  std::string id_;
  SessionKind kind_;
  std::uint64_t seed_;
  mutable std::mutex mutex_;
  mutable std::condition_variable changed_;
  SessionState state_ = SessionState::Pending;
  std::string error_;
  std::string result_;
  std::vector<EventEnvelope> events_;
};

// Runs session jobs one at a time in submission order, so sessions that share
// hardware or an ECM never overlap.
class SessionManager {
 public:
  using Job = std::function<std::string(Session&)>;  // returns the result document

  SessionManager();
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  std::shared_ptr<Session> submit(SessionKind kind, std::uint64_t seed, Job job);
  std::shared_ptr<Session> find(const std::string& id) const;
  std::vector<std::shared_ptr<Session>> list() const;

  // Blocks until the session reaches Done or Failed.
  void wait(const Session& session) const;

  // Finishes the running job, fails pending ones, stops the worker.
  void shutdown();

 private:
  void work();

  mutable std::mutex mutex_;
  std::condition_variable queue_changed_;
  std::deque<std::pair<std::shared_ptr<Session>, Job>> queue_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace skillforge::service
