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

#include "skillforge/service/sessions.hpp"

#include <json.hpp>

#include "skillforge/common.hpp"

namespace skillforge::service {

std::string_view to_string(SessionKind kind) {
  switch (kind) {
    case SessionKind::ProgramRun:
      return "ProgramRun";
    case SessionKind::Playing:
      return "Playing";
    case SessionKind::Diagnosis:
      return "Diagnosis";
  }
  return "?";
}

std::string_view to_string(SessionState state) {
  switch (state) {
    case SessionState::Pending:
      return "Pending";
    case SessionState::Running:
      return "Running";
    case SessionState::Done:
      return "Done";
    case SessionState::Failed:
      return "Failed";
  }
  return "?";
}

Session::Session(std::string id, SessionKind kind, std::uint64_t seed)
    : id_(std::move(id)), kind_(kind), seed_(seed) {}

SessionState Session::state() const {
  std::lock_guard lock(mutex_);
  return state_;
}

std::string Session::error() const {
  std::lock_guard lock(mutex_);
  return error_;
}

std::string Session::result() const {
  std::lock_guard lock(mutex_);
  return result_;
}

bool Session::terminal() const {
  std::lock_guard lock(mutex_);
  return state_ == SessionState::Done || state_ == SessionState::Failed;
}

void Session::transition(SessionState next) {
  std::lock_guard lock(mutex_);
  const bool ok = (state_ == SessionState::Pending && next == SessionState::Running) ||
                  (state_ == SessionState::Running && (next == SessionState::Done || next == SessionState::Failed)) ||
                  (state_ == SessionState::Pending && next == SessionState::Failed);
  if (!ok) {
    throw ConflictError("session " + id_ + " cannot go from " + std::string(to_string(state_)) + " to " +
                        std::string(to_string(next)));
  }
  state_ = next;
  changed_.notify_all();
}

void Session::finish(SessionState terminal, std::string result, std::string error) {
  nlohmann::json payload = {{"state", to_string(terminal)}};
  if (!error.empty()) payload["error"] = error;
  if (!result.empty()) payload["result"] = nlohmann::json::parse(result);
  {
    std::lock_guard lock(mutex_);
    result_ = std::move(result);
    error_ = std::move(error);
  }
  // The terminal event goes out before the state flips so subscribers that
  // stop at a terminal state never miss it.
  publish(std::string(kTerminalEvent), payload.dump());
  transition(terminal);
}

std::uint64_t Session::publish(std::string kind, std::string payload) {
  std::lock_guard lock(mutex_);
  const std::uint64_t seq = events_.size() + 1;
  events_.push_back({id_, seq, std::move(kind), std::move(payload)});
  changed_.notify_all();
  return seq;
}

std::size_t Session::event_count() const {
  std::lock_guard lock(mutex_);
  return events_.size();
}

std::vector<EventEnvelope> Session::events_after(std::uint64_t after, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  auto ready = [&] {
    return events_.size() > after || state_ == SessionState::Done || state_ == SessionState::Failed;
  };
  if (timeout.count() > 0) changed_.wait_for(lock, timeout, ready);
  if (after >= events_.size()) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(after), events_.end()};
}

std::string Session::to_json() const {
  std::lock_guard lock(mutex_);
  nlohmann::json doc = {{"id", id_},
                        {"kind", to_string(kind_)},
                        {"state", to_string(state_)},
                        {"seed", seed_},
                        {"events", events_.size()}};
  if (!error_.empty()) doc["error"] = error_;
  if (!result_.empty()) doc["result"] = nlohmann::json::parse(result_);
  return doc.dump();
}

SessionManager::SessionManager() : worker_([this] { work(); }) {}

SessionManager::~SessionManager() { shutdown(); }

std::shared_ptr<Session> SessionManager::submit(SessionKind kind, std::uint64_t seed, Job job) {
  std::lock_guard lock(mutex_);
  if (stopping_) throw ConflictError("service is shutting down");
  auto session = std::make_shared<Session>("s" + std::to_string(next_id_++), kind, seed);
  sessions_[session->id()] = session;
  queue_.emplace_back(session, std::move(job));
  queue_changed_.notify_all();
  return session;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("no session '" + id + "'");
  return it->second;
}

std::vector<std::shared_ptr<Session>> SessionManager::list() const {
  std::lock_guard lock(mutex_);
  std::vector<std::shared_ptr<Session>> out;
  for (const auto& [id, s] : sessions_) out.push_back(s);
  return out;
}

void SessionManager::wait(const Session& session) const {
  std::uint64_t seen = 0;
  while (!session.terminal()) {
    seen += session.events_after(seen, std::chrono::milliseconds(50)).size();
  }
}

void SessionManager::shutdown() {
  std::deque<std::pair<std::shared_ptr<Session>, Job>> dropped;
  {
    std::lock_guard lock(mutex_);
    if (stopping_ && !worker_.joinable()) return;
    stopping_ = true;
    dropped.swap(queue_);
    queue_changed_.notify_all();
  }
  for (auto& [session, job] : dropped) session->finish(SessionState::Failed, {}, "service shut down");
  if (worker_.joinable()) worker_.join();
}

void SessionManager::work() {
  for (;;) {
    std::pair<std::shared_ptr<Session>, Job> next;
    {
      std::unique_lock lock(mutex_);
      queue_changed_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) return;
      next = std::move(queue_.front());
      queue_.pop_front();
    }
    auto& [session, job] = next;
    session->transition(SessionState::Running);
    try {
      auto result = job(*session);
      session->finish(SessionState::Done, std::move(result), {});
    } catch (const std::exception& e) {
      session->finish(SessionState::Failed, {}, e.what());
    }
  }
}

}  // namespace skillforge::service
