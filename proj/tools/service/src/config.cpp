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

#include "skillforge/service/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "skillforge/common.hpp"

namespace skillforge::service {
namespace {

using nlohmann::json;

void check_keys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  if (!object.is_object()) throw ValidationError(where + " must be an object");
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (!allowed.contains(it.key())) throw ValidationError("unknown config key '" + where + it.key() + "'");
  }
}

template <typename T>
void read(const json& object, const char* key, T& out) {
  if (object.contains(key)) out = object.at(key).get<T>();
}

}  // namespace

ServiceConfig parse_config(const std::string& json_text) {
  ServiceConfig c;
  try {
    const json doc = json::parse(json_text);
    check_keys(doc, {"host", "port", "store", "catalog", "playing", "diagnosis"}, "");
    read(doc, "host", c.host);
    read(doc, "port", c.port);
    read(doc, "store", c.store_path);
    read(doc, "catalog", c.catalog_path);
    if (doc.contains("playing")) {
      const auto& p = doc["playing"];
      check_keys(p, {"episodes", "reward", "damping", "seed"}, "playing.");
      read(p, "episodes", c.episodes);
      read(p, "reward", c.reward);
      read(p, "damping", c.damping);
      read(p, "seed", c.play_seed);
    }
    if (doc.contains("diagnosis")) {
      const auto& d = doc["diagnosis"];
      check_keys(d,
                 {"budget", "training_runs", "seed", "eps_bg", "beta_low", "beta_high", "lambda_t", "kappa", "rho",
                  "rho0", "certainty", "variance_floor", "mom_quantile"},
                 "diagnosis.");
      read(d, "budget", c.budget);
      read(d, "training_runs", c.training_runs);
      read(d, "seed", c.diagnosis_seed);
      auto& k = c.constants;
      read(d, "eps_bg", k.eps_bg);
      read(d, "beta_low", k.beta_low);
      read(d, "beta_high", k.beta_high);
      read(d, "lambda_t", k.lambda_t);
      read(d, "kappa", k.kappa);
      read(d, "rho", k.rho);
      read(d, "rho0", k.rho0);
      read(d, "certainty", k.certainty);
      read(d, "variance_floor", k.variance_floor);
      read(d, "mom_quantile", k.mom_quantile);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  }
  if (c.port < 0 || c.port > 65535) throw ValidationError("port out of range");
  if (c.episodes < 1 || c.budget < 1 || c.training_runs < 1) {
    throw ValidationError("episodes, budget and training_runs must be positive");
  }
  if (!(c.constants.beta_low < c.constants.beta_high)) throw ValidationError("beta_low must be below beta_high");
  return c;
}

ServiceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot read config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return explicit_path;
  if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

}  // namespace skillforge::service
