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

#include "skillforge/diagnosis/blame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skillforge/common.hpp"

namespace skillforge::diagnosis {
namespace {

double entropy_of(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

std::vector<double> normalized(std::vector<double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) throw ValidationError("posterior cannot be normalized");
  for (auto& x : v) x /= total;
  return v;
}

}  // namespace

BlameDistribution::BlameDistribution(std::vector<std::string> hypotheses, std::vector<double> probabilities)
    : hypotheses_(std::move(hypotheses)), p_(std::move(probabilities)) {
  if (hypotheses_.size() != p_.size() || p_.empty()) throw ValidationError("blame hypotheses and probabilities differ");
  double total = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("blame probability must be finite and non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("blame probabilities must sum to 1");
}

BlameDistribution BlameDistribution::uniform(const std::vector<std::string>& functions) {
  auto hypotheses = functions;
  hypotheses.push_back(kNoFault);
  const std::vector<double> p(hypotheses.size(), 1.0 / static_cast<double>(hypotheses.size()));
  return BlameDistribution(std::move(hypotheses), p);
}

double BlameDistribution::of(const std::string& hypothesis) const {
  const auto it = std::find(hypotheses_.begin(), hypotheses_.end(), hypothesis);
  if (it == hypotheses_.end()) throw NotFoundError("no blame hypothesis '" + hypothesis + "'");
  return p_[static_cast<std::size_t>(it - hypotheses_.begin())];
}

const std::string& BlameDistribution::argmax() const {
  return hypotheses_.at(static_cast<std::size_t>(std::max_element(p_.begin(), p_.end()) - p_.begin()));
}

double BlameDistribution::max() const { return *std::max_element(p_.begin(), p_.end()); }

double BlameDistribution::entropy() const { return entropy_of(p_); }

std::vector<std::pair<std::string, double>> BlameDistribution::ranking() const {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < p_.size(); ++i) out.emplace_back(hypotheses_[i], p_[i]);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::optional<std::size_t> last_active(const memory::CallProfileMatrix& profile, const std::string& function) {
  const std::size_t row = profile.find(function);
  if (row == profile.rows()) return std::nullopt;
  for (std::size_t t = profile.ticks; t-- > 0;) {
    if (profile.at(row, t) > 0) return t;
  }
  return std::nullopt;
}

double likelihood(const Observation& o, const std::string& hypothesis, const Fpf* fpf,
                  const DiagnosisConstants& c) {
  if (hypothesis == kNoFault) return o.success ? c.beta_high : c.eps_bg;
  const auto last = last_active(o.profile, hypothesis);
  if (o.success) return last ? c.beta_low : c.beta_high;
  if (!last) return c.eps_bg;
  if (!o.fail_time) throw ValidationError("failed observation without a failure time");
  const auto t_fail = o.fail_time->tick;
  const double dt = std::abs(static_cast<double>(*last) - static_cast<double>(t_fail));
  const double dev = fpf != nullptr ? fpf->deviation(o.profile, hypothesis, static_cast<std::size_t>(t_fail)) : 0.0;
  return std::max(c.eps_bg, std::exp(-dt / c.lambda_t) * (1.0 + c.kappa * dev));
}

BlameDistribution blame_update(const BlameDistribution& prior, const std::vector<double>& likelihoods) {
  if (likelihoods.size() != prior.size()) throw ValidationError("one likelihood per hypothesis expected");
  std::vector<double> post(prior.size());
  for (std::size_t i = 0; i < post.size(); ++i) {
    if (!(likelihoods[i] >= 0.0) || !std::isfinite(likelihoods[i])) {
      throw ValidationError("likelihoods must be finite and non-negative");
    }
    post[i] = likelihoods[i] * prior[i];
  }
  return BlameDistribution(prior.hypotheses(), normalized(std::move(post)));
}

BlameDistribution blame_update(const BlameDistribution& prior, const Observation& o, const Fpf* fpf,
                               const DiagnosisConstants& constants) {
  std::vector<double> l;
  l.reserve(prior.size());
  for (const auto& h : prior.hypotheses()) l.push_back(likelihood(o, h, fpf, constants));
  return blame_update(prior, l);
}

double expected_information_gain(const BlameDistribution& blame, const std::set<std::string>& coverage,
                                 const DiagnosisConstants& c) {
  std::vector<double> fail(blame.size());
  std::vector<double> pass(blame.size());
  double p_fail = 0.0;
  for (std::size_t i = 0; i < blame.size(); ++i) {
    const auto& h = blame.hypotheses()[i];
    const double q = (h != kNoFault && coverage.contains(h)) ? c.rho : c.rho0;
    fail[i] = q * blame[i];
    pass[i] = (1.0 - q) * blame[i];
    p_fail += fail[i];
  }
  double expected = 0.0;
  if (p_fail > 0.0) expected += p_fail * entropy_of(normalized(fail));
  if (p_fail < 1.0) expected += (1.0 - p_fail) * entropy_of(normalized(pass));
  return blame.entropy() - expected;
}

std::string select_next_skill(const BlameDistribution& blame,
                              const std::map<std::string, std::set<std::string>>& coverage,
                              const DiagnosisConstants& constants) {
  if (coverage.empty()) throw ValidationError("no candidate skills to select from");
  const std::string* best = nullptr;
  double best_gain = 0.0;
  // Map order is lexicographic, so a strict comparison keeps the smallest id.
  for (const auto& [skill, covered] : coverage) {
    const double gain = expected_information_gain(blame, covered, constants);
    if (best == nullptr || gain > best_gain + 1e-12) {
      best = &skill;
      best_gain = gain;
    }
  }
  return *best;
}

}  // namespace skillforge::diagnosis
