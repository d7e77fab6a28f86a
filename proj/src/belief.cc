// Copyright 2026 The ExpertBandit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "expertbandit/belief.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "expertbandit/errors.h"

namespace expertbandit {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kNormalizationTolerance = 1e-9;
constexpr double kRowMatchTolerance = 1e-9;

void check_family(const Belief& belief, const WorldFamily& family) {
  if (belief.size() != family.size() ||
      belief.family_id() != family.fingerprint()) {
    throw std::invalid_argument("belief does not belong to this family");
  }
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << v;
  return out.str();
}

}  // namespace

double log_sum_exp(std::span<const double> values) {
  double max_value = kNegInf;
  for (double v : values) max_value = std::max(max_value, v);
  if (max_value == kNegInf) return kNegInf;
  double total = 0.0;
  for (double v : values) total += std::exp(v - max_value);
  return max_value + std::log(total);
}

double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

Belief::Belief(std::vector<double> log_weights, std::uint64_t family_id)
    : log_weights_(std::move(log_weights)), family_id_(family_id) {
  if (log_weights_.empty()) throw std::invalid_argument("empty belief");
  for (double v : log_weights_) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("belief log-weights must be finite or -inf");
    }
  }
  const double lse = log_sum_exp(log_weights_);
  if (!(std::abs(lse) <= kNormalizationTolerance)) {
    throw std::invalid_argument("belief is not normalized");
  }
}

Belief Belief::from_unnormalized(std::vector<double> log_weights,
                                 std::uint64_t family_id) {
  const double lse = log_sum_exp(log_weights);
  if (lse == kNegInf) throw AllWorldsExcluded();
  for (double& v : log_weights) {
    if (v != kNegInf) v -= lse;
  }
  return Belief(std::move(log_weights), family_id);
}

double Belief::weight(std::size_t m) const {
  return std::exp(log_weights_[m]);
}

std::vector<double> Belief::weights() const {
  std::vector<double> w(log_weights_.size());
  std::transform(log_weights_.begin(), log_weights_.end(), w.begin(),
                 [](double lw) { return std::exp(lw); });
  return w;
}

bool Belief::excluded(std::size_t m) const {
  return log_weights_[m] == kNegInf;
}

double total_variation(const Belief& a, const Belief& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("total_variation: size mismatch");
  }
  double tv = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    tv += std::abs(a.weight(m) - b.weight(m));
  }
  return 0.5 * tv;
}

Belief uniform_prior(const WorldFamily& family) {
  const double lw = -std::log(static_cast<double>(family.size()));
  return Belief(std::vector<double>(family.size(), lw), family.fingerprint());
}

Belief update_self(const Belief& belief, const WorldFamily& family,
                   std::size_t action, std::size_t outcome) {
  check_family(belief, family);
  if (action >= family.num_actions() || outcome >= family.num_outcomes()) {
    throw std::out_of_range("update_self: action or outcome out of range");
  }
  std::vector<double> lw(belief.log_weights().begin(),
                         belief.log_weights().end());
  for (std::size_t m = 0; m < lw.size(); ++m) {
    if (lw[m] != kNegInf) lw[m] += family.log_row(m, action)[outcome];
  }
  try {
    return Belief::from_unnormalized(std::move(lw), belief.family_id());
  } catch (const AllWorldsExcluded&) {
    throw ImpossibleObservation();
  }
}

Belief pretrain_expert(const Belief& belief, const WorldFamily& family,
                       std::span<const std::size_t> outcomes) {
  check_family(belief, family);
  if (outcomes.empty()) {
    throw std::invalid_argument("pretrain_expert: no expert data");
  }
  std::vector<std::size_t> counts(family.num_outcomes(), 0);
  for (std::size_t y : outcomes) {
    if (y >= counts.size()) {
      throw std::out_of_range("pretrain_expert: outcome out of range");
    }
    ++counts[y];
  }
  std::vector<double> lw(belief.log_weights().begin(),
                         belief.log_weights().end());
  for (std::size_t m = 0; m < lw.size(); ++m) {
    if (lw[m] == kNegInf) continue;
    const auto log_row = family.log_row(m, family.optimal_action(m));
    double loglik = 0.0;
    for (std::size_t y = 0; y < counts.size(); ++y) {
      if (counts[y] == 0) continue;
      loglik += static_cast<double>(counts[y]) * log_row[y];
    }
    lw[m] += loglik;
  }
  return Belief::from_unnormalized(std::move(lw), belief.family_id());
}

Belief limit_update(const Belief& belief, const WorldFamily& family,
                    std::size_t reference_model) {
  check_family(belief, family);
  if (reference_model >= family.size()) {
    throw std::out_of_range("limit_update: reference out of range");
  }
  const auto reference = family.optimal_row(reference_model);
  std::vector<double> lw(belief.log_weights().begin(),
                         belief.log_weights().end());
  for (std::size_t m = 0; m < lw.size(); ++m) {
    const auto row = family.optimal_row(m);
    double distance = 0.0;
    for (std::size_t y = 0; y < row.size(); ++y) {
      distance = std::max(distance, std::abs(row[y] - reference[y]));
    }
    if (distance > kRowMatchTolerance) lw[m] = kNegInf;
  }
  return Belief::from_unnormalized(std::move(lw), belief.family_id());
}

ActionPosterior action_posterior(const Belief& belief,
                                 const WorldFamily& family) {
  check_family(belief, family);
  ActionPosterior pi{std::vector<double>(family.num_actions(), 0.0)};
  for (std::size_t m = 0; m < belief.size(); ++m) {
    if (belief.excluded(m)) continue;
    pi.probs[family.optimal_action(m)] += belief.weight(m);
  }
  return pi;
}

double action_entropy(const Belief& belief, const WorldFamily& family) {
  return entropy(action_posterior(belief, family).probs);
}

std::size_t sample_model(const Belief& belief, double u) {
  double cumulative = 0.0;
  std::size_t last = 0;
  for (std::size_t m = 0; m < belief.size(); ++m) {
    if (belief.excluded(m)) continue;
    cumulative += belief.weight(m);
    last = m;
    if (u < cumulative) return m;
  }
  return last;
}

std::size_t sample_model(const Belief& belief, Rng& rng) {
  return sample_model(belief, rng.uniform());
}

MonteCarloEstimate expert_data_mi(const Belief& prior,
                                  const WorldFamily& family,
                                  std::size_t num_samples,
                                  std::size_t mc_draws, Rng& rng) {
  if (num_samples < 1) {
    throw std::invalid_argument("expert_data_mi: need at least one sample");
  }
  if (mc_draws < 2) {
    throw std::invalid_argument("expert_data_mi: need at least two draws");
  }
  const double prior_entropy = action_entropy(prior, family);
  std::vector<std::size_t> data(num_samples);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t d = 0; d < mc_draws; ++d) {
    const std::size_t world = sample_model(prior, rng);
    const auto row = family.optimal_row(world);
    for (auto& y : data) y = inverse_cdf(row, rng.uniform());
    const double h = action_entropy(pretrain_expert(prior, family, data), family);
    const double delta = h - mean;
    mean += delta / static_cast<double>(d + 1);
    m2 += delta * (h - mean);
  }
  const double n = static_cast<double>(mc_draws);
  return {prior_entropy - mean, std::sqrt(m2 / (n - 1.0) / n)};
}

nlohmann::json belief_to_json(const Belief& belief) {
  nlohmann::json weights = nlohmann::json::array();
  for (double lw : belief.log_weights()) {
    if (lw == kNegInf) {
      weights.push_back(nullptr);
    } else {
      weights.push_back(lw);
    }
  }
  return {{"family", hex64(belief.family_id())}, {"log_weights", weights}};
}

Belief belief_from_json(const nlohmann::json& doc, const WorldFamily& family) {
  try {
    const nlohmann::json& array =
        doc.is_array() ? doc : doc.at("log_weights");
    if (doc.is_object() && doc.contains("family") &&
        doc.at("family").get<std::string>() != hex64(family.fingerprint())) {
      throw ConfigError("belief was saved for a different family");
    }
    std::vector<double> lw;
    lw.reserve(array.size());
    for (const auto& v : array) {
      lw.push_back(v.is_null() ? kNegInf : v.get<double>());
    }
    if (lw.size() != family.size()) {
      throw ConfigError("belief length does not match the family");
    }
    return Belief::from_unnormalized(std::move(lw), family.fingerprint());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("belief: ") + e.what());
  }
}

}  // namespace expertbandit
