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

#ifndef EXPERTBANDIT_BELIEF_H_
#define EXPERTBANDIT_BELIEF_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "expertbandit/rng.h"
#include "expertbandit/worlds.h"

namespace expertbandit {

// Categorical posterior over the worlds of one family, held as normalized
// natural-log weights. Excluded worlds carry -inf and never come back.
class Belief {
 public:
  // log_weights must already be normalized (logsumexp = 0 within 1e-9).
  Belief(std::vector<double> log_weights, std::uint64_t family_id);
  // Normalizes; throws AllWorldsExcluded when every entry is -inf.
  static Belief from_unnormalized(std::vector<double> log_weights,
                                  std::uint64_t family_id);

  std::size_t size() const { return log_weights_.size(); }
  std::span<const double> log_weights() const { return log_weights_; }
  double log_weight(std::size_t m) const { return log_weights_[m]; }
  double weight(std::size_t m) const;
  std::vector<double> weights() const;
  bool excluded(std::size_t m) const;
  std::uint64_t family_id() const { return family_id_; }

 private:
  std::vector<double> log_weights_;
  std::uint64_t family_id_;
};

// Probability that each action is optimal, pi_t(a).
struct ActionPosterior {
  std::vector<double> probs;
};

double log_sum_exp(std::span<const double> values);
// Shannon entropy in nats with 0 ln 0 = 0.
double entropy(std::span<const double> probs);
double total_variation(const Belief& a, const Belief& b);

Belief uniform_prior(const WorldFamily& family);

// Bayes update with the self-collected pair (action, outcome index).
Belief update_self(const Belief& belief, const WorldFamily& family,
                   std::size_t action, std::size_t outcome);
// Update with expert outcomes under the optimal-row likelihood
// p_{theta, a*(theta)}(y), summed over the data in log space.
Belief pretrain_expert(const Belief& belief, const WorldFamily& family,
                       std::span<const std::size_t> outcomes);
// Infinite-data limit: keep worlds whose optimal row matches the reference
// world's optimal row (L-infinity within 1e-9), prior-proportional.
Belief limit_update(const Belief& belief, const WorldFamily& family,
                    std::size_t reference_model);

ActionPosterior action_posterior(const Belief& belief,
                                 const WorldFamily& family);
double action_entropy(const Belief& belief, const WorldFamily& family);

std::size_t sample_model(const Belief& belief, Rng& rng);
std::size_t sample_model(const Belief& belief, double u);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

inline constexpr std::size_t kDefaultExpertMiDraws = 512;

// Monte-Carlo estimate of I(A*; D_N) under the given prior: draws a world from
// the prior, N outcomes from its optimal row, pretrains, and averages the
// resulting action entropy. The standard error is that of the entropy mean.
MonteCarloEstimate expert_data_mi(const Belief& prior, const WorldFamily& family,
                                  std::size_t num_samples,
                                  std::size_t mc_draws, Rng& rng);

// Log-weights as a JSON array; excluded worlds are written as null.
nlohmann::json belief_to_json(const Belief& belief);
Belief belief_from_json(const nlohmann::json& doc, const WorldFamily& family);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_BELIEF_H_
