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

#ifndef EXPERTBANDIT_INFORMATION_H_
#define EXPERTBANDIT_INFORMATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "expertbandit/belief.h"
#include "expertbandit/rng.h"
#include "expertbandit/worlds.h"

namespace expertbandit {

// Posterior predictive tables for one belief.
//
//   self_marginal(a, y)       = P(Y = y | A_t = a)
//   self_joint(a, a', y)      = P(Y = y, A* = a' | A_t = a)
//   expert_marginal(y)        = P(Y* = y)
//   expert_joint(a', y)       = P(Y* = y, A* = a')
//
// Conditionals given A* = a' are the joints divided by pi_t(a').
class Predictives {
 public:
  Predictives(std::size_t num_actions, std::size_t num_outcomes);

  std::size_t num_actions() const { return num_actions_; }
  std::size_t num_outcomes() const { return num_outcomes_; }

  std::span<const double> self_marginal(std::size_t a) const {
    return {self_marginal_.data() + a * num_outcomes_, num_outcomes_};
  }
  std::span<const double> self_joint(std::size_t a, std::size_t a_star) const {
    return {self_joint_.data() + (a * num_actions_ + a_star) * num_outcomes_,
            num_outcomes_};
  }
  std::span<const double> expert_marginal() const { return expert_marginal_; }
  std::span<const double> expert_joint(std::size_t a_star) const {
    return {expert_joint_.data() + a_star * num_outcomes_, num_outcomes_};
  }

 private:
  friend Predictives build_predictives(const Belief&, const WorldFamily&);
  std::size_t num_actions_;
  std::size_t num_outcomes_;
  std::vector<double> self_marginal_;
  std::vector<double> self_joint_;
  std::vector<double> expert_marginal_;
  std::vector<double> expert_joint_;
};

Predictives build_predictives(const Belief& belief, const WorldFamily& family);

// KL(p || q) in nats with 0 ln(0/q) = 0. p scaled by 1/p_scale and q by
// 1/q_scale before evaluation, which lets callers pass unnormalized joints.
double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double p_scale = 1.0, double q_scale = 1.0);

// I(A*; (A_t, Y_t)) for Thompson action selection.
double mi_self_exact(const Predictives& p, const ActionPosterior& pi);
// I(A*; Y*) for an expert known to play the optimal action.
double mi_expert_exact(const Predictives& p, const ActionPosterior& pi);
// I(A*; Y^e) for an expert whose policy is uncertain with mean mean_policy;
// the outcome predictives are policy mixtures of the self predictives.
double mi_expert_trusted(const Predictives& p, const ActionPosterior& pi,
                         std::span<const double> mean_policy);
double mi_expert_trusted(const Belief& belief, const WorldFamily& family,
                         std::span<const double> mean_policy);

// Sampled information estimates: averages of per-draw terms, one expert
// outcome and one outcome per action per draw.
struct MiPairEstimate {
  double mi_expert = 0.0;
  double mi_self = 0.0;
  double expert_std_error = 0.0;
  double self_std_error = 0.0;
};
MiPairEstimate mi_pair_mc(const Belief& belief, const WorldFamily& family,
                          std::size_t num_draws, Rng& rng);
MiPairEstimate mi_pair_mc(const Predictives& p, const ActionPosterior& pi,
                          std::size_t num_draws, Rng& rng);

// Expected instantaneous regret under the belief when acting by Thompson
// sampling.
double expected_regret(const Belief& belief, const WorldFamily& family,
                       const ActionPosterior& pi);
// Squared expected regret over self information gain; nullopt when the
// information gain is zero.
std::optional<double> information_ratio(const Belief& belief,
                                        const WorldFamily& family,
                                        const Predictives& p,
                                        const ActionPosterior& pi);

// Below this gap the self source is preferred.
inline constexpr double kSourceTieTolerance = 1e-12;

}  // namespace expertbandit

#endif  // EXPERTBANDIT_INFORMATION_H_
