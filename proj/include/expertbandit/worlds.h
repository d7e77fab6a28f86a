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

#ifndef EXPERTBANDIT_WORLDS_H_
#define EXPERTBANDIT_WORLDS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "expertbandit/rng.h"

namespace expertbandit {

// Integer outcome values. The reward of an outcome is its value.
class OutcomeAlphabet {
 public:
  explicit OutcomeAlphabet(std::vector<int> values);
  // Every integer in [min, max].
  static OutcomeAlphabet range(int min, int max);

  std::size_t size() const { return values_.size(); }
  int value(std::size_t index) const { return values_[index]; }
  double reward(std::size_t index) const { return values_[index]; }
  const std::vector<int>& values() const { return values_; }
  std::optional<std::size_t> index_of(int value) const;
  bool is_contiguous() const;

  bool operator==(const OutcomeAlphabet&) const = default;

 private:
  std::vector<int> values_;
};

// One world: a categorical outcome distribution per action, stored row-major
// as (action, outcome index).
class BanditModel {
 public:
  BanditModel(std::size_t num_actions, std::size_t num_outcomes,
              std::vector<double> dist);

  std::size_t num_actions() const { return num_actions_; }
  std::size_t num_outcomes() const { return num_outcomes_; }
  std::span<const double> row(std::size_t action) const {
    return {dist_.data() + action * num_outcomes_, num_outcomes_};
  }
  double prob(std::size_t action, std::size_t outcome) const {
    return dist_[action * num_outcomes_ + outcome];
  }
  const std::vector<double>& data() const { return dist_; }

 private:
  std::size_t num_actions_;
  std::size_t num_outcomes_;
  std::vector<double> dist_;
};

double mean_reward(const BanditModel& model, std::size_t action,
                   const OutcomeAlphabet& alphabet);
// Lowest index attaining the maximal mean reward.
std::size_t optimal_action(const BanditModel& model,
                           const OutcomeAlphabet& alphabet);
std::size_t sample_outcome(const BanditModel& model, std::size_t action,
                           Rng& rng);

enum class WorldKind { kSymmetric, kAsymmetric, kStronglyAsymmetric, kCustom };

std::string_view world_kind_name(WorldKind kind);
std::optional<WorldKind> parse_world_kind(std::string_view name);

// Generator parameters kept with a family so it can be regenerated.
struct GeneratorParams {
  std::uint64_t seed = 0;
  // Standard deviation of the per-entry Gaussian noise, in units of the
  // uniform mass 1/|Y|.
  double noise_std = 0.3;
};

// Countable parameter set with the true world. Derived quantities (optimal
// actions, mean rewards, log-probabilities) are computed once on
// construction; the object is immutable afterwards.
class WorldFamily {
 public:
  WorldFamily(std::vector<BanditModel> models, std::size_t true_index,
              OutcomeAlphabet alphabet, WorldKind kind,
              GeneratorParams params = {});

  std::size_t size() const { return models_.size(); }
  std::size_t num_actions() const { return num_actions_; }
  std::size_t num_outcomes() const { return alphabet_.size(); }
  const OutcomeAlphabet& alphabet() const { return alphabet_; }
  WorldKind kind() const { return kind_; }
  const GeneratorParams& params() const { return params_; }

  const BanditModel& model(std::size_t m) const { return models_[m]; }
  const std::vector<BanditModel>& models() const { return models_; }
  std::size_t true_index() const { return true_index_; }
  const BanditModel& true_model() const { return models_[true_index_]; }

  std::size_t optimal_action(std::size_t m) const { return optimal_[m]; }
  std::size_t true_optimal_action() const { return optimal_[true_index_]; }
  double mean(std::size_t m, std::size_t action) const {
    return means_[m * num_actions_ + action];
  }
  std::span<const double> row(std::size_t m, std::size_t action) const {
    return models_[m].row(action);
  }
  std::span<const double> optimal_row(std::size_t m) const {
    return models_[m].row(optimal_[m]);
  }
  // Natural-log probabilities; -inf where the probability is zero.
  std::span<const double> log_row(std::size_t m, std::size_t action) const {
    return {log_probs_.data() + (m * num_actions_ + action) * num_outcomes(),
            num_outcomes()};
  }

  // Content hash binding beliefs to this family.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::vector<BanditModel> models_;
  std::size_t true_index_;
  OutcomeAlphabet alphabet_;
  WorldKind kind_;
  GeneratorParams params_;
  std::size_t num_actions_;
  std::vector<std::size_t> optimal_;
  std::vector<double> means_;
  std::vector<double> log_probs_;
  std::uint64_t fingerprint_;
};

inline constexpr double kDefaultNoiseStd = 0.3;
inline constexpr double kProbabilityFloor = 1e-6;

// Worlds that are action-label permutations of one shared set of rows.
WorldFamily gen_symmetric(std::size_t num_models, std::size_t num_actions,
                          const OutcomeAlphabet& alphabet, std::uint64_t seed,
                          double noise_std = kDefaultNoiseStd);
// Every row drawn independently.
WorldFamily gen_asymmetric(std::size_t num_models, std::size_t num_actions,
                           const OutcomeAlphabet& alphabet, double noise_std,
                           std::uint64_t seed);
// As gen_asymmetric, with one row of the true world replaced by a point mass
// at outcome 2 which is then the unique optimal action of the true world.
WorldFamily gen_strongly_asymmetric(std::size_t num_models,
                                    std::size_t num_actions,
                                    const OutcomeAlphabet& alphabet,
                                    double noise_std, std::uint64_t seed);
WorldFamily generate_family(WorldKind kind, std::size_t num_models,
                            std::size_t num_actions,
                            const OutcomeAlphabet& alphabet, double noise_std,
                            std::uint64_t seed);

// Expert behaviours. Every expert plays some action of the true world and
// reveals only its outcome. eps is the probability of playing the true
// optimal action.
struct OptimalExpert {};
struct BoundedlyRationalExpert {
  double eps;
};
struct HuberAdversarialExpert {
  double eps;
};
struct CustomPolicyExpert {
  std::vector<double> policy;
};
using ExpertKind = std::variant<OptimalExpert, BoundedlyRationalExpert,
                                HuberAdversarialExpert, CustomPolicyExpert>;

void validate_expert(const ExpertKind& kind, std::size_t num_actions);
std::string expert_name(const ExpertKind& kind);

// Model minimising the true-world mean reward of its own optimal action;
// lowest index on ties. The true world is not excluded.
std::size_t adversarial_target(const WorldFamily& family);

// Distribution over true-world actions played by the expert.
std::vector<double> expert_policy(const WorldFamily& family,
                                  const ExpertKind& kind);
// Marginal outcome distribution of the expert, sum_a pi_e(a) p*_a.
std::vector<double> expert_outcome_marginal(const WorldFamily& family,
                                            const ExpertKind& kind);
std::size_t expert_sample(const WorldFamily& family, const ExpertKind& kind,
                          Rng& rng);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_WORLDS_H_
