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

#include "expertbandit/worlds.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace expertbandit {
namespace {

constexpr double kRowSumTolerance = 1e-12;
constexpr int kMaxStrongAttempts = 1000;

void check_probability_vector(std::span<const double> row,
                              std::string_view what) {
  double total = 0.0;
  for (double p : row) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument(std::string(what) +
                                  ": entries must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kRowSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": entries sum to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
}

// Uniform plus per-entry Gaussian noise, floored and renormalized.
void noisy_uniform_row(Rng& rng, double noise_std, std::span<double> out) {
  const double uniform_mass = 1.0 / static_cast<double>(out.size());
  double total = 0.0;
  for (double& p : out) {
    p = std::max(uniform_mass + noise_std * uniform_mass * rng.normal(),
                 kProbabilityFloor);
    total += p;
  }
  for (double& p : out) p /= total;
}

std::vector<double> noisy_rows(Rng& rng, std::size_t num_actions,
                               std::size_t num_outcomes, double noise_std) {
  std::vector<double> dist(num_actions * num_outcomes);
  for (std::size_t a = 0; a < num_actions; ++a) {
    noisy_uniform_row(rng, noise_std,
                      {dist.data() + a * num_outcomes, num_outcomes});
  }
  return dist;
}

void check_generator_args(std::size_t num_models, std::size_t num_actions,
                          double noise_std) {
  if (num_models < 1) throw std::invalid_argument("need at least one model");
  if (num_actions < 2) throw std::invalid_argument("need at least two actions");
  if (!(noise_std > 0.0)) throw std::invalid_argument("noise_std must be > 0");
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
}

}  // namespace

OutcomeAlphabet::OutcomeAlphabet(std::vector<int> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("outcome alphabet needs at least 2 values");
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] <= values_[i - 1]) {
      throw std::invalid_argument("outcome values must be strictly increasing");
    }
  }
}

OutcomeAlphabet OutcomeAlphabet::range(int min, int max) {
  if (max <= min) throw std::invalid_argument("alphabet range: need min < max");
  std::vector<int> values(static_cast<std::size_t>(max - min) + 1);
  std::iota(values.begin(), values.end(), min);
  return OutcomeAlphabet(std::move(values));
}

std::optional<std::size_t> OutcomeAlphabet::index_of(int value) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), value);
  if (it == values_.end() || *it != value) return std::nullopt;
  return static_cast<std::size_t>(it - values_.begin());
}

bool OutcomeAlphabet::is_contiguous() const {
  return values_.back() - values_.front() ==
         static_cast<int>(values_.size()) - 1;
}

BanditModel::BanditModel(std::size_t num_actions, std::size_t num_outcomes,
                         std::vector<double> dist)
    : num_actions_(num_actions),
      num_outcomes_(num_outcomes),
      dist_(std::move(dist)) {
  if (num_actions_ < 1 || num_outcomes_ < 1) {
    throw std::invalid_argument("bandit model needs actions and outcomes");
  }
  if (dist_.size() != num_actions_ * num_outcomes_) {
    throw std::invalid_argument("bandit model: distribution has wrong size");
  }
  for (std::size_t a = 0; a < num_actions_; ++a) {
    check_probability_vector(row(a), "bandit model row");
  }
}

double mean_reward(const BanditModel& model, std::size_t action,
                   const OutcomeAlphabet& alphabet) {
  if (action >= model.num_actions()) {
    throw std::out_of_range("mean_reward: action out of range");
  }
  const auto row = model.row(action);
  double mean = 0.0;
  for (std::size_t y = 0; y < row.size(); ++y) mean += row[y] * alphabet.reward(y);
  return mean;
}

std::size_t optimal_action(const BanditModel& model,
                           const OutcomeAlphabet& alphabet) {
  std::size_t best = 0;
  double best_mean = mean_reward(model, 0, alphabet);
  for (std::size_t a = 1; a < model.num_actions(); ++a) {
    const double m = mean_reward(model, a, alphabet);
    if (m > best_mean) {
      best = a;
      best_mean = m;
    }
  }
  return best;
}

std::size_t sample_outcome(const BanditModel& model, std::size_t action,
                           Rng& rng) {
  return inverse_cdf(model.row(action), rng.uniform());
}

std::string_view world_kind_name(WorldKind kind) {
  switch (kind) {
    case WorldKind::kSymmetric:
      return "Symmetric";
    case WorldKind::kAsymmetric:
      return "Asymmetric";
    case WorldKind::kStronglyAsymmetric:
      return "StronglyAsymmetric";
    case WorldKind::kCustom:
      return "Custom";
  }
  return "Custom";
}

std::optional<WorldKind> parse_world_kind(std::string_view name) {
  for (auto kind : {WorldKind::kSymmetric, WorldKind::kAsymmetric,
                    WorldKind::kStronglyAsymmetric, WorldKind::kCustom}) {
    if (world_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

WorldFamily::WorldFamily(std::vector<BanditModel> models,
                         std::size_t true_index, OutcomeAlphabet alphabet,
                         WorldKind kind, GeneratorParams params)
    : models_(std::move(models)),
      true_index_(true_index),
      alphabet_(std::move(alphabet)),
      kind_(kind),
      params_(params) {
  if (models_.empty()) throw std::invalid_argument("family has no models");
  if (true_index_ >= models_.size()) {
    throw std::invalid_argument("true_index out of range");
  }
  num_actions_ = models_.front().num_actions();
  const std::size_t num_y = alphabet_.size();
  for (const auto& model : models_) {
    if (model.num_actions() != num_actions_ ||
        model.num_outcomes() != num_y) {
      throw std::invalid_argument(
          "all models must share the action count and the alphabet");
    }
  }

  const std::size_t num_m = models_.size();
  optimal_.resize(num_m);
  means_.resize(num_m * num_actions_);
  log_probs_.resize(num_m * num_actions_ * num_y);
  std::uint64_t h = hash_combine(num_m, num_actions_);
  h = hash_combine(h, true_index_);
  for (int v : alphabet_.values()) {
    h = hash_combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
  }
  for (std::size_t m = 0; m < num_m; ++m) {
    const auto& model = models_[m];
    for (std::size_t a = 0; a < num_actions_; ++a) {
      means_[m * num_actions_ + a] = mean_reward(model, a, alphabet_);
      const auto row = model.row(a);
      double* log_row = log_probs_.data() + (m * num_actions_ + a) * num_y;
      for (std::size_t y = 0; y < num_y; ++y) {
        log_row[y] = std::log(row[y]);
        h = hash_combine(h, std::bit_cast<std::uint64_t>(row[y]));
      }
    }
    optimal_[m] = expertbandit::optimal_action(model, alphabet_);
  }
  fingerprint_ = h;
}

WorldFamily gen_symmetric(std::size_t num_models, std::size_t num_actions,
                          const OutcomeAlphabet& alphabet, std::uint64_t seed,
                          double noise_std) {
  check_generator_args(num_models, num_actions, noise_std);
  Rng rng(seed, "worlds/symmetric");
  const std::size_t num_y = alphabet.size();
  const std::vector<double> base = noisy_rows(rng, num_actions, num_y, noise_std);

  std::vector<BanditModel> models;
  models.reserve(num_models);
  std::vector<std::size_t> perm(num_actions);
  for (std::size_t m = 0; m < num_models; ++m) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = num_actions - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    std::vector<double> dist(num_actions * num_y);
    for (std::size_t a = 0; a < num_actions; ++a) {
      std::copy_n(base.begin() + perm[a] * num_y, num_y,
                  dist.begin() + a * num_y);
    }
    models.emplace_back(num_actions, num_y, std::move(dist));
  }
  const std::size_t true_index = rng.below(num_models);
  return WorldFamily(std::move(models), true_index, alphabet,
                     WorldKind::kSymmetric, {seed, noise_std});
}

WorldFamily gen_asymmetric(std::size_t num_models, std::size_t num_actions,
                           const OutcomeAlphabet& alphabet, double noise_std,
                           std::uint64_t seed) {
  check_generator_args(num_models, num_actions, noise_std);
  Rng rng(seed, "worlds/asymmetric");
  std::vector<BanditModel> models;
  models.reserve(num_models);
  for (std::size_t m = 0; m < num_models; ++m) {
    models.emplace_back(num_actions, alphabet.size(),
                        noisy_rows(rng, num_actions, alphabet.size(), noise_std));
  }
  const std::size_t true_index = rng.below(num_models);
  return WorldFamily(std::move(models), true_index, alphabet,
                     WorldKind::kAsymmetric, {seed, noise_std});
}

WorldFamily gen_strongly_asymmetric(std::size_t num_models,
                                    std::size_t num_actions,
                                    const OutcomeAlphabet& alphabet,
                                    double noise_std, std::uint64_t seed) {
  check_generator_args(num_models, num_actions, noise_std);
  const auto two = alphabet.index_of(2);
  if (!two) {
    throw std::invalid_argument(
        "strongly asymmetric worlds need the outcome value 2");
  }
  const std::size_t num_y = alphabet.size();
  for (int attempt = 0; attempt < kMaxStrongAttempts; ++attempt) {
    Rng rng(seed, "worlds/strongly_asymmetric", attempt);
    std::vector<std::vector<double>> dists;
    dists.reserve(num_models);
    for (std::size_t m = 0; m < num_models; ++m) {
      dists.push_back(noisy_rows(rng, num_actions, num_y, noise_std));
    }
    const std::size_t true_index = rng.below(num_models);
    const std::size_t dirac_action = rng.below(num_actions);
    auto& true_dist = dists[true_index];
    std::fill_n(true_dist.begin() + dirac_action * num_y, num_y, 0.0);
    true_dist[dirac_action * num_y + *two] = 1.0;

    std::vector<BanditModel> models;
    models.reserve(num_models);
    for (auto& d : dists) models.emplace_back(num_actions, num_y, std::move(d));
    const BanditModel& truth = models[true_index];
    const double dirac_mean = mean_reward(truth, dirac_action, alphabet);
    bool unique = true;
    for (std::size_t a = 0; a < num_actions && unique; ++a) {
      if (a != dirac_action && mean_reward(truth, a, alphabet) >= dirac_mean) {
        unique = false;
      }
    }
    if (!unique) continue;
    WorldFamily family(std::move(models), true_index, alphabet,
                       WorldKind::kStronglyAsymmetric, {seed, noise_std});
    if (family.true_optimal_action() != dirac_action) {
      throw std::logic_error("point-mass action is not the optimal action");
    }
    return family;
  }
  throw std::runtime_error(
      "strongly asymmetric generation: point-mass action never strictly "
      "optimal; lower noise_std");
}

WorldFamily generate_family(WorldKind kind, std::size_t num_models,
                            std::size_t num_actions,
                            const OutcomeAlphabet& alphabet, double noise_std,
                            std::uint64_t seed) {
  switch (kind) {
    case WorldKind::kSymmetric:
      return gen_symmetric(num_models, num_actions, alphabet, seed, noise_std);
    case WorldKind::kAsymmetric:
      return gen_asymmetric(num_models, num_actions, alphabet, noise_std, seed);
    case WorldKind::kStronglyAsymmetric:
      return gen_strongly_asymmetric(num_models, num_actions, alphabet,
                                     noise_std, seed);
    case WorldKind::kCustom:
      break;
  }
  throw std::invalid_argument("custom families cannot be generated");
}

void validate_expert(const ExpertKind& kind, std::size_t num_actions) {
  auto check_eps = [](double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("expert eps must lie in [0, 1]");
    }
  };
  if (const auto* br = std::get_if<BoundedlyRationalExpert>(&kind)) {
    check_eps(br->eps);
  } else if (const auto* huber = std::get_if<HuberAdversarialExpert>(&kind)) {
    check_eps(huber->eps);
  } else if (const auto* custom = std::get_if<CustomPolicyExpert>(&kind)) {
    if (custom->policy.size() != num_actions) {
      throw std::invalid_argument("custom expert policy has wrong length");
    }
    check_probability_vector(custom->policy, "custom expert policy");
  }
}

std::string expert_name(const ExpertKind& kind) {
  std::ostringstream out;
  std::visit(
      [&out](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, OptimalExpert>) {
          out << "Optimal";
        } else if constexpr (std::is_same_v<T, BoundedlyRationalExpert>) {
          out << "BoundedlyRational(" << e.eps << ")";
        } else if constexpr (std::is_same_v<T, HuberAdversarialExpert>) {
          out << "HuberAdversarial(" << e.eps << ")";
        } else {
          out << "CustomPolicy";
        }
      },
      kind);
  return out.str();
}

std::size_t adversarial_target(const WorldFamily& family) {
  const std::size_t truth = family.true_index();
  std::size_t target = 0;
  double worst = family.mean(truth, family.optimal_action(0));
  for (std::size_t m = 1; m < family.size(); ++m) {
    const double value = family.mean(truth, family.optimal_action(m));
    if (value < worst) {
      worst = value;
      target = m;
    }
  }
  return target;
}

std::vector<double> expert_policy(const WorldFamily& family,
                                  const ExpertKind& kind) {
  const std::size_t num_a = family.num_actions();
  const std::size_t best = family.true_optimal_action();
  std::vector<double> policy(num_a, 0.0);
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, OptimalExpert>) {
          policy[best] = 1.0;
        } else if constexpr (std::is_same_v<T, BoundedlyRationalExpert>) {
          const double other = (1.0 - e.eps) / static_cast<double>(num_a - 1);
          std::fill(policy.begin(), policy.end(), other);
          policy[best] = e.eps;
        } else if constexpr (std::is_same_v<T, HuberAdversarialExpert>) {
          const std::size_t adv =
              family.optimal_action(adversarial_target(family));
          policy[best] += e.eps;
          policy[adv] += 1.0 - e.eps;
        } else {
          policy = e.policy;
        }
      },
      kind);
  return policy;
}

std::vector<double> expert_outcome_marginal(const WorldFamily& family,
                                            const ExpertKind& kind) {
  const auto policy = expert_policy(family, kind);
  std::vector<double> q(family.num_outcomes(), 0.0);
  for (std::size_t a = 0; a < policy.size(); ++a) {
    if (policy[a] == 0.0) continue;
    const auto row = family.true_model().row(a);
    for (std::size_t y = 0; y < q.size(); ++y) q[y] += policy[a] * row[y];
  }
  return q;
}

std::size_t expert_sample(const WorldFamily& family, const ExpertKind& kind,
                          Rng& rng) {
  const auto policy = expert_policy(family, kind);
  const std::size_t action = inverse_cdf(policy, rng.uniform());
  return sample_outcome(family.true_model(), action, rng);
}

}  // namespace expertbandit
