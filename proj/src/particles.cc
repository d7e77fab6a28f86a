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

#include "expertbandit/particles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "expertbandit/errors.h"

namespace expertbandit {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

JointParticleSet::JointParticleSet(std::size_t num_actions,
                                   std::vector<std::size_t> models,
                                   std::vector<double> policies,
                                   std::vector<double> log_weights)
    : num_actions_(num_actions),
      models_(std::move(models)),
      policies_(std::move(policies)),
      log_weights_(std::move(log_weights)) {
  if (models_.empty()) throw std::invalid_argument("particle set is empty");
  if (policies_.size() != models_.size() * num_actions_ ||
      log_weights_.size() != models_.size()) {
    throw std::invalid_argument("particle set: inconsistent sizes");
  }
  for (std::size_t k = 0; k < size(); ++k) {
    double total = 0.0;
    for (double p : policy(k)) {
      if (!(p >= 0.0)) throw std::invalid_argument("negative policy entry");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) {
      throw std::invalid_argument("particle policy does not sum to 1");
    }
  }
  normalize();
}

double JointParticleSet::weight(std::size_t k) const {
  return std::exp(log_weights_[k]);
}

void JointParticleSet::normalize() {
  const double lse = log_sum_exp(log_weights_);
  if (lse == kNegInf || std::isnan(lse)) throw ParticleDegeneracy();
  for (double& lw : log_weights_) lw -= lse;
}

double JointParticleSet::effective_sample_size() const {
  double sum_sq = 0.0;
  for (double lw : log_weights_) sum_sq += std::exp(2.0 * lw);
  return 1.0 / sum_sq;
}

std::vector<double> JointParticleSet::mean_policy() const {
  std::vector<double> mean(num_actions_, 0.0);
  for (std::size_t k = 0; k < size(); ++k) {
    const double w = weight(k);
    if (w == 0.0) continue;
    const auto pk = policy(k);
    for (std::size_t a = 0; a < num_actions_; ++a) mean[a] += w * pk[a];
  }
  return mean;
}

Belief JointParticleSet::theta_marginal(const WorldFamily& family) const {
  // Per-world log-sum-exp over the particles of that world.
  std::vector<double> max_lw(family.size(), kNegInf);
  for (std::size_t k = 0; k < size(); ++k) {
    max_lw[models_[k]] = std::max(max_lw[models_[k]], log_weights_[k]);
  }
  std::vector<double> sums(family.size(), 0.0);
  for (std::size_t k = 0; k < size(); ++k) {
    const std::size_t m = models_[k];
    if (max_lw[m] == kNegInf) continue;
    sums[m] += std::exp(log_weights_[k] - max_lw[m]);
  }
  std::vector<double> lw(family.size(), kNegInf);
  for (std::size_t m = 0; m < family.size(); ++m) {
    if (max_lw[m] != kNegInf) lw[m] = max_lw[m] + std::log(sums[m]);
  }
  return Belief::from_unnormalized(std::move(lw), family.fingerprint());
}

void JointParticleSet::reweight(std::span<const double> log_likelihoods) {
  if (log_likelihoods.size() != size()) {
    throw std::invalid_argument("reweight: wrong number of likelihoods");
  }
  std::vector<double> updated(size());
  for (std::size_t k = 0; k < size(); ++k) {
    updated[k] = log_weights_[k] + log_likelihoods[k];
  }
  const double lse = log_sum_exp(updated);
  if (lse == kNegInf || std::isnan(lse)) throw ParticleDegeneracy();
  for (double& lw : updated) lw -= lse;
  log_weights_ = std::move(updated);
}

void JointParticleSet::reweight_self(const WorldFamily& family,
                                     std::size_t action, std::size_t outcome) {
  std::vector<double> loglik(size());
  for (std::size_t k = 0; k < size(); ++k) {
    loglik[k] = family.log_row(models_[k], action)[outcome];
  }
  reweight(loglik);
}

void JointParticleSet::reweight_expert(const WorldFamily& family,
                                       std::size_t outcome) {
  std::vector<double> loglik(size());
  for (std::size_t k = 0; k < size(); ++k) {
    const auto pk = policy(k);
    double likelihood = 0.0;
    for (std::size_t a = 0; a < num_actions_; ++a) {
      if (pk[a] == 0.0) continue;
      likelihood += pk[a] * family.row(models_[k], a)[outcome];
    }
    loglik[k] = std::log(likelihood);
  }
  reweight(loglik);
}

void JointParticleSet::resample_systematic(Rng& rng) {
  const std::size_t n = size();
  const double step = 1.0 / static_cast<double>(n);
  double position = rng.uniform() * step;
  std::vector<std::size_t> models(n);
  std::vector<double> policies(n * num_actions_);
  double cumulative = weight(0);
  std::size_t source = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (position >= cumulative && source + 1 < n) {
      ++source;
      cumulative += weight(source);
    }
    models[i] = models_[source];
    std::copy_n(policies_.begin() + source * num_actions_, num_actions_,
                policies.begin() + i * num_actions_);
    position += step;
  }
  models_ = std::move(models);
  policies_ = std::move(policies);
  std::fill(log_weights_.begin(), log_weights_.end(),
            -std::log(static_cast<double>(n)));
}

std::vector<double> sample_dirichlet(std::span<const double> alpha, Rng& rng) {
  std::vector<double> x(alpha.size());
  double total = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    x[i] = rng.gamma(alpha[i]);
    total += x[i];
  }
  if (!(total > 0.0)) {
    // Every gamma draw underflowed (tiny concentrations); put the mass on
    // one coordinate chosen in proportion to alpha.
    std::fill(x.begin(), x.end(), 0.0);
    x[rng.categorical(alpha)] = 1.0;
    return x;
  }
  for (double& v : x) v /= total;
  return x;
}

JointParticleSet init_particles(const WorldFamily& family, const Belief& prior,
                                std::size_t num_particles,
                                std::span<const double> eta0, Rng& rng) {
  if (num_particles < 1) throw std::invalid_argument("need at least one particle");
  const std::size_t num_a = family.num_actions();
  std::vector<double> alpha(eta0.begin(), eta0.end());
  if (alpha.empty()) alpha.assign(num_a, 1.0);
  if (alpha.size() != num_a) throw std::invalid_argument("eta0 has wrong length");
  for (double a : alpha) {
    if (!(a > 0.0)) throw std::invalid_argument("eta0 entries must be positive");
  }
  std::vector<std::size_t> models(num_particles);
  std::vector<double> policies(num_particles * num_a);
  for (std::size_t k = 0; k < num_particles; ++k) {
    models[k] = sample_model(prior, rng);
    const auto pk = sample_dirichlet(alpha, rng);
    std::copy(pk.begin(), pk.end(), policies.begin() + k * num_a);
  }
  std::vector<double> log_weights(num_particles,
                                  -std::log(static_cast<double>(num_particles)));
  return JointParticleSet(num_a, std::move(models), std::move(policies),
                          std::move(log_weights));
}

JointParticleSet init_particles(const WorldFamily& family,
                                std::size_t num_particles,
                                std::span<const double> eta0, Rng& rng) {
  return init_particles(family, uniform_prior(family), num_particles, eta0, rng);
}

}  // namespace expertbandit
