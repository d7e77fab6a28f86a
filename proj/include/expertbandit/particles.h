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

#ifndef EXPERTBANDIT_PARTICLES_H_
#define EXPERTBANDIT_PARTICLES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "expertbandit/belief.h"
#include "expertbandit/rng.h"
#include "expertbandit/worlds.h"

namespace expertbandit {

// Weighted samples over (world, expert policy). Policies are stored
// contiguously, one row of num_actions entries per particle.
class JointParticleSet {
 public:
  JointParticleSet(std::size_t num_actions, std::vector<std::size_t> models,
                   std::vector<double> policies, std::vector<double> log_weights);

  std::size_t size() const { return models_.size(); }
  std::size_t num_actions() const { return num_actions_; }
  std::size_t model(std::size_t k) const { return models_[k]; }
  std::span<const double> policy(std::size_t k) const {
    return {policies_.data() + k * num_actions_, num_actions_};
  }
  double log_weight(std::size_t k) const { return log_weights_[k]; }
  double weight(std::size_t k) const;
  std::size_t restarts() const { return restarts_; }
  void set_restarts(std::size_t n) { restarts_ = n; }

  // 1 / sum_k w_k^2.
  double effective_sample_size() const;
  // Particle-weighted mean policy.
  std::vector<double> mean_policy() const;
  // Marginal belief over worlds; worlds without particles are excluded.
  Belief theta_marginal(const WorldFamily& family) const;

  // Adds per-particle log-likelihoods and renormalizes. Throws
  // ParticleDegeneracy and leaves the set unchanged if every weight vanishes.
  void reweight(std::span<const double> log_likelihoods);
  void reweight_self(const WorldFamily& family, std::size_t action,
                     std::size_t outcome);
  // Likelihood of an expert outcome under each particle's own policy,
  // sum_a pi_k(a) p_{theta_k, a}(y).
  void reweight_expert(const WorldFamily& family, std::size_t outcome);

  // Systematic resampling to the same size with uniform weights.
  void resample_systematic(Rng& rng);

 private:
  void normalize();

  std::size_t num_actions_;
  std::vector<std::size_t> models_;
  std::vector<double> policies_;
  std::vector<double> log_weights_;
  std::size_t restarts_ = 0;
};

// Worlds drawn i.i.d. from prior, policies i.i.d. Dirichlet(eta0), uniform
// weights. An empty eta0 means all ones.
JointParticleSet init_particles(const WorldFamily& family, const Belief& prior,
                                std::size_t num_particles,
                                std::span<const double> eta0, Rng& rng);
JointParticleSet init_particles(const WorldFamily& family,
                                std::size_t num_particles,
                                std::span<const double> eta0, Rng& rng);

std::vector<double> sample_dirichlet(std::span<const double> alpha, Rng& rng);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_PARTICLES_H_
