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

#include "expertbandit/information.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace expertbandit {
namespace {

// Running mean and variance.
struct Welford {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double std_error() const {
    if (n < 2) return 0.0;
    const double dn = static_cast<double>(n);
    return std::sqrt(m2 / (dn - 1.0) / dn);
  }
};

// sum_{a'} P(A*=a' | y) ln(P(y | A*=a') / P(y)) for one observed y, given the
// joint column joint(a', y) and the marginal P(y).
template <typename JointFn>
double pointwise_information(std::size_t num_actions, const ActionPosterior& pi,
                             JointFn joint, double marginal) {
  if (!(marginal > 0.0)) return 0.0;
  double total = 0.0;
  for (std::size_t a_star = 0; a_star < num_actions; ++a_star) {
    const double p_star = pi.probs[a_star];
    const double j = joint(a_star);
    if (p_star <= 0.0 || j <= 0.0) continue;
    total += (j / marginal) * std::log((j / p_star) / marginal);
  }
  return total;
}

}  // namespace

Predictives::Predictives(std::size_t num_actions, std::size_t num_outcomes)
    : num_actions_(num_actions),
      num_outcomes_(num_outcomes),
      self_marginal_(num_actions * num_outcomes, 0.0),
      self_joint_(num_actions * num_actions * num_outcomes, 0.0),
      expert_marginal_(num_outcomes, 0.0),
      expert_joint_(num_actions * num_outcomes, 0.0) {}

Predictives build_predictives(const Belief& belief, const WorldFamily& family) {
  if (belief.size() != family.size()) {
    throw std::invalid_argument("build_predictives: belief/family mismatch");
  }
  const std::size_t num_a = family.num_actions();
  const std::size_t num_y = family.num_outcomes();
  Predictives p(num_a, num_y);
  for (std::size_t m = 0; m < family.size(); ++m) {
    if (belief.excluded(m)) continue;
    const double w = belief.weight(m);
    if (w == 0.0) continue;
    const std::size_t a_star = family.optimal_action(m);
    for (std::size_t a = 0; a < num_a; ++a) {
      const auto row = family.row(m, a);
      double* joint = p.self_joint_.data() + (a * num_a + a_star) * num_y;
      for (std::size_t y = 0; y < num_y; ++y) joint[y] += w * row[y];
    }
    const auto row = family.row(m, a_star);
    double* expert = p.expert_joint_.data() + a_star * num_y;
    for (std::size_t y = 0; y < num_y; ++y) expert[y] += w * row[y];
  }
  for (std::size_t a = 0; a < num_a; ++a) {
    double* marginal = p.self_marginal_.data() + a * num_y;
    for (std::size_t a_star = 0; a_star < num_a; ++a_star) {
      const double* joint = p.self_joint_.data() + (a * num_a + a_star) * num_y;
      for (std::size_t y = 0; y < num_y; ++y) marginal[y] += joint[y];
    }
  }
  for (std::size_t a_star = 0; a_star < num_a; ++a_star) {
    const double* joint = p.expert_joint_.data() + a_star * num_y;
    for (std::size_t y = 0; y < num_y; ++y) p.expert_marginal_[y] += joint[y];
  }
  return p;
}

double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double p_scale, double q_scale) {
  if (p.size() != q.size()) throw std::invalid_argument("kl: size mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    const double pi = p[i] / p_scale;
    kl += pi * std::log(pi / (q[i] / q_scale));
  }
  return kl;
}

double mi_self_exact(const Predictives& p, const ActionPosterior& pi) {
  const std::size_t num_a = p.num_actions();
  double mi = 0.0;
  for (std::size_t a = 0; a < num_a; ++a) {
    if (pi.probs[a] <= 0.0) continue;
    double inner = 0.0;
    for (std::size_t a_star = 0; a_star < num_a; ++a_star) {
      const double p_star = pi.probs[a_star];
      if (p_star <= 0.0) continue;
      inner += p_star *
               kl_divergence(p.self_joint(a, a_star), p.self_marginal(a), p_star);
    }
    mi += pi.probs[a] * inner;
  }
  return mi;
}

double mi_expert_exact(const Predictives& p, const ActionPosterior& pi) {
  double mi = 0.0;
  for (std::size_t a_star = 0; a_star < p.num_actions(); ++a_star) {
    const double p_star = pi.probs[a_star];
    if (p_star <= 0.0) continue;
    mi += p_star *
          kl_divergence(p.expert_joint(a_star), p.expert_marginal(), p_star);
  }
  return mi;
}

double mi_expert_trusted(const Predictives& p, const ActionPosterior& pi,
                         std::span<const double> mean_policy) {
  const std::size_t num_a = p.num_actions();
  const std::size_t num_y = p.num_outcomes();
  if (mean_policy.size() != num_a) {
    throw std::invalid_argument("mi_expert_trusted: policy has wrong length");
  }
  std::vector<double> marginal(num_y, 0.0);
  for (std::size_t a = 0; a < num_a; ++a) {
    if (mean_policy[a] == 0.0) continue;
    const auto row = p.self_marginal(a);
    for (std::size_t y = 0; y < num_y; ++y) marginal[y] += mean_policy[a] * row[y];
  }
  std::vector<double> joint(num_y);
  double mi = 0.0;
  for (std::size_t a_star = 0; a_star < num_a; ++a_star) {
    const double p_star = pi.probs[a_star];
    if (p_star <= 0.0) continue;
    std::fill(joint.begin(), joint.end(), 0.0);
    for (std::size_t a = 0; a < num_a; ++a) {
      if (mean_policy[a] == 0.0) continue;
      const auto row = p.self_joint(a, a_star);
      for (std::size_t y = 0; y < num_y; ++y) joint[y] += mean_policy[a] * row[y];
    }
    mi += p_star * kl_divergence(joint, marginal, p_star);
  }
  return mi;
}

double mi_expert_trusted(const Belief& belief, const WorldFamily& family,
                         std::span<const double> mean_policy) {
  return mi_expert_trusted(build_predictives(belief, family),
                           action_posterior(belief, family), mean_policy);
}

MiPairEstimate mi_pair_mc(const Predictives& p, const ActionPosterior& pi,
                          std::size_t num_draws, Rng& rng) {
  if (num_draws < 1) throw std::invalid_argument("mi_pair_mc: need L >= 1");
  const std::size_t num_a = p.num_actions();
  Welford expert_terms;
  Welford self_terms;
  for (std::size_t l = 0; l < num_draws; ++l) {
    const std::size_t y_e = rng.categorical(p.expert_marginal());
    const double i_e = pointwise_information(
        num_a, pi, [&](std::size_t a_star) { return p.expert_joint(a_star)[y_e]; },
        p.expert_marginal()[y_e]);

    double i_s = 0.0;
    for (std::size_t a = 0; a < num_a; ++a) {
      const std::size_t y_a = rng.categorical(p.self_marginal(a));
      if (pi.probs[a] <= 0.0) continue;
      i_s += pi.probs[a] *
             pointwise_information(
                 num_a, pi,
                 [&](std::size_t a_star) { return p.self_joint(a, a_star)[y_a]; },
                 p.self_marginal(a)[y_a]);
    }
    expert_terms.add(i_e);
    self_terms.add(i_s);
  }
  return {expert_terms.mean, self_terms.mean, expert_terms.std_error(),
          self_terms.std_error()};
}

MiPairEstimate mi_pair_mc(const Belief& belief, const WorldFamily& family,
                          std::size_t num_draws, Rng& rng) {
  return mi_pair_mc(build_predictives(belief, family),
                    action_posterior(belief, family), num_draws, rng);
}

double expected_regret(const Belief& belief, const WorldFamily& family,
                       const ActionPosterior& pi) {
  const std::size_t num_a = family.num_actions();
  std::vector<double> belief_mean(num_a, 0.0);
  double optimal_value = 0.0;
  for (std::size_t m = 0; m < family.size(); ++m) {
    if (belief.excluded(m)) continue;
    const double w = belief.weight(m);
    optimal_value += w * family.mean(m, family.optimal_action(m));
    for (std::size_t a = 0; a < num_a; ++a) belief_mean[a] += w * family.mean(m, a);
  }
  double played_value = 0.0;
  for (std::size_t a = 0; a < num_a; ++a) played_value += pi.probs[a] * belief_mean[a];
  return optimal_value - played_value;
}

std::optional<double> information_ratio(const Belief& belief,
                                        const WorldFamily& family,
                                        const Predictives& p,
                                        const ActionPosterior& pi) {
  const double gain = mi_self_exact(p, pi);
  if (!(gain > 0.0)) return std::nullopt;
  const double regret = expected_regret(belief, family, pi);
  return regret * regret / gain;
}

}  // namespace expertbandit
