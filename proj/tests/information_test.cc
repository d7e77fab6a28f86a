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
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"

using namespace expertbandit;

namespace {

const OutcomeAlphabet kDesk = OutcomeAlphabet::range(-50, 50);

Belief random_belief(const WorldFamily& f, Rng& rng, int steps) {
  Belief b = uniform_prior(f);
  for (int i = 0; i < steps; ++i) {
    const std::size_t a = rng.below(f.num_actions());
    b = update_self(b, f, a, sample_outcome(f.true_model(), a, rng));
  }
  return b;
}

void check_predictive_sums(const Predictives& p) {
  const std::size_t A = p.num_actions(), Y = p.num_outcomes();
  for (std::size_t a = 0; a < A; ++a) {
    double total = 0.0;
    for (std::size_t y = 0; y < Y; ++y) {
      double joint = 0.0;
      for (std::size_t s = 0; s < A; ++s) joint += p.self_joint(a, s)[y];
      CHECK(std::abs(joint - p.self_marginal(a)[y]) <= 1e-10);
      total += p.self_marginal(a)[y];
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
  double total = 0.0;
  for (std::size_t y = 0; y < Y; ++y) {
    double joint = 0.0;
    for (std::size_t s = 0; s < A; ++s) joint += p.expert_joint(s)[y];
    CHECK(std::abs(joint - p.expert_marginal()[y]) <= 1e-10);
    total += p.expert_marginal()[y];
  }
  CHECK(std::abs(total - 1.0) <= 1e-10);
}

}  // namespace

TEST_CASE("kl divergence conventions") {
  const std::vector<double> p{0.5, 0.5, 0.0}, q{0.25, 0.5, 0.25};
  CHECK(kl_divergence(p, q) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(kl_divergence(p, p) == 0.0);
  CHECK(std::isinf(kl_divergence(q, p)));
  // Scaled arguments: KL(p/2 || q) with p_scale 0.5.
  const std::vector<double> half{0.25, 0.25, 0.0};
  CHECK(kl_divergence(half, q, 0.5) == doctest::Approx(kl_divergence(p, q)));
}

TEST_CASE("predictives for a two-world instance") {
  const auto f = fixtures::make_family({{{0.2, 0.8}, {0.6, 0.4}}, {{0.7, 0.3}, {0.1, 0.9}}},
                                       {-1, 1}, 0);
  std::vector<double> lw{std::log(0.25), std::log(0.75)};
  const Belief b(lw, f.fingerprint());
  const auto p = build_predictives(b, f);
  // World 0 prefers action 0 (mean 0.6), world 1 action 1 (mean 0.8).
  CHECK(p.self_marginal(0)[0] == doctest::Approx(0.25 * 0.2 + 0.75 * 0.7).epsilon(1e-14));
  CHECK(p.self_marginal(1)[1] == doctest::Approx(0.25 * 0.4 + 0.75 * 0.9).epsilon(1e-14));
  CHECK(p.self_joint(0, 0)[1] == doctest::Approx(0.25 * 0.8).epsilon(1e-14));
  CHECK(p.self_joint(0, 1)[1] == doctest::Approx(0.75 * 0.3).epsilon(1e-14));
  CHECK(p.expert_joint(0)[1] == doctest::Approx(0.25 * 0.8).epsilon(1e-14));
  CHECK(p.expert_joint(1)[1] == doctest::Approx(0.75 * 0.9).epsilon(1e-14));
  CHECK(p.expert_marginal()[0] == doctest::Approx(0.25 * 0.2 + 0.75 * 0.1).epsilon(1e-14));
  check_predictive_sums(p);
}

TEST_CASE("point-mass beliefs carry no information") {
  const auto f = gen_asymmetric(10, 4, OutcomeAlphabet::range(-3, 3), 0.4, 2);
  const auto b = limit_update(uniform_prior(f), f, 3);
  const auto p = build_predictives(b, f);
  const auto pi = action_posterior(b, f);
  for (std::size_t a = 0; a < f.num_actions(); ++a) {
    for (std::size_t y = 0; y < f.num_outcomes(); ++y) {
      CHECK(p.self_marginal(a)[y] == f.row(3, a)[y]);
    }
  }
  CHECK(mi_self_exact(p, pi) == 0.0);
  CHECK(mi_expert_exact(p, pi) == 0.0);
  CHECK_FALSE(information_ratio(b, f, p, pi).has_value());
}

TEST_CASE("two-world point-mass instance") {
  const auto f = fixtures::two_world_dirac();
  const auto b = uniform_prior(f);
  const auto p = build_predictives(b, f);
  const auto pi = action_posterior(b, f);
  CHECK(mi_self_exact(p, pi) == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
  CHECK(mi_expert_exact(p, pi) == 0.0);
  const std::vector<double> w{0.5, 0.5};
  CHECK(oracle::mi_self(f, w) == doctest::Approx(std::numbers::ln2));
  // Both worlds' best action emits +1, so the expert says nothing.
  CHECK(oracle::mi_expert(f, w) == doctest::Approx(0.0));
  CHECK(expected_regret(b, f, pi) == doctest::Approx(1.0));
  const auto ratio = information_ratio(b, f, p, pi);
  REQUIRE(ratio.has_value());
  CHECK(*ratio == doctest::Approx(1.0 / std::numbers::ln2).epsilon(1e-14));
}

TEST_CASE("expert outcomes that identify the world") {
  // The best actions differ and emit different point masses.
  const auto f = fixtures::make_family({{{0, 0, 1}, {1, 0, 0}}, {{1, 0, 0}, {0, 1, 0}}},
                                       {-1, 0, 1}, 0);
  const auto b = uniform_prior(f);
  const auto p = build_predictives(b, f);
  const auto pi = action_posterior(b, f);
  CHECK(mi_expert_exact(p, pi) == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
}

TEST_CASE("exact estimators agree with the entropy-difference oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = gen_asymmetric(12, 4, OutcomeAlphabet::range(-3, 3), 0.6, seed);
    Rng rng(seed, "belief");
    const auto b = random_belief(f, rng, static_cast<int>(seed * 3));
    const auto p = build_predictives(b, f);
    const auto pi = action_posterior(b, f);
    const auto w = b.weights();
    check_predictive_sums(p);
    CHECK(mi_self_exact(p, pi) == doctest::Approx(oracle::mi_self(f, w)).epsilon(1e-10));
    CHECK(std::abs(mi_expert_exact(p, pi) - oracle::mi_expert(f, w)) <= 1e-10);
    const std::vector<double> policy{0.1, 0.2, 0.3, 0.4};
    CHECK(std::abs(mi_expert_trusted(p, pi, policy) - oracle::mi_trusted(f, w, policy)) <=
          1e-10);
    const double h = action_entropy(b, f);
    CHECK(mi_self_exact(p, pi) >= 0.0);
    CHECK(mi_self_exact(p, pi) <= h + 1e-12);
    CHECK(mi_expert_exact(p, pi) >= 0.0);
    CHECK(mi_expert_exact(p, pi) <= h + 1e-12);
    CHECK(expected_regret(b, f, pi) == doctest::Approx(oracle::expected_regret(f, w)));
  }
}

TEST_CASE("symmetric families") {
  const auto f = gen_symmetric(60, 6, kDesk, 4);
  Rng rng(1, "sym");
  for (int steps : {0, 3, 10}) {
    const auto b = random_belief(f, rng, steps);
    const auto p = build_predictives(b, f);
    const auto pi = action_posterior(b, f);
    CHECK(mi_expert_exact(p, pi) <= 1e-10);
    if (steps == 0) {
      const auto shared = f.optimal_row(0);
      for (std::size_t y = 0; y < f.num_outcomes(); ++y) {
        CHECK(p.expert_marginal()[y] == doctest::Approx(shared[y]).epsilon(1e-12));
      }
      const std::vector<double> uniform(f.num_actions(), 1.0 / f.num_actions());
      CHECK(std::abs(mi_expert_trusted(p, pi, uniform)) <= 1e-10);
    }
    Rng mc(2, "mc");
    const auto est = mi_pair_mc(p, pi, 2000, mc);
    CHECK(std::abs(est.mi_expert) <= 3 * est.expert_std_error + 1e-12);
  }
}

TEST_CASE("zero expert information iff the conditionals match the marginal") {
  auto max_gap = [](const Predictives& p, const ActionPosterior& pi) {
    double gap = 0.0;
    for (std::size_t s = 0; s < p.num_actions(); ++s) {
      if (pi.probs[s] <= 0.0) continue;
      for (std::size_t y = 0; y < p.num_outcomes(); ++y) {
        gap = std::max(gap, std::abs(p.expert_joint(s)[y] / pi.probs[s] -
                                     p.expert_marginal()[y]));
      }
    }
    return gap;
  };
  for (auto kind : {WorldKind::kSymmetric, WorldKind::kAsymmetric}) {
    const auto f = generate_family(kind, 30, 5, OutcomeAlphabet::range(-5, 5), 0.3, 9);
    const auto b = uniform_prior(f);
    const auto p = build_predictives(b, f);
    const auto pi = action_posterior(b, f);
    const bool zero_mi = mi_expert_exact(p, pi) <= 1e-12;
    const bool matching = max_gap(p, pi) <= 1e-10;
    CHECK(zero_mi == matching);
    CHECK(zero_mi == (kind == WorldKind::kSymmetric));
  }
}

TEST_CASE("trusted expert information") {
  const auto f = gen_asymmetric(15, 4, OutcomeAlphabet::range(-4, 4), 0.5, 3);
  Rng rng(4, "trusted");
  const auto b = random_belief(f, rng, 4);
  const auto p = build_predictives(b, f);
  const auto pi = action_posterior(b, f);
  // A point-mass policy on action a gives the a-th term of the self sum.
  for (std::size_t a = 0; a < f.num_actions(); ++a) {
    std::vector<double> policy(f.num_actions(), 0.0);
    policy[a] = 1.0;
    double term = 0.0;
    for (std::size_t s = 0; s < f.num_actions(); ++s) {
      if (pi.probs[s] <= 0.0) continue;
      term += pi.probs[s] * kl_divergence(p.self_joint(a, s), p.self_marginal(a), pi.probs[s]);
    }
    CHECK(mi_expert_trusted(p, pi, policy) == doctest::Approx(term).epsilon(1e-12));
  }
  CHECK(mi_expert_trusted(b, f, std::vector<double>(4, 0.25)) ==
        doctest::Approx(mi_expert_trusted(p, pi, std::vector<double>(4, 0.25))));
  CHECK_THROWS(mi_expert_trusted(p, pi, std::vector<double>(3, 1.0 / 3)));
}

TEST_CASE("sampled estimator") {
  const auto f = gen_asymmetric(30, 5, OutcomeAlphabet::range(-10, 10), 0.5, 5);
  Rng rng(6, "belief");
  const auto b = random_belief(f, rng, 5);
  const auto p = build_predictives(b, f);
  const auto pi = action_posterior(b, f);
  const double exact_e = mi_expert_exact(p, pi), exact_s = mi_self_exact(p, pi);

  Rng a(7, "mc"), c(7, "mc");
  const auto e1 = mi_pair_mc(p, pi, 500, a);
  const auto e2 = mi_pair_mc(b, f, 500, c);
  CHECK(e1.mi_expert == e2.mi_expert);
  CHECK(e1.mi_self == e2.mi_self);

  Rng big(8, "mc");
  const auto est = mi_pair_mc(p, pi, 20000, big);
  CHECK(std::abs(est.mi_expert - exact_e) <= 3 * est.expert_std_error);
  CHECK(std::abs(est.mi_self - exact_s) <= 3 * est.self_std_error);

  // Averages of single-draw estimates are unbiased for the expert term.
  Rng single(9, "mc");
  double sum = 0.0, sum_sq = 0.0;
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) {
    const double x = mi_pair_mc(p, pi, 1, single).mi_expert;
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum_sq / reps - mean * mean) / (reps - 1));
  CHECK(std::abs(mean - exact_e) <= 3 * se);
  CHECK_THROWS(mi_pair_mc(p, pi, 0, single));
}

TEST_CASE("information ratio is nonnegative when defined") {
  const auto f = gen_asymmetric(20, 5, OutcomeAlphabet::range(-5, 5), 0.5, 1);
  Rng rng(3, "ratio");
  for (int steps = 0; steps < 30; steps += 5) {
    const auto b = random_belief(f, rng, steps);
    const auto p = build_predictives(b, f);
    const auto pi = action_posterior(b, f);
    const auto r = information_ratio(b, f, p, pi);
    if (r) {
      CHECK(*r >= 0.0);
      const double reg = expected_regret(b, f, pi);
      CHECK(*r == doctest::Approx(reg * reg / mi_self_exact(p, pi)));
    }
  }
}
