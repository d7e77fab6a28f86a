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

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "expertbandit/errors.h"
#include "expertbandit/information.h"
#include "fixtures.h"
#include "oracles.h"

using namespace expertbandit;

namespace {

const OutcomeAlphabet kDesk = OutcomeAlphabet::range(-50, 50);

Belief from_weights(const std::vector<double>& w, const WorldFamily& f) {
  std::vector<double> lw;
  for (double x : w) lw.push_back(std::log(x));
  return Belief::from_unnormalized(lw, f.fingerprint());
}

}  // namespace

TEST_CASE("belief invariants") {
  const auto f = fixtures::two_world_dirac();
  CHECK_THROWS(Belief({0.0, 0.0}, f.fingerprint()));
  CHECK_THROWS(Belief({std::log(0.5), std::nan("")}, f.fingerprint()));
  CHECK_THROWS(Belief({}, f.fingerprint()));
  const auto b = Belief::from_unnormalized({1.0, 1.0}, f.fingerprint());
  CHECK(b.weight(0) == doctest::Approx(0.5));
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Belief::from_unnormalized({ninf, ninf}, 0), AllWorldsExcluded);
}

TEST_CASE("uniform prior") {
  const auto f4 = gen_asymmetric(4, 3, kDesk, 0.3, 1);
  const auto b = uniform_prior(f4);
  for (std::size_t m = 0; m < 4; ++m) CHECK(b.weight(m) == doctest::Approx(0.25));
  CHECK(entropy(b.weights()) == doctest::Approx(std::log(4.0)));
  const auto f500 = gen_symmetric(500, 3, OutcomeAlphabet::range(-2, 2), 1);
  CHECK(uniform_prior(f500).weight(123) == doctest::Approx(0.002));
}

TEST_CASE("self update is exact Bayes") {
  // One action; world 0 always emits 1, world 1 emits 0 or 1 evenly.
  const auto f = fixtures::make_family({{{0, 1}}, {{0.5, 0.5}}}, {0, 1}, 0);
  const auto b = update_self(uniform_prior(f), f, 0, 1);
  CHECK(b.weight(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(b.weight(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const auto b0 = update_self(uniform_prior(f), f, 0, 0);
  CHECK(b0.excluded(0));
  CHECK(b0.weight(1) == 1.0);
  CHECK_THROWS(update_self(b0, fixtures::two_world_dirac(), 0, 0));
}

TEST_CASE("impossible observations are reported") {
  const auto f = fixtures::two_world_dirac();
  const auto b = update_self(uniform_prior(f), f, 0, 1);  // keeps world 0 only
  CHECK(b.weight(0) == 1.0);
  CHECK_THROWS_AS(update_self(b, f, 0, 0), ImpossibleObservation);
}

TEST_CASE("constant likelihood leaves the belief unchanged") {
  const auto f = fixtures::make_family({{{0.3, 0.7}, {0.5, 0.5}}, {{0.9, 0.1}, {0.5, 0.5}}},
                                       {0, 1}, 0);
  const auto b = from_weights({0.2, 0.8}, f);
  const auto c = update_self(b, f, 1, 0);
  for (std::size_t m = 0; m < 2; ++m) {
    CHECK(c.log_weight(m) == doctest::Approx(b.log_weight(m)).epsilon(1e-14));
  }
}

TEST_CASE("sequential updates match batch accumulation and the oracle") {
  const auto f = gen_asymmetric(15, 4, OutcomeAlphabet::range(-3, 3), 0.5, 4);
  Rng rng(1, "pairs");
  std::vector<double> batch(f.size(), 0.0);
  Belief b = uniform_prior(f);
  std::vector<double> w(f.size(), 1.0 / f.size());
  for (int i = 0; i < 40; ++i) {
    const std::size_t a = rng.below(f.num_actions());
    const std::size_t y = sample_outcome(f.true_model(), a, rng);
    b = update_self(b, f, a, y);
    w = oracle::update_self(f, w, a, y);
    for (std::size_t m = 0; m < f.size(); ++m) batch[m] += f.log_row(m, a)[y];
  }
  const auto c = Belief::from_unnormalized(batch, f.fingerprint());
  for (std::size_t m = 0; m < f.size(); ++m) {
    CHECK(std::abs(b.log_weight(m) - c.log_weight(m)) < 1e-12);
    CHECK(b.weight(m) == doctest::Approx(w[m]).epsilon(1e-10));
  }
  CHECK(std::abs(log_sum_exp(b.log_weights())) < 1e-9);
}

TEST_CASE("expert pretraining") {
  SUBCASE("symmetric families ignore expert data") {
    const auto f = gen_symmetric(40, 6, kDesk, 3);
    Rng rng(2, "sym");
    Belief b = uniform_prior(f);
    for (int i = 0; i < 5; ++i) {
      const std::size_t a = rng.below(f.num_actions());
      b = update_self(b, f, a, sample_outcome(f.true_model(), a, rng));
    }
    std::vector<std::size_t> data;
    for (int i = 0; i < 50; ++i) data.push_back(expert_sample(f, OptimalExpert{}, rng));
    const auto c = pretrain_expert(b, f, data);
    for (std::size_t m = 0; m < f.size(); ++m) {
      CHECK(std::abs(c.weight(m) - b.weight(m)) <= 1e-12);
    }
  }
  SUBCASE("five samples from a strongly asymmetric family pin the true world") {
    const auto f = gen_strongly_asymmetric(100, 20, kDesk, kDefaultNoiseStd, 0);
    const std::size_t two = *kDesk.index_of(2);
    const std::vector<std::size_t> data(5, two);
    const auto b = pretrain_expert(uniform_prior(f), f, data);
    CHECK(b.weight(f.true_index()) > 0.99);
  }
  SUBCASE("single samples agree with the oracle and the per-world update") {
    const auto f = gen_asymmetric(10, 4, OutcomeAlphabet::range(-3, 3), 0.5, 8);
    const auto prior = uniform_prior(f);
    for (std::size_t y = 0; y < f.num_outcomes(); ++y) {
      const std::size_t one[] = {y};
      const auto b = pretrain_expert(prior, f, one);
      const std::vector<double> w(f.size(), 1.0 / f.size());
      const auto expected = oracle::update_expert(f, w, one);
      std::vector<double> per_world(f.size());
      for (std::size_t m = 0; m < f.size(); ++m) {
        per_world[m] = prior.log_weight(m) + f.log_row(m, f.optimal_action(m))[y];
      }
      const auto c = Belief::from_unnormalized(per_world, f.fingerprint());
      for (std::size_t m = 0; m < f.size(); ++m) {
        CHECK(b.weight(m) == doctest::Approx(expected[m]).epsilon(1e-12));
        CHECK(std::abs(b.log_weight(m) - c.log_weight(m)) < 1e-12);
      }
    }
  }
  SUBCASE("zero-probability data excludes worlds for good") {
    // World 0's optimal row only emits +1, world 1's only -1.
    const auto f = fixtures::make_family({{{0, 1}, {1, 0}}, {{1, 0}, {1, 0}}}, {-1, 1}, 0);
    const std::size_t plus[] = {1};
    const auto b = pretrain_expert(uniform_prior(f), f, plus);
    CHECK(b.excluded(1));
    CHECK(b.weight(0) == 1.0);
    const std::size_t both[] = {0, 1};
    CHECK_THROWS_AS(pretrain_expert(uniform_prior(f), f, both), AllWorldsExcluded);
    CHECK_THROWS(pretrain_expert(uniform_prior(f), f, std::span<const std::size_t>{}));
  }
  SUBCASE("thousands of samples do not underflow") {
    const auto f = gen_asymmetric(20, 5, kDesk, 0.3, 1);
    Rng rng(3, "long");
    std::vector<std::size_t> data;
    for (int i = 0; i < 5000; ++i) data.push_back(expert_sample(f, OptimalExpert{}, rng));
    const auto b = pretrain_expert(uniform_prior(f), f, data);
    CHECK(std::abs(log_sum_exp(b.log_weights())) < 1e-9);
    CHECK(b.weight(f.true_index()) > 0.99);
  }
}

TEST_CASE("limit update") {
  SUBCASE("symmetric families keep every world") {
    const auto f = gen_symmetric(30, 5, kDesk, 6);
    const auto prior = uniform_prior(f);
    const auto b = limit_update(prior, f, f.true_index());
    CHECK(total_variation(b, prior) < 1e-15);
  }
  SUBCASE("asymmetric families collapse onto the reference") {
    const auto f = gen_asymmetric(30, 5, kDesk, 0.3, 6);
    const auto b = limit_update(uniform_prior(f), f, f.true_index());
    CHECK(b.weight(f.true_index()) == 1.0);
    std::size_t survivors = 0;
    for (std::size_t m = 0; m < f.size(); ++m) survivors += b.excluded(m) ? 0 : 1;
    CHECK(survivors == 1);
  }
  SUBCASE("survivors keep their prior ratios") {
    // Worlds 0 and 2 share the optimal row (action 0), world 1 differs.
    const auto f = fixtures::make_family({{{0.2, 0.8}, {0.9, 0.1}},
                                          {{0.9, 0.1}, {0.3, 0.7}},
                                          {{0.2, 0.8}, {0.5, 0.5}}},
                                         {0, 1}, 0);
    const auto b = limit_update(from_weights({0.5, 0.3, 0.2}, f), f, 0);
    CHECK(b.weight(0) == doctest::Approx(0.5 / 0.7).epsilon(1e-14));
    CHECK(b.weight(1) == 0.0);
    CHECK(b.weight(2) == doctest::Approx(0.2 / 0.7).epsilon(1e-14));
  }
}

TEST_CASE("action posterior and entropy") {
  // Four worlds whose optimal actions are 0, 0, 1, 2.
  const auto f = fixtures::make_family({{{0, 1}, {1, 0}, {1, 0}},
                                        {{0, 1}, {1, 0}, {1, 0}},
                                        {{1, 0}, {0, 1}, {1, 0}},
                                        {{1, 0}, {1, 0}, {0, 1}}},
                                       {0, 1}, 0);
  const auto prior = uniform_prior(f);
  const auto pi = action_posterior(prior, f);
  CHECK(pi.probs[0] == doctest::Approx(0.5));
  CHECK(pi.probs[1] == doctest::Approx(0.25));
  CHECK(pi.probs[2] == doctest::Approx(0.25));
  CHECK(action_entropy(prior, f) == doctest::Approx(1.5 * std::numbers::ln2).epsilon(1e-14));

  const auto point = from_weights({1e-300, 1e-300, 1.0, 1e-300}, f);
  CHECK(action_posterior(point, f).probs[1] == doctest::Approx(1.0));
  // Every optimal row here is the same point mass, so the limit keeps all
  // four worlds.
  CHECK(action_entropy(limit_update(prior, f, 3), f) ==
        doctest::Approx(1.5 * std::numbers::ln2).epsilon(1e-14));

  const auto g = gen_symmetric(200, 5, kDesk, 2);
  const auto gp = action_posterior(uniform_prior(g), g);
  const std::vector<double> w(g.size(), 1.0 / g.size());
  const auto expected = oracle::action_posterior(g, w);
  double total = 0.0;
  for (std::size_t a = 0; a < g.num_actions(); ++a) {
    CHECK(gp.probs[a] == doctest::Approx(expected[a]).epsilon(1e-12));
    CHECK(std::abs(gp.probs[a] - 0.2) < 0.1);
    total += gp.probs[a];
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("sampling worlds from a belief") {
  const auto f = fixtures::make_family({{{1, 0}}, {{0, 1}}, {{0.5, 0.5}}}, {0, 1}, 0);
  const auto b = from_weights({0.2, 0.5, 0.3}, f);
  CHECK(sample_model(b, 0.0) == 0);
  CHECK(sample_model(b, 0.19) == 0);
  CHECK(sample_model(b, 0.21) == 1);
  CHECK(sample_model(b, 0.71) == 2);
  const auto c = update_self(b, f, 0, 1);  // excludes world 0
  for (double u : {0.0, 0.1, 0.5, 0.99}) CHECK(sample_model(c, u) != 0);

  Rng rng(5, "worlds");
  const int n = 60000;
  std::vector<double> counts(3, 0.0);
  for (int i = 0; i < n; ++i) counts[sample_model(b, rng)] += 1.0;
  for (std::size_t m = 0; m < 3; ++m) {
    const double p = b.weight(m);
    CHECK(std::abs(counts[m] - n * p) <= 3 * std::sqrt(n * p * (1 - p)));
  }
}

TEST_CASE("total variation") {
  const auto f = fixtures::make_family({{{1, 0}}, {{0, 1}}}, {0, 1}, 0);
  CHECK(total_variation(from_weights({0.25, 0.75}, f), from_weights({0.5, 0.5}, f)) ==
        doctest::Approx(0.25));
  CHECK(total_variation(uniform_prior(f), uniform_prior(f)) == 0.0);
}

TEST_CASE("expected posterior entropy identity for one expert sample") {
  const auto f = fixtures::three_world_adversarial();
  const auto prior = uniform_prior(f);
  const std::vector<double> w(3, 1.0 / 3.0);
  const double h0 = action_entropy(prior, f);
  const double expected_h = oracle::expected_posterior_entropy(f, w, 1);
  // Frozen from the enumeration.
  CHECK(h0 == doctest::Approx(0.6365141682948128).epsilon(1e-13));
  CHECK(expected_h == doctest::Approx(0.5266439603159364).epsilon(1e-13));

  double library_h = 0.0;
  const auto p = build_predictives(prior, f);
  for (std::size_t y = 0; y < f.num_outcomes(); ++y) {
    const std::size_t one[] = {y};
    library_h += p.expert_marginal()[y] * action_entropy(pretrain_expert(prior, f, one), f);
  }
  const double mi = mi_expert_exact(p, action_posterior(prior, f));
  CHECK(std::abs(library_h - expected_h) < 1e-9);
  CHECK(std::abs(expected_h - (h0 - mi)) < 1e-9);
  CHECK(std::abs(oracle::expected_posterior_entropy(f, w, 2) -
                 oracle::expected_posterior_entropy(f, w, 1)) > 1e-6);

  Rng rng(11, "theorem");
  const auto est = expert_data_mi(prior, f, 1, 20000, rng);
  CHECK(std::abs(est.mean - (h0 - expected_h)) <= 3 * est.std_error);
  const auto est3 = expert_data_mi(prior, f, 3, 20000, rng);
  CHECK(std::abs(est3.mean - (h0 - oracle::expected_posterior_entropy(f, w, 3))) <=
        3 * est3.std_error);
}

TEST_CASE("expert data information") {
  SUBCASE("symmetric families") {
    const auto f = gen_symmetric(50, 5, kDesk, 12);
    Rng rng(1, "mi");
    const auto est = expert_data_mi(uniform_prior(f), f, 10, 200, rng);
    CHECK(std::abs(est.mean) < 1e-12);
  }
  SUBCASE("large N reaches the prior entropy") {
    const auto f = gen_asymmetric(20, 5, kDesk, 0.3, 12);
    const auto prior = uniform_prior(f);
    Rng rng(2, "mi");
    const auto est = expert_data_mi(prior, f, 2000, 100, rng);
    CHECK(est.mean >= -3 * est.std_error);
    CHECK(est.mean > 0.95 * action_entropy(prior, f));
    for (std::size_t m = 0; m < f.size(); ++m) {
      CHECK(action_entropy(limit_update(prior, f, m), f) == 0.0);
    }
  }
  const auto g = fixtures::two_world_dirac();
  Rng rng(3);
  CHECK_THROWS(expert_data_mi(uniform_prior(g), g, 0, 10, rng));
}

TEST_CASE("belief json") {
  const auto f = fixtures::two_world_dirac();
  const auto b = update_self(uniform_prior(f), f, 0, 1);
  const auto doc = belief_to_json(b);
  CHECK(doc["log_weights"][1].is_null());
  const auto c = belief_from_json(doc, f);
  CHECK(c.excluded(1));
  CHECK(c.log_weight(0) == b.log_weight(0));
  CHECK_THROWS(belief_from_json(doc, fixtures::three_world_adversarial()));
}
