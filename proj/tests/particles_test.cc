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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "expertbandit/errors.h"
#include "fixtures.h"
#include "oracles.h"

using namespace expertbandit;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

JointParticleSet two_particles() {
  return JointParticleSet(2, {0, 1}, {0.3, 0.7, 1.0, 0.0},
                          {std::log(0.25), std::log(0.75)});
}

}  // namespace

TEST_CASE("construction checks") {
  CHECK_THROWS(JointParticleSet(2, {}, {}, {}));
  CHECK_THROWS(JointParticleSet(2, {0}, {0.5}, {0.0}));
  CHECK_THROWS(JointParticleSet(2, {0}, {0.5, 0.6}, {0.0}));
  CHECK_THROWS(JointParticleSet(2, {0}, {-0.1, 1.1}, {0.0}));
  CHECK_THROWS_AS(JointParticleSet(2, {0}, {0.5, 0.5}, {kNegInf}), ParticleDegeneracy);
  // Log weights are normalized on construction.
  const JointParticleSet s(2, {0, 0}, {0.5, 0.5, 0.5, 0.5}, {0.0, 0.0});
  CHECK(s.weight(0) == doctest::Approx(0.5));
}

TEST_CASE("weights, ESS and mean policy") {
  const auto s = two_particles();
  CHECK(s.weight(0) + s.weight(1) == doctest::Approx(1.0));
  CHECK(s.effective_sample_size() == doctest::Approx(1.0 / (0.0625 + 0.5625)));
  const auto mean = s.mean_policy();
  CHECK(mean[0] == doctest::Approx(0.25 * 0.3 + 0.75));
  CHECK(mean[1] == doctest::Approx(0.25 * 0.7));
}

TEST_CASE("theta marginal") {
  const auto f = fixtures::three_world_adversarial();
  const JointParticleSet s(2, {0, 2, 0}, {0.5, 0.5, 0.5, 0.5, 1.0, 0.0},
                           {std::log(0.2), std::log(0.5), std::log(0.3)});
  const auto b = s.theta_marginal(f);
  CHECK(b.weight(0) == doctest::Approx(0.5));
  CHECK(b.excluded(1));
  CHECK(b.weight(2) == doctest::Approx(0.5));
  CHECK(b.family_id() == f.fingerprint());
}

TEST_CASE("reweighting matches the exact recursion") {
  const auto f = fixtures::three_world_adversarial();
  const std::vector<double> policy{0.6, 0.4};
  // One particle per world, all sharing the known policy.
  JointParticleSet s(2, {0, 1, 2}, {0.6, 0.4, 0.6, 0.4, 0.6, 0.4},
                     {0.0, 0.0, 0.0});
  std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  s.reweight_self(f, 1, 2);
  w = oracle::update_self(f, w, 1, 2);
  s.reweight_expert(f, 0);
  w = oracle::update_policy(f, w, policy, 0);
  s.reweight_expert(f, 1);
  w = oracle::update_policy(f, w, policy, 1);
  const auto b = s.theta_marginal(f);
  for (std::size_t m = 0; m < 3; ++m) CHECK(b.weight(m) == doctest::Approx(w[m]).epsilon(1e-12));
}

TEST_CASE("constant likelihood leaves weights unchanged") {
  auto s = two_particles();
  s.reweight(std::vector<double>{-3.0, -3.0});
  CHECK(s.weight(0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s.weight(1) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK_THROWS(s.reweight(std::vector<double>{0.0}));
}

TEST_CASE("degeneracy leaves the set unchanged") {
  auto s = two_particles();
  CHECK_THROWS_AS(s.reweight(std::vector<double>{kNegInf, kNegInf}), ParticleDegeneracy);
  CHECK(s.weight(0) == doctest::Approx(0.25));
  CHECK(s.model(1) == 1);
  // A particle whose policy cannot produce the outcome is dropped alone.
  const auto f = fixtures::two_world_dirac();
  JointParticleSet d(2, {0, 0}, {1.0, 0.0, 0.0, 1.0}, {0.0, 0.0});
  d.reweight_expert(f, 1);  // world 0, action 0 emits +1
  CHECK(d.weight(0) == doctest::Approx(1.0));
  CHECK(d.weight(1) == 0.0);
  CHECK_THROWS_AS(d.reweight_expert(f, 0), ParticleDegeneracy);
  CHECK(d.weight(0) == doctest::Approx(1.0));
}

TEST_CASE("systematic resampling") {
  auto s = two_particles();
  Rng rng(1, "resample");
  JointParticleSet big(2, std::vector<std::size_t>(1000, 0), std::vector<double>(2000, 0.5),
                       std::vector<double>(1000, 0.0));
  std::vector<double> loglik(1000);
  for (std::size_t k = 0; k < 1000; ++k) loglik[k] = k < 100 ? 0.0 : kNegInf;
  big.reweight(loglik);
  CHECK(big.effective_sample_size() == doctest::Approx(100.0));
  big.resample_systematic(rng);
  CHECK(big.size() == 1000);
  CHECK(big.effective_sample_size() == doctest::Approx(1000.0));

  // Each particle keeps floor or ceil of K times its weight copies.
  s.resample_systematic(rng);
  const std::vector<double> w{0.125, 0.375, 0.125, 0.375};
  for (int rep = 0; rep < 20; ++rep) {
    JointParticleSet t(2, std::vector<std::size_t>{0, 1, 2, 3},
                       {0.3, 0.7, 1.0, 0.0, 0.3, 0.7, 1.0, 0.0},
                       {std::log(w[0]), std::log(w[1]), std::log(w[2]), std::log(w[3])});
    t.resample_systematic(rng);
    std::vector<double> copies(4, 0.0);
    for (std::size_t k = 0; k < t.size(); ++k) {
      copies[t.model(k)] += 1.0;
      CHECK(t.policy(k)[0] == (t.model(k) % 2 == 1 ? 1.0 : 0.3));
      CHECK(t.weight(k) == doctest::Approx(0.25));
    }
    for (std::size_t m = 0; m < 4; ++m) {
      CHECK(copies[m] >= std::floor(4 * w[m]));
      CHECK(copies[m] <= std::ceil(4 * w[m]));
    }
  }
}

TEST_CASE("initialization") {
  const auto f = gen_asymmetric(5, 3, OutcomeAlphabet::range(-2, 2), 0.4, 1);
  Rng rng(2, "agent-init");
  const std::size_t K = 20000;
  const std::vector<double> eta{1.0, 2.0, 3.0};
  const auto s = init_particles(f, K, eta, rng);
  CHECK(s.size() == K);
  CHECK(s.effective_sample_size() == doctest::Approx(double(K)));
  std::vector<double> counts(5, 0.0), mean(3, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    counts[s.model(k)] += 1.0;
    for (std::size_t a = 0; a < 3; ++a) mean[a] += s.policy(k)[a] / K;
  }
  for (double c : counts) CHECK(std::abs(c / K - 0.2) < 4 * std::sqrt(0.2 * 0.8 / K));
  // Dirichlet mean eta / sum(eta); coordinate variance is below 1/(4 * 7).
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(std::abs(mean[a] - eta[a] / 6.0) < 4 * std::sqrt(0.25 / 7 / K));
  }
  CHECK(s.mean_policy()[2] == doctest::Approx(mean[2]));

  // A pretrained prior seeds the world marginal.
  const auto prior = limit_update(uniform_prior(f), f, 2);
  const auto t = init_particles(f, prior, 50, {}, rng);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(prior.weight(t.model(k)) > 0.0);
  }

  CHECK_THROWS(init_particles(f, 0, eta, rng));
  CHECK_THROWS(init_particles(f, 5, std::vector<double>{1.0}, rng));
  CHECK_THROWS(init_particles(f, 5, std::vector<double>{1.0, 0.0, 1.0}, rng));
}

TEST_CASE("dirichlet samples") {
  Rng rng(3, "dirichlet");
  for (int i = 0; i < 100; ++i) {
    const auto x = sample_dirichlet(std::vector<double>{0.5, 1.0, 4.0}, rng);
    double total = 0.0;
    for (double v : x) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(total == doctest::Approx(1.0));
  }
  // Tiny concentrations still return a valid point of the simplex.
  const auto x = sample_dirichlet(std::vector<double>{1e-300, 1e-300}, rng);
  CHECK(x[0] + x[1] == doctest::Approx(1.0));
}
