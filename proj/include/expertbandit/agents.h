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

#ifndef EXPERTBANDIT_AGENTS_H_
#define EXPERTBANDIT_AGENTS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "expertbandit/belief.h"
#include "expertbandit/particles.h"
#include "expertbandit/rng.h"
#include "expertbandit/worlds.h"

namespace expertbandit {

struct TsSelfOnly {};
// Always learns from the expert outcome under the optimal-row likelihood.
struct TsExpertOnly {};
// Picks the source with the larger information about A*. Exact by default;
// sampled estimates with mc_samples draws when set.
struct TsInfoChoice {
  std::optional<std::size_t> mc_samples;
};
// Same decision rule as TsInfoChoice with exact estimates; the expert is
// assumed optimal whatever it really does.
struct TsNaiveTrust {};
struct TsTrustInference {
  std::size_t particles = 5000;
  // Dirichlet concentration; empty means all ones.
  std::vector<double> eta0;
  double ess_frac = 0.5;
};
using AgentKind = std::variant<TsSelfOnly, TsExpertOnly, TsInfoChoice,
                               TsNaiveTrust, TsTrustInference>;

std::string_view agent_kind_name(const AgentKind& kind);
void validate_agent(const AgentKind& kind, std::size_t num_actions);

enum class SourceChoice { kSelf, kExpert, kNone };
std::string_view source_name(SourceChoice source);

// What the environment reveals at one step. The agent's own outcome and the
// reference optimal outcome share one uniform through inverse-CDF lookup, so
// an agent playing the optimal action sees exactly the reference outcome.
struct StepEnvironment {
  double outcome_uniform = 0.0;
  std::size_t reference_outcome = 0;
  std::size_t expert_outcome = 0;
};

// Draws per-step environments for one family and expert.
class Environment {
 public:
  Environment(const WorldFamily& family, const ExpertKind& expert);
  StepEnvironment draw(Rng& rng) const;
  std::size_t own_outcome(const StepEnvironment& env, std::size_t action) const;
  const std::vector<double>& expert_policy() const { return policy_; }

 private:
  const WorldFamily* family_;
  bool optimal_expert_;
  std::vector<double> policy_;
};

struct StepRecord {
  std::size_t t = 0;
  std::size_t action = 0;
  std::size_t own_outcome = 0;
  std::size_t reference_outcome = 0;
  std::optional<std::size_t> expert_outcome;
  SourceChoice source = SourceChoice::kNone;
  double realized_regret = 0.0;
  double pseudo_regret = 0.0;
  std::optional<double> mi_self;
  std::optional<double> mi_expert;
  double action_entropy = 0.0;
};

struct ThompsonResult {
  std::size_t action;
  std::size_t outcome;
  Belief belief;
};

// Samples a world from the belief and returns its optimal action.
std::size_t thompson_action(const Belief& belief, const WorldFamily& family,
                            Rng& rng);
// One plain Thompson step; the outcome comes from the true world via rng.
ThompsonResult ts_step(const Belief& belief, const WorldFamily& family,
                       Rng& rng);

// One step of the information-choice agent. The agent always acts by
// Thompson sampling and collects its own reward; the chosen source decides
// which observation enters the belief.
std::pair<StepRecord, Belief> info_choice_step(
    const Belief& belief, const WorldFamily& family, const Environment& env,
    const StepEnvironment& draw, std::optional<std::size_t> mc_samples,
    Rng& rng);
std::pair<StepRecord, Belief> naive_trust_step(const Belief& belief,
                                               const WorldFamily& family,
                                               const Environment& env,
                                               const StepEnvironment& draw,
                                               Rng& rng);
std::pair<StepRecord, JointParticleSet> trust_inference_step(
    JointParticleSet particles, const WorldFamily& family,
    const Environment& env, const StepEnvironment& draw,
    const TsTrustInference& settings, Rng& rng);

// Stateful wrapper used by the experiment runner.
class Agent {
 public:
  virtual ~Agent() = default;
  // t is 1-based. The first draw from rng is the Thompson draw for every
  // agent, which keeps action choices coupled across agents.
  virtual StepRecord step(std::size_t t, const StepEnvironment& draw,
                          Rng& rng) = 0;
  virtual std::size_t particle_restarts() const { return 0; }
};

// prior is the (possibly pretrained) starting belief; particle agents sample
// their worlds from it. With diagnostics set, agents that do not need the
// information estimates still compute the exact ones for the trace.
std::unique_ptr<Agent> make_agent(const AgentKind& kind,
                                  const WorldFamily& family,
                                  const Environment& env, Belief prior,
                                  bool diagnostics, Rng& init_rng);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_AGENTS_H_
