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

#include "expertbandit/agents.h"

#include <stdexcept>

#include "expertbandit/errors.h"
#include "expertbandit/information.h"

namespace expertbandit {
namespace {

StepRecord make_record(std::size_t t, const WorldFamily& family,
                       const StepEnvironment& draw, std::size_t action,
                       std::size_t own_outcome, SourceChoice source) {
  StepRecord record;
  record.t = t;
  record.action = action;
  record.own_outcome = own_outcome;
  record.reference_outcome = draw.reference_outcome;
  if (source != SourceChoice::kNone) record.expert_outcome = draw.expert_outcome;
  record.source = source;
  const auto& alphabet = family.alphabet();
  record.realized_regret =
      alphabet.reward(draw.reference_outcome) - alphabet.reward(own_outcome);
  const std::size_t truth = family.true_index();
  record.pseudo_regret = family.mean(truth, family.true_optimal_action()) -
                         family.mean(truth, action);
  return record;
}

SourceChoice choose_source(double mi_expert, double mi_self) {
  return mi_expert > mi_self + kSourceTieTolerance ? SourceChoice::kExpert
                                                   : SourceChoice::kSelf;
}

void fill_exact_information(const Belief& belief, const WorldFamily& family,
                            StepRecord& record) {
  const auto p = build_predictives(belief, family);
  const auto pi = action_posterior(belief, family);
  record.mi_self = mi_self_exact(p, pi);
  record.mi_expert = mi_expert_exact(p, pi);
}

Belief update_expert(const Belief& belief, const WorldFamily& family,
                     std::size_t outcome) {
  const std::size_t data[] = {outcome};
  return pretrain_expert(belief, family, data);
}

class SelfOnlyAgent : public Agent {
 public:
  SelfOnlyAgent(const WorldFamily& family, const Environment& env, Belief prior,
                bool diagnostics)
      : family_(family), env_(env), belief_(std::move(prior)),
        diagnostics_(diagnostics) {}

  StepRecord step(std::size_t t, const StepEnvironment& draw, Rng& rng) override {
    const std::size_t action = thompson_action(belief_, family_, rng);
    const std::size_t own = env_.own_outcome(draw, action);
    StepRecord record = make_record(t, family_, draw, action, own, SourceChoice::kNone);
    if (diagnostics_) fill_exact_information(belief_, family_, record);
    belief_ = update_self(belief_, family_, action, own);
    record.action_entropy = action_entropy(belief_, family_);
    return record;
  }

 private:
  const WorldFamily& family_;
  const Environment& env_;
  Belief belief_;
  bool diagnostics_;
};

class ExpertOnlyAgent : public Agent {
 public:
  ExpertOnlyAgent(const WorldFamily& family, const Environment& env,
                  Belief prior, bool diagnostics)
      : family_(family), env_(env), belief_(std::move(prior)),
        diagnostics_(diagnostics) {}

  StepRecord step(std::size_t t, const StepEnvironment& draw, Rng& rng) override {
    const std::size_t action = thompson_action(belief_, family_, rng);
    const std::size_t own = env_.own_outcome(draw, action);
    StepRecord record =
        make_record(t, family_, draw, action, own, SourceChoice::kExpert);
    if (diagnostics_) fill_exact_information(belief_, family_, record);
    belief_ = update_expert(belief_, family_, draw.expert_outcome);
    record.action_entropy = action_entropy(belief_, family_);
    return record;
  }

 private:
  const WorldFamily& family_;
  const Environment& env_;
  Belief belief_;
  bool diagnostics_;
};

class InfoChoiceAgent : public Agent {
 public:
  InfoChoiceAgent(const WorldFamily& family, const Environment& env,
                  Belief prior, std::optional<std::size_t> mc_samples)
      : family_(family), env_(env), belief_(std::move(prior)),
        mc_samples_(mc_samples) {}

  StepRecord step(std::size_t t, const StepEnvironment& draw, Rng& rng) override {
    auto [record, next] =
        info_choice_step(belief_, family_, env_, draw, mc_samples_, rng);
    record.t = t;
    belief_ = std::move(next);
    return record;
  }

 private:
  const WorldFamily& family_;
  const Environment& env_;
  Belief belief_;
  std::optional<std::size_t> mc_samples_;
};

class TrustInferenceAgent : public Agent {
 public:
  TrustInferenceAgent(const WorldFamily& family, const Environment& env,
                      JointParticleSet particles, TsTrustInference settings)
      : family_(family), env_(env), particles_(std::move(particles)),
        settings_(std::move(settings)) {}

  StepRecord step(std::size_t t, const StepEnvironment& draw, Rng& rng) override {
    auto [record, next] = trust_inference_step(std::move(particles_), family_,
                                               env_, draw, settings_, rng);
    record.t = t;
    particles_ = std::move(next);
    return record;
  }

  std::size_t particle_restarts() const override { return particles_.restarts(); }

 private:
  const WorldFamily& family_;
  const Environment& env_;
  JointParticleSet particles_;
  TsTrustInference settings_;
};

}  // namespace

std::string_view agent_kind_name(const AgentKind& kind) {
  switch (kind.index()) {
    case 0:
      return "TS_SelfOnly";
    case 1:
      return "TS_ExpertOnly";
    case 2:
      return "TS_InfoChoice";
    case 3:
      return "TS_NaiveTrust";
    default:
      return "TS_TrustInference";
  }
}

void validate_agent(const AgentKind& kind, std::size_t num_actions) {
  if (const auto* info = std::get_if<TsInfoChoice>(&kind)) {
    if (info->mc_samples && *info->mc_samples < 1) {
      throw std::invalid_argument("mc_samples must be at least 1");
    }
  } else if (const auto* trust = std::get_if<TsTrustInference>(&kind)) {
    if (trust->particles < 1) throw std::invalid_argument("particles must be >= 1");
    if (!trust->eta0.empty() && trust->eta0.size() != num_actions) {
      throw std::invalid_argument("eta0 must have one entry per action");
    }
    for (double e : trust->eta0) {
      if (!(e > 0.0)) throw std::invalid_argument("eta0 entries must be > 0");
    }
    if (!(trust->ess_frac > 0.0 && trust->ess_frac <= 1.0)) {
      throw std::invalid_argument("ess_frac must lie in (0, 1]");
    }
  }
}

std::string_view source_name(SourceChoice source) {
  switch (source) {
    case SourceChoice::kSelf:
      return "self";
    case SourceChoice::kExpert:
      return "expert";
    case SourceChoice::kNone:
      return "none";
  }
  return "none";
}

Environment::Environment(const WorldFamily& family, const ExpertKind& expert)
    : family_(&family),
      optimal_expert_(std::holds_alternative<OptimalExpert>(expert)),
      policy_(::expertbandit::expert_policy(family, expert)) {
  validate_expert(expert, family.num_actions());
}

StepEnvironment Environment::draw(Rng& rng) const {
  StepEnvironment env;
  env.outcome_uniform = rng.uniform();
  env.reference_outcome = inverse_cdf(
      family_->optimal_row(family_->true_index()), env.outcome_uniform);
  if (optimal_expert_) {
    env.expert_outcome = env.reference_outcome;
  } else {
    const std::size_t action = inverse_cdf(policy_, rng.uniform());
    env.expert_outcome = inverse_cdf(family_->true_model().row(action), rng.uniform());
  }
  return env;
}

std::size_t Environment::own_outcome(const StepEnvironment& env,
                                     std::size_t action) const {
  return inverse_cdf(family_->true_model().row(action), env.outcome_uniform);
}

std::size_t thompson_action(const Belief& belief, const WorldFamily& family,
                            Rng& rng) {
  return family.optimal_action(sample_model(belief, rng));
}

ThompsonResult ts_step(const Belief& belief, const WorldFamily& family,
                       Rng& rng) {
  const std::size_t action = thompson_action(belief, family, rng);
  const std::size_t outcome = sample_outcome(family.true_model(), action, rng);
  return {action, outcome, update_self(belief, family, action, outcome)};
}

std::pair<StepRecord, Belief> info_choice_step(
    const Belief& belief, const WorldFamily& family, const Environment& env,
    const StepEnvironment& draw, std::optional<std::size_t> mc_samples,
    Rng& rng) {
  const std::size_t action = thompson_action(belief, family, rng);
  const auto p = build_predictives(belief, family);
  const auto pi = action_posterior(belief, family);
  double mi_self, mi_expert;
  if (mc_samples) {
    const auto estimate = mi_pair_mc(p, pi, *mc_samples, rng);
    mi_self = estimate.mi_self;
    mi_expert = estimate.mi_expert;
  } else {
    mi_self = mi_self_exact(p, pi);
    mi_expert = mi_expert_exact(p, pi);
  }
  const std::size_t own = env.own_outcome(draw, action);
  const SourceChoice source = choose_source(mi_expert, mi_self);
  StepRecord record = make_record(0, family, draw, action, own, source);
  record.mi_self = mi_self;
  record.mi_expert = mi_expert;
  Belief next = source == SourceChoice::kExpert
                    ? update_expert(belief, family, draw.expert_outcome)
                    : update_self(belief, family, action, own);
  record.action_entropy = action_entropy(next, family);
  return {std::move(record), std::move(next)};
}

std::pair<StepRecord, Belief> naive_trust_step(const Belief& belief,
                                               const WorldFamily& family,
                                               const Environment& env,
                                               const StepEnvironment& draw,
                                               Rng& rng) {
  return info_choice_step(belief, family, env, draw, std::nullopt, rng);
}

std::pair<StepRecord, JointParticleSet> trust_inference_step(
    JointParticleSet particles, const WorldFamily& family,
    const Environment& env, const StepEnvironment& draw,
    const TsTrustInference& settings, Rng& rng) {
  const Belief marginal = particles.theta_marginal(family);
  const std::size_t action = thompson_action(marginal, family, rng);
  const auto p = build_predictives(marginal, family);
  const auto pi = action_posterior(marginal, family);
  const double mi_self = mi_self_exact(p, pi);
  const double mi_expert = mi_expert_trusted(p, pi, particles.mean_policy());
  const std::size_t own = env.own_outcome(draw, action);
  const SourceChoice source = choose_source(mi_expert, mi_self);

  StepRecord record = make_record(0, family, draw, action, own, source);
  record.mi_self = mi_self;
  record.mi_expert = mi_expert;
  try {
    if (source == SourceChoice::kExpert) {
      particles.reweight_expert(family, draw.expert_outcome);
    } else {
      particles.reweight_self(family, action, own);
    }
  } catch (const ParticleDegeneracy&) {
    const std::size_t restarts = particles.restarts() + 1;
    particles = init_particles(family, settings.particles, settings.eta0, rng);
    particles.set_restarts(restarts);
  }
  if (particles.effective_sample_size() <
      settings.ess_frac * static_cast<double>(particles.size())) {
    particles.resample_systematic(rng);
  }
  record.action_entropy = action_entropy(particles.theta_marginal(family), family);
  return {std::move(record), std::move(particles)};
}

std::unique_ptr<Agent> make_agent(const AgentKind& kind,
                                  const WorldFamily& family,
                                  const Environment& env, Belief prior,
                                  bool diagnostics, Rng& init_rng) {
  validate_agent(kind, family.num_actions());
  return std::visit(
      [&](const auto& k) -> std::unique_ptr<Agent> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, TsSelfOnly>) {
          return std::make_unique<SelfOnlyAgent>(family, env, std::move(prior),
                                                 diagnostics);
        } else if constexpr (std::is_same_v<T, TsExpertOnly>) {
          return std::make_unique<ExpertOnlyAgent>(family, env, std::move(prior),
                                                   diagnostics);
        } else if constexpr (std::is_same_v<T, TsInfoChoice>) {
          return std::make_unique<InfoChoiceAgent>(family, env, std::move(prior),
                                                   k.mc_samples);
        } else if constexpr (std::is_same_v<T, TsNaiveTrust>) {
          return std::make_unique<InfoChoiceAgent>(family, env, std::move(prior),
                                                   std::nullopt);
        } else {
          auto particles =
              init_particles(family, prior, k.particles, k.eta0, init_rng);
          return std::make_unique<TrustInferenceAgent>(family, env,
                                                       std::move(particles), k);
        }
      },
      kind);
}

}  // namespace expertbandit
