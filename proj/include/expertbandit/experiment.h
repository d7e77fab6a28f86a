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

#ifndef EXPERTBANDIT_EXPERIMENT_H_
#define EXPERTBANDIT_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expertbandit/agents.h"
#include "expertbandit/config.h"
#include "expertbandit/worlds.h"

namespace expertbandit {

struct RunTrace {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string agent;
  std::optional<std::size_t> pretrain_n;
  std::vector<StepRecord> steps;
  double wall_time = 0.0;
  std::size_t particle_restarts = 0;
};

// Seed value used for the seed_index-th run.
std::uint64_t run_seed(const ExperimentConfig& cfg, std::size_t seed_index);

// The family for one run: loaded from file, generated from base_seed when
// pinned, otherwise generated fresh from the run seed.
WorldFamily make_family(const ExperimentConfig& cfg, std::uint64_t seed);

// Expert-data pretraining draws the first n samples of one per-seed stream,
// so smaller data sets are prefixes of larger ones.
Belief pretrained_prior(const WorldFamily& family, const ExpertKind& expert,
                        std::uint64_t seed, std::size_t n);

// One agent on one seed. Every agent on a seed sees the same environment
// draws and the same per-step agent streams.
RunTrace run_single(const ExperimentConfig& cfg, const WorldFamily& family,
                    std::uint64_t seed, const AgentSpec& agent,
                    std::optional<std::size_t> pretrain_n);

// All runs of cfg, ordered by seed, then pretrain size, then agent. The
// result does not depend on the thread count.
std::vector<RunTrace> run_scenario(const ExperimentConfig& cfg);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_EXPERIMENT_H_
