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

#ifndef EXPERTBANDIT_CONFIG_H_
#define EXPERTBANDIT_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "expertbandit/agents.h"
#include "expertbandit/worlds.h"

namespace expertbandit {

enum class Scenario {
  kOfflinePretrain,
  kSourceSelection,
  kAdversarialOffline,
  kTrustOnline,
};

std::string_view scenario_name(Scenario scenario);
std::optional<Scenario> parse_scenario(std::string_view name);
// Scenarios whose agents start from a belief pretrained on expert data.
bool uses_pretraining(Scenario scenario);

struct WorldSpec {
  WorldKind kind = WorldKind::kSymmetric;
  std::size_t num_models = 100;
  std::size_t num_actions = 20;
  int alphabet_min = -50;
  int alphabet_max = 50;
  double noise_std = kDefaultNoiseStd;
  // Saved family document; when set the family is loaded instead of
  // generated and is the same for every seed.
  std::optional<std::filesystem::path> file;
};

struct AgentSpec {
  std::string id;
  AgentKind kind;
};

// Percent change of agent's mean cumulative regret relative to baseline.
struct Comparison {
  std::string agent;
  std::string baseline;
  std::optional<std::size_t> pretrain_n;
  std::optional<std::size_t> baseline_pretrain_n;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::kSourceSelection;
  WorldSpec world;
  // Generate one family from base_seed and reuse it for every seed.
  bool fixed_world = false;
  std::size_t horizon = 2000;
  std::size_t seeds = 20;
  std::uint64_t base_seed = 0;
  ExpertKind expert = OptimalExpert{};
  std::vector<std::size_t> pretrain_sizes;
  std::vector<AgentSpec> agents;
  // Overrides the estimator of every TS_InfoChoice agent when set.
  std::optional<std::size_t> mc_samples;
  bool diagnostics = false;
  std::vector<Comparison> comparisons;
  // 0 picks the hardware concurrency.
  std::size_t threads = 0;
  std::filesystem::path output = "out";
};

// Fills in default agents for the scenario and checks every field. Throws
// ConfigError naming the offending field.
void validate_config(ExperimentConfig& cfg);

// Strict parsing: unknown keys are errors. Relative world files resolve
// against base_dir.
ExperimentConfig config_from_json(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

// Stable hash of the canonical JSON form.
std::uint64_t config_hash(const ExperimentConfig& cfg);

std::vector<AgentSpec> default_agents(Scenario scenario);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_CONFIG_H_
