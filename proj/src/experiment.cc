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

#include "expertbandit/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "expertbandit/errors.h"
#include "expertbandit/world_io.h"

namespace expertbandit {
namespace {

struct Job {
  std::uint64_t seed;
  std::optional<std::size_t> pretrain_n;
  std::size_t agent;
};

}  // namespace

std::uint64_t run_seed(const ExperimentConfig& cfg, std::size_t seed_index) {
  return cfg.base_seed + seed_index;
}

WorldFamily make_family(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto& w = cfg.world;
  if (w.file) return load_family(*w.file);
  const std::uint64_t family_seed = cfg.fixed_world ? cfg.base_seed : seed;
  return generate_family(w.kind, w.num_models, w.num_actions,
                         OutcomeAlphabet::range(w.alphabet_min, w.alphabet_max),
                         w.noise_std, family_seed);
}

Belief pretrained_prior(const WorldFamily& family, const ExpertKind& expert,
                        std::uint64_t seed, std::size_t n) {
  const Belief prior = uniform_prior(family);
  if (n == 0) return prior;
  Rng rng(seed, "pretrain");
  std::vector<std::size_t> data(n);
  for (auto& y : data) y = expert_sample(family, expert, rng);
  return pretrain_expert(prior, family, data);
}

RunTrace run_single(const ExperimentConfig& cfg, const WorldFamily& family,
                    std::uint64_t seed, const AgentSpec& agent,
                    std::optional<std::size_t> pretrain_n) {
  const auto start = std::chrono::steady_clock::now();
  AgentKind kind = agent.kind;
  if (auto* info = std::get_if<TsInfoChoice>(&kind); info && cfg.mc_samples) {
    info->mc_samples = cfg.mc_samples;
  }
  const Environment env(family, cfg.expert);
  Rng init_rng(seed, "agent-init");
  auto instance = make_agent(kind, family, env,
                             pretrained_prior(family, cfg.expert, seed,
                                              pretrain_n.value_or(0)),
                             cfg.diagnostics, init_rng);

  RunTrace trace;
  trace.config_hash = config_hash(cfg);
  trace.seed = seed;
  trace.agent = agent.id;
  trace.pretrain_n = pretrain_n;
  trace.steps.reserve(cfg.horizon);
  for (std::size_t t = 1; t <= cfg.horizon; ++t) {
    Rng env_rng(seed, "environment", t);
    const StepEnvironment draw = env.draw(env_rng);
    Rng agent_rng(seed, "agent", t);
    trace.steps.push_back(instance->step(t, draw, agent_rng));
  }
  trace.particle_restarts = instance->particle_restarts();
  trace.wall_time = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return trace;
}

std::vector<RunTrace> run_scenario(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  validate_config(cfg);

  std::optional<WorldFamily> shared;
  if (cfg.world.file || cfg.fixed_world) shared = make_family(cfg, cfg.base_seed);
  if (shared) {
    for (const auto& agent : cfg.agents) {
      try {
        validate_agent(agent.kind, shared->num_actions());
      } catch (const std::invalid_argument& e) {
        throw ConfigError("agents: " + std::string(e.what()));
      }
    }
    try {
      validate_expert(cfg.expert, shared->num_actions());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("expert: " + std::string(e.what()));
    }
  }

  std::vector<std::optional<std::size_t>> sizes;
  if (uses_pretraining(cfg.scenario)) {
    sizes.assign(cfg.pretrain_sizes.begin(), cfg.pretrain_sizes.end());
  } else {
    sizes.push_back(std::nullopt);
  }
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < cfg.seeds; ++s) {
    for (const auto& n : sizes) {
      for (std::size_t a = 0; a < cfg.agents.size(); ++a) {
        jobs.push_back({run_seed(cfg, s), n, a});
      }
    }
  }

  std::vector<RunTrace> traces(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Job& job = jobs[i];
        if (shared) {
          traces[i] = run_single(cfg, *shared, job.seed, cfg.agents[job.agent],
                                 job.pretrain_n);
        } else {
          const WorldFamily family = make_family(cfg, job.seed);
          traces[i] = run_single(cfg, family, job.seed, cfg.agents[job.agent],
                                 job.pretrain_n);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = jobs.size();
      }
    }
  };

  std::size_t threads = cfg.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return traces;
}

}  // namespace expertbandit
