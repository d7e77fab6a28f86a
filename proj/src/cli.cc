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

#include "expertbandit/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "expertbandit/aggregate.h"
#include "expertbandit/belief.h"
#include "expertbandit/config.h"
#include "expertbandit/csv_output.h"
#include "expertbandit/errors.h"
#include "expertbandit/experiment.h"
#include "expertbandit/information.h"
#include "expertbandit/world_io.h"

namespace expertbandit {
namespace {

struct RunOverrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> seeds;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> mc_samples;
  bool fixed_world = false;
};

void add_run_options(CLI::App* cmd, RunOverrides& o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON)")->required();
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--seeds", o.seeds, "Number of seeds");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--mc-samples", o.mc_samples,
                  "Sampled information estimates for TS_InfoChoice agents");
  cmd->add_flag("--fixed-world", o.fixed_world, "Use one family for every seed");
}

ExperimentConfig load_with_overrides(const RunOverrides& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) cfg.base_seed = *o.seed;
  if (o.seeds) cfg.seeds = *o.seeds;
  if (o.out) cfg.output = *o.out;
  if (o.threads) cfg.threads = *o.threads;
  if (o.mc_samples) cfg.mc_samples = *o.mc_samples;
  if (o.fixed_world) cfg.fixed_world = true;
  validate_config(cfg);
  return cfg;
}

OutcomeAlphabet config_alphabet(const ExperimentConfig& cfg) {
  if (cfg.world.file) return load_family(*cfg.world.file).alphabet();
  return OutcomeAlphabet::range(cfg.world.alphabet_min, cfg.world.alphabet_max);
}

std::vector<SummaryRow> run_and_emit(const ExperimentConfig& cfg,
                                     const std::filesystem::path& dir) {
  const auto traces = run_scenario(cfg);
  const auto rows = aggregate(traces, cfg.comparisons);
  emit_csv(traces, rows, cfg.scenario, config_alphabet(cfg), dir);
  return rows;
}

int cmd_gen_worlds(const std::string& kind_name, std::size_t num_models,
                   std::size_t num_actions, int min, int max, double noise_std,
                   std::uint64_t seed, const std::string& out_path, bool compact,
                   std::ostream& out) {
  const auto kind = parse_world_kind(kind_name);
  if (!kind || *kind == WorldKind::kCustom) {
    throw ConfigError("--kind: unknown world kind '" + kind_name + "'");
  }
  if (max <= min) throw ConfigError("--max must exceed --min");
  WorldFamily family = [&] {
    try {
      return generate_family(*kind, num_models, num_actions,
                             OutcomeAlphabet::range(min, max), noise_std, seed);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  save_family(family, out_path, !compact);
  out << "wrote " << world_kind_name(family.kind()) << " family (M=" << family.size()
      << ", true_index=" << family.true_index() << ") to " << out_path << '\n';
  return kExitOk;
}

int cmd_run(const RunOverrides& o, std::ostream& out) {
  const ExperimentConfig cfg = load_with_overrides(o);
  const auto rows = run_and_emit(cfg, cfg.output);
  out << "wrote " << (cfg.output / "traces.csv").string() << " and "
      << (cfg.output / "summary.csv").string() << " (" << rows.size()
      << " summary rows)\n";
  return kExitOk;
}

int cmd_sweep(const RunOverrides& o, const std::string& param,
              const std::vector<std::string>& values, std::ostream& out) {
  const ExperimentConfig base = load_with_overrides(o);
  if (values.empty()) throw ConfigError("--values: need at least one value");
  std::ostringstream combined;
  combined << "param,value," << kSummaryHeader << '\n';
  for (const auto& text : values) {
    ExperimentConfig cfg = base;
    if (param == "eps") {
      double eps = 0.0;
      try {
        std::size_t used = 0;
        eps = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
      } catch (const std::exception&) {
        throw ConfigError("--values: '" + text + "' is not a number");
      }
      if (auto* br = std::get_if<BoundedlyRationalExpert>(&cfg.expert)) {
        br->eps = eps;
      } else if (auto* huber = std::get_if<HuberAdversarialExpert>(&cfg.expert)) {
        huber->eps = eps;
      } else {
        throw ConfigError("expert: eps sweep needs a BoundedlyRational or "
                          "HuberAdversarial expert");
      }
    } else if (param == "pretrain_n") {
      if (!uses_pretraining(cfg.scenario)) {
        throw ConfigError("scenario: pretrain_n sweep needs a pretraining scenario");
      }
      if (text.empty() ||
          !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ConfigError("--values: '" + text + "' is not a count");
      }
      cfg.pretrain_sizes = {static_cast<std::size_t>(std::stoull(text))};
      cfg.comparisons.clear();
    } else {
      throw ConfigError("--param: expected eps or pretrain_n");
    }
    validate_config(cfg);
    const auto dir = base.output / (param + "_" + text);
    const auto rows = run_and_emit(cfg, dir);
    std::ostringstream body;
    write_summary_csv(body, cfg.scenario, rows);
    std::istringstream lines(body.str());
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) combined << param << ',' << text << ',' << line << '\n';
    out << "wrote " << dir.string() << '\n';
  }
  std::filesystem::create_directories(base.output);
  const auto path = base.output / "sweep_summary.csv";
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error(path.string() + ": cannot open for writing");
  file << combined.str();
  if (!file.flush()) throw std::runtime_error(path.string() + ": write failed");
  out << "wrote " << path.string() << '\n';
  return kExitOk;
}

// Information values below this print as 0; exact symmetric cases leave
// rounding residue around 1e-16.
constexpr double kPrintZero = 1e-12;

std::string format_information(double value) {
  return format_number(std::abs(value) < kPrintZero ? 0.0 : value);
}

int cmd_describe(const std::string& family_path,
                 const std::optional<std::string>& belief_path, std::ostream& out) {
  const WorldFamily family = load_family(family_path);
  Belief belief = uniform_prior(family);
  if (belief_path) {
    std::ifstream in(*belief_path);
    if (!in) throw ConfigError(*belief_path + ": cannot open belief");
    try {
      belief = belief_from_json(nlohmann::json::parse(in), family);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(*belief_path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(*belief_path + ": " + e.what());
    }
  }
  const auto p = build_predictives(belief, family);
  const auto pi = action_posterior(belief, family);
  const auto ratio = information_ratio(belief, family, p, pi);
  out << "kind: " << world_kind_name(family.kind()) << '\n'
      << "worlds: " << family.size() << '\n'
      << "actions: " << family.num_actions() << '\n'
      << "outcomes: " << family.num_outcomes() << '\n'
      << "true_index: " << family.true_index() << '\n'
      << "true_optimal_action: " << family.true_optimal_action() << '\n'
      << "world_entropy: " << format_number(entropy(belief.weights())) << '\n'
      << "action_entropy: " << format_number(entropy(pi.probs)) << '\n'
      << "mi_self: " << format_information(mi_self_exact(p, pi)) << '\n'
      << "mi_expert: " << format_information(mi_expert_exact(p, pi)) << '\n'
      << "expected_regret: " << format_number(expected_regret(belief, family, pi))
      << '\n'
      << "information_ratio: " << (ratio ? format_number(*ratio) : "inf") << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Thompson sampling with expert data: experiments and diagnostics",
               args.empty() ? "expertbandit" : args.front()};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-worlds", "Generate and save a world family");
  std::string kind = "Symmetric";
  std::size_t num_models = 100, num_actions = 20;
  int min = -50, max = 50;
  double noise_std = kDefaultNoiseStd;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool compact = false;
  gen->add_option("--kind", kind, "Symmetric, Asymmetric or StronglyAsymmetric");
  gen->add_option("--M", num_models, "Number of worlds");
  gen->add_option("--actions", num_actions, "Number of actions");
  gen->add_option("--min", min, "Smallest outcome value");
  gen->add_option("--max", max, "Largest outcome value");
  gen->add_option("--noise-std", noise_std, "Relative noise of the distributions");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output JSON path")->required();
  gen->add_flag("--compact", compact,
                "Store generator parameters only; loading regenerates the family");

  auto* run = app.add_subcommand("run", "Run one experiment config");
  RunOverrides run_opts;
  add_run_options(run, run_opts);

  auto* sweep = app.add_subcommand("sweep", "Run a config over a parameter grid");
  RunOverrides sweep_opts;
  add_run_options(sweep, sweep_opts);
  std::string param;
  std::vector<std::string> values;
  sweep->add_option("--param", param, "eps or pretrain_n")->required();
  sweep->add_option("--values", values, "Comma-separated values")
      ->required()
      ->delimiter(',');

  auto* describe = app.add_subcommand(
      "describe", "Print exact information diagnostics for a family and belief");
  std::string family_path;
  std::optional<std::string> belief_path;
  describe->add_option("--family", family_path, "World family JSON")->required();
  describe->add_option("--belief", belief_path, "Belief JSON (default: uniform)");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(),
                                args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen_worlds(kind, num_models, num_actions, min, max, noise_std,
                            gen_seed, gen_out, compact, out);
    }
    if (run->parsed()) return cmd_run(run_opts, out);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, param, values, out);
    return cmd_describe(family_path, belief_path, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace expertbandit
