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

#include "expertbandit/config.h"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>

#include "expertbandit/errors.h"

namespace expertbandit {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field + ": " + message);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      fail(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
    }
  }
}

std::size_t get_count(const json& v, const std::string& field) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    fail(field, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& v, const std::string& field) {
  if (!v.is_boolean()) fail(field, "expected true or false");
  return v.get<bool>();
}

std::vector<double> get_numbers(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

WorldSpec parse_world(const json& doc, const std::filesystem::path& base_dir) {
  check_keys(doc, "world",
             {"kind", "M", "num_actions", "alphabet", "noise_std", "file"});
  WorldSpec spec;
  if (doc.contains("file")) {
    if (doc.size() != 1) fail("world", "file excludes the other world keys");
    std::filesystem::path file = get_string(doc["file"], "world.file");
    spec.file = file.is_relative() && !base_dir.empty() ? base_dir / file : file;
    spec.kind = WorldKind::kCustom;
    return spec;
  }
  if (doc.contains("kind")) {
    const auto name = get_string(doc["kind"], "world.kind");
    const auto kind = parse_world_kind(name);
    if (!kind || *kind == WorldKind::kCustom) {
      fail("world.kind", "unknown world kind '" + name + "'");
    }
    spec.kind = *kind;
  }
  if (doc.contains("M")) spec.num_models = get_count(doc["M"], "world.M");
  if (doc.contains("num_actions")) {
    spec.num_actions = get_count(doc["num_actions"], "world.num_actions");
  }
  if (doc.contains("alphabet")) {
    const auto& a = doc["alphabet"];
    check_keys(a, "world.alphabet", {"min", "max"});
    if (!a.contains("min") || !a.contains("max")) {
      fail("world.alphabet", "needs min and max");
    }
    if (!a["min"].is_number_integer() || !a["max"].is_number_integer()) {
      fail("world.alphabet", "bounds must be integers");
    }
    spec.alphabet_min = a["min"].get<int>();
    spec.alphabet_max = a["max"].get<int>();
  }
  if (doc.contains("noise_std")) {
    spec.noise_std = get_number(doc["noise_std"], "world.noise_std");
  }
  return spec;
}

ExpertKind parse_expert(const json& doc) {
  check_keys(doc, "expert", {"kind", "eps", "policy"});
  if (!doc.contains("kind")) fail("expert.kind", "missing");
  const auto kind = get_string(doc["kind"], "expert.kind");
  auto require_only = [&](std::initializer_list<std::string_view> keys) {
    for (const auto& item : doc.items()) {
      if (item.key() == "kind") continue;
      if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
        fail("expert." + item.key(), "not used by expert kind " + kind);
      }
    }
    for (auto key : keys) {
      if (!doc.contains(key)) fail("expert." + std::string(key), "missing");
    }
  };
  if (kind == "Optimal") {
    require_only({});
    return OptimalExpert{};
  }
  if (kind == "BoundedlyRational") {
    require_only({"eps"});
    return BoundedlyRationalExpert{get_number(doc["eps"], "expert.eps")};
  }
  if (kind == "HuberAdversarial") {
    require_only({"eps"});
    return HuberAdversarialExpert{get_number(doc["eps"], "expert.eps")};
  }
  if (kind == "CustomPolicy") {
    require_only({"policy"});
    return CustomPolicyExpert{get_numbers(doc["policy"], "expert.policy")};
  }
  fail("expert.kind", "unknown expert kind '" + kind + "'");
}

json expert_to_json(const ExpertKind& expert) {
  return std::visit(
      [](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, OptimalExpert>) {
          return {{"kind", "Optimal"}};
        } else if constexpr (std::is_same_v<T, BoundedlyRationalExpert>) {
          return {{"kind", "BoundedlyRational"}, {"eps", e.eps}};
        } else if constexpr (std::is_same_v<T, HuberAdversarialExpert>) {
          return {{"kind", "HuberAdversarial"}, {"eps", e.eps}};
        } else {
          return {{"kind", "CustomPolicy"}, {"policy", e.policy}};
        }
      },
      expert);
}

AgentSpec parse_agent(const json& doc, const std::string& where) {
  check_keys(doc, where,
             {"id", "kind", "mc_samples", "particles", "eta0", "ess_frac"});
  if (!doc.contains("kind")) fail(where + ".kind", "missing");
  const auto kind = get_string(doc["kind"], where + ".kind");
  auto reject_others = [&](std::initializer_list<std::string_view> keys) {
    for (const auto& item : doc.items()) {
      if (item.key() == "kind" || item.key() == "id") continue;
      if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
        fail(where + "." + item.key(), "not used by agent kind " + kind);
      }
    }
  };
  AgentSpec spec;
  if (kind == "TS_SelfOnly") {
    reject_others({});
    spec.kind = TsSelfOnly{};
  } else if (kind == "TS_ExpertOnly") {
    reject_others({});
    spec.kind = TsExpertOnly{};
  } else if (kind == "TS_InfoChoice") {
    reject_others({"mc_samples"});
    TsInfoChoice info;
    if (doc.contains("mc_samples") && !doc["mc_samples"].is_null()) {
      info.mc_samples = get_count(doc["mc_samples"], where + ".mc_samples");
    }
    spec.kind = info;
  } else if (kind == "TS_NaiveTrust") {
    reject_others({});
    spec.kind = TsNaiveTrust{};
  } else if (kind == "TS_TrustInference") {
    reject_others({"particles", "eta0", "ess_frac"});
    TsTrustInference trust;
    if (doc.contains("particles")) {
      trust.particles = get_count(doc["particles"], where + ".particles");
    }
    if (doc.contains("eta0")) trust.eta0 = get_numbers(doc["eta0"], where + ".eta0");
    if (doc.contains("ess_frac")) {
      trust.ess_frac = get_number(doc["ess_frac"], where + ".ess_frac");
    }
    spec.kind = trust;
  } else {
    fail(where + ".kind", "unknown agent kind '" + kind + "'");
  }
  spec.id = doc.contains("id") ? get_string(doc["id"], where + ".id")
                               : std::string(agent_kind_name(spec.kind));
  return spec;
}

json agent_to_json(const AgentSpec& spec) {
  json out = {{"id", spec.id}, {"kind", std::string(agent_kind_name(spec.kind))}};
  if (const auto* info = std::get_if<TsInfoChoice>(&spec.kind)) {
    if (info->mc_samples) out["mc_samples"] = *info->mc_samples;
  } else if (const auto* trust = std::get_if<TsTrustInference>(&spec.kind)) {
    out["particles"] = trust->particles;
    out["eta0"] = trust->eta0;
    out["ess_frac"] = trust->ess_frac;
  }
  return out;
}

Comparison parse_comparison(const json& doc, const std::string& where) {
  check_keys(doc, where, {"agent", "baseline", "pretrain_n", "baseline_pretrain_n"});
  if (!doc.contains("agent") || !doc.contains("baseline")) {
    fail(where, "needs agent and baseline");
  }
  Comparison c;
  c.agent = get_string(doc["agent"], where + ".agent");
  c.baseline = get_string(doc["baseline"], where + ".baseline");
  if (doc.contains("pretrain_n")) {
    c.pretrain_n = get_count(doc["pretrain_n"], where + ".pretrain_n");
  }
  if (doc.contains("baseline_pretrain_n")) {
    c.baseline_pretrain_n =
        get_count(doc["baseline_pretrain_n"], where + ".baseline_pretrain_n");
  }
  return c;
}

}  // namespace

std::string_view scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::kOfflinePretrain:
      return "OfflinePretrain";
    case Scenario::kSourceSelection:
      return "SourceSelection";
    case Scenario::kAdversarialOffline:
      return "AdversarialOffline";
    case Scenario::kTrustOnline:
      return "TrustOnline";
  }
  return "";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (auto s : {Scenario::kOfflinePretrain, Scenario::kSourceSelection,
                 Scenario::kAdversarialOffline, Scenario::kTrustOnline}) {
    if (scenario_name(s) == name) return s;
  }
  return std::nullopt;
}

bool uses_pretraining(Scenario scenario) {
  return scenario == Scenario::kOfflinePretrain ||
         scenario == Scenario::kAdversarialOffline;
}

std::vector<AgentSpec> default_agents(Scenario scenario) {
  switch (scenario) {
    case Scenario::kOfflinePretrain:
    case Scenario::kAdversarialOffline:
      return {{"TS_SelfOnly", TsSelfOnly{}}};
    case Scenario::kSourceSelection:
      return {{"TS_SelfOnly", TsSelfOnly{}},
              {"TS_ExpertOnly", TsExpertOnly{}},
              {"TS_InfoChoice", TsInfoChoice{}}};
    case Scenario::kTrustOnline:
      return {{"TS_SelfOnly", TsSelfOnly{}},
              {"TS_NaiveTrust", TsNaiveTrust{}},
              {"TS_TrustInference", TsTrustInference{}}};
  }
  return {};
}

void validate_config(ExperimentConfig& cfg) {
  if (cfg.horizon < 1) fail("horizon", "must be at least 1");
  if (cfg.seeds < 1) fail("seeds", "must be at least 1");
  const auto& w = cfg.world;
  if (!w.file) {
    if (w.num_models < 1) fail("world.M", "must be at least 1");
    if (w.num_actions < 2) fail("world.num_actions", "must be at least 2");
    if (w.alphabet_max <= w.alphabet_min) {
      fail("world.alphabet", "max must exceed min");
    }
    if (w.kind == WorldKind::kStronglyAsymmetric &&
        w.alphabet_max - w.alphabet_min < 2) {
      fail("world.alphabet", "strongly asymmetric worlds need at least 3 outcomes");
    }
    if (!(w.noise_std > 0.0)) fail("world.noise_std", "must be positive");
  }
  if (uses_pretraining(cfg.scenario)) {
    if (cfg.pretrain_sizes.empty()) {
      fail("pretrain_sizes", "required for scenario " +
                                 std::string(scenario_name(cfg.scenario)));
    }
  } else if (!cfg.pretrain_sizes.empty()) {
    fail("pretrain_sizes", "only used by pretraining scenarios");
  }
  if (cfg.agents.empty()) cfg.agents = default_agents(cfg.scenario);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
    const auto& agent = cfg.agents[i];
    const std::string where = "agents[" + std::to_string(i) + "]";
    if (agent.id.empty()) fail(where + ".id", "must not be empty");
    if (!ids.insert(agent.id).second) {
      fail(where + ".id", "duplicate agent id '" + agent.id + "'");
    }
    if (uses_pretraining(cfg.scenario) &&
        std::holds_alternative<TsTrustInference>(agent.kind)) {
      fail(where + ".kind", "TS_TrustInference cannot start from a pretrained belief");
    }
    if (!w.file) {
      try {
        validate_agent(agent.kind, w.num_actions);
      } catch (const std::invalid_argument& e) {
        fail(where, e.what());
      }
    }
  }
  if (cfg.mc_samples && *cfg.mc_samples < 1) fail("mc_samples", "must be at least 1");
  if (!w.file) {
    try {
      validate_expert(cfg.expert, w.num_actions);
    } catch (const std::invalid_argument& e) {
      fail("expert", e.what());
    }
  }
  for (std::size_t i = 0; i < cfg.comparisons.size(); ++i) {
    const auto& c = cfg.comparisons[i];
    const std::string where = "comparisons[" + std::to_string(i) + "]";
    if (!ids.count(c.agent)) fail(where + ".agent", "unknown agent '" + c.agent + "'");
    if (!ids.count(c.baseline)) {
      fail(where + ".baseline", "unknown agent '" + c.baseline + "'");
    }
    for (const auto& n : {c.pretrain_n, c.baseline_pretrain_n}) {
      if (!n) continue;
      if (std::find(cfg.pretrain_sizes.begin(), cfg.pretrain_sizes.end(), *n) ==
          cfg.pretrain_sizes.end()) {
        fail(where, "pretrain size " + std::to_string(*n) + " is not in pretrain_sizes");
      }
    }
  }
}

ExperimentConfig config_from_json(const json& doc,
                                  const std::filesystem::path& base_dir) {
  check_keys(doc, "",
             {"scenario", "world", "fixed_world", "horizon", "seeds", "base_seed",
              "expert", "pretrain_sizes", "agents", "mc_samples", "diagnostics",
              "comparisons", "threads", "output"});
  ExperimentConfig cfg;
  if (!doc.contains("scenario")) fail("scenario", "missing");
  const auto name = get_string(doc["scenario"], "scenario");
  const auto scenario = parse_scenario(name);
  if (!scenario) fail("scenario", "unknown scenario '" + name + "'");
  cfg.scenario = *scenario;
  if (doc.contains("world")) cfg.world = parse_world(doc["world"], base_dir);
  if (doc.contains("fixed_world")) {
    cfg.fixed_world = get_bool(doc["fixed_world"], "fixed_world");
  }
  if (doc.contains("horizon")) cfg.horizon = get_count(doc["horizon"], "horizon");
  if (doc.contains("seeds")) cfg.seeds = get_count(doc["seeds"], "seeds");
  if (doc.contains("base_seed")) {
    cfg.base_seed = get_count(doc["base_seed"], "base_seed");
  }
  if (doc.contains("expert")) cfg.expert = parse_expert(doc["expert"]);
  if (doc.contains("pretrain_sizes")) {
    const auto& sizes = doc["pretrain_sizes"];
    if (!sizes.is_array()) fail("pretrain_sizes", "expected an array");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      cfg.pretrain_sizes.push_back(
          get_count(sizes[i], "pretrain_sizes[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("agents")) {
    const auto& agents = doc["agents"];
    if (!agents.is_array()) fail("agents", "expected an array");
    for (std::size_t i = 0; i < agents.size(); ++i) {
      cfg.agents.push_back(parse_agent(agents[i], "agents[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("mc_samples") && !doc["mc_samples"].is_null()) {
    cfg.mc_samples = get_count(doc["mc_samples"], "mc_samples");
  }
  if (doc.contains("diagnostics")) {
    cfg.diagnostics = get_bool(doc["diagnostics"], "diagnostics");
  }
  if (doc.contains("comparisons")) {
    const auto& list = doc["comparisons"];
    if (!list.is_array()) fail("comparisons", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      cfg.comparisons.push_back(
          parse_comparison(list[i], "comparisons[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("threads")) cfg.threads = get_count(doc["threads"], "threads");
  if (doc.contains("output")) cfg.output = get_string(doc["output"], "output");
  validate_config(cfg);
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json world;
  if (cfg.world.file) {
    world["file"] = cfg.world.file->generic_string();
  } else {
    world = {{"kind", std::string(world_kind_name(cfg.world.kind))},
             {"M", cfg.world.num_models},
             {"num_actions", cfg.world.num_actions},
             {"alphabet", {{"min", cfg.world.alphabet_min},
                           {"max", cfg.world.alphabet_max}}},
             {"noise_std", cfg.world.noise_std}};
  }
  json agents = json::array();
  for (const auto& a : cfg.agents) agents.push_back(agent_to_json(a));
  json comparisons = json::array();
  for (const auto& c : cfg.comparisons) {
    json item = {{"agent", c.agent}, {"baseline", c.baseline}};
    if (c.pretrain_n) item["pretrain_n"] = *c.pretrain_n;
    if (c.baseline_pretrain_n) item["baseline_pretrain_n"] = *c.baseline_pretrain_n;
    comparisons.push_back(item);
  }
  json out = {{"scenario", std::string(scenario_name(cfg.scenario))},
              {"world", world},
              {"fixed_world", cfg.fixed_world},
              {"horizon", cfg.horizon},
              {"seeds", cfg.seeds},
              {"base_seed", cfg.base_seed},
              {"expert", expert_to_json(cfg.expert)},
              {"pretrain_sizes", cfg.pretrain_sizes},
              {"agents", agents},
              {"diagnostics", cfg.diagnostics},
              {"comparisons", comparisons},
              {"threads", cfg.threads},
              {"output", cfg.output.generic_string()}};
  if (cfg.mc_samples) out["mc_samples"] = *cfg.mc_samples;
  return out;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(doc, path.parent_path());
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  json doc = config_to_json(cfg);
  // Execution details that cannot change the traces.
  doc.erase("threads");
  doc.erase("output");
  return hash_string(doc.dump());
}

}  // namespace expertbandit
