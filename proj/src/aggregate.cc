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

#include "expertbandit/aggregate.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace expertbandit {
namespace {

using GroupKey = std::pair<std::string, std::optional<std::size_t>>;

struct Group {
  GroupKey key;
  std::vector<const RunTrace*> traces;
};

}  // namespace

std::vector<double> cumulative_regret(const RunTrace& trace) {
  std::vector<double> out(trace.steps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    total += trace.steps[i].realized_regret;
    out[i] = total;
  }
  return out;
}

std::vector<double> cumulative_pseudo_regret(const RunTrace& trace) {
  std::vector<double> out(trace.steps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    total += trace.steps[i].pseudo_regret;
    out[i] = total;
  }
  return out;
}

std::vector<double> expert_fraction(const RunTrace& trace) {
  std::vector<double> out(trace.steps.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (trace.steps[i].source == SourceChoice::kExpert) ++count;
    out[i] = static_cast<double>(count) / static_cast<double>(i + 1);
  }
  return out;
}

std::vector<std::size_t> decimation_grid(std::size_t horizon) {
  std::vector<std::size_t> grid;
  for (std::size_t decade = 1; decade <= horizon; decade *= 10) {
    for (std::size_t m : {1, 2, 5}) {
      if (decade * m <= horizon) grid.push_back(decade * m);
    }
  }
  for (std::size_t t : {std::size_t{500}, std::size_t{2000}, horizon}) {
    if (t >= 1 && t <= horizon) grid.push_back(t);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::optional<double> improvement_pct(double agent, double baseline) {
  if (baseline == 0.0) return std::nullopt;
  return 100.0 * (agent - baseline) / std::abs(baseline);
}

std::vector<SummaryRow> aggregate(std::span<const RunTrace> traces,
                                  std::span<const Comparison> comparisons) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  std::vector<Group> groups;
  for (const auto& trace : traces) {
    GroupKey key{trace.agent, trace.pretrain_n};
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.key == key; });
    if (it == groups.end()) {
      groups.push_back({key, {}});
      it = groups.end() - 1;
    }
    it->traces.push_back(&trace);
  }

  std::map<GroupKey, std::vector<SummaryRow>> by_key;
  std::vector<SummaryRow> rows;
  for (auto& group : groups) {
    std::sort(group.traces.begin(), group.traces.end(),
              [](const RunTrace* a, const RunTrace* b) { return a->seed < b->seed; });
    std::size_t horizon = group.traces.front()->steps.size();
    for (const auto* trace : group.traces) {
      horizon = std::min(horizon, trace->steps.size());
    }
    const double n = static_cast<double>(group.traces.size());
    std::vector<std::vector<double>> regret, pseudo, fraction;
    for (const auto* trace : group.traces) {
      regret.push_back(cumulative_regret(*trace));
      pseudo.push_back(cumulative_pseudo_regret(*trace));
      fraction.push_back(expert_fraction(*trace));
    }
    std::vector<SummaryRow> group_rows;
    for (std::size_t t : decimation_grid(horizon)) {
      SummaryRow row;
      row.agent = group.key.first;
      row.pretrain_n = group.key.second;
      row.t = t;
      row.seeds = group.traces.size();
      double rate_sum = 0.0, cum_sum = 0.0, pseudo_sum = 0.0, frac_sum = 0.0,
             entropy_sum = 0.0;
      std::vector<double> rates;
      for (std::size_t s = 0; s < group.traces.size(); ++s) {
        const double rate = regret[s][t - 1] / static_cast<double>(t);
        rates.push_back(rate);
        rate_sum += rate;
        cum_sum += regret[s][t - 1];
        pseudo_sum += pseudo[s][t - 1];
        frac_sum += fraction[s][t - 1];
        entropy_sum += group.traces[s]->steps[t - 1].action_entropy;
      }
      row.regret_rate_mean = rate_sum / n;
      if (group.traces.size() > 1) {
        double ss = 0.0;
        for (double r : rates) ss += (r - row.regret_rate_mean) * (r - row.regret_rate_mean);
        row.regret_rate_se = std::sqrt(ss / (n - 1.0) / n);
      }
      row.regret_cum_mean = cum_sum / n;
      row.pseudo_regret_cum_mean = pseudo_sum / n;
      row.expert_fraction = frac_sum / n;
      row.entropy_mean = entropy_sum / n;
      group_rows.push_back(row);
    }
    by_key[group.key] = group_rows;
  }

  for (const auto& group : groups) {
    auto& group_rows = by_key[group.key];
    // The first comparison that names this group wins.
    for (const auto& c : comparisons) {
      if (c.agent != group.key.first) continue;
      if (c.pretrain_n && c.pretrain_n != group.key.second) continue;
      const GroupKey base_key{
          c.baseline, c.baseline_pretrain_n ? c.baseline_pretrain_n : group.key.second};
      const auto base = by_key.find(base_key);
      if (base == by_key.end()) continue;
      for (auto& row : group_rows) {
        row.baseline = c.baseline;
        if (base_key.second) row.baseline += "@" + std::to_string(*base_key.second);
        const auto match = std::find_if(
            base->second.begin(), base->second.end(),
            [&](const SummaryRow& b) { return b.t == row.t; });
        if (match != base->second.end()) {
          row.improvement_pct =
              improvement_pct(row.regret_cum_mean, match->regret_cum_mean);
        }
      }
      break;
    }
    rows.insert(rows.end(), group_rows.begin(), group_rows.end());
  }
  return rows;
}

}  // namespace expertbandit
