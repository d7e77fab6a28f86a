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

#ifndef EXPERTBANDIT_AGGREGATE_H_
#define EXPERTBANDIT_AGGREGATE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expertbandit/config.h"
#include "expertbandit/experiment.h"

namespace expertbandit {

// Cumulative sums along one trace; index t - 1 holds the value at step t.
std::vector<double> cumulative_regret(const RunTrace& trace);
std::vector<double> cumulative_pseudo_regret(const RunTrace& trace);
// Fraction of steps in 1..t that learned from the expert.
std::vector<double> expert_fraction(const RunTrace& trace);

// 1, 2, 5, 10, 20, 50, ... up to the horizon, plus the checkpoints 500 and
// 2000 and the horizon itself, sorted and deduplicated.
std::vector<std::size_t> decimation_grid(std::size_t horizon);

struct SummaryRow {
  std::string agent;
  std::optional<std::size_t> pretrain_n;
  std::size_t t = 0;
  std::size_t seeds = 0;
  double regret_rate_mean = 0.0;
  // Standard error across seeds; zero for a single seed.
  double regret_rate_se = 0.0;
  double regret_cum_mean = 0.0;
  double pseudo_regret_cum_mean = 0.0;
  double expert_fraction = 0.0;
  double entropy_mean = 0.0;
  // Set on rows covered by a comparison; "agent@n" names a pretrained
  // baseline.
  std::string baseline;
  std::optional<double> improvement_pct;
};

// Rows grouped by (agent, pretrain size) in first-appearance order, then t.
// Seeds are combined in sorted order so the result does not depend on the
// order of the traces.
std::vector<SummaryRow> aggregate(std::span<const RunTrace> traces,
                                  std::span<const Comparison> comparisons = {});

// 100 * (agent - baseline) / |baseline|; empty when the baseline is zero.
std::optional<double> improvement_pct(double agent, double baseline);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_AGGREGATE_H_
