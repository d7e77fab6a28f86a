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

#ifndef EXPERTBANDIT_CSV_OUTPUT_H_
#define EXPERTBANDIT_CSV_OUTPUT_H_

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "expertbandit/aggregate.h"
#include "expertbandit/config.h"
#include "expertbandit/experiment.h"

namespace expertbandit {

inline constexpr std::string_view kTracesHeader =
    "scenario,seed,agent,pretrain_n,t,action,outcome,source,regret_cum,"
    "regret_rate,mi_self,mi_expert,entropy";
inline constexpr std::string_view kSummaryHeader =
    "scenario,agent,pretrain_n,t,seeds,regret_rate_mean,regret_rate_se,"
    "regret_cum_mean,pseudo_regret_cum_mean,expert_fraction,entropy_mean,"
    "baseline,improvement_pct";

// Decimal with 12 significant digits.
std::string format_number(double value);

// outcome is the reward value of the agent's own outcome; absent values are
// written as empty fields.
void write_traces_csv(std::ostream& out, Scenario scenario,
                      std::span<const RunTrace> traces,
                      const OutcomeAlphabet& alphabet);
void write_summary_csv(std::ostream& out, Scenario scenario,
                       std::span<const SummaryRow> rows);

// Writes dir/traces.csv and dir/summary.csv, creating dir if needed. I/O
// failures throw std::runtime_error naming the path. With a per-seed family
// the alphabet is the same for every seed, so one is enough.
void emit_csv(std::span<const RunTrace> traces, std::span<const SummaryRow> rows,
              Scenario scenario, const OutcomeAlphabet& alphabet,
              const std::filesystem::path& dir);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_CSV_OUTPUT_H_
