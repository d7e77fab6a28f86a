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

#include "expertbandit/csv_output.h"

#include <cstdio>
#include <functional>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace expertbandit {
namespace {

std::string optional_count(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  body(out);
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_traces_csv(std::ostream& out, Scenario scenario,
                      std::span<const RunTrace> traces,
                      const OutcomeAlphabet& alphabet) {
  const std::string name(scenario_name(scenario));
  out << kTracesHeader << '\n';
  for (const auto& trace : traces) {
    const std::string prefix = name + "," + std::to_string(trace.seed) + "," +
                               trace.agent + "," + optional_count(trace.pretrain_n) +
                               ",";
    double regret = 0.0;
    for (const auto& step : trace.steps) {
      regret += step.realized_regret;
      out << prefix << step.t << ',' << step.action << ','
          << alphabet.value(step.own_outcome) << ',' << source_name(step.source)
          << ',' << format_number(regret) << ','
          << format_number(regret / static_cast<double>(step.t)) << ','
          << optional_number(step.mi_self) << ','
          << optional_number(step.mi_expert) << ','
          << format_number(step.action_entropy) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, Scenario scenario,
                       std::span<const SummaryRow> rows) {
  const std::string name(scenario_name(scenario));
  out << kSummaryHeader << '\n';
  for (const auto& row : rows) {
    out << name << ',' << row.agent << ',' << optional_count(row.pretrain_n) << ','
        << row.t << ',' << row.seeds << ',' << format_number(row.regret_rate_mean)
        << ',' << format_number(row.regret_rate_se) << ','
        << format_number(row.regret_cum_mean) << ','
        << format_number(row.pseudo_regret_cum_mean) << ','
        << format_number(row.expert_fraction) << ','
        << format_number(row.entropy_mean) << ',' << row.baseline << ','
        << optional_number(row.improvement_pct) << '\n';
  }
}

void emit_csv(std::span<const RunTrace> traces, std::span<const SummaryRow> rows,
              Scenario scenario, const OutcomeAlphabet& alphabet,
              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": " + ec.message());
  write_file(dir / "traces.csv", [&](std::ostream& out) {
    write_traces_csv(out, scenario, traces, alphabet);
  });
  write_file(dir / "summary.csv", [&](std::ostream& out) {
    write_summary_csv(out, scenario, rows);
  });
}

}  // namespace expertbandit
