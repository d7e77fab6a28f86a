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

// Small hand-built families shared by the tests.

#ifndef EXPERTBANDIT_TESTS_FIXTURES_H_
#define EXPERTBANDIT_TESTS_FIXTURES_H_

#include <vector>

#include "expertbandit/worlds.h"

namespace fixtures {

using Dist = std::vector<std::vector<std::vector<double>>>;  // [m][a][y]

inline expertbandit::WorldFamily make_family(const Dist& dist,
                                             std::vector<int> values,
                                             std::size_t true_index) {
  std::vector<expertbandit::BanditModel> models;
  for (const auto& rows : dist) {
    std::vector<double> flat;
    for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
    models.emplace_back(rows.size(), values.size(), flat);
  }
  return expertbandit::WorldFamily(std::move(models), true_index,
                                   expertbandit::OutcomeAlphabet(std::move(values)),
                                   expertbandit::WorldKind::kCustom);
}

// Two worlds, two actions, outcomes {-1, +1}; each world rewards a
// different action with certainty.
inline expertbandit::WorldFamily two_world_dirac() {
  return make_family({{{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}}, {-1, 1}, 0);
}

// Three worlds, two actions, outcomes {-1, 0, 1}. World 0 is true and
// prefers action 0; world 1 prefers action 1, whose true outcome law is
// close to world 1's optimal row, so contaminated expert data pulls the
// naive posterior toward world 1.
inline expertbandit::WorldFamily three_world_adversarial() {
  return make_family({{{0.1, 0.1, 0.8}, {0.8, 0.1, 0.1}},
                      {{0.9, 0.05, 0.05}, {0.6, 0.15, 0.25}},
                      {{0.2, 0.3, 0.5}, {0.3, 0.4, 0.3}}},
                     {-1, 0, 1}, 0);
}

// Three worlds, three actions, outcomes {-1, 0, 1}, with true means of the
// worlds' optimal actions equal to (1.0, -0.5, 0.2).
inline expertbandit::WorldFamily three_world_targets() {
  return make_family({{{0, 0, 1}, {0.5, 0.5, 0}, {0, 0.8, 0.2}},
                      {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}},
                      {{1, 0, 0}, {1, 0, 0}, {0, 0, 1}}},
                     {-1, 0, 1}, 0);
}

}  // namespace fixtures

#endif  // EXPERTBANDIT_TESTS_FIXTURES_H_
