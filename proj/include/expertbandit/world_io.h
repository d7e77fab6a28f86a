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

#ifndef EXPERTBANDIT_WORLD_IO_H_
#define EXPERTBANDIT_WORLD_IO_H_

#include <filesystem>

#include "json.hpp"
#include "expertbandit/worlds.h"

namespace expertbandit {

// World family document:
//   {"kind", "M", "num_actions", "alphabet": {"min","max"} | {"values"},
//    "noise_std", "seed", "true_index", "dist": [[[...]]] (optional)}
// Without "dist" the family is regenerated from (kind, seed, noise_std).
// Probabilities are written in shortest round-trip form (at most 17
// significant digits), so a document with "dist" reloads bit-exactly.
nlohmann::json family_to_json(const WorldFamily& family,
                              bool include_dist = true);
WorldFamily family_from_json(const nlohmann::json& doc);

void save_family(const WorldFamily& family, const std::filesystem::path& path,
                 bool include_dist = true);
WorldFamily load_family(const std::filesystem::path& path);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_WORLD_IO_H_
