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

#ifndef EXPERTBANDIT_ERRORS_H_
#define EXPERTBANDIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace expertbandit {

// Malformed or inconsistent user input (configs, family documents).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Every world assigns probability zero to an observed self-collected pair.
class ImpossibleObservation : public std::domain_error {
 public:
  ImpossibleObservation() : std::domain_error("impossible observation") {}
};

// Every world has been excluded by expert data.
class AllWorldsExcluded : public std::domain_error {
 public:
  AllWorldsExcluded() : std::domain_error("all worlds excluded") {}
};

// Every particle weight underflowed to zero.
class ParticleDegeneracy : public std::domain_error {
 public:
  ParticleDegeneracy() : std::domain_error("particle degeneracy") {}
};

}  // namespace expertbandit

#endif  // EXPERTBANDIT_ERRORS_H_
