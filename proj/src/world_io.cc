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

#include "expertbandit/world_io.h"

#include <fstream>
#include <set>

#include "expertbandit/errors.h"

namespace expertbandit {

using nlohmann::json;

json family_to_json(const WorldFamily& family, bool include_dist) {
  json doc;
  doc["kind"] = std::string(world_kind_name(family.kind()));
  doc["M"] = family.size();
  doc["num_actions"] = family.num_actions();
  const auto& alphabet = family.alphabet();
  if (alphabet.is_contiguous()) {
    doc["alphabet"] = {{"min", alphabet.values().front()},
                       {"max", alphabet.values().back()}};
  } else {
    doc["alphabet"] = {{"values", alphabet.values()}};
  }
  doc["noise_std"] = family.params().noise_std;
  doc["seed"] = family.params().seed;
  doc["true_index"] = family.true_index();
  if (include_dist || family.kind() == WorldKind::kCustom) {
    json dist = json::array();
    for (const auto& model : family.models()) {
      json rows = json::array();
      for (std::size_t a = 0; a < model.num_actions(); ++a) {
        const auto row = model.row(a);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
      }
      dist.push_back(std::move(rows));
    }
    doc["dist"] = std::move(dist);
  }
  return doc;
}

namespace {

OutcomeAlphabet alphabet_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("alphabet must be an object");
  if (doc.contains("values")) {
    return OutcomeAlphabet(doc.at("values").get<std::vector<int>>());
  }
  return OutcomeAlphabet::range(doc.at("min").get<int>(),
                                doc.at("max").get<int>());
}

}  // namespace

WorldFamily family_from_json(const json& doc) {
  static const std::set<std::string> kKeys = {
      "kind", "M", "num_actions", "alphabet", "noise_std",
      "seed", "true_index", "dist"};
  try {
    if (!doc.is_object()) throw ConfigError("family document must be an object");
    for (const auto& [key, value] : doc.items()) {
      if (!kKeys.contains(key)) throw ConfigError("family: unknown key '" + key + "'");
    }
    const auto kind_name = doc.at("kind").get<std::string>();
    const auto kind = parse_world_kind(kind_name);
    if (!kind) throw ConfigError("family: unknown kind '" + kind_name + "'");
    const auto alphabet = alphabet_from_json(doc.at("alphabet"));
    const GeneratorParams params{doc.value("seed", std::uint64_t{0}),
                                 doc.value("noise_std", kDefaultNoiseStd)};

    if (doc.contains("dist")) {
      const auto& dist = doc.at("dist");
      std::vector<BanditModel> models;
      for (const auto& rows : dist) {
        const std::size_t num_actions = rows.size();
        std::vector<double> flat;
        flat.reserve(num_actions * alphabet.size());
        for (const auto& row : rows) {
          const auto values = row.get<std::vector<double>>();
          if (values.size() != alphabet.size()) {
            throw ConfigError("family: row length does not match alphabet");
          }
          flat.insert(flat.end(), values.begin(), values.end());
        }
        models.emplace_back(num_actions, alphabet.size(), std::move(flat));
      }
      if (doc.contains("M") && doc.at("M").get<std::size_t>() != models.size()) {
        throw ConfigError("family: M does not match dist");
      }
      if (doc.contains("num_actions") && !models.empty() &&
          doc.at("num_actions").get<std::size_t>() != models.front().num_actions()) {
        throw ConfigError("family: num_actions does not match dist");
      }
      return WorldFamily(std::move(models), doc.at("true_index").get<std::size_t>(),
                         alphabet, *kind, params);
    }

    if (*kind == WorldKind::kCustom) {
      throw ConfigError("family: Custom kind requires explicit dist arrays");
    }
    WorldFamily family = generate_family(
        *kind, doc.at("M").get<std::size_t>(),
        doc.at("num_actions").get<std::size_t>(), alphabet, params.noise_std,
        params.seed);
    if (doc.contains("true_index") &&
        doc.at("true_index").get<std::size_t>() != family.true_index()) {
      throw ConfigError("family: true_index does not match regenerated family");
    }
    return family;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("family: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("family: ") + e.what());
  }
}

void save_family(const WorldFamily& family, const std::filesystem::path& path,
                 bool include_dist) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << family_to_json(family, include_dist).dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

WorldFamily load_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return family_from_json(doc);
}

}  // namespace expertbandit
