// Copyright 2026 The fastdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <json.hpp>

#include "fastdda/archive.hpp"

namespace fastdda {

using nlohmann::json;

namespace {

constexpr const char* kArchiveFormat = "fastdda.archive/1";

json to_json(const std::array<double, 3>& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

std::string archive_to_json(const Archive& archive) {
  const auto& space = archive.space();
  json doc;
  doc["format"] = kArchiveFormat;
  doc["agent"] = archive.agent_name();
  doc["fingerprint"] = archive.fingerprint();
  doc["rules_fingerprint"] = archive.rules_fingerprint();
  doc["behavior_space"] = {
      {"features", kFeatureNames},
      {"lower", to_json(space.lower)},
      {"upper", to_json(space.upper)},
      {"bins", space.bins},
  };
  json cells = json::array();
  for (const auto& [cell, elite] : archive.cells()) {
    cells.push_back({
        {"cell_id", cell},
        {"centroid", to_json(space.centroid(cell))},
        {"descriptor",
         {{"coverage", elite.descriptor.coverage},
          {"leniency", elite.descriptor.leniency},
          {"reachability", elite.descriptor.reachability}}},
        {"level", to_ascii(elite.level)},
        {"win_rate", elite.win_rate},
        {"performance", elite.performance},
        {"eval_count", elite.eval_count},
    });
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

Archive archive_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kArchiveFormat) {
      throw ArchiveFormatError("unsupported archive format '" +
                               doc.at("format").get<std::string>() + "'");
    }
    BehaviorSpace space;
    const auto& bs = doc.at("behavior_space");
    space.lower = bs.at("lower").get<std::array<double, 3>>();
    space.upper = bs.at("upper").get<std::array<double, 3>>();
    space.bins = bs.at("bins").get<std::array<int, 3>>();
    for (std::size_t k = 0; k < 3; ++k) {
      if (space.bins[k] <= 0 || !(space.upper[k] > space.lower[k])) {
        throw ArchiveFormatError("invalid behavior space");
      }
    }

    Archive archive(doc.at("agent").get<std::string>(), space);
    archive.set_fingerprints(doc.at("fingerprint").get<std::string>(),
                             doc.at("rules_fingerprint").get<std::string>());
    for (const auto& rec : doc.at("cells")) {
      const auto cell = rec.at("cell_id").get<CellId>();
      Elite elite;
      elite.level = parse_level(rec.at("level").get<std::string>());
      if (!is_solvable(elite.level)) {
        throw ArchiveFormatError("archive level in cell is not solvable");
      }
      elite.descriptor = behavior_descriptor(elite.level);
      elite.win_rate = rec.at("win_rate").get<double>();
      elite.performance = rec.at("performance").get<double>();
      elite.eval_count = rec.at("eval_count").get<int>();
      if (space.cell_index(elite.descriptor) != cell) {
        throw ArchiveFormatError("level descriptor does not map to its cell_id");
      }
      if (!(elite.win_rate >= 0.0 && elite.win_rate <= 1.0)) {
        throw ArchiveFormatError("win_rate outside [0, 1]");
      }
      archive.put(cell, std::move(elite));
    }
    return archive;
  } catch (const json::exception& e) {
    throw ArchiveFormatError(std::string("malformed archive JSON: ") + e.what());
  } catch (const LevelParseError& e) {
    throw ArchiveFormatError(std::string("malformed archive level: ") + e.what());
  }
}

}  // namespace fastdda
