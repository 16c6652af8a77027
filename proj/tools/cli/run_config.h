// Copyright 2026 The autolabel-kit Authors.
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

#ifndef ALKIT_TOOLS_CLI_RUN_CONFIG_H_
#define ALKIT_TOOLS_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alkit/labels.h"
#include "alkit/simdet.h"
#include "json.hpp"

namespace alkit::cli {

using Json = nlohmann::json;

// Options of one command: the JSON config file overlaid with command-line
// flags. Keys outside the command's allowed set are rejected, and every
// typed accessor throws ConfigError naming the key on a type mismatch.
class Settings {
 public:
  Settings(std::string command, std::initializer_list<std::string_view> allowed);

  // Merges the top-level object of a JSON file. Values already set from the
  // command line win.
  void MergeFile(const std::filesystem::path& path);
  // Command-line value; always wins over the file.
  void SetFlag(const std::string& key, Json value);

  bool Has(const std::string& key) const { return values_.contains(key); }
  const Json& Raw(const std::string& key) const { return values_.at(key); }

  std::optional<double> Number(const std::string& key) const;
  double RequireNumber(const std::string& key) const;
  std::optional<std::string> String(const std::string& key) const;
  std::string RequireString(const std::string& key) const;
  bool Flag(const std::string& key, bool fallback) const;
  std::optional<std::uint64_t> Unsigned(const std::string& key) const;
  std::vector<double> NumberList(const std::string& key) const;
  std::vector<std::string> StringList(const std::string& key) const;

  const std::string& command() const { return command_; }

 private:
  std::string command_;
  std::vector<std::string> allowed_;
  Json values_ = Json::object();
  std::vector<std::string> from_flags_;
};

struct InjectSpec {
  std::size_t n_fa = 0;
  std::size_t n_miss = 0;
  double match_iou = 0.3;
};

struct SimulateConfig {
  ScenarioParams scenario;
  Mix<WeatherCondition> weather_mix;
  Mix<RoadType> road_mix;
  DetectorNoiseModel noise = DetectorNoiseModel::Defaults();
  std::optional<InjectSpec> inject;
  std::uint64_t seed = 0;
};

// Builds and validates the simulate configuration. Unset parts fall back to
// the default scenario, uniform weather and road mixes, and the default
// noise presets. The false-alarm region defaults to the scenario's field of
// view.
SimulateConfig ParseSimulateConfig(const Settings& settings);

}  // namespace alkit::cli

#endif  // ALKIT_TOOLS_CLI_RUN_CONFIG_H_
