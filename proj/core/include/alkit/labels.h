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

#ifndef ALKIT_LABELS_H_
#define ALKIT_LABELS_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "alkit/geometry.h"

namespace alkit {

enum class WeatherCondition {
  kNormal,
  kOvercast,
  kFog,
  kRain,
  kSleet,
  kLightSnow,
  kHeavySnow,
};

inline constexpr std::array<WeatherCondition, 7> kAllWeatherConditions = {
    WeatherCondition::kNormal,    WeatherCondition::kOvercast,
    WeatherCondition::kFog,       WeatherCondition::kRain,
    WeatherCondition::kSleet,     WeatherCondition::kLightSnow,
    WeatherCondition::kHeavySnow,
};

enum class RoadType {
  kUrban,
  kHighway,
  kAlleyway,
  kUniversity,
  kSuburban,
  kMountain,
  kParkingLot,
};

inline constexpr std::array<RoadType, 7> kAllRoadTypes = {
    RoadType::kUrban,      RoadType::kHighway,  RoadType::kAlleyway,
    RoadType::kUniversity, RoadType::kSuburban, RoadType::kMountain,
    RoadType::kParkingLot,
};

// Canonical names ("Normal", "LightSnow", "ParkingLot", ...) used on disk,
// in configs and in reports.
std::string_view ToString(WeatherCondition weather);
std::string_view ToString(RoadType road);
std::optional<WeatherCondition> ParseWeather(std::string_view name);
std::optional<RoadType> ParseRoad(std::string_view name);

inline constexpr std::string_view kDefaultClass = "Sedan";

// One object of a ground-truth or auto-label set. Detections and auto-labels
// carry a confidence; handmade labels do not.
struct ObjectLabel {
  std::string class_name;
  Box3D box;
  std::optional<double> confidence;
  std::optional<std::string> object_id;

  friend bool operator==(const ObjectLabel&, const ObjectLabel&) = default;
};

struct Frame {
  std::uint64_t frame_index = 0;
  std::string sequence_id;
  WeatherCondition weather = WeatherCondition::kNormal;
  RoadType road = RoadType::kUrban;
  std::vector<ObjectLabel> objects;

  friend bool operator==(const Frame&, const Frame&) = default;
};

// Sequences keyed by id; within a sequence frames are strictly increasing in
// frame_index. Sequences are never empty.
struct Dataset {
  std::map<std::string, std::vector<Frame>> sequences;
  std::string split_name;

  std::size_t frame_count() const;
  std::size_t object_count() const;
  bool empty() const { return sequences.empty(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Throws DataError when an object or the frame ordering is invalid.
void ValidateFrame(const Frame& frame);
void ValidateDataset(const Dataset& dataset);

// Appends a frame to its sequence; the frame must come after the current
// last frame of that sequence.
void AppendFrame(Dataset& dataset, Frame frame);

enum class SubsetName { kNO, kNOFRL, kALL };

struct SubsetSpec {
  SubsetName name = SubsetName::kALL;
  std::set<WeatherCondition> weathers;

  static SubsetSpec For(SubsetName name);
};

std::string_view ToString(SubsetName name);
std::optional<SubsetName> ParseSubsetName(std::string_view name);

// Keeps exactly the frames whose weather is in the subset. Sequences left
// without frames are dropped.
Dataset FilterBySubset(const Dataset& dataset, const SubsetSpec& subset);

// Partitions the frames by weather. Conditions without frames get no entry.
std::map<WeatherCondition, Dataset> GroupByWeather(const Dataset& dataset);

}  // namespace alkit

#endif  // ALKIT_LABELS_H_
