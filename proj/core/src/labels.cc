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

#include "alkit/labels.h"

#include <cmath>
#include <utility>

#include "alkit/errors.h"

namespace alkit {

namespace {

constexpr std::array<std::string_view, 7> kWeatherNames = {
    "Normal", "Overcast", "Fog", "Rain", "Sleet", "LightSnow", "HeavySnow"};
constexpr std::array<std::string_view, 7> kRoadNames = {
    "Urban",    "Highway",  "Alleyway",  "University",
    "Suburban", "Mountain", "ParkingLot"};

std::string FrameTag(const Frame& frame) {
  return frame.sequence_id + "#" + std::to_string(frame.frame_index);
}

}  // namespace

std::string_view ToString(WeatherCondition weather) {
  return kWeatherNames[static_cast<std::size_t>(weather)];
}

std::string_view ToString(RoadType road) {
  return kRoadNames[static_cast<std::size_t>(road)];
}

std::optional<WeatherCondition> ParseWeather(std::string_view name) {
  for (std::size_t i = 0; i < kWeatherNames.size(); ++i) {
    if (kWeatherNames[i] == name) return kAllWeatherConditions[i];
  }
  return std::nullopt;
}

std::optional<RoadType> ParseRoad(std::string_view name) {
  for (std::size_t i = 0; i < kRoadNames.size(); ++i) {
    if (kRoadNames[i] == name) return kAllRoadTypes[i];
  }
  return std::nullopt;
}

std::size_t Dataset::frame_count() const {
  std::size_t n = 0;
  for (const auto& [id, frames] : sequences) n += frames.size();
  return n;
}

std::size_t Dataset::object_count() const {
  std::size_t n = 0;
  for (const auto& [id, frames] : sequences) {
    for (const Frame& f : frames) n += f.objects.size();
  }
  return n;
}

void ValidateFrame(const Frame& frame) {
  if (frame.sequence_id.empty()) {
    throw DataError("frame " + std::to_string(frame.frame_index) +
                    ": empty sequence id");
  }
  for (std::size_t i = 0; i < frame.objects.size(); ++i) {
    const ObjectLabel& obj = frame.objects[i];
    if (obj.class_name.empty()) {
      throw DataError(FrameTag(frame) + " object " + std::to_string(i) +
                      ": empty class name");
    }
    if (obj.confidence) {
      const double c = *obj.confidence;
      if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
        throw DataError(FrameTag(frame) + " object " + std::to_string(i) +
                        ": confidence outside [0, 1]");
      }
    }
  }
}

void ValidateDataset(const Dataset& dataset) {
  for (const auto& [id, frames] : dataset.sequences) {
    if (frames.empty()) throw DataError("sequence " + id + " has no frames");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (frames[i].sequence_id != id) {
        throw DataError(FrameTag(frames[i]) + ": filed under sequence " + id);
      }
      if (i > 0 && frames[i].frame_index <= frames[i - 1].frame_index) {
        throw DataError(FrameTag(frames[i]) +
                        ": frame indices not strictly increasing");
      }
      ValidateFrame(frames[i]);
    }
  }
}

void AppendFrame(Dataset& dataset, Frame frame) {
  auto& frames = dataset.sequences[frame.sequence_id];
  if (!frames.empty() && frame.frame_index <= frames.back().frame_index) {
    throw DataError(FrameTag(frame) + ": frame index not after " +
                    std::to_string(frames.back().frame_index));
  }
  frames.push_back(std::move(frame));
}

SubsetSpec SubsetSpec::For(SubsetName name) {
  using W = WeatherCondition;
  switch (name) {
    case SubsetName::kNO:
      return {name, {W::kNormal, W::kOvercast}};
    case SubsetName::kNOFRL:
      return {name,
              {W::kNormal, W::kOvercast, W::kFog, W::kRain, W::kLightSnow}};
    case SubsetName::kALL:
      break;
  }
  return {SubsetName::kALL, {kAllWeatherConditions.begin(),
                             kAllWeatherConditions.end()}};
}

std::string_view ToString(SubsetName name) {
  switch (name) {
    case SubsetName::kNO:
      return "NO";
    case SubsetName::kNOFRL:
      return "NOFRL";
    case SubsetName::kALL:
      return "ALL";
  }
  return "ALL";
}

std::optional<SubsetName> ParseSubsetName(std::string_view name) {
  for (SubsetName s : {SubsetName::kNO, SubsetName::kNOFRL, SubsetName::kALL}) {
    if (ToString(s) == name) return s;
  }
  return std::nullopt;
}

Dataset FilterBySubset(const Dataset& dataset, const SubsetSpec& subset) {
  Dataset out;
  out.split_name = dataset.split_name;
  for (const auto& [id, frames] : dataset.sequences) {
    std::vector<Frame> kept;
    for (const Frame& f : frames) {
      if (subset.weathers.contains(f.weather)) kept.push_back(f);
    }
    if (!kept.empty()) out.sequences.emplace(id, std::move(kept));
  }
  return out;
}

std::map<WeatherCondition, Dataset> GroupByWeather(const Dataset& dataset) {
  std::map<WeatherCondition, Dataset> groups;
  for (const auto& [id, frames] : dataset.sequences) {
    for (const Frame& f : frames) {
      Dataset& g = groups[f.weather];
      g.split_name = dataset.split_name;
      g.sequences[id].push_back(f);
    }
  }
  return groups;
}

}  // namespace alkit
