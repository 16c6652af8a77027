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

#ifndef ALKIT_SIMDET_H_
#define ALKIT_SIMDET_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "alkit/geometry.h"
#include "alkit/labels.h"

namespace alkit {

// Synthetic scenes and a weather-conditioned stand-in for a LiDAR detector.
//
// Every random draw comes from a stream keyed by (master seed, sequence id,
// purpose), so output does not depend on how sequences are scheduled over
// threads.

struct Range {
  double min = 0.0;
  double max = 0.0;

  bool Contains(double v) const { return v >= min && v <= max; }
};

struct ScenarioParams {
  std::size_t n_sequences = 4;
  std::size_t frames_per_sequence = 10;
  double objects_per_frame_mean = 6.0;
  Range x_range{0.0, 70.0};
  Range y_range{-20.0, 20.0};
  Range speed_range{0.0, 1.0};  // m/frame
  Range length_range{3.8, 5.0};
  Range width_range{1.7, 2.0};
  Range height_range{1.4, 1.8};
  std::vector<std::string> classes{std::string(kDefaultClass)};
  std::uint64_t seed = 0;
};

// Throws ConfigError naming the offending field.
void ValidateScenario(const ScenarioParams& params);

// Constant-velocity object: the box at frame 0 and its per-frame
// displacement.
struct Track {
  Box3D initial;
  Vec2 velocity;
};

Box3D TrackBoxAt(const Track& track, std::uint64_t frame);

// True when the whole footprint lies inside the rectangle.
bool FootprintInside(const Box3D& box, const Range& x, const Range& y);

template <typename Key>
using Mix = std::map<Key, double>;

// Throws ConfigError unless weights are non-negative and sum to 1 +- 1e-9.
void ValidateMix(const Mix<WeatherCondition>& mix);
void ValidateMix(const Mix<RoadType>& mix);

// Objects spawn at frame 0 without overlapping each other at any frame,
// travel in a straight line along their heading and are dropped from the
// first frame their footprint leaves the field of view. Weather and road
// are drawn once per sequence.
Dataset GenerateTruth(const ScenarioParams& params,
                      const Mix<WeatherCondition>& weather_mix,
                      const Mix<RoadType>& road_mix, int workers = 1);

struct WeatherNoise {
  double p_detect = 1.0;
  double pos_sigma = 0.0;  // m, per center axis
  double dim_sigma = 0.0;  // m, per dimension
  double yaw_sigma = 0.0;  // rad
  double fa_rate = 0.0;    // expected false alarms per frame
};

// Maps the perturbation of a detection to a confidence:
//   d = |(dpos / pos_scale, ddim / dim_scale, dyaw / yaw_scale)|
//   conf = clamp(1 - d / d_max, floor, 1)
struct ConfidenceShape {
  double pos_scale = 0.5;
  double dim_scale = 0.5;
  double yaw_scale = 0.3;
  double d_max = 3.0;
  double floor = 0.05;
};

// Spurious boxes: uniform over the field of view, confidence uniform in
// [conf_min, conf_max] (the low tail of the confidence range).
struct FalseAlarmShape {
  Range x_range{0.0, 70.0};
  Range y_range{-20.0, 20.0};
  Range length_range{3.8, 5.0};
  Range width_range{1.7, 2.0};
  Range height_range{1.4, 1.8};
  double conf_min = 0.05;
  double conf_max = 0.45;
  std::string class_name{kDefaultClass};
};

struct DetectorNoiseModel {
  std::map<WeatherCondition, WeatherNoise> per_weather;
  ConfidenceShape conf_shape;
  FalseAlarmShape false_alarms;

  // Preset ordering: clear (Normal, Overcast) < light precipitation (Fog,
  // Rain, LightSnow) < heavy (Sleet, HeavySnow).
  static DetectorNoiseModel Defaults();
  // Every weather gets the same noise.
  static DetectorNoiseModel Uniform(const WeatherNoise& noise);

  const WeatherNoise& For(WeatherCondition weather) const;
};

// Throws ConfigError naming the offending field, e.g. "Fog.p_detect".
void ValidateNoiseModel(const DetectorNoiseModel& model);

double ConfidenceFromPerturbation(const ConfidenceShape& shape,
                                  const Box3D& truth, const Box3D& detected);

Dataset SimulateDetector(const Dataset& truth, const DetectorNoiseModel& noise,
                         std::uint64_t seed, int workers = 1);

enum class InjectionKind { kFalseAlarm, kMiss };

std::string_view ToString(InjectionKind kind);

struct Injection {
  InjectionKind kind;
  std::string sequence_id;
  std::uint64_t frame_index = 0;
  ObjectLabel object;  // the inserted box, or the deleted one
};

struct InjectionResult {
  Dataset dataset;
  std::vector<Injection> injections;
};

// Deletes n_miss interior-frame objects that are associated (BEV IoU >=
// match_iou) with objects in both neighbors whose neighbors also associate
// with each other, and inserts n_fa boxes into interior frames that do not
// overlap anything in frames t-1, t, t+1. Throws DataError when not enough
// eligible objects or free placements exist.
InjectionResult InjectIntermittentErrors(const Dataset& dataset,
                                         std::size_t n_fa, std::size_t n_miss,
                                         std::uint64_t seed,
                                         double match_iou = 0.3);

// {"injections":[{"kind":"miss","seq":..,"idx":..,"object":{..}}]}
std::string InjectionsToJson(const std::vector<Injection>& injections);
std::vector<Injection> InjectionsFromJson(std::string_view text);

}  // namespace alkit

#endif  // ALKIT_SIMDET_H_
