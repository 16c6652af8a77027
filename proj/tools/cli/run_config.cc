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

#include "cli/run_config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "alkit/errors.h"

namespace alkit::cli {

namespace {

[[noreturn]] void Bad(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

void CheckKeys(const Json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!obj.is_object()) Bad(where, "expected a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      Bad(where + "." + it.key(), "unknown key");
    }
  }
}

double AsNumber(const Json& v, const std::string& field) {
  if (!v.is_number()) Bad(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) Bad(field, "must be finite");
  return d;
}

std::size_t AsCount(const Json& v, const std::string& field) {
  if (!v.is_number_unsigned()) Bad(field, "expected a non-negative integer");
  return v.get<std::size_t>();
}

Range AsRange(const Json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) Bad(field, "expected [min, max]");
  const Range r{AsNumber(v[0], field + "[0]"), AsNumber(v[1], field + "[1]")};
  if (r.min > r.max) Bad(field, "min exceeds max");
  return r;
}

void ReadNumber(const Json& obj, const char* key, const std::string& where,
                double& dst) {
  if (auto it = obj.find(key); it != obj.end()) {
    dst = AsNumber(*it, where + "." + key);
  }
}

void ReadRange(const Json& obj, const char* key, const std::string& where,
               Range& dst) {
  if (auto it = obj.find(key); it != obj.end()) {
    dst = AsRange(*it, where + "." + key);
  }
}

ScenarioParams ParseScenario(const Json& j) {
  const std::string where = "scenario";
  CheckKeys(j,
            {"n_sequences", "frames_per_sequence", "objects_per_frame_mean",
             "x_range", "y_range", "speed_range", "length_range",
             "width_range", "height_range", "classes"},
            where);
  ScenarioParams p;
  if (auto it = j.find("n_sequences"); it != j.end()) {
    p.n_sequences = AsCount(*it, where + ".n_sequences");
  }
  if (auto it = j.find("frames_per_sequence"); it != j.end()) {
    p.frames_per_sequence = AsCount(*it, where + ".frames_per_sequence");
  }
  ReadNumber(j, "objects_per_frame_mean", where, p.objects_per_frame_mean);
  ReadRange(j, "x_range", where, p.x_range);
  ReadRange(j, "y_range", where, p.y_range);
  ReadRange(j, "speed_range", where, p.speed_range);
  ReadRange(j, "length_range", where, p.length_range);
  ReadRange(j, "width_range", where, p.width_range);
  ReadRange(j, "height_range", where, p.height_range);
  if (auto it = j.find("classes"); it != j.end()) {
    if (!it->is_array()) Bad(where + ".classes", "expected a list of names");
    p.classes.clear();
    for (const Json& c : *it) {
      if (!c.is_string()) Bad(where + ".classes", "expected strings");
      p.classes.push_back(c.get<std::string>());
    }
  }
  try {
    ValidateScenario(p);
  } catch (const ConfigError& e) {
    throw ConfigError(where + "." + e.what());
  }
  return p;
}

template <typename Key>
Mix<Key> ParseMix(const Json& j, const std::string& where,
                  std::optional<Key> (*parse)(std::string_view)) {
  if (!j.is_object()) Bad(where, "expected an object of weights");
  Mix<Key> mix;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto key = parse(it.key());
    if (!key) Bad(where + "." + it.key(), "unknown value");
    mix[*key] = AsNumber(it.value(), where + "." + it.key());
  }
  return mix;
}

template <typename Key, std::size_t N>
Mix<Key> UniformMix(const std::array<Key, N>& all) {
  Mix<Key> mix;
  for (Key k : all) mix[k] = 1.0 / static_cast<double>(N);
  return mix;
}

void ApplyWeatherNoise(const Json& j, const std::string& where,
                       WeatherNoise& n) {
  CheckKeys(j, {"p_detect", "pos_sigma", "dim_sigma", "yaw_sigma", "fa_rate"},
            where);
  ReadNumber(j, "p_detect", where, n.p_detect);
  ReadNumber(j, "pos_sigma", where, n.pos_sigma);
  ReadNumber(j, "dim_sigma", where, n.dim_sigma);
  ReadNumber(j, "yaw_sigma", where, n.yaw_sigma);
  ReadNumber(j, "fa_rate", where, n.fa_rate);
  if (j.contains("p_detect") && !(n.p_detect >= 0.0 && n.p_detect <= 1.0)) {
    Bad(where + ".p_detect", "must lie in [0, 1]");
  }
  for (const char* key : {"pos_sigma", "dim_sigma", "yaw_sigma", "fa_rate"}) {
    if (j.contains(key) && j.at(key).get<double>() < 0.0) {
      Bad(where + "." + key, "must be non-negative");
    }
  }
}

DetectorNoiseModel ParseNoise(const Json& j, const ScenarioParams& scenario) {
  const std::string where = "noise";
  DetectorNoiseModel model = DetectorNoiseModel::Defaults();
  model.false_alarms.x_range = scenario.x_range;
  model.false_alarms.y_range = scenario.y_range;
  model.false_alarms.length_range = scenario.length_range;
  model.false_alarms.width_range = scenario.width_range;
  model.false_alarms.height_range = scenario.height_range;
  model.false_alarms.class_name = scenario.classes.front();
  if (j.is_null()) return model;
  if (!j.is_object()) Bad(where, "expected a JSON object");

  if (auto it = j.find("All"); it != j.end()) {
    for (WeatherCondition w : kAllWeatherConditions) {
      ApplyWeatherNoise(*it, where + ".All", model.per_weather[w]);
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "All") continue;
    if (key == "conf_shape") {
      const std::string w = where + ".conf_shape";
      CheckKeys(*it, {"pos_scale", "dim_scale", "yaw_scale", "d_max", "floor"},
                w);
      ConfidenceShape& c = model.conf_shape;
      ReadNumber(*it, "pos_scale", w, c.pos_scale);
      ReadNumber(*it, "dim_scale", w, c.dim_scale);
      ReadNumber(*it, "yaw_scale", w, c.yaw_scale);
      ReadNumber(*it, "d_max", w, c.d_max);
      ReadNumber(*it, "floor", w, c.floor);
    } else if (key == "false_alarms") {
      const std::string w = where + ".false_alarms";
      CheckKeys(*it,
                {"x_range", "y_range", "length_range", "width_range",
                 "height_range", "conf_min", "conf_max", "class"},
                w);
      FalseAlarmShape& fa = model.false_alarms;
      ReadRange(*it, "x_range", w, fa.x_range);
      ReadRange(*it, "y_range", w, fa.y_range);
      ReadRange(*it, "length_range", w, fa.length_range);
      ReadRange(*it, "width_range", w, fa.width_range);
      ReadRange(*it, "height_range", w, fa.height_range);
      ReadNumber(*it, "conf_min", w, fa.conf_min);
      ReadNumber(*it, "conf_max", w, fa.conf_max);
      if (auto c = it->find("class"); c != it->end()) {
        if (!c->is_string()) Bad(w + ".class", "expected a string");
        fa.class_name = c->get<std::string>();
      }
    } else if (auto weather = ParseWeather(key)) {
      ApplyWeatherNoise(*it, where + "." + key, model.per_weather[*weather]);
    } else {
      Bad(where + "." + key, "unknown key");
    }
  }
  try {
    ValidateNoiseModel(model);
  } catch (const ConfigError& e) {
    throw ConfigError(where + "." + e.what());
  }
  return model;
}

}  // namespace

Settings::Settings(std::string command,
                   std::initializer_list<std::string_view> allowed)
    : command_(std::move(command)), allowed_(allowed.begin(), allowed.end()) {}

void Settings::MergeFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Json file;
  try {
    file = Json::parse(buf.str());
  } catch (const Json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  if (!file.is_object()) {
    throw ConfigError(path.string() + ": expected a JSON object");
  }
  for (auto it = file.begin(); it != file.end(); ++it) {
    if (std::find(allowed_.begin(), allowed_.end(), it.key()) ==
        allowed_.end()) {
      throw ConfigError(path.string() + ": unknown key '" + it.key() +
                        "' for command " + command_);
    }
    if (std::find(from_flags_.begin(), from_flags_.end(), it.key()) !=
        from_flags_.end()) {
      continue;
    }
    values_[it.key()] = it.value();
  }
}

void Settings::SetFlag(const std::string& key, Json value) {
  values_[key] = std::move(value);
  from_flags_.push_back(key);
}

std::optional<double> Settings::Number(const std::string& key) const {
  if (!Has(key)) return std::nullopt;
  return AsNumber(values_.at(key), key);
}

double Settings::RequireNumber(const std::string& key) const {
  auto v = Number(key);
  if (!v) throw ConfigError(key + " required");
  return *v;
}

std::optional<std::string> Settings::String(const std::string& key) const {
  if (!Has(key)) return std::nullopt;
  const Json& v = values_.at(key);
  if (!v.is_string()) Bad(key, "expected a string");
  return v.get<std::string>();
}

std::string Settings::RequireString(const std::string& key) const {
  auto v = String(key);
  if (!v) throw ConfigError(key + " required");
  return *v;
}

bool Settings::Flag(const std::string& key, bool fallback) const {
  if (!Has(key)) return fallback;
  const Json& v = values_.at(key);
  if (!v.is_boolean()) Bad(key, "expected true or false");
  return v.get<bool>();
}

std::optional<std::uint64_t> Settings::Unsigned(const std::string& key) const {
  if (!Has(key)) return std::nullopt;
  const Json& v = values_.at(key);
  if (!v.is_number_unsigned()) Bad(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<double> Settings::NumberList(const std::string& key) const {
  if (!Has(key)) return {};
  const Json& v = values_.at(key);
  if (v.is_number()) return {AsNumber(v, key)};
  if (!v.is_array()) Bad(key, "expected a number or a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(AsNumber(v[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::string> Settings::StringList(const std::string& key) const {
  if (!Has(key)) return {};
  const Json& v = values_.at(key);
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) Bad(key, "expected a string or a list of strings");
  std::vector<std::string> out;
  for (const Json& s : v) {
    if (!s.is_string()) Bad(key, "expected strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

SimulateConfig ParseSimulateConfig(const Settings& settings) {
  SimulateConfig cfg;
  if (settings.Has("scenario")) {
    cfg.scenario = ParseScenario(settings.Raw("scenario"));
  }
  cfg.weather_mix =
      settings.Has("weather_mix")
          ? ParseMix<WeatherCondition>(settings.Raw("weather_mix"),
                                       "weather_mix", &ParseWeather)
          : UniformMix(kAllWeatherConditions);
  cfg.road_mix = settings.Has("road_mix")
                     ? ParseMix<RoadType>(settings.Raw("road_mix"), "road_mix",
                                          &ParseRoad)
                     : UniformMix(kAllRoadTypes);
  ValidateMix(cfg.weather_mix);
  ValidateMix(cfg.road_mix);

  cfg.noise = ParseNoise(settings.Has("noise") ? settings.Raw("noise") : Json(),
                         cfg.scenario);

  if (settings.Has("inject")) {
    const Json& j = settings.Raw("inject");
    CheckKeys(j, {"n_fa", "n_miss", "match_iou"}, "inject");
    InjectSpec spec;
    if (auto it = j.find("n_fa"); it != j.end()) {
      spec.n_fa = AsCount(*it, "inject.n_fa");
    }
    if (auto it = j.find("n_miss"); it != j.end()) {
      spec.n_miss = AsCount(*it, "inject.n_miss");
    }
    ReadNumber(j, "match_iou", "inject", spec.match_iou);
    if (!(spec.match_iou > 0.0 && spec.match_iou < 1.0)) {
      Bad("inject.match_iou", "must lie in (0, 1)");
    }
    cfg.inject = spec;
  }
  cfg.seed = settings.Unsigned("seed").value_or(0);
  cfg.scenario.seed = cfg.seed;
  return cfg;
}

}  // namespace alkit::cli
