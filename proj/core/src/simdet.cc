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

#include "alkit/simdet.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <tuple>
#include <utility>

#include "alkit/autolabel.h"
#include "alkit/errors.h"
#include "alkit/parallel.h"
#include "json.hpp"

namespace alkit {

namespace {

constexpr double kMixTolerance = 1e-9;
constexpr int kPlacementAttempts = 100;
constexpr int kFalseAlarmAttempts = 1000;
constexpr double kMinDetectedDim = 0.1;

enum class Purpose : std::uint32_t {
  kConditions = 1,
  kObjects = 2,
  kDetector = 3,
  kInject = 4,
};

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::mt19937_64 MakeStream(std::uint64_t seed, std::string_view key,
                           Purpose purpose) {
  const std::uint64_t h = Fnv1a(key);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

double Uniform(std::mt19937_64& rng, const Range& r) {
  if (r.max <= r.min) return r.min;
  return std::uniform_real_distribution<double>(r.min, r.max)(rng);
}

double UniformYaw(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-std::numbers::pi,
                                                std::numbers::pi)(rng);
}

std::size_t PoissonCount(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  return static_cast<std::size_t>(std::poisson_distribution<int>(mean)(rng));
}

template <typename Key, std::size_t N>
Key SampleMix(std::mt19937_64& rng, const Mix<Key>& mix,
              const std::array<Key, N>& all) {
  std::vector<double> weights;
  weights.reserve(N);
  for (Key k : all) {
    auto it = mix.find(k);
    weights.push_back(it == mix.end() ? 0.0 : it->second);
  }
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  return all[dist(rng)];
}

template <typename Key>
void ValidateMixImpl(const Mix<Key>& mix, const char* what) {
  double sum = 0.0;
  for (const auto& [k, w] : mix) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ConfigError(std::string(what) + "." + std::string(ToString(k)) +
                        ": weight must be a non-negative number");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kMixTolerance) {
    throw ConfigError(std::string(what) + ": weights sum to " +
                      std::to_string(sum) + ", expected 1");
  }
}

void CheckRange(const Range& r, const std::string& field, bool positive) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max) {
    throw ConfigError(field + ": invalid range [" + std::to_string(r.min) +
                      ", " + std::to_string(r.max) + "]");
  }
  if (positive && r.min <= 0.0) {
    throw ConfigError(field + ": must be positive");
  }
}

std::string SequenceName(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "seq_%04zu", i);
  return buf;
}

std::vector<Frame> GenerateSequence(const ScenarioParams& params,
                                    const Mix<WeatherCondition>& weather_mix,
                                    const Mix<RoadType>& road_mix,
                                    const std::string& id) {
  auto cond_rng = MakeStream(params.seed, id, Purpose::kConditions);
  const WeatherCondition weather =
      SampleMix(cond_rng, weather_mix, kAllWeatherConditions);
  const RoadType road = SampleMix(cond_rng, road_mix, kAllRoadTypes);

  auto rng = MakeStream(params.seed, id, Purpose::kObjects);
  const std::size_t frames = params.frames_per_sequence;
  const std::size_t wanted = PoissonCount(rng, params.objects_per_frame_mean);

  struct Placed {
    Track track;
    std::size_t lifetime;
    std::string class_name;
  };
  std::vector<Placed> placed;
  for (std::size_t k = 0; k < wanted; ++k) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const double length = Uniform(rng, params.length_range);
      const double width = Uniform(rng, params.width_range);
      const double height = Uniform(rng, params.height_range);
      const double heading = UniformYaw(rng);
      const double speed = Uniform(rng, params.speed_range);
      const double x = Uniform(rng, params.x_range);
      const double y = Uniform(rng, params.y_range);
      const std::size_t cls = std::uniform_int_distribution<std::size_t>(
          0, params.classes.size() - 1)(rng);

      const Track track{Box3D(x, y, 0.5 * height, length, width, height,
                              heading),
                        {speed * std::cos(heading), speed * std::sin(heading)}};
      std::size_t lifetime = 0;
      while (lifetime < frames &&
             FootprintInside(TrackBoxAt(track, lifetime), params.x_range,
                             params.y_range)) {
        ++lifetime;
      }
      if (lifetime == 0) continue;

      bool clear = true;
      for (const Placed& other : placed) {
        const std::size_t shared = std::min(lifetime, other.lifetime);
        for (std::size_t f = 0; f < shared && clear; ++f) {
          clear = BevIntersectionArea(TrackBoxAt(track, f),
                                      TrackBoxAt(other.track, f)) <= 0.0;
        }
        if (!clear) break;
      }
      if (!clear) continue;
      placed.push_back({track, lifetime, params.classes[cls]});
      break;
    }
  }

  std::vector<Frame> out(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    out[f].frame_index = f;
    out[f].sequence_id = id;
    out[f].weather = weather;
    out[f].road = road;
    for (std::size_t k = 0; k < placed.size(); ++k) {
      if (f >= placed[k].lifetime) continue;
      out[f].objects.push_back({placed[k].class_name,
                                TrackBoxAt(placed[k].track, f), std::nullopt,
                                id + "/o" + std::to_string(k)});
    }
  }
  return out;
}

Frame SimulateFrame(const Frame& truth, const DetectorNoiseModel& model,
                    std::mt19937_64& rng) {
  const WeatherNoise& noise = model.For(truth.weather);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Frame out = truth;
  out.objects.clear();
  for (const ObjectLabel& obj : truth.objects) {
    if (!(unit(rng) < noise.p_detect)) continue;
    const Box3D& b = obj.box;
    const double dx = gauss(rng) * noise.pos_sigma;
    const double dy = gauss(rng) * noise.pos_sigma;
    const double dz = gauss(rng) * noise.pos_sigma;
    const double dl = gauss(rng) * noise.dim_sigma;
    const double dw = gauss(rng) * noise.dim_sigma;
    const double dh = gauss(rng) * noise.dim_sigma;
    const double dyaw = gauss(rng) * noise.yaw_sigma;
    const Box3D det(b.cx() + dx, b.cy() + dy, b.cz() + dz,
                    std::max(kMinDetectedDim, b.length() + dl),
                    std::max(kMinDetectedDim, b.width() + dw),
                    std::max(kMinDetectedDim, b.height() + dh),
                    b.yaw() + dyaw);
    out.objects.push_back(
        {obj.class_name, det,
         ConfidenceFromPerturbation(model.conf_shape, b, det), std::nullopt});
  }

  const FalseAlarmShape& fa = model.false_alarms;
  const std::size_t n_fa = PoissonCount(rng, noise.fa_rate);
  for (std::size_t k = 0; k < n_fa; ++k) {
    const double length = Uniform(rng, fa.length_range);
    const double width = Uniform(rng, fa.width_range);
    const double height = Uniform(rng, fa.height_range);
    const double x = Uniform(rng, fa.x_range);
    const double y = Uniform(rng, fa.y_range);
    const double yaw = UniformYaw(rng);
    const double conf = Uniform(rng, {fa.conf_min, fa.conf_max});
    out.objects.push_back({fa.class_name,
                           Box3D(x, y, 0.5 * height, length, width, height, yaw),
                           conf, std::nullopt});
  }
  return out;
}

struct FrameRef {
  std::string sequence_id;
  std::size_t position;  // index within the sequence's frame list
};

std::vector<FrameRef> InteriorFrames(const Dataset& d) {
  std::vector<FrameRef> out;
  for (const auto& [id, frames] : d.sequences) {
    for (std::size_t t = 1; t + 1 < frames.size(); ++t) out.push_back({id, t});
  }
  return out;
}

struct MissCandidate {
  FrameRef frame;
  std::size_t object;
};

std::vector<MissCandidate> MissCandidates(const Dataset& d, double match_iou) {
  std::vector<MissCandidate> out;
  for (const FrameRef& ref : InteriorFrames(d)) {
    const auto& frames = d.sequences.at(ref.sequence_id);
    const Frame& prev = frames[ref.position - 1];
    const Frame& cur = frames[ref.position];
    const Frame& next = frames[ref.position + 1];
    const FrameMatching with_prev = MatchFrames(cur, prev, match_iou);
    const FrameMatching with_next = MatchFrames(cur, next, match_iou);
    const FrameMatching across = MatchFrames(prev, next, match_iou);
    for (const auto& [i, p] : with_prev.pairs) {
      for (const auto& [j, q] : with_next.pairs) {
        if (i != j) continue;
        const bool linked = std::find(across.pairs.begin(), across.pairs.end(),
                                      std::pair{p, q}) != across.pairs.end();
        if (linked) out.push_back({ref, i});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const MissCandidate& a,
                                       const MissCandidate& b) {
    return std::tie(a.frame.sequence_id, a.frame.position, a.object) <
           std::tie(b.frame.sequence_id, b.frame.position, b.object);
  });
  return out;
}

bool OverlapsAny(const Box3D& box, const Frame& frame) {
  return std::any_of(frame.objects.begin(), frame.objects.end(),
                     [&](const ObjectLabel& o) {
                       return BevIntersectionArea(box, o.box) > 0.0;
                     });
}

// Shape of injected false alarms: the dataset's first object, else a
// generic sedan.
ObjectLabel TemplateObject(const Dataset& d) {
  for (const auto& [id, frames] : d.sequences) {
    for (const Frame& f : frames) {
      if (!f.objects.empty()) return f.objects.front();
    }
  }
  return {std::string(kDefaultClass), Box3D(0, 0, 0.8, 4.5, 1.8, 1.6, 0),
          std::nullopt, std::nullopt};
}

using Json = nlohmann::ordered_json;

}  // namespace

Box3D TrackBoxAt(const Track& track, std::uint64_t frame) {
  const double f = static_cast<double>(frame);
  const Box3D& b = track.initial;
  return Box3D(b.cx() + f * track.velocity.x, b.cy() + f * track.velocity.y,
               b.cz(), b.length(), b.width(), b.height(), b.yaw());
}

bool FootprintInside(const Box3D& box, const Range& x, const Range& y) {
  const Polygon2D p = BoxToBevPolygon(box);
  return std::all_of(p.vertices.begin(), p.vertices.end(), [&](const Vec2& v) {
    return x.Contains(v.x) && y.Contains(v.y);
  });
}

void ValidateMix(const Mix<WeatherCondition>& mix) {
  ValidateMixImpl(mix, "weather_mix");
}

void ValidateMix(const Mix<RoadType>& mix) { ValidateMixImpl(mix, "road_mix"); }

void ValidateScenario(const ScenarioParams& p) {
  if (p.n_sequences < 1) throw ConfigError("n_sequences: must be >= 1");
  if (p.frames_per_sequence < 1) {
    throw ConfigError("frames_per_sequence: must be >= 1");
  }
  if (!std::isfinite(p.objects_per_frame_mean) ||
      p.objects_per_frame_mean <= 0.0) {
    throw ConfigError("objects_per_frame_mean: must be positive");
  }
  CheckRange(p.x_range, "x_range", false);
  CheckRange(p.y_range, "y_range", false);
  CheckRange(p.speed_range, "speed_range", false);
  if (p.speed_range.min < 0.0) {
    throw ConfigError("speed_range: must be non-negative");
  }
  CheckRange(p.length_range, "length_range", true);
  CheckRange(p.width_range, "width_range", true);
  CheckRange(p.height_range, "height_range", true);
  if (p.classes.empty()) throw ConfigError("classes: must not be empty");
  for (const std::string& c : p.classes) {
    if (c.empty()) throw ConfigError("classes: empty class name");
  }
}

Dataset GenerateTruth(const ScenarioParams& params,
                      const Mix<WeatherCondition>& weather_mix,
                      const Mix<RoadType>& road_mix, int workers) {
  ValidateScenario(params);
  ValidateMix(weather_mix);
  ValidateMix(road_mix);

  std::vector<std::vector<Frame>> seqs(params.n_sequences);
  ParallelFor(params.n_sequences, workers, [&](std::size_t i) {
    seqs[i] = GenerateSequence(params, weather_mix, road_mix, SequenceName(i));
  });
  Dataset out;
  out.split_name = "truth";
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    out.sequences.emplace(SequenceName(i), std::move(seqs[i]));
  }
  return out;
}

DetectorNoiseModel DetectorNoiseModel::Defaults() {
  using W = WeatherCondition;
  constexpr double kBaseFaRate = 0.5;
  const WeatherNoise clear{0.95, 0.15, 0.10, 0.05, kBaseFaRate};
  const WeatherNoise light{0.90, 0.25, 0.15, 0.08, kBaseFaRate};
  const WeatherNoise heavy{0.70, 0.50, 0.25, 0.15, 3.0 * kBaseFaRate};
  DetectorNoiseModel m;
  m.per_weather = {{W::kNormal, clear},    {W::kOvercast, clear},
                   {W::kFog, light},       {W::kRain, light},
                   {W::kLightSnow, light}, {W::kSleet, heavy},
                   {W::kHeavySnow, heavy}};
  return m;
}

DetectorNoiseModel DetectorNoiseModel::Uniform(const WeatherNoise& noise) {
  DetectorNoiseModel m;
  for (WeatherCondition w : kAllWeatherConditions) m.per_weather[w] = noise;
  return m;
}

const WeatherNoise& DetectorNoiseModel::For(WeatherCondition weather) const {
  auto it = per_weather.find(weather);
  if (it == per_weather.end()) {
    throw ConfigError("noise model has no entry for " +
                      std::string(ToString(weather)));
  }
  return it->second;
}

void ValidateNoiseModel(const DetectorNoiseModel& model) {
  for (WeatherCondition w : kAllWeatherConditions) {
    const std::string prefix = std::string(ToString(w)) + ".";
    const WeatherNoise& n = model.For(w);
    if (!(n.p_detect >= 0.0 && n.p_detect <= 1.0)) {
      throw ConfigError(prefix + "p_detect: must lie in [0, 1]");
    }
    const std::pair<const char*, double> sigmas[] = {
        {"pos_sigma", n.pos_sigma}, {"dim_sigma", n.dim_sigma},
        {"yaw_sigma", n.yaw_sigma}, {"fa_rate", n.fa_rate}};
    for (const auto& [name, v] : sigmas) {
      if (!std::isfinite(v) || v < 0.0) {
        throw ConfigError(prefix + name + ": must be non-negative");
      }
    }
  }
  const ConfidenceShape& c = model.conf_shape;
  const std::pair<const char*, double> scales[] = {{"pos_scale", c.pos_scale},
                                                   {"dim_scale", c.dim_scale},
                                                   {"yaw_scale", c.yaw_scale},
                                                   {"d_max", c.d_max}};
  for (const auto& [name, v] : scales) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw ConfigError(std::string("conf_shape.") + name +
                        ": must be positive");
    }
  }
  if (!(c.floor >= 0.0 && c.floor <= 1.0)) {
    throw ConfigError("conf_shape.floor: must lie in [0, 1]");
  }
  const FalseAlarmShape& fa = model.false_alarms;
  CheckRange(fa.x_range, "false_alarms.x_range", false);
  CheckRange(fa.y_range, "false_alarms.y_range", false);
  CheckRange(fa.length_range, "false_alarms.length_range", true);
  CheckRange(fa.width_range, "false_alarms.width_range", true);
  CheckRange(fa.height_range, "false_alarms.height_range", true);
  if (!(fa.conf_min >= 0.0 && fa.conf_min <= fa.conf_max &&
        fa.conf_max <= 1.0)) {
    throw ConfigError("false_alarms.conf_min/conf_max: need 0 <= min <= max <= 1");
  }
  if (fa.class_name.empty()) {
    throw ConfigError("false_alarms.class_name: must not be empty");
  }
}

double ConfidenceFromPerturbation(const ConfidenceShape& shape,
                                  const Box3D& truth, const Box3D& detected) {
  const double terms[] = {
      (detected.cx() - truth.cx()) / shape.pos_scale,
      (detected.cy() - truth.cy()) / shape.pos_scale,
      (detected.cz() - truth.cz()) / shape.pos_scale,
      (detected.length() - truth.length()) / shape.dim_scale,
      (detected.width() - truth.width()) / shape.dim_scale,
      (detected.height() - truth.height()) / shape.dim_scale,
      NormalizeYaw(detected.yaw() - truth.yaw()) / shape.yaw_scale,
  };
  double sq = 0.0;
  for (double t : terms) sq += t * t;
  return std::clamp(1.0 - std::sqrt(sq) / shape.d_max, shape.floor, 1.0);
}

Dataset SimulateDetector(const Dataset& truth, const DetectorNoiseModel& noise,
                         std::uint64_t seed, int workers) {
  ValidateNoiseModel(noise);
  std::vector<const std::pair<const std::string, std::vector<Frame>>*> seqs;
  for (const auto& entry : truth.sequences) seqs.push_back(&entry);

  std::vector<std::vector<Frame>> out_frames(seqs.size());
  ParallelFor(seqs.size(), workers, [&](std::size_t i) {
    auto rng = MakeStream(seed, seqs[i]->first, Purpose::kDetector);
    for (const Frame& f : seqs[i]->second) {
      out_frames[i].push_back(SimulateFrame(f, noise, rng));
    }
  });

  Dataset out;
  out.split_name = "detections";
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    out.sequences.emplace(seqs[i]->first, std::move(out_frames[i]));
  }
  return out;
}

std::string_view ToString(InjectionKind kind) {
  return kind == InjectionKind::kFalseAlarm ? "false_alarm" : "miss";
}

InjectionResult InjectIntermittentErrors(const Dataset& dataset,
                                         std::size_t n_fa, std::size_t n_miss,
                                         std::uint64_t seed,
                                         double match_iou) {
  InjectionResult result{dataset, {}};
  Dataset& d = result.dataset;
  auto rng = MakeStream(seed, "", Purpose::kInject);

  for (std::size_t k = 0; k < n_miss; ++k) {
    const auto candidates = MissCandidates(d, match_iou);
    if (candidates.empty()) {
      throw DataError("cannot inject miss " + std::to_string(k + 1) + " of " +
                      std::to_string(n_miss) + ": no eligible interior object");
    }
    const MissCandidate& pick = candidates[std::uniform_int_distribution<
        std::size_t>(0, candidates.size() - 1)(rng)];
    Frame& f = d.sequences.at(pick.frame.sequence_id)[pick.frame.position];
    result.injections.push_back({InjectionKind::kMiss, f.sequence_id,
                                 f.frame_index, f.objects[pick.object]});
    f.objects.erase(f.objects.begin() +
                    static_cast<std::ptrdiff_t>(pick.object));
  }

  if (n_fa == 0) return result;
  const auto interior = InteriorFrames(d);
  if (interior.empty()) {
    throw DataError("cannot inject false alarms: no interior frames");
  }

  const ObjectLabel tmpl = TemplateObject(dataset);
  const std::string& cls = tmpl.class_name;
  const double length = tmpl.box.length();
  const double width = tmpl.box.width();
  const double height = tmpl.box.height();
  const bool with_confidence = tmpl.confidence.has_value();

  for (std::size_t k = 0; k < n_fa; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < kFalseAlarmAttempts && !placed;
         ++attempt) {
      const FrameRef& ref = interior[std::uniform_int_distribution<std::size_t>(
          0, interior.size() - 1)(rng)];
      auto& frames = d.sequences.at(ref.sequence_id);

      Range xr{-10.0, 10.0}, yr{-10.0, 10.0};
      bool first = true;
      for (const Frame& f : frames) {
        for (const ObjectLabel& o : f.objects) {
          if (first) {
            xr = {o.box.cx(), o.box.cx()};
            yr = {o.box.cy(), o.box.cy()};
            first = false;
          }
          xr = {std::min(xr.min, o.box.cx()), std::max(xr.max, o.box.cx())};
          yr = {std::min(yr.min, o.box.cy()), std::max(yr.max, o.box.cy())};
        }
      }
      xr = {xr.min - 10.0, xr.max + 10.0};
      yr = {yr.min - 10.0, yr.max + 10.0};

      const double x = Uniform(rng, xr);
      const double y = Uniform(rng, yr);
      const double yaw = UniformYaw(rng);
      const double conf = Uniform(rng, {0.5, 1.0});
      const Box3D box(x, y, 0.5 * height, length, width, height, yaw);
      const std::size_t t = ref.position;
      if (OverlapsAny(box, frames[t - 1]) || OverlapsAny(box, frames[t]) ||
          OverlapsAny(box, frames[t + 1])) {
        continue;
      }
      ObjectLabel fa{cls, box, std::nullopt, std::nullopt};
      if (with_confidence) fa.confidence = conf;
      frames[t].objects.push_back(fa);
      result.injections.push_back({InjectionKind::kFalseAlarm,
                                   frames[t].sequence_id,
                                   frames[t].frame_index, std::move(fa)});
      placed = true;
    }
    if (!placed) {
      throw DataError("cannot inject false alarm " + std::to_string(k + 1) +
                      ": no free placement found");
    }
  }
  return result;
}

std::string InjectionsToJson(const std::vector<Injection>& injections) {
  Json root;
  root["injections"] = Json::array();
  for (const Injection& inj : injections) {
    Json obj;
    obj["cls"] = inj.object.class_name;
    if (inj.object.confidence) obj["conf"] = *inj.object.confidence;
    if (inj.object.object_id) obj["id"] = *inj.object.object_id;
    obj["box"] = Json::array();
    for (double v : inj.object.box.ToArray()) obj["box"].push_back(v);
    Json j;
    j["kind"] = std::string(ToString(inj.kind));
    j["seq"] = inj.sequence_id;
    j["idx"] = inj.frame_index;
    j["object"] = std::move(obj);
    root["injections"].push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

std::vector<Injection> InjectionsFromJson(std::string_view text) {
  std::vector<Injection> out;
  try {
    const Json root = Json::parse(text);
    for (const Json& j : root.at("injections")) {
      const std::string kind = j.at("kind").get<std::string>();
      if (kind != "miss" && kind != "false_alarm") {
        throw DataError("injection sidecar: unknown kind '" + kind + "'");
      }
      const Json& o = j.at("object");
      const auto b = o.at("box").get<std::vector<double>>();
      if (b.size() != 7) throw DataError("injection sidecar: bad box");
      ObjectLabel obj{o.at("cls").get<std::string>(),
                      Box3D(b[0], b[1], b[2], b[3], b[4], b[5], b[6]),
                      std::nullopt, std::nullopt};
      if (o.contains("conf")) obj.confidence = o.at("conf").get<double>();
      if (o.contains("id")) obj.object_id = o.at("id").get<std::string>();
      out.push_back({kind == "miss" ? InjectionKind::kMiss
                                    : InjectionKind::kFalseAlarm,
                     j.at("seq").get<std::string>(),
                     j.at("idx").get<std::uint64_t>(), std::move(obj)});
    }
  } catch (const Json::exception& e) {
    throw DataError(std::string("injection sidecar: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("injection sidecar: ") + e.what());
  }
  return out;
}

}  // namespace alkit
