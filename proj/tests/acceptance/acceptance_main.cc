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

// Acceptance driver: one PASS/FAIL line per criterion.
//   acceptance_suite            run everything
//   acceptance_suite --only N   run criterion N

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "alkit/autolabel.h"
#include "alkit/dataset_io.h"
#include "alkit/errors.h"
#include "alkit/eval.h"
#include "alkit/geometry.h"
#include "alkit/labels.h"
#include "alkit/parallel.h"
#include "alkit/simdet.h"
#include "cli/commands.h"
#include "testing/builders.h"
#include "testing/fixtures.h"
#include "testing/oracles.h"

namespace alkit::acceptance {
namespace {

namespace fs = std::filesystem;
using testing::MakeDataset;
using testing::MakeFrame;
using testing::Obj;
using W = WeatherCondition;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

Mix<W> UniformWeather() {
  Mix<W> mix;
  for (W w : kAllWeatherConditions) mix[w] = 1.0 / kAllWeatherConditions.size();
  return mix;
}

const Mix<RoadType> kUrbanOnly = {{RoadType::kUrban, 1.0}};

Dataset WithConfidence(Dataset d, double conf) {
  for (auto& [id, frames] : d.sequences) {
    for (Frame& f : frames) {
      for (ObjectLabel& o : f.objects) o.confidence = conf;
    }
  }
  return d;
}

const Frame& FrameAt(const Dataset& d, const std::string& seq, std::uint64_t idx) {
  for (const Frame& f : d.sequences.at(seq)) {
    if (f.frame_index == idx) return f;
  }
  throw std::out_of_range("no frame " + seq + "#" + std::to_string(idx));
}

double BestIou(const Frame& f, const Box3D& box) {
  double best = 0.0;
  for (const ObjectLabel& o : f.objects) best = std::max(best, IouBev(o.box, box));
  return best;
}

double DatasetF1(const Dataset& labels, const Dataset& truth) {
  return ComputePrecisionRecallF1(
             MatchDatasets(labels, truth, IouKind::kBev, 0.3, kDefaultClass))
      .f1;
}

// ---------------------------------------------------------------------------
// 1. F1 arithmetic on the reference precision/recall pairs and the selected
//    threshold.

Verdict ThresholdTable() {
  struct Row {
    double precision, recall, f1;
  };
  constexpr Row kRows[] = {
      {0.757, 0.621, 0.683}, {0.878, 0.593, 0.708}, {0.930, 0.557, 0.697}};
  Verdict v{true, ""};
  for (const Row& r : kRows) {
    const double f1 = F1Score(r.precision, r.recall);
    const bool ok = std::abs(f1 - r.f1) <= 0.0005;
    v.pass &= ok;
    v.detail += Fmt("F1(%.3f,%.3f)=%.5f vs %.3f %s; ", r.precision, r.recall,
                    f1, r.f1, ok ? "ok" : "OUT OF TOLERANCE");
  }
  const auto [dets, truth] = testing::ThresholdTableFixture();
  const std::vector<double> taus = {0.1, 0.3, 0.5};
  const ThresholdReport report = SelectThreshold(dets, truth, taus, 0.3);
  v.pass &= report.best_tau == 0.3;
  v.detail += Fmt("select_threshold best_tau=%g", report.best_tau);
  return v;
}

// ---------------------------------------------------------------------------
// 2. Analytic BEV IoU against a 2000x2000 rasterization.

Verdict IouOracle() {
  std::mt19937_64 rng(20260101);
  double max_err = 0.0;
  int overlapping = 0;
  constexpr int kPairs = 1000;
  for (int i = 0; i < kPairs; ++i) {
    const Box3D a = testing::RandomBox(rng);
    const Box3D b = testing::RandomBox(rng);
    const double analytic = IouBev(a, b);
    if (analytic > 0.0) ++overlapping;
    max_err = std::max(max_err, std::abs(analytic - testing::RasterIouBev(a, b, 2000)));
  }
  const double third =
      IouBev(Box3D(0, 0, 0, 4, 2, 1, 0), Box3D(2, 0, 0, 4, 2, 1, 0));
  const bool third_ok = std::abs(third - 1.0 / 3.0) <= 1e-15;
  return {max_err < 1e-2 && third_ok,
          Fmt("%d pairs (%d overlapping), max |analytic-raster|=%.2e; "
              "axis-aligned fixture=%.17g",
              kPairs, overlapping, max_err, third)};
}

// ---------------------------------------------------------------------------
// 3. Average precision against hand-enumerated PR curves.

Verdict ApOracle() {
  const Dataset truth = MakeDataset({MakeFrame("s", 0, {Obj(0, 0), Obj(20, 0)})});
  const Dataset dets = MakeDataset(
      {MakeFrame("s", 0, {Obj(0, 0, 0.9), Obj(0, 50, 0.8), Obj(20, 0, 0.7)})});
  const double five_sixths =
      AveragePrecision(dets, truth, IouKind::kBev, 0.3, kDefaultClass);
  const double enumerated = testing::EnumeratedAp({true, false, true}, 2).value();
  double max_err = std::abs(five_sixths - 5.0 / 6.0);
  max_err = std::max(max_err, std::abs(enumerated - 5.0 / 6.0));

  std::mt19937_64 rng(33);
  constexpr int kFixtures = 10000;
  for (int i = 0; i < kFixtures; ++i) {
    const testing::SmallFixture fx = testing::RandomSmallFixture(rng);
    const double expected = testing::EnumeratedAp(fx.ranked_tp, fx.num_truth).value();
    for (IouKind kind : {IouKind::kBev, IouKind::k3d}) {
      max_err = std::max(
          max_err, std::abs(AveragePrecision(fx.dets, fx.truth, kind, 0.3,
                                             kDefaultClass) - expected));
    }
  }
  return {max_err <= 1e-12,
          Fmt("5/6 fixture AP=%.15f; %d random fixtures (<=10 detections), "
              "max error %.2e",
              five_sixths, kFixtures, max_err)};
}

// ---------------------------------------------------------------------------
// 4. Direction of the threshold sweep on synthetic detections.

Verdict SweepDirection() {
  constexpr int kSeeds = 20;
  const std::vector<double> taus = {0.1, 0.3, 0.5};
  int holds = 0;
  std::size_t min_objects = SIZE_MAX;
  std::string sample;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    ScenarioParams scenario;
    scenario.seed = seed;
    scenario.n_sequences = 120;
    const Dataset truth = GenerateTruth(scenario, UniformWeather(), kUrbanOnly,
                                        DefaultWorkers());
    min_objects = std::min(min_objects, truth.object_count());
    const Dataset dets = SimulateDetector(truth, DetectorNoiseModel::Defaults(),
                                          seed, DefaultWorkers());
    const ThresholdReport r =
        SelectThreshold(dets, truth, taus, 0.3, kDefaultClass, DefaultWorkers());
    bool ok = true;
    for (std::size_t k = 1; k < r.rows.size(); ++k) {
      ok &= r.rows[k].recall <= r.rows[k - 1].recall;
      ok &= r.rows[k].precision >= r.rows[k - 1].precision;
    }
    if (ok) ++holds;
    if (seed == 1) {
      for (const ThresholdRow& row : r.rows) {
        sample += Fmt("tau %.1f P %.3f R %.3f; ", row.tau, row.precision, row.recall);
      }
    }
  }
  return {holds >= 19 && min_objects >= 5000,
          Fmt("trend held in %d/%d seeds, >= %zu truth objects per seed; seed 1: ",
              holds, kSeeds, min_objects) +
              sample};
}

// ---------------------------------------------------------------------------
// 5. Temporal refinement against injected intermittent errors. Labels are the
//    synthetic detections thresholded at 0.3, then corrupted.

Verdict RefinementEfficacy() {
  constexpr int kSeeds = 100;
  constexpr std::size_t kPerKind = 4;
  std::size_t misses = 0, restored = 0, alarms = 0, removed = 0;
  int f1_holds = 0;
  int failed_seeds = 0;
  double f1_before_sum = 0.0, f1_after_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    ScenarioParams scenario;
    scenario.seed = seed;
    const Dataset truth = GenerateTruth(scenario, UniformWeather(), kUrbanOnly);
    const Dataset labels = ThresholdFilter(
        SimulateDetector(truth, DetectorNoiseModel::Defaults(), seed), 0.3);
    InjectionResult injected;
    try {
      injected = InjectIntermittentErrors(labels, kPerKind, kPerKind, seed);
    } catch (const DataError&) {
      ++failed_seeds;
      continue;
    }
    const DatasetRefineResult refined = TemporalRefine(injected.dataset, {});
    for (const Injection& inj : injected.injections) {
      const Frame& after = FrameAt(refined.dataset, inj.sequence_id, inj.frame_index);
      if (inj.kind == InjectionKind::kFalseAlarm) {
        ++alarms;
        if (BestIou(after, inj.object.box) == 0.0) ++removed;
        continue;
      }
      ++misses;
      // Score against the truth object the deleted detection stood for.
      const Frame& gt = FrameAt(truth, inj.sequence_id, inj.frame_index);
      Box3D target = inj.object.box;
      double best = 0.0;
      for (const ObjectLabel& o : gt.objects) {
        const double iou = IouBev(o.box, inj.object.box);
        if (iou > best) {
          best = iou;
          target = o.box;
        }
      }
      if (BestIou(after, target) >= 0.5) ++restored;
    }
    const double before = DatasetF1(injected.dataset, truth);
    const double after = DatasetF1(refined.dataset, truth);
    f1_before_sum += before;
    f1_after_sum += after;
    if (after >= before) ++f1_holds;
  }
  const double miss_rate = misses ? static_cast<double>(restored) / misses : 0.0;
  const double fa_rate = alarms ? static_cast<double>(removed) / alarms : 0.0;
  const int seeds_run = kSeeds - failed_seeds;
  return {failed_seeds == 0 && miss_rate >= 0.95 && fa_rate >= 0.95 && f1_holds >= 95,
          Fmt("misses restored %zu/%zu (%.1f%%), false alarms removed %zu/%zu "
              "(%.1f%%), F1 after >= before in %d/%d seeds (mean %.3f -> %.3f), "
              "%d seeds without injection candidates",
              restored, misses, 100.0 * miss_rate, removed, alarms, 100.0 * fa_rate,
              f1_holds, kSeeds, f1_before_sum / std::max(seeds_run, 1),
              f1_after_sum / std::max(seeds_run, 1), failed_seeds)};
}

// ---------------------------------------------------------------------------
// 6. Subset filtering, exhaustively over every combination of weather tags.

Verdict SubsetSemantics() {
  const std::set<W> heavy = {W::kSleet, W::kHeavySnow};
  const std::set<W> clear = {W::kNormal, W::kOvercast};
  int combos = 0;
  int failures = 0;
  for (unsigned mask = 1; mask < (1u << kAllWeatherConditions.size()); ++mask) {
    ++combos;
    std::vector<W> present;
    for (std::size_t i = 0; i < kAllWeatherConditions.size(); ++i) {
      if (mask & (1u << i)) present.push_back(kAllWeatherConditions[i]);
    }
    // One sequence per tag plus one sequence cycling through all of them.
    Dataset d;
    d.split_name = "subset";
    std::uint64_t idx = 0;
    for (W w : present) {
      const std::string seq(ToString(w));
      AppendFrame(d, MakeFrame(seq, 0, {Obj(0, 0, 0.5)}, w));
      AppendFrame(d, MakeFrame(seq, 1, {Obj(1, 0, 0.5)}, w));
      AppendFrame(d, MakeFrame("mixed", idx++, {Obj(5, 5)}, w));
    }
    auto expected = [&](const std::set<W>& dropped, bool keep_only) {
      Dataset e;
      e.split_name = d.split_name;
      for (const auto& [id, frames] : d.sequences) {
        for (const Frame& f : frames) {
          const bool in = dropped.contains(f.weather);
          if (keep_only ? in : !in) AppendFrame(e, f);
        }
      }
      return SerializeDataset(e);
    };
    const std::string all = SerializeDataset(FilterBySubset(d, SubsetSpec::For(SubsetName::kALL)));
    const std::string nofrl =
        SerializeDataset(FilterBySubset(d, SubsetSpec::For(SubsetName::kNOFRL)));
    const std::string no = SerializeDataset(FilterBySubset(d, SubsetSpec::For(SubsetName::kNO)));
    if (all != SerializeDataset(d)) ++failures;
    if (nofrl != expected(heavy, false)) ++failures;
    if (no != expected(clear, true)) ++failures;
  }
  const auto nofrl = SubsetSpec::For(SubsetName::kNOFRL).weathers;
  const bool spec_ok =
      nofrl == std::set<W>{W::kNormal, W::kOvercast, W::kFog, W::kRain, W::kLightSnow} &&
      SubsetSpec::For(SubsetName::kALL).weathers.size() == 7 &&
      SubsetSpec::For(SubsetName::kNO).weathers == clear;
  return {failures == 0 && spec_ok,
          Fmt("%d tag combinations x {ALL, NOFRL, NO}: %d mismatches", combos, failures)};
}

// ---------------------------------------------------------------------------
// 7. End-to-end determinism through the command-line entry point.

std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream f(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    files[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return files;
}

std::map<std::string, std::string> RunPipeline(const fs::path& dir, int workers,
                                               bool& ok, std::string& log) {
  ::setenv(kWorkersEnv, std::to_string(workers).c_str(), 1);
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "sim.json");
    cfg << R"({"seed": 7, "scenario": {"n_sequences": 12},
              "inject": {"n_fa": 5, "n_miss": 5}})";
  }
  const std::string d = dir.string();
  const std::vector<std::vector<std::string>> steps = {
      {"simulate", "--config", d + "/sim.json", "--out", d + "/sim"},
      {"autolabel", "--detections", d + "/sim/detections.jsonl", "--tau", "0.3",
       "--refine", "--out", d + "/al"},
      {"eval", "--detections", d + "/sim/detections.jsonl", "--truth",
       d + "/sim/truth.jsonl", "--tau", "0.3", "--svg", "--out", d + "/eval_det"},
      {"eval", "--detections", d + "/al/autolabels.jsonl", "--truth",
       d + "/sim/truth.jsonl", "--out", d + "/eval_al"},
  };
  std::ostringstream stdout_log;
  for (auto args : steps) {
    std::ostringstream err;
    const int code = cli::Run(args, stdout_log, err);
    if (code != 0) {
      ok = false;
      log += args[0] + " exited " + std::to_string(code) + ": " + err.str();
    }
  }
  ::unsetenv(kWorkersEnv);
  auto files = Snapshot(dir);
  files["<stdout>"] = stdout_log.str();
  return files;
}

Verdict Determinism() {
  const fs::path root =
      fs::temp_directory_path() / ("alkit_acceptance_" + std::to_string(::getpid()));
  const int max_workers =
      std::max(8, static_cast<int>(std::thread::hardware_concurrency()));
  bool ok = true;
  std::string log;
  const auto serial_a = RunPipeline(root / "a", 1, ok, log);
  const auto serial_b = RunPipeline(root / "b", 1, ok, log);
  const auto parallel = RunPipeline(root / "c", max_workers, ok, log);
  fs::remove_all(root);
  // Config paths differ per directory; everything else must match.
  auto strip = [](std::map<std::string, std::string> m) {
    m.erase("sim.json");
    return m;
  };
  const bool same_rerun = strip(serial_a) == strip(serial_b);
  const bool same_parallel = strip(serial_a) == strip(parallel);
  return {ok && same_rerun && same_parallel,
          Fmt("%zu output files; rerun identical: %s; 1 vs %d workers identical: %s",
              serial_a.size() - 2, same_rerun ? "yes" : "no", max_workers,
              same_parallel ? "yes" : "no") +
              (log.empty() ? "" : "; " + log)};
}

// ---------------------------------------------------------------------------
// 8. Invariant suites for every module.

struct Tally {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;

  void Check(bool ok) { failures += ok ? 0 : 1; }
};

Box3D Transformed(const Box3D& b, double theta, double tx, double ty) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Box3D(c * b.cx() - s * b.cy() + tx, s * b.cx() + c * b.cy() + ty, b.cz(),
               b.length(), b.width(), b.height(), b.yaw() + theta);
}

Tally GeometryProperties() {
  Tally t{"geometry"};
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  for (int i = 0; i < 10000; ++i, ++t.cases) {
    const Box3D a = testing::RandomBox(rng);
    const Box3D b = testing::RandomBox(rng);
    const double bev = IouBev(a, b);
    const double vol = Iou3d(a, b);
    t.Check(std::abs(bev - IouBev(b, a)) <= 1e-12);
    t.Check(std::abs(vol - Iou3d(b, a)) <= 1e-12);
    t.Check(bev >= 0.0 && bev <= 1.0 && vol >= 0.0 && vol <= 1.0);
    t.Check(IouBev(a, a) == 1.0 && Iou3d(a, a) == 1.0);
    const Box3D spun(b.cx(), b.cy(), b.cz(), b.length(), b.width(), b.height(),
                     b.yaw() + 2 * std::numbers::pi);
    t.Check(std::abs(IouBev(a, spun) - bev) <= 1e-12);
    t.Check(std::abs(Iou3d(a, spun) - vol) <= 1e-12);
    const double theta = angle(rng), tx = shift(rng), ty = shift(rng);
    const Box3D ta = Transformed(a, theta, tx, ty);
    const Box3D tb = Transformed(b, theta, tx, ty);
    t.Check(std::abs(IouBev(ta, tb) - bev) < 1e-9);
    t.Check(std::abs(Iou3d(ta, tb) - vol) < 1e-9);
    const Polygon2D pa = BoxToBevPolygon(a);
    const Polygon2D pb = BoxToBevPolygon(b);
    t.Check(PolygonArea(ConvexClip(pa, pb)) <=
            std::min(PolygonArea(pa), PolygonArea(pb)) + 1e-12);
  }
  return t;
}

Tally LabelsProperties() {
  Tally t{"labels"};
  std::mt19937_64 rng(82);
  const SubsetSpec specs[] = {SubsetSpec::For(SubsetName::kNO),
                              SubsetSpec::For(SubsetName::kNOFRL),
                              SubsetSpec::For(SubsetName::kALL)};
  for (int i = 0; i < 1000; ++i, ++t.cases) {
    const Dataset d = testing::RandomDataset(rng);
    const std::string text = SerializeDataset(d);
    t.Check(SerializeDataset(FilterBySubset(d, specs[2])) == text);
    for (const SubsetSpec& s : specs) {
      const Dataset once = FilterBySubset(d, s);
      t.Check(SerializeDataset(FilterBySubset(once, s)) == SerializeDataset(once));
    }
    Dataset merged;
    merged.split_name = d.split_name;
    std::vector<Frame> frames;
    for (const auto& [w, g] : GroupByWeather(d)) {
      for (const auto& [id, fs] : g.sequences) frames.insert(frames.end(), fs.begin(), fs.end());
    }
    std::sort(frames.begin(), frames.end(), [](const Frame& a, const Frame& b) {
      return std::tie(a.sequence_id, a.frame_index) < std::tie(b.sequence_id, b.frame_index);
    });
    for (Frame& f : frames) AppendFrame(merged, std::move(f));
    t.Check(SerializeDataset(merged) == text);
    std::istringstream in(text);
    t.Check(SerializeDataset(ReadDataset(in, "mem")) == text);
  }
  return t;
}

Tally EvalProperties() {
  Tally t{"eval"};
  std::mt19937_64 rng(83);
  for (int i = 0; i < 1000; ++i, ++t.cases) {
    testing::SmallFixture fx = testing::RandomSmallFixture(rng);
    const MatchResult m = MatchDatasets(fx.dets, fx.truth, IouKind::kBev, 0.3, kDefaultClass);
    t.Check(m.tp + m.fn == fx.truth.object_count());
    t.Check(m.tp + m.fp == fx.dets.object_count());
    const double ap = AveragePrecision(fx.dets, fx.truth, IouKind::kBev, 0.3, kDefaultClass);
    t.Check(ap >= 0.0 && ap <= 1.0);
    t.Check(std::abs(ap - testing::EnumeratedAp(fx.ranked_tp, fx.num_truth).value()) <= 1e-12);
    std::size_t prev = SIZE_MAX;
    for (double thr = 0.1; thr < 1.0; thr += 0.1) {
      const std::size_t tp =
          MatchDatasets(fx.dets, fx.truth, IouKind::k3d, thr, kDefaultClass).tp;
      t.Check(tp <= prev);
      prev = tp;
    }
    for (auto& [id, frames] : fx.dets.sequences) {
      for (Frame& f : frames) {
        for (ObjectLabel& o : f.objects) o.confidence = std::sqrt(*o.confidence);
      }
    }
    t.Check(AveragePrecision(fx.dets, fx.truth, IouKind::kBev, 0.3, kDefaultClass) == ap);
    const Dataset perfect = WithConfidence(fx.truth, 1.0);
    const auto prf = ComputePrecisionRecallF1(
        MatchDatasets(perfect, fx.truth, IouKind::kBev, 0.3, kDefaultClass));
    t.Check(prf.precision == 1.0 && prf.recall == 1.0 && prf.f1 == 1.0);
    t.Check(AveragePrecision(perfect, fx.truth, IouKind::kBev, 0.3, kDefaultClass) == 1.0);
    t.Check(AveragePrecision(perfect, fx.truth, IouKind::k3d, 0.3, kDefaultClass) == 1.0);
  }
  return t;
}

Tally AutolabelProperties() {
  Tally t{"autolabel"};
  std::mt19937_64 rng(84);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<double> taus = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 1000; ++i, ++t.cases) {
    const Dataset truth = testing::RandomDataset(rng, 2, 6, 4);
    Dataset dets = truth;
    for (auto& [id, frames] : dets.sequences) {
      for (Frame& f : frames) {
        for (ObjectLabel& o : f.objects) o.confidence = unit(rng);
      }
    }
    t.Check(ThresholdFilter(dets, 0.0).object_count() == dets.object_count());
    const ThresholdReport r = SelectThreshold(dets, truth, taus, 0.3);
    double best_f1 = -1.0;
    for (const ThresholdRow& row : r.rows) {
      if (row.tau == r.best_tau) best_f1 = row.f1;
    }
    std::size_t prev_count = SIZE_MAX;
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
      const std::size_t n = ThresholdFilter(dets, r.rows[k].tau).object_count();
      t.Check(n <= prev_count);
      prev_count = n;
      if (k > 0) t.Check(r.rows[k].recall <= r.rows[k - 1].recall);
      t.Check(r.rows[k].f1 <= best_f1);
    }
    const DatasetRefineResult refined = TemporalRefine(dets, {});
    for (const auto& [id, frames] : dets.sequences) {
      const auto& out = refined.dataset.sequences.at(id);
      t.Check(SerializeDataset(MakeDataset({frames.front()})) ==
              SerializeDataset(MakeDataset({out.front()})));
      t.Check(SerializeDataset(MakeDataset({frames.back()})) ==
              SerializeDataset(MakeDataset({out.back()})));
      std::vector<Frame> same;
      for (std::uint64_t k = 0; k < 4; ++k) {
        Frame f = frames.front();
        f.frame_index = k;
        same.push_back(f);
      }
      const RefineResult identity = TemporalRefine(same, {});
      t.Check(identity.events.empty());
      for (std::size_t k = 0; k < same.size(); ++k) {
        t.Check(SerializeDataset(MakeDataset({same[k]})) ==
                SerializeDataset(MakeDataset({identity.frames[k]})));
      }
    }
  }
  // Constant-velocity scenes with one injected error of each kind.
  for (std::uint64_t seed = 1; seed <= 100; ++seed, ++t.cases) {
    ScenarioParams scenario;
    scenario.n_sequences = 1;
    scenario.seed = seed;
    const Dataset truth = WithConfidence(
        GenerateTruth(scenario, {{W::kNormal, 1.0}}, kUrbanOnly), 1.0);
    InjectionResult injected;
    try {
      injected = InjectIntermittentErrors(truth, 1, 1, seed);
    } catch (const DataError&) {
      t.Check(false);
      continue;
    }
    const DatasetRefineResult refined = TemporalRefine(injected.dataset, {});
    for (const Injection& inj : injected.injections) {
      const double best =
          BestIou(FrameAt(refined.dataset, inj.sequence_id, inj.frame_index), inj.object.box);
      t.Check(inj.kind == InjectionKind::kMiss ? best >= 0.5 : best == 0.0);
    }
  }
  return t;
}

Tally SimdetProperties() {
  Tally t{"simdet"};
  int heavy_holds = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed, ++t.cases) {
    ScenarioParams scenario;
    scenario.seed = seed;
    scenario.n_sequences = 8;
    const Dataset truth = GenerateTruth(scenario, UniformWeather(), kUrbanOnly, 1);
    t.Check(SerializeDataset(truth) ==
            SerializeDataset(GenerateTruth(scenario, UniformWeather(), kUrbanOnly, 4)));
    const Dataset dets = SimulateDetector(truth, DetectorNoiseModel::Defaults(), seed, 1);
    t.Check(SerializeDataset(dets) ==
            SerializeDataset(SimulateDetector(truth, DetectorNoiseModel::Defaults(), seed, 4)));
    for (const auto& [id, frames] : dets.sequences) {
      for (const Frame& f : frames) {
        for (const ObjectLabel& o : f.objects) {
          t.Check(o.confidence && *o.confidence >= 0.0 && *o.confidence <= 1.0);
          for (double v : o.box.ToArray()) t.Check(std::isfinite(v));
        }
      }
    }
    auto recall = [&](W w) {
      const Dataset gt = GenerateTruth(scenario, {{w, 1.0}}, kUrbanOnly);
      const Dataset d = SimulateDetector(gt, DetectorNoiseModel::Defaults(), seed);
      return ComputePrecisionRecallF1(
                 MatchDatasets(d, gt, IouKind::kBev, 0.3, kDefaultClass))
          .recall;
    };
    const double normal = recall(W::kNormal);
    if (recall(W::kSleet) <= normal && recall(W::kHeavySnow) <= normal) ++heavy_holds;
  }
  t.Check(heavy_holds >= 19);
  return t;
}

Tally CliProperties() {
  Tally t{"cli"};
  const fs::path dir =
      fs::temp_directory_path() / ("alkit_acceptance_cli_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  SaveDataset(MakeDataset({MakeFrame("s", 0, {Obj(0, 0, 0.9)})}), dir / "d.jsonl");
  SaveDataset(MakeDataset({MakeFrame("s", 0, {Obj(0, 0)})}), dir / "t.jsonl");
  SaveDataset(MakeDataset({MakeFrame("s", 1, {Obj(0, 0)})}), dir / "u.jsonl");
  const std::string d = dir.string();
  const std::vector<std::pair<int, std::vector<std::string>>> cases = {
      {0, {"eval", "--detections", d + "/d.jsonl", "--truth", d + "/t.jsonl", "--out", d}},
      {2, {"eval", "--detections", d + "/d.jsonl", "--truth", d + "/t.jsonl", "--iou", "2"}},
      {2, {"autolabel", "--detections", d + "/d.jsonl"}},
      {3, {"eval", "--detections", d + "/missing.jsonl", "--truth", d + "/t.jsonl"}},
      {4, {"eval", "--detections", d + "/d.jsonl", "--truth", d + "/u.jsonl", "--out", d}},
  };
  for (auto [expected, args] : cases) {
    ++t.cases;
    std::ostringstream out, err;
    t.Check(cli::Run(args, out, err) == expected);
  }
  fs::remove_all(dir);
  return t;
}

Verdict InvariantSuites() {
  Verdict v{true, ""};
  for (auto suite : {GeometryProperties, LabelsProperties, EvalProperties,
                     AutolabelProperties, SimdetProperties, CliProperties}) {
    const Tally t = suite();
    v.pass &= t.failures == 0;
    v.detail += Fmt("%s %zu cases/%zu failed; ", t.name.c_str(), t.cases, t.failures);
  }
  return v;
}

struct Criterion {
  int id;
  const char* title;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {1, "F1 arithmetic on the reference sweep", ThresholdTable},
    {2, "BEV IoU matches rasterization oracle", IouOracle},
    {3, "AP matches enumerated PR curves", ApOracle},
    {4, "threshold sweep direction on synthetic detections", SweepDirection},
    {5, "temporal refinement undoes injected errors", RefinementEfficacy},
    {6, "weather subset semantics", SubsetSemantics},
    {7, "pipeline determinism across runs and workers", Determinism},
    {8, "module invariant suites", InvariantSuites},
};

}  // namespace
}  // namespace alkit::acceptance

int main(int argc, char** argv) {
  using namespace alkit::acceptance;
  CLI::App app{"autolabel-kit acceptance suite"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion (1-8)")
      ->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": "
              << c.title << " [" << Fmt("%.2fs", secs) << "] " << v.detail
              << std::endl;
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
