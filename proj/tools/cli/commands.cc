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

#include "cli/commands.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "alkit/autolabel.h"
#include "alkit/dataset_io.h"
#include "alkit/errors.h"
#include "alkit/eval.h"
#include "alkit/parallel.h"
#include "alkit/report.h"
#include "alkit/simdet.h"
#include "cli/run_config.h"

namespace alkit::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<double> kDefaultSweepTaus = {0.1, 0.3, 0.5};

// One subcommand: its CLI11 app plus the closures that copy parsed flags
// into the command's Settings.
struct Command {
  CLI::App* app = nullptr;
  std::string config;
  std::vector<std::function<void(Settings&)>> apply;

  template <typename T>
  void Value(const std::string& flag, const std::string& key,
             const std::string& help) {
    auto holder = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *holder, help);
    apply.push_back([opt, holder, key](Settings& s) {
      if (opt->count() > 0) s.SetFlag(key, Json(*holder));
    });
  }

  void Switch(const std::string& flag, const std::string& key,
              const std::string& help) {
    auto holder = std::make_shared<bool>(false);
    CLI::Option* opt = app->add_flag(flag, *holder, help);
    apply.push_back([opt, holder, key](Settings& s) {
      if (opt->count() > 0) s.SetFlag(key, Json(*holder));
    });
  }

  Settings Build(Settings settings) const {
    for (const auto& f : apply) f(settings);
    if (!config.empty()) settings.MergeFile(config);
    return settings;
  }
};

fs::path RequireInput(const Settings& s, const std::string& key) {
  const fs::path p = s.RequireString(key);
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) {
    throw IoError(key + ": no such file: " + p.string());
  }
  return p;
}

fs::path PrepareOutDir(const Settings& s) {
  const fs::path dir = s.String("out").value_or(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
  return dir;
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write failed: " + path.string());
}

double RatioIn(const Settings& s, const std::string& key, double fallback,
               bool open_low, bool open_high) {
  const double v = s.Number(key).value_or(fallback);
  const bool ok = (open_low ? v > 0.0 : v >= 0.0) &&
                  (open_high ? v < 1.0 : v <= 1.0);
  if (!ok) {
    throw ConfigError(key + ": " + std::to_string(v) + " outside " +
                      (open_low ? "(0" : "[0") + ", " +
                      (open_high ? "1)" : "1]"));
  }
  return v;
}

std::string ClassName(const Settings& s) {
  std::string cls = s.String("class").value_or(std::string(kDefaultClass));
  if (cls.empty()) throw ConfigError("class: must not be empty");
  return cls;
}

int Simulate(const Settings& s, std::ostream& out) {
  const SimulateConfig cfg = ParseSimulateConfig(s);
  const fs::path dir = PrepareOutDir(s);
  const int workers = DefaultWorkers();

  const Dataset truth =
      GenerateTruth(cfg.scenario, cfg.weather_mix, cfg.road_mix, workers);
  Dataset dets = SimulateDetector(truth, cfg.noise, cfg.seed, workers);
  if (cfg.inject) {
    InjectionResult injected =
        InjectIntermittentErrors(dets, cfg.inject->n_fa, cfg.inject->n_miss,
                                 cfg.seed, cfg.inject->match_iou);
    dets = std::move(injected.dataset);
    WriteTextFile(dir / "injections.json",
                  InjectionsToJson(injected.injections));
  }
  SaveDataset(truth, dir / "truth.jsonl");
  SaveDataset(dets, dir / "detections.jsonl");
  out << "sequences=" << truth.sequences.size()
      << " frames=" << truth.frame_count()
      << " truth_objects=" << truth.object_count()
      << " detections=" << dets.object_count() << '\n';
  return kExitOk;
}

int Autolabel(const Settings& s, std::ostream& out) {
  if (!s.Has("tau")) throw ConfigError("tau required");
  const double tau = RatioIn(s, "tau", 0.0, false, false);
  RefinementParams params;
  params.match_iou = RatioIn(s, "match_iou", 0.3, true, true);
  const bool refine = s.Flag("refine", false);
  const fs::path input = RequireInput(s, "detections");
  const fs::path dir = PrepareOutDir(s);

  const Dataset dets = LoadDataset(input);
  Dataset labels = ThresholdFilter(dets, tau);
  const std::size_t kept = labels.object_count();
  std::size_t removed = 0;
  std::size_t inserted = 0;
  if (refine) {
    DatasetRefineResult r = TemporalRefine(labels, params, DefaultWorkers());
    labels = std::move(r.dataset);
    removed = r.removed;
    inserted = r.inserted;
  }
  labels.split_name = "autolabels";
  SaveDataset(labels, dir / "autolabels.jsonl");
  out << "kept=" << kept << " below_tau=" << dets.object_count() - kept
      << " removed_fa=" << removed << " inserted_miss=" << inserted << '\n';
  return kExitOk;
}

int Sweep(const Settings& s, std::ostream& out) {
  std::vector<double> taus = s.NumberList("tau");
  if (taus.empty()) taus = kDefaultSweepTaus;
  for (double t : taus) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ConfigError("tau: " + std::to_string(t) + " outside [0, 1]");
    }
  }
  const double match_iou = RatioIn(s, "match_iou", 0.3, true, true);
  const std::string cls = ClassName(s);
  const fs::path det_path = RequireInput(s, "detections");
  const fs::path truth_path = RequireInput(s, "truth");
  const fs::path dir = PrepareOutDir(s);

  const ThresholdReport report =
      SelectThreshold(LoadDataset(det_path), LoadDataset(truth_path), taus,
                      match_iou, cls, DefaultWorkers());
  std::ostringstream csv;
  WriteSweepCsv(report, csv);
  WriteTextFile(dir / "sweep.csv", csv.str());
  out << csv.str();
  return kExitOk;
}

int Eval(const Settings& s, std::ostream& out) {
  const double iou = RatioIn(s, "iou", kDefaultEvalIou, true, false);
  const std::string cls = ClassName(s);
  const std::string subset_name = s.String("subset").value_or("ALL");
  const auto subset_id = ParseSubsetName(subset_name);
  if (!subset_id) {
    throw ConfigError("subset: expected NO, NOFRL or ALL, got '" +
                      subset_name + "'");
  }
  std::optional<double> tau;
  if (s.Has("tau")) tau = RatioIn(s, "tau", 0.0, false, false);
  const bool svg = s.Flag("svg", false);
  const fs::path det_path = RequireInput(s, "detections");
  const fs::path truth_path = RequireInput(s, "truth");
  const fs::path dir = PrepareOutDir(s);
  const int workers = DefaultWorkers();

  const SubsetSpec subset = SubsetSpec::For(*subset_id);
  const Dataset dets = FilterBySubset(LoadDataset(det_path), subset);
  const Dataset truth = FilterBySubset(LoadDataset(truth_path), subset);

  EvalReport report = EvaluateByCondition(dets, truth, iou, cls, workers);
  if (tau) {
    report.prf_at_tau = ComputePrecisionRecallF1(MatchDatasets(
        ThresholdFilter(dets, *tau), truth, IouKind::kBev, iou, cls, workers));
  }

  const std::vector<WeatherCondition> conditions(subset.weathers.begin(),
                                                 subset.weathers.end());
  std::ostringstream csv;
  WriteEvalCsv(report, conditions, csv);
  WriteTextFile(dir / "eval.csv", csv.str());
  out << csv.str();
  if (report.prf_at_tau) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "prf_at_tau tau=%g precision=%.3f recall=%.3f f1=%.3f\n",
                  *tau, report.prf_at_tau->precision,
                  report.prf_at_tau->recall, report.prf_at_tau->f1);
    out << buf;
  }

  if (svg) {
    auto render = [&](const std::string& name, const Dataset& d,
                      const Dataset& t) {
      WriteTextFile(
          dir / ("pr_" + name + ".svg"),
          RenderPrCurveSvg(name,
                           ComputePrCurve(d, t, IouKind::kBev, iou, cls, workers),
                           ComputePrCurve(d, t, IouKind::k3d, iou, cls, workers)));
    };
    render("Overall", dets, truth);
    const auto groups = GroupByWeather(truth);
    for (const auto& [weather, group] : groups) {
      Dataset group_dets;
      for (const auto& [id, frames] : group.sequences) {
        for (const Frame& f : frames) {
          for (const Frame& d : dets.sequences.at(id)) {
            if (d.frame_index == f.frame_index) AppendFrame(group_dets, d);
          }
        }
      }
      render(std::string(ToString(weather)), group_dets, group);
    }
  }
  return kExitOk;
}

int Report(const Settings& s, std::ostream& out) {
  const std::vector<std::string> inputs = s.StringList("inputs");
  if (inputs.empty()) throw ConfigError("inputs required");
  std::vector<std::pair<std::string, fs::path>> sources;
  for (const std::string& in : inputs) {
    const auto eq = in.find('=');
    fs::path path = eq == std::string::npos ? in : in.substr(eq + 1);
    std::string label =
        eq == std::string::npos ? path.parent_path().filename().string()
                                : in.substr(0, eq);
    if (label.empty()) label = path.stem().string();
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
      throw IoError("inputs: no such file: " + path.string());
    }
    sources.emplace_back(std::move(label), std::move(path));
  }
  const fs::path dir = PrepareOutDir(s);

  std::vector<std::pair<std::string, EvalTable>> models;
  for (const auto& [label, path] : sources) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string());
    models.emplace_back(label, ReadEvalCsv(f, path.string()));
  }
  std::ostringstream md;
  WriteComparisonMarkdown(models, md);
  WriteTextFile(dir / "report.md", md.str());
  out << md.str();
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"autolabel-kit: auto-label generation, refinement and "
               "evaluation for 3D detection datasets",
               "autolabel-kit"};
  app.require_subcommand(1);

  Command simulate, autolabel, sweep, eval, report;
  simulate.app = app.add_subcommand(
      "simulate", "Generate a synthetic truth set and noisy detections");
  autolabel.app = app.add_subcommand(
      "autolabel", "Threshold detections into auto-labels, optionally refine");
  sweep.app = app.add_subcommand(
      "sweep", "Precision/recall/F1 over confidence thresholds");
  eval.app = app.add_subcommand("eval", "AP_BEV and AP_3D per weather");
  report.app = app.add_subcommand(
      "report", "Combine eval CSVs into a per-weather comparison table");

  for (Command* c : {&simulate, &autolabel, &sweep, &eval, &report}) {
    c->app->add_option("--config", c->config, "JSON config file");
    c->Value<std::string>("--out", "out", "Output directory");
  }
  simulate.Value<std::uint64_t>("--seed", "seed", "Master seed");

  autolabel.Value<std::string>("--detections", "detections",
                               "Detections .jsonl");
  autolabel.Value<double>("--tau", "tau", "Confidence threshold");
  autolabel.Value<double>("--match-iou", "match_iou",
                          "BEV IoU for temporal association (default 0.3)");
  autolabel.Switch("--refine", "refine", "Apply temporal refinement");

  sweep.Value<std::string>("--detections", "detections", "Detections .jsonl");
  sweep.Value<std::string>("--truth", "truth", "Ground truth .jsonl");
  sweep.Value<std::vector<double>>("--tau", "tau",
                                   "Candidate thresholds (default 0.1,0.3,0.5)");
  sweep.app->get_option("--tau")->delimiter(',');
  sweep.Value<double>("--match-iou", "match_iou", "BEV IoU (default 0.3)");
  sweep.Value<std::string>("--class", "class", "Class (default Sedan)");

  eval.Value<std::string>("--detections", "detections", "Detections .jsonl");
  eval.Value<std::string>("--truth", "truth", "Ground truth .jsonl");
  eval.Value<double>("--iou", "iou", "IoU threshold (default 0.3)");
  eval.Value<std::string>("--class", "class", "Class (default Sedan)");
  eval.Value<std::string>("--subset", "subset", "NO | NOFRL | ALL");
  eval.Value<double>("--tau", "tau", "Also report P/R/F1 at this threshold");
  eval.Switch("--svg", "svg", "Write PR curves as SVG");

  report.Value<std::vector<std::string>>(
      "--input", "inputs", "eval.csv to include, as label=path (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate.app->parsed()) {
      return Simulate(simulate.Build(Settings(
                          "simulate", {"scenario", "weather_mix", "road_mix",
                                       "noise", "inject", "seed", "out"})),
                      out);
    }
    if (autolabel.app->parsed()) {
      return Autolabel(
          autolabel.Build(Settings(
              "autolabel", {"detections", "tau", "match_iou", "refine", "out"})),
          out);
    }
    if (sweep.app->parsed()) {
      return Sweep(sweep.Build(Settings("sweep", {"detections", "truth", "tau",
                                                  "match_iou", "class", "out"})),
                   out);
    }
    if (eval.app->parsed()) {
      return Eval(eval.Build(Settings("eval",
                                      {"detections", "truth", "iou", "class",
                                       "subset", "tau", "svg", "out"})),
                  out);
    }
    if (report.app->parsed()) {
      return Report(report.Build(Settings("report", {"inputs", "out"})), out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("autolabel-kit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return Run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace alkit::cli
