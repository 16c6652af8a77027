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

#include "alkit/eval.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

#include "alkit/errors.h"
#include "alkit/parallel.h"

namespace alkit {

namespace {

using FrameKey = std::pair<std::string, std::uint64_t>;

struct FramePair {
  const Frame* det;
  const Frame* gt;
};

// Frames of both datasets paired in (sequence, index) order. Assumes
// CheckAligned passed.
std::vector<FramePair> PairFrames(const Dataset& dets, const Dataset& truth) {
  std::vector<FramePair> pairs;
  for (const auto& [id, gt_frames] : truth.sequences) {
    const auto& det_frames = dets.sequences.at(id);
    for (std::size_t i = 0; i < gt_frames.size(); ++i) {
      pairs.push_back({&det_frames[i], &gt_frames[i]});
    }
  }
  return pairs;
}

std::set<FrameKey> Keys(const Dataset& d) {
  std::set<FrameKey> keys;
  for (const auto& [id, frames] : d.sequences) {
    for (const Frame& f : frames) keys.emplace(id, f.frame_index);
  }
  return keys;
}

std::string DescribeMissing(const std::vector<FrameKey>& missing,
                            const char* side) {
  constexpr std::size_t kMaxListed = 20;
  std::string out;
  for (std::size_t i = 0; i < missing.size() && i < kMaxListed; ++i) {
    out += " " + missing[i].first + "#" + std::to_string(missing[i].second);
  }
  if (missing.size() > kMaxListed) {
    out += " ... (" + std::to_string(missing.size() - kMaxListed) + " more)";
  }
  return std::string(side) + ":" + out;
}

}  // namespace

double ComputeIou(IouKind kind, const Box3D& a, const Box3D& b) {
  return kind == IouKind::kBev ? IouBev(a, b) : Iou3d(a, b);
}

MatchResult& MatchResult::operator+=(const MatchResult& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  matched_pairs.insert(matched_pairs.end(), other.matched_pairs.begin(),
                       other.matched_pairs.end());
  return *this;
}

MatchResult MatchDetections(std::span<const ObjectLabel> dets,
                            std::span<const ObjectLabel> gts, IouKind kind,
                            double iou_thresh, std::string_view class_name) {
  std::vector<std::size_t> det_order;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].class_name != class_name) continue;
    if (!dets[i].confidence) {
      throw DataError("detection " + std::to_string(i) +
                      " has no confidence");
    }
    det_order.push_back(i);
  }
  std::stable_sort(det_order.begin(), det_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return *dets[a].confidence > *dets[b].confidence;
                   });

  std::vector<std::size_t> gt_idx;
  for (std::size_t j = 0; j < gts.size(); ++j) {
    if (gts[j].class_name == class_name) gt_idx.push_back(j);
  }
  std::vector<bool> claimed(gt_idx.size(), false);

  MatchResult result;
  for (std::size_t d : det_order) {
    std::size_t best = gt_idx.size();
    double best_iou = -1.0;
    for (std::size_t k = 0; k < gt_idx.size(); ++k) {
      if (claimed[k]) continue;
      const double iou = ComputeIou(kind, dets[d].box, gts[gt_idx[k]].box);
      if (iou >= iou_thresh && iou > best_iou) {
        best = k;
        best_iou = iou;
      }
    }
    if (best < gt_idx.size()) {
      claimed[best] = true;
      result.matched_pairs.push_back({d, gt_idx[best], best_iou});
    }
  }
  result.tp = result.matched_pairs.size();
  result.fp = det_order.size() - result.tp;
  result.fn = gt_idx.size() - result.tp;
  return result;
}

double F1Score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

PrecisionRecallF1 ComputePrecisionRecallF1(std::size_t tp, std::size_t fp,
                                           std::size_t fn) {
  PrecisionRecallF1 out;
  out.precision = tp + fp == 0 ? 1.0
                               : static_cast<double>(tp) /
                                     static_cast<double>(tp + fp);
  out.recall = tp + fn == 0 ? 1.0
                            : static_cast<double>(tp) /
                                  static_cast<double>(tp + fn);
  out.f1 = F1Score(out.precision, out.recall);
  return out;
}

PrecisionRecallF1 ComputePrecisionRecallF1(const MatchResult& m) {
  return ComputePrecisionRecallF1(m.tp, m.fp, m.fn);
}

void CheckAligned(const Dataset& dets, const Dataset& truth) {
  const auto det_keys = Keys(dets);
  const auto gt_keys = Keys(truth);
  if (det_keys == gt_keys) return;
  std::vector<FrameKey> missing_in_dets;
  std::vector<FrameKey> missing_in_truth;
  std::set_difference(gt_keys.begin(), gt_keys.end(), det_keys.begin(),
                      det_keys.end(), std::back_inserter(missing_in_dets));
  std::set_difference(det_keys.begin(), det_keys.end(), gt_keys.begin(),
                      gt_keys.end(), std::back_inserter(missing_in_truth));
  std::string msg = "datasets are not frame-aligned;";
  if (!missing_in_dets.empty()) {
    msg += " " + DescribeMissing(missing_in_dets, "missing in detections");
  }
  if (!missing_in_truth.empty()) {
    msg += " " + DescribeMissing(missing_in_truth, "missing in truth");
  }
  throw DataError(msg);
}

MatchResult MatchDatasets(const Dataset& dets, const Dataset& truth,
                          IouKind kind, double iou_thresh,
                          std::string_view class_name, int workers) {
  CheckAligned(dets, truth);
  const auto pairs = PairFrames(dets, truth);
  std::vector<MatchResult> per_frame(pairs.size());
  ParallelFor(pairs.size(), workers, [&](std::size_t i) {
    per_frame[i] = MatchDetections(pairs[i].det->objects, pairs[i].gt->objects,
                                   kind, iou_thresh, class_name);
  });
  MatchResult total;
  for (const MatchResult& m : per_frame) total += m;
  return total;
}

PrCurve ComputePrCurve(const Dataset& dets, const Dataset& truth,
                       IouKind kind, double iou_thresh,
                       std::string_view class_name, int workers) {
  CheckAligned(dets, truth);
  const auto pairs = PairFrames(dets, truth);

  struct Scored {
    double confidence;
    std::size_t frame;  // position in (sequence, index) order
    std::size_t det_index;
    bool tp;
  };
  std::vector<std::vector<Scored>> per_frame(pairs.size());
  std::vector<std::size_t> truth_counts(pairs.size(), 0);
  ParallelFor(pairs.size(), workers, [&](std::size_t i) {
    const auto& det_objs = pairs[i].det->objects;
    const MatchResult m = MatchDetections(det_objs, pairs[i].gt->objects, kind,
                                          iou_thresh, class_name);
    std::vector<bool> is_tp(det_objs.size(), false);
    for (const MatchedPair& p : m.matched_pairs) is_tp[p.det_index] = true;
    for (std::size_t d = 0; d < det_objs.size(); ++d) {
      if (det_objs[d].class_name != class_name) continue;
      per_frame[i].push_back({*det_objs[d].confidence, i, d, is_tp[d]});
    }
    truth_counts[i] = m.tp + m.fn;
  });

  std::vector<Scored> scored;
  for (auto& v : per_frame) scored.insert(scored.end(), v.begin(), v.end());
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return std::tie(a.frame, a.det_index) < std::tie(b.frame, b.det_index);
  });

  PrCurve curve;
  curve.num_truth =
      std::accumulate(truth_counts.begin(), truth_counts.end(), std::size_t{0});
  curve.num_dets = scored.size();
  curve.points.reserve(scored.size());
  std::size_t tp = 0;
  for (std::size_t k = 0; k < scored.size(); ++k) {
    if (scored[k].tp) ++tp;
    const double precision =
        static_cast<double>(tp) / static_cast<double>(k + 1);
    const double recall =
        curve.num_truth == 0
            ? 0.0
            : static_cast<double>(tp) / static_cast<double>(curve.num_truth);
    curve.points.push_back({scored[k].confidence, precision, recall});
  }
  return curve;
}

double AveragePrecision(const PrCurve& curve) {
  if (curve.num_truth == 0) return curve.num_dets == 0 ? 1.0 : 0.0;
  if (curve.points.empty()) return 0.0;
  // Precision envelope: max precision at any recall to the right.
  std::vector<double> envelope(curve.points.size());
  double running = 0.0;
  for (std::size_t k = curve.points.size(); k-- > 0;) {
    running = std::max(running, curve.points[k].precision);
    envelope[k] = running;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    ap += (curve.points[k].recall - prev_recall) * envelope[k];
    prev_recall = curve.points[k].recall;
  }
  return std::clamp(ap, 0.0, 1.0);
}

double AveragePrecision(const Dataset& dets, const Dataset& truth,
                        IouKind kind, double iou_thresh,
                        std::string_view class_name, int workers) {
  return AveragePrecision(
      ComputePrCurve(dets, truth, kind, iou_thresh, class_name, workers));
}

EvalReport EvaluateByCondition(const Dataset& dets, const Dataset& truth,
                               double iou_thresh, std::string_view class_name,
                               int workers) {
  CheckAligned(dets, truth);
  EvalReport report;
  report.empty_data = truth.frame_count() == 0;
  report.overall = {
      AveragePrecision(dets, truth, IouKind::kBev, iou_thresh, class_name,
                       workers),
      AveragePrecision(dets, truth, IouKind::k3d, iou_thresh, class_name,
                       workers)};

  for (const auto& [weather, group] : GroupByWeather(truth)) {
    Dataset group_dets;
    group_dets.split_name = dets.split_name;
    for (const auto& [id, gt_frames] : group.sequences) {
      const auto& det_frames = dets.sequences.at(id);
      auto& out = group_dets.sequences[id];
      // Both frame lists are sorted by index.
      auto it = det_frames.begin();
      for (const Frame& g : gt_frames) {
        it = std::find_if(it, det_frames.end(), [&](const Frame& f) {
          return f.frame_index == g.frame_index;
        });
        out.push_back(*it);
      }
    }
    report.per_condition[weather] = {
        AveragePrecision(group_dets, group, IouKind::kBev, iou_thresh,
                         class_name, workers),
        AveragePrecision(group_dets, group, IouKind::k3d, iou_thresh,
                         class_name, workers)};
  }
  return report;
}

}  // namespace alkit
