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

#ifndef ALKIT_EVAL_H_
#define ALKIT_EVAL_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alkit/labels.h"

namespace alkit {

enum class IouKind { kBev, k3d };

double ComputeIou(IouKind kind, const Box3D& a, const Box3D& b);

inline constexpr double kDefaultEvalIou = 0.3;

struct MatchedPair {
  std::size_t det_index = 0;
  std::size_t gt_index = 0;
  double iou = 0.0;
};

// Counts over one frame or summed over a dataset. Indices in matched_pairs
// refer to the unfiltered input lists.
struct MatchResult {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::vector<MatchedPair> matched_pairs;

  MatchResult& operator+=(const MatchResult& other);
};

// Greedy detection-to-truth assignment restricted to `class_name`.
// Detections are visited by descending confidence (ties by ascending index);
// each claims the unclaimed ground truth of highest IoU >= iou_thresh, or
// counts as a false positive. Unclaimed ground truths are false negatives.
// Throws DataError if a detection of the class has no confidence.
MatchResult MatchDetections(std::span<const ObjectLabel> dets,
                            std::span<const ObjectLabel> gts, IouKind kind,
                            double iou_thresh, std::string_view class_name);

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// precision = 1 when nothing was detected, recall = 1 when there is nothing
// to find, f1 = 0 when both are 0.
PrecisionRecallF1 ComputePrecisionRecallF1(const MatchResult& m);
PrecisionRecallF1 ComputePrecisionRecallF1(std::size_t tp, std::size_t fp,
                                           std::size_t fn);
// Harmonic mean of given precision and recall.
double F1Score(double precision, double recall);

// Throws DataError naming every (sequence, frame) present on one side only.
void CheckAligned(const Dataset& dets, const Dataset& truth);

// Frame-aligned datasets, matched frame by frame and summed.
MatchResult MatchDatasets(const Dataset& dets, const Dataset& truth,
                          IouKind kind, double iou_thresh,
                          std::string_view class_name, int workers = 1);

struct PRPoint {
  double confidence = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct PrCurve {
  std::vector<PRPoint> points;  // one per detection, descending confidence
  std::size_t num_truth = 0;
  std::size_t num_dets = 0;
};

// Pools detections of all frames, sorted by descending confidence with ties
// broken by (sequence id, frame index, detection index).
PrCurve ComputePrCurve(const Dataset& dets, const Dataset& truth,
                       IouKind kind, double iou_thresh,
                       std::string_view class_name, int workers = 1);

// All-point interpolated area under the precision envelope.
// 1 when both sides are empty; 0 when exactly one side is empty.
double AveragePrecision(const PrCurve& curve);
double AveragePrecision(const Dataset& dets, const Dataset& truth,
                        IouKind kind, double iou_thresh,
                        std::string_view class_name, int workers = 1);

struct ApPair {
  double ap_bev = 0.0;
  double ap_3d = 0.0;
};

struct EvalReport {
  std::map<WeatherCondition, ApPair> per_condition;
  ApPair overall;
  std::optional<PrecisionRecallF1> prf_at_tau;
  // True when the overall value rests on the empty/empty convention.
  bool empty_data = false;
};

// Groups truth frames by weather; conditions absent from the data are left
// out of per_condition.
EvalReport EvaluateByCondition(const Dataset& dets, const Dataset& truth,
                               double iou_thresh, std::string_view class_name,
                               int workers = 1);

}  // namespace alkit

#endif  // ALKIT_EVAL_H_
