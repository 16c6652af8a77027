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

#ifndef ALKIT_AUTOLABEL_H_
#define ALKIT_AUTOLABEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alkit/eval.h"
#include "alkit/labels.h"

namespace alkit {

// Keeps the objects with confidence >= tau, in input order. Throws
// DataError naming the frame and object index if an object has no
// confidence.
Frame ThresholdFilter(const Frame& frame, double tau);
Dataset ThresholdFilter(const Dataset& dataset, double tau);

struct ThresholdRow {
  double tau = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ThresholdReport {
  std::vector<ThresholdRow> rows;  // ascending tau
  double best_tau = 0.0;
};

// Argmax of f1 over rows; ties go to the smallest tau. Rows must be sorted
// ascending by tau and non-empty.
double BestTau(std::span<const ThresholdRow> rows);

// Sweeps candidate thresholds over the detections and scores each filtered
// set against the truth with BEV matching at `match_iou`.
// Throws ConfigError on empty candidates, DataError on misaligned data.
ThresholdReport SelectThreshold(const Dataset& detections,
                                const Dataset& truth,
                                std::span<const double> candidates,
                                double match_iou,
                                std::string_view class_name = kDefaultClass,
                                int workers = 1);

// One-to-one association between two frames: same-class pairs in
// descending BEV IoU (ties by ascending (a, b) index), accepting only
// IoU >= match_iou.
struct FrameMatching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unmatched_a;
  std::vector<std::size_t> unmatched_b;
};

FrameMatching MatchFrames(const Frame& a, const Frame& b, double match_iou);

struct InterpolatedBox {
  Box3D box;
  // Set when the two yaws are antipodal and the circular mean is undefined;
  // the box then keeps prev's yaw.
  bool yaw_ambiguous = false;
};

// Arithmetic mean of center and dimensions, circular mean of yaw.
InterpolatedBox InterpolateBox(const Box3D& prev, const Box3D& next);

enum class NeighborRule { kBothNeighbors };

struct RefinementParams {
  double match_iou = 0.3;
  NeighborRule neighbor_rule = NeighborRule::kBothNeighbors;
  // When set, first and last frames drop objects unmatched in their single
  // neighbor. Miss filling always needs both neighbors.
  bool apply_at_boundaries = false;
};

// Throws ConfigError unless match_iou is in (0, 1).
void ValidateRefinementParams(const RefinementParams& params);

enum class RefineAction { kRemovedFalseAlarm, kInsertedMiss };

struct RefineEvent {
  RefineAction action;
  std::string sequence_id;
  std::uint64_t frame_index = 0;
  ObjectLabel object;
};

struct RefineResult {
  std::vector<Frame> frames;
  std::vector<RefineEvent> events;
  std::size_t removed = 0;
  std::size_t inserted = 0;
  std::size_t yaw_warnings = 0;
};

// Single pass over the interior frames of one sequence. Each frame t is
// compared against the original frames t-1 and t+1:
//  * objects of t matched in neither neighbor are removed as false alarms;
//  * every matched (t-1, t+1) pair whose members both went unmatched in t
//    is filled in with the interpolated box, the class of the t-1 object,
//    and the smaller of the two confidences when both exist.
// Surviving objects keep their order; inserted ones are appended.
// Throws DataError if the frames are not one sequence in increasing order.
RefineResult TemporalRefine(std::span<const Frame> sequence,
                            const RefinementParams& params);

struct DatasetRefineResult {
  Dataset dataset;
  std::vector<RefineEvent> events;
  std::size_t removed = 0;
  std::size_t inserted = 0;
  std::size_t yaw_warnings = 0;
};

// Refines every sequence independently; results are merged in sequence id
// order regardless of `workers`.
DatasetRefineResult TemporalRefine(const Dataset& dataset,
                                   const RefinementParams& params,
                                   int workers = 1);

}  // namespace alkit

#endif  // ALKIT_AUTOLABEL_H_
