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

#include "alkit/autolabel.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <utility>

#include "alkit/errors.h"
#include "alkit/parallel.h"

namespace alkit {

namespace {

// Yaws whose difference is within this of pi have no circular mean.
constexpr double kAntipodalTolerance = 1e-9;

std::string FrameTag(const Frame& frame) {
  return frame.sequence_id + "#" + std::to_string(frame.frame_index);
}

std::vector<bool> MatchedMask(std::size_t n,
                              const FrameMatching& m, bool side_a) {
  std::vector<bool> mask(n, false);
  for (const auto& [a, b] : m.pairs) mask[side_a ? a : b] = true;
  return mask;
}

// Objects of `frame` matched by at least one of the given matchings, in
// which `frame` is side a.
std::vector<bool> KeepMask(const Frame& frame,
                           std::initializer_list<const FrameMatching*> ms) {
  std::vector<bool> keep(frame.objects.size(), false);
  for (const FrameMatching* m : ms) {
    for (const auto& [a, b] : m->pairs) keep[a] = true;
  }
  return keep;
}

void DropUnmatched(const Frame& original, const std::vector<bool>& keep,
                   Frame& out, RefineResult& result) {
  out.objects.clear();
  for (std::size_t i = 0; i < original.objects.size(); ++i) {
    if (keep[i]) {
      out.objects.push_back(original.objects[i]);
    } else {
      ++result.removed;
      result.events.push_back({RefineAction::kRemovedFalseAlarm,
                               original.sequence_id, original.frame_index,
                               original.objects[i]});
    }
  }
}

void CheckSequence(std::span<const Frame> sequence) {
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    if (sequence[i].sequence_id != sequence[0].sequence_id) {
      throw DataError("refinement input mixes sequences " +
                      sequence[0].sequence_id + " and " +
                      sequence[i].sequence_id);
    }
    if (sequence[i].frame_index <= sequence[i - 1].frame_index) {
      throw DataError("refinement input not sorted at " +
                      FrameTag(sequence[i]));
    }
  }
}

}  // namespace

Frame ThresholdFilter(const Frame& frame, double tau) {
  Frame out = frame;
  out.objects.clear();
  for (std::size_t i = 0; i < frame.objects.size(); ++i) {
    const ObjectLabel& obj = frame.objects[i];
    if (!obj.confidence) {
      throw DataError(FrameTag(frame) + " object " + std::to_string(i) +
                      ": no confidence to threshold");
    }
    if (*obj.confidence >= tau) out.objects.push_back(obj);
  }
  return out;
}

Dataset ThresholdFilter(const Dataset& dataset, double tau) {
  Dataset out;
  out.split_name = dataset.split_name;
  for (const auto& [id, frames] : dataset.sequences) {
    auto& dst = out.sequences[id];
    dst.reserve(frames.size());
    for (const Frame& f : frames) dst.push_back(ThresholdFilter(f, tau));
  }
  return out;
}

double BestTau(std::span<const ThresholdRow> rows) {
  if (rows.empty()) throw ConfigError("no threshold rows");
  const ThresholdRow* best = &rows.front();
  for (const ThresholdRow& r : rows) {
    if (r.f1 > best->f1) best = &r;
  }
  return best->tau;
}

ThresholdReport SelectThreshold(const Dataset& detections,
                                const Dataset& truth,
                                std::span<const double> candidates,
                                double match_iou,
                                std::string_view class_name, int workers) {
  if (candidates.empty()) throw ConfigError("no candidate thresholds");
  CheckAligned(detections, truth);

  std::vector<double> taus(candidates.begin(), candidates.end());
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  ThresholdReport report;
  for (double tau : taus) {
    const Dataset kept = ThresholdFilter(detections, tau);
    const MatchResult m = MatchDatasets(kept, truth, IouKind::kBev, match_iou,
                                        class_name, workers);
    const PrecisionRecallF1 prf = ComputePrecisionRecallF1(m);
    report.rows.push_back({tau, prf.precision, prf.recall, prf.f1});
  }
  report.best_tau = BestTau(report.rows);
  return report;
}

FrameMatching MatchFrames(const Frame& a, const Frame& b, double match_iou) {
  struct Candidate {
    double iou;
    std::size_t ia;
    std::size_t ib;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    for (std::size_t j = 0; j < b.objects.size(); ++j) {
      if (a.objects[i].class_name != b.objects[j].class_name) continue;
      const double iou = IouBev(a.objects[i].box, b.objects[j].box);
      if (iou >= match_iou) candidates.push_back({iou, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) {
              if (x.iou != y.iou) return x.iou > y.iou;
              return std::tie(x.ia, x.ib) < std::tie(y.ia, y.ib);
            });

  FrameMatching out;
  std::vector<bool> used_a(a.objects.size(), false);
  std::vector<bool> used_b(b.objects.size(), false);
  for (const Candidate& c : candidates) {
    if (used_a[c.ia] || used_b[c.ib]) continue;
    used_a[c.ia] = used_b[c.ib] = true;
    out.pairs.emplace_back(c.ia, c.ib);
  }
  for (std::size_t i = 0; i < used_a.size(); ++i) {
    if (!used_a[i]) out.unmatched_a.push_back(i);
  }
  for (std::size_t j = 0; j < used_b.size(); ++j) {
    if (!used_b[j]) out.unmatched_b.push_back(j);
  }
  return out;
}

InterpolatedBox InterpolateBox(const Box3D& prev, const Box3D& next) {
  const double delta = NormalizeYaw(next.yaw() - prev.yaw());
  const bool ambiguous =
      std::abs(std::abs(delta) - std::numbers::pi) <= kAntipodalTolerance;
  const double yaw =
      ambiguous ? prev.yaw()
                : std::atan2(std::sin(prev.yaw()) + std::sin(next.yaw()),
                             std::cos(prev.yaw()) + std::cos(next.yaw()));
  return {Box3D(0.5 * (prev.cx() + next.cx()), 0.5 * (prev.cy() + next.cy()),
                0.5 * (prev.cz() + next.cz()),
                0.5 * (prev.length() + next.length()),
                0.5 * (prev.width() + next.width()),
                0.5 * (prev.height() + next.height()), yaw),
          ambiguous};
}

void ValidateRefinementParams(const RefinementParams& params) {
  if (!(params.match_iou > 0.0 && params.match_iou < 1.0)) {
    throw ConfigError("match_iou must lie in (0, 1), got " +
                      std::to_string(params.match_iou));
  }
}

RefineResult TemporalRefine(std::span<const Frame> sequence,
                            const RefinementParams& params) {
  ValidateRefinementParams(params);
  CheckSequence(sequence);

  RefineResult result;
  result.frames.assign(sequence.begin(), sequence.end());
  const std::size_t n = sequence.size();
  const double thr = params.match_iou;

  for (std::size_t t = 1; t + 1 < n; ++t) {
    const Frame& prev = sequence[t - 1];
    const Frame& cur = sequence[t];
    const Frame& next = sequence[t + 1];

    const FrameMatching with_prev = MatchFrames(cur, prev, thr);
    const FrameMatching with_next = MatchFrames(cur, next, thr);
    DropUnmatched(cur, KeepMask(cur, {&with_prev, &with_next}),
                  result.frames[t], result);

    const std::vector<bool> prev_seen =
        MatchedMask(prev.objects.size(), with_prev, /*side_a=*/false);
    const std::vector<bool> next_seen =
        MatchedMask(next.objects.size(), with_next, /*side_a=*/false);
    for (const auto& [p, q] : MatchFrames(prev, next, thr).pairs) {
      if (prev_seen[p] || next_seen[q]) continue;
      const ObjectLabel& a = prev.objects[p];
      const ObjectLabel& b = next.objects[q];
      const InterpolatedBox mid = InterpolateBox(a.box, b.box);
      if (mid.yaw_ambiguous) ++result.yaw_warnings;
      ObjectLabel filled{a.class_name, mid.box, std::nullopt, std::nullopt};
      if (a.confidence && b.confidence) {
        filled.confidence = std::min(*a.confidence, *b.confidence);
      }
      result.frames[t].objects.push_back(filled);
      ++result.inserted;
      result.events.push_back({RefineAction::kInsertedMiss, cur.sequence_id,
                               cur.frame_index, std::move(filled)});
    }
  }

  if (params.apply_at_boundaries && n >= 2) {
    for (std::size_t t : {std::size_t{0}, n - 1}) {
      const Frame& neighbor = sequence[t == 0 ? 1 : n - 2];
      const FrameMatching m = MatchFrames(sequence[t], neighbor, thr);
      DropUnmatched(sequence[t], KeepMask(sequence[t], {&m}), result.frames[t],
                    result);
    }
  }
  return result;
}

DatasetRefineResult TemporalRefine(const Dataset& dataset,
                                   const RefinementParams& params,
                                   int workers) {
  ValidateRefinementParams(params);
  std::vector<const std::vector<Frame>*> seqs;
  for (const auto& [id, frames] : dataset.sequences) seqs.push_back(&frames);

  std::vector<RefineResult> parts(seqs.size());
  ParallelFor(seqs.size(), workers, [&](std::size_t i) {
    parts[i] = TemporalRefine(*seqs[i], params);
  });

  DatasetRefineResult out;
  out.dataset.split_name = dataset.split_name;
  for (RefineResult& part : parts) {
    const std::string id = part.frames.front().sequence_id;
    out.removed += part.removed;
    out.inserted += part.inserted;
    out.yaw_warnings += part.yaw_warnings;
    std::move(part.events.begin(), part.events.end(),
              std::back_inserter(out.events));
    out.dataset.sequences.emplace(id, std::move(part.frames));
  }
  return out;
}

}  // namespace alkit
