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

#ifndef ALKIT_TESTS_TESTING_FIXTURES_H_
#define ALKIT_TESTS_TESTING_FIXTURES_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>
#include <utility>

#include "alkit/labels.h"
#include "testing/builders.h"
#include "testing/oracles.h"

namespace alkit::testing {

// 10000 single-object frames. Detections are either a copy of the frame's
// truth (TP) or a box 50 m away (FP), with confidences chosen so that
//   tau 0.1: tp 6210, fp 1993  -> P 0.757, R 0.621
//   tau 0.3: tp 5930, fp  824  -> P 0.878, R 0.593
//   tau 0.5: tp 5570, fp  419  -> P 0.930, R 0.557
inline std::pair<Dataset, Dataset> ThresholdTableFixture() {
  constexpr int kFrames = 10000;
  struct Bucket {
    double conf;
    int tp;
    int fp;
  };
  constexpr Bucket kBuckets[] = {{0.9, 5570, 419}, {0.4, 360, 405},
                                 {0.2, 280, 1169}};
  Dataset truth;
  Dataset dets;
  truth.split_name = "truth";
  dets.split_name = "detections";
  for (int i = 0; i < kFrames; ++i) {
    AppendFrame(truth, MakeFrame("table", static_cast<std::uint64_t>(i),
                                 {Obj(0, 0)}));
    AppendFrame(dets, MakeFrame("table", static_cast<std::uint64_t>(i), {}));
  }
  auto& frames = dets.sequences.at("table");
  std::size_t tp_frame = 0;
  std::size_t fp_frame = 0;
  for (const Bucket& b : kBuckets) {
    for (int k = 0; k < b.tp; ++k) {
      frames[tp_frame++].objects.push_back(Obj(0, 0, b.conf));
    }
    for (int k = 0; k < b.fp; ++k) {
      frames[fp_frame++ % kFrames].objects.push_back(Obj(0, 50, b.conf));
    }
  }
  return {std::move(dets), std::move(truth)};
}

struct SmallFixture {
  Dataset dets;
  Dataset truth;
  std::vector<bool> ranked_tp;  // oracle labels in ranking order
  std::int64_t num_truth = 0;
};

// Truths sit 20 m apart; each detection either copies one truth (slightly
// shifted) or lies far away. Confidences come from a coarse grid so ties
// occur. TP labels are assigned by walking the ranking by hand.
inline SmallFixture RandomSmallFixture(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_frames(1, 3);
  std::uniform_int_distribution<int> n_gts(0, 3);
  std::uniform_int_distribution<int> n_dets(0, 10);
  std::uniform_int_distribution<int> conf_step(1, 9);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);

  SmallFixture fx;
  const int frames = n_frames(rng);
  std::vector<int> gts_per_frame(frames);
  for (int f = 0; f < frames; ++f) {
    gts_per_frame[f] = n_gts(rng);
    std::vector<ObjectLabel> gts;
    for (int g = 0; g < gts_per_frame[f]; ++g) gts.push_back(Obj(20.0 * g, 0));
    fx.num_truth += gts_per_frame[f];
    AppendFrame(fx.truth, MakeFrame("s", static_cast<std::uint64_t>(f), gts));
    AppendFrame(fx.dets, MakeFrame("s", static_cast<std::uint64_t>(f), {}));
  }

  struct Entry {
    double conf;
    int frame;
    std::size_t index;
    int target;  // truth index, -1 for a far-away box
  };
  std::vector<Entry> entries;
  const int total = n_dets(rng);
  for (int k = 0; k < total; ++k) {
    const int f = std::uniform_int_distribution<int>(0, frames - 1)(rng);
    const int target =
        std::uniform_int_distribution<int>(-1, gts_per_frame[f] - 1)(rng);
    const double conf = 0.1 * conf_step(rng);
    auto& objs = fx.dets.sequences.at("s")[static_cast<std::size_t>(f)].objects;
    objs.push_back(target < 0 ? Obj(jitter(rng), 100.0, conf)
                              : Obj(20.0 * target + jitter(rng), jitter(rng),
                                    conf));
    entries.push_back({conf, f, objs.size() - 1, target});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.conf != b.conf) return a.conf > b.conf;
    return std::tie(a.frame, a.index) < std::tie(b.frame, b.index);
  });
  std::set<std::pair<int, int>> claimed;
  for (const Entry& e : entries) {
    const bool tp = e.target >= 0 && claimed.emplace(e.frame, e.target).second;
    fx.ranked_tp.push_back(tp);
  }
  return fx;
}

}  // namespace alkit::testing

#endif  // ALKIT_TESTS_TESTING_FIXTURES_H_
