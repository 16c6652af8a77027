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

#ifndef ALKIT_REPORT_H_
#define ALKIT_REPORT_H_

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alkit/autolabel.h"
#include "alkit/eval.h"
#include "alkit/labels.h"

namespace alkit {

// Marker written in place of AP values for conditions with no frames.
inline constexpr std::string_view kNoFramesMarker = "no frames";

// "83.3" for 0.8333...; AP columns are printed in percent with one decimal.
std::string FormatPercent(double ratio);

// condition,ap_bev,ap_3d
// Overall,<%>,<%>
// <condition>,<%>,<%>   for each of `conditions`, in enum order
//
// Conditions listed but absent from the report, and the Overall row when the
// data had no frames at all, carry the "no frames" marker.
void WriteEvalCsv(const EvalReport& report,
                  std::span<const WeatherCondition> conditions,
                  std::ostream& out);

// tau,precision,recall,f1 rows with three decimals, then best_tau=<v>.
void WriteSweepCsv(const ThresholdReport& report, std::ostream& out);

// One eval CSV parsed back: condition name -> (ap_bev, ap_3d) cells as text.
struct EvalTable {
  std::vector<std::string> conditions;
  std::map<std::string, std::pair<std::string, std::string>> cells;
};

// Throws DataError on a malformed file.
EvalTable ReadEvalCsv(std::istream& in, const std::string& source);

// Markdown table with one row per (model, metric) and one column per
// condition, in the layout of a per-weather AP comparison.
void WriteComparisonMarkdown(
    const std::vector<std::pair<std::string, EvalTable>>& models,
    std::ostream& out);

// Minimal standalone SVG: recall on x, precision on y, one polyline per
// curve.
std::string RenderPrCurveSvg(std::string_view title, const PrCurve& bev,
                             const PrCurve& three_d);

}  // namespace alkit

#endif  // ALKIT_REPORT_H_
