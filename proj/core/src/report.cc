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

#include "alkit/report.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "alkit/errors.h"

namespace alkit {

namespace {

constexpr double kSvgSize = 400.0;
constexpr double kSvgMargin = 40.0;

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string Polyline(const PrCurve& curve) {
  const double span = kSvgSize - 2.0 * kSvgMargin;
  std::string pts;
  auto add = [&](double r, double p) {
    pts += Fixed(kSvgMargin + r * span, 2) + "," +
           Fixed(kSvgSize - kSvgMargin - p * span, 2) + " ";
  };
  if (!curve.points.empty()) add(0.0, curve.points.front().precision);
  for (const PRPoint& pt : curve.points) add(pt.recall, pt.precision);
  if (!pts.empty()) pts.pop_back();
  return pts;
}

}  // namespace

std::string FormatPercent(double ratio) { return Fixed(100.0 * ratio, 1); }

void WriteEvalCsv(const EvalReport& report,
                  std::span<const WeatherCondition> conditions,
                  std::ostream& out) {
  const std::string marker(kNoFramesMarker);
  out << "condition,ap_bev,ap_3d\n";
  if (report.empty_data) {
    out << "Overall," << marker << ',' << marker << '\n';
  } else {
    out << "Overall," << FormatPercent(report.overall.ap_bev) << ','
        << FormatPercent(report.overall.ap_3d) << '\n';
  }
  for (WeatherCondition w : kAllWeatherConditions) {
    if (std::find(conditions.begin(), conditions.end(), w) ==
        conditions.end()) {
      continue;
    }
    out << ToString(w) << ',';
    auto it = report.per_condition.find(w);
    if (it == report.per_condition.end()) {
      out << marker << ',' << marker << '\n';
    } else {
      out << FormatPercent(it->second.ap_bev) << ','
          << FormatPercent(it->second.ap_3d) << '\n';
    }
  }
}

void WriteSweepCsv(const ThresholdReport& report, std::ostream& out) {
  out << "tau,precision,recall,f1\n";
  for (const ThresholdRow& r : report.rows) {
    out << Fixed(r.tau, 3) << ',' << Fixed(r.precision, 3) << ','
        << Fixed(r.recall, 3) << ',' << Fixed(r.f1, 3) << '\n';
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", report.best_tau);
  out << "best_tau=" << buf << '\n';
}

EvalTable ReadEvalCsv(std::istream& in, const std::string& source) {
  EvalTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = SplitCsv(line);
    if (line_no == 1) {
      if (cells != std::vector<std::string>{"condition", "ap_bev", "ap_3d"}) {
        throw DataError(source + ":1: expected header condition,ap_bev,ap_3d");
      }
      continue;
    }
    if (cells.size() != 3) {
      throw DataError(source + ":" + std::to_string(line_no) +
                      ": expected 3 columns");
    }
    table.conditions.push_back(cells[0]);
    table.cells[cells[0]] = {cells[1], cells[2]};
  }
  if (line_no == 0) throw DataError(source + ": empty file");
  return table;
}

void WriteComparisonMarkdown(
    const std::vector<std::pair<std::string, EvalTable>>& models,
    std::ostream& out) {
  std::vector<std::string> columns;
  for (const auto& [name, table] : models) {
    for (const std::string& c : table.conditions) {
      if (std::find(columns.begin(), columns.end(), c) == columns.end()) {
        columns.push_back(c);
      }
    }
  }
  out << "| Model | Metric |";
  for (const std::string& c : columns) out << ' ' << c << " |";
  out << "\n|---|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
  out << '\n';
  for (const auto& [name, table] : models) {
    for (int metric = 0; metric < 2; ++metric) {
      out << "| " << name << " | " << (metric == 0 ? "AP_BEV" : "AP_3D")
          << " |";
      for (const std::string& c : columns) {
        auto it = table.cells.find(c);
        const std::string v =
            it == table.cells.end()
                ? "-"
                : (metric == 0 ? it->second.first : it->second.second);
        out << ' ' << v << " |";
      }
      out << '\n';
    }
  }
}

std::string RenderPrCurveSvg(std::string_view title, const PrCurve& bev,
                             const PrCurve& three_d) {
  const std::string size = Fixed(kSvgSize, 0);
  const std::string lo = Fixed(kSvgMargin, 0);
  const std::string hi = Fixed(kSvgSize - kSvgMargin, 0);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << ' ' << size
      << "\">\n";
  svg << "  <title>" << title << "</title>\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <line x1=\"" << lo << "\" y1=\"" << hi << "\" x2=\"" << hi
      << "\" y2=\"" << hi << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << lo << "\" y1=\"" << hi << "\" x2=\"" << lo
      << "\" y2=\"" << lo << "\" stroke=\"black\"/>\n";
  svg << "  <text x=\"" << Fixed(kSvgSize / 2, 0) << "\" y=\""
      << Fixed(kSvgSize - 10, 0)
      << "\" text-anchor=\"middle\" font-size=\"12\">recall</text>\n";
  svg << "  <text x=\"12\" y=\"" << Fixed(kSvgSize / 2, 0)
      << "\" font-size=\"12\" transform=\"rotate(-90 12 "
      << Fixed(kSvgSize / 2, 0) << ")\">precision</text>\n";
  svg << "  <text x=\"" << Fixed(kSvgSize / 2, 0)
      << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">" << title
      << " (BEV " << FormatPercent(AveragePrecision(bev)) << ", 3D "
      << FormatPercent(AveragePrecision(three_d)) << ")</text>\n";
  svg << "  <polyline fill=\"none\" stroke=\"#1f77b4\" points=\""
      << Polyline(bev) << "\"/>\n";
  svg << "  <polyline fill=\"none\" stroke=\"#d62728\" points=\""
      << Polyline(three_d) << "\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace alkit
