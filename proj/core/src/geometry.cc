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

#include "alkit/geometry.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace alkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Clipped polygons below this area (m^2) are edge or point contacts.
constexpr double kDegenerateArea = 1e-12;

double Cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

Vec2 Sub(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

// Drops consecutive vertices closer than kVertexMergeDistance, including
// the wrap-around pair.
std::vector<Vec2> MergeCloseVertices(std::vector<Vec2> pts) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& p : pts) {
    if (!out.empty() && std::hypot(p.x - out.back().x, p.y - out.back().y) <
                            kVertexMergeDistance) {
      continue;
    }
    out.push_back(p);
  }
  while (out.size() > 1 &&
         std::hypot(out.front().x - out.back().x,
                    out.front().y - out.back().y) < kVertexMergeDistance) {
    out.pop_back();
  }
  return out;
}

double SignedArea(std::span<const Vec2> pts) {
  if (pts.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
    twice += Cross(pts[j], pts[i]);
  }
  return 0.5 * twice;
}

// Bounding-circle rejection: footprints cannot meet if the centers are
// further apart than the sum of the half diagonals.
bool FootprintsMayOverlap(const Box3D& a, const Box3D& b) {
  const double ra = 0.5 * std::hypot(a.length(), a.width());
  const double rb = 0.5 * std::hypot(b.length(), b.width());
  return std::hypot(a.cx() - b.cx(), a.cy() - b.cy()) <= ra + rb;
}

// Orders a pair canonically so the clipping result does not depend on
// argument order.
std::pair<const Box3D*, const Box3D*> Canonical(const Box3D& a,
                                                const Box3D& b) {
  if (b < a) return {&b, &a};
  return {&a, &b};
}

}  // namespace

double NormalizeYaw(double yaw) {
  double r = std::remainder(yaw, kTwoPi);
  if (r >= std::numbers::pi) r -= kTwoPi;
  if (r < -std::numbers::pi) r = -std::numbers::pi;
  return r;
}

Box3D::Box3D(double cx, double cy, double cz, double length, double width,
             double height, double yaw)
    : cx_(cx),
      cy_(cy),
      cz_(cz),
      length_(length),
      width_(width),
      height_(height),
      yaw_(yaw) {
  for (double v : {cx, cy, cz, length, width, height, yaw}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Box3D: non-finite field");
    }
  }
  if (!(length > 0.0) || !(width > 0.0) || !(height > 0.0)) {
    throw std::invalid_argument(
        "Box3D: dimensions must be positive (l=" + std::to_string(length) +
        ", w=" + std::to_string(width) + ", h=" + std::to_string(height) +
        ")");
  }
  yaw_ = NormalizeYaw(yaw);
}

std::array<double, 7> Box3D::ToArray() const {
  return {cx_, cy_, cz_, length_, width_, height_, yaw_};
}

Polygon2D BoxToBevPolygon(const Box3D& box) {
  const double c = std::cos(box.yaw());
  const double s = std::sin(box.yaw());
  const double hl = 0.5 * box.length();
  const double hw = 0.5 * box.width();
  // Local corners, counter-clockwise.
  const std::array<Vec2, 4> local = {
      Vec2{hl, hw}, Vec2{-hl, hw}, Vec2{-hl, -hw}, Vec2{hl, -hw}};
  Polygon2D out;
  out.vertices.reserve(4);
  for (const Vec2& p : local) {
    out.vertices.push_back(
        {box.cx() + c * p.x - s * p.y, box.cy() + s * p.x + c * p.y});
  }
  return out;
}

double PolygonArea(const Polygon2D& polygon) {
  return std::max(0.0, SignedArea(polygon.vertices));
}

Polygon2D ConvexClip(const Polygon2D& subject, const Polygon2D& clip) {
  if (subject.vertices.size() < 3 || clip.vertices.size() < 3) return {};

  std::vector<Vec2> out = subject.vertices;
  std::vector<Vec2> in;
  const std::size_t n = clip.vertices.size();
  for (std::size_t e = 0; e < n && !out.empty(); ++e) {
    const Vec2& a = clip.vertices[e];
    const Vec2& b = clip.vertices[(e + 1) % n];
    const Vec2 edge = Sub(b, a);
    const double len = std::hypot(edge.x, edge.y);
    if (len < kVertexMergeDistance) continue;

    // Signed distance to the edge line; positive on the inner (left) side.
    auto dist = [&](const Vec2& p) { return Cross(edge, Sub(p, a)) / len; };

    in.swap(out);
    out.clear();
    Vec2 prev = in.back();
    double d_prev = dist(prev);
    for (const Vec2& cur : in) {
      const double d_cur = dist(cur);
      const bool cur_in = d_cur >= -kClipTolerance;
      const bool prev_in = d_prev >= -kClipTolerance;
      if (cur_in != prev_in) {
        const double t = std::clamp(d_prev / (d_prev - d_cur), 0.0, 1.0);
        out.push_back({prev.x + t * (cur.x - prev.x),
                       prev.y + t * (cur.y - prev.y)});
      }
      if (cur_in) out.push_back(cur);
      prev = cur;
      d_prev = d_cur;
    }
  }

  out = MergeCloseVertices(std::move(out));
  if (out.size() < 3 || SignedArea(out) <= kDegenerateArea) return {};
  return Polygon2D{std::move(out)};
}

double BevIntersectionArea(const Box3D& a, const Box3D& b) {
  if (!FootprintsMayOverlap(a, b)) return 0.0;
  const auto [first, second] = Canonical(a, b);
  return PolygonArea(
      ConvexClip(BoxToBevPolygon(*first), BoxToBevPolygon(*second)));
}

double IouBev(const Box3D& a, const Box3D& b) {
  if (a == b) return 1.0;
  const double inter = BevIntersectionArea(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.footprint_area() + b.footprint_area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double Iou3d(const Box3D& a, const Box3D& b) {
  if (a == b) return 1.0;
  const double overlap_h =
      std::min(a.top(), b.top()) - std::max(a.bottom(), b.bottom());
  if (overlap_h <= 0.0) return 0.0;
  const double inter = BevIntersectionArea(a, b) * overlap_h;
  if (inter <= 0.0) return 0.0;
  const double uni = a.volume() + b.volume() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace alkit
