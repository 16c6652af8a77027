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

#ifndef ALKIT_GEOMETRY_H_
#define ALKIT_GEOMETRY_H_

#include <array>
#include <compare>
#include <numbers>
#include <span>
#include <vector>

namespace alkit {

// Half-plane inclusion tolerance used while clipping, in meters.
inline constexpr double kClipTolerance = 1e-9;
// Consecutive clipped vertices closer than this (meters) are merged.
inline constexpr double kVertexMergeDistance = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Maps any finite angle onto [-pi, pi).
double NormalizeYaw(double yaw);

// Oriented 3D box in the ego frame. Yaw is the counter-clockwise rotation of
// the length axis away from +x. Construction validates the box and
// normalizes yaw, so every Box3D in circulation satisfies:
//   length, width, height > 0; all fields finite; yaw in [-pi, pi).
// Throws std::invalid_argument otherwise.
class Box3D {
 public:
  Box3D(double cx, double cy, double cz, double length, double width,
        double height, double yaw);

  double cx() const { return cx_; }
  double cy() const { return cy_; }
  double cz() const { return cz_; }
  double length() const { return length_; }
  double width() const { return width_; }
  double height() const { return height_; }
  double yaw() const { return yaw_; }

  double bottom() const { return cz_ - 0.5 * height_; }
  double top() const { return cz_ + 0.5 * height_; }
  double footprint_area() const { return length_ * width_; }
  double volume() const { return length_ * width_ * height_; }

  // {cx, cy, cz, length, width, height, yaw}; the on-disk field order.
  std::array<double, 7> ToArray() const;

  friend bool operator==(const Box3D&, const Box3D&) = default;
  friend auto operator<=>(const Box3D&, const Box3D&) = default;

 private:
  double cx_;
  double cy_;
  double cz_;
  double length_;
  double width_;
  double height_;
  double yaw_;
};

// Convex polygon with counter-clockwise vertices. Either empty (no overlap)
// or at least three vertices.
struct Polygon2D {
  std::vector<Vec2> vertices;

  bool empty() const { return vertices.empty(); }
};

// Footprint of the box in the bird's-eye-view plane, counter-clockwise,
// starting at the front-left corner.
Polygon2D BoxToBevPolygon(const Box3D& box);

// Shoelace area. Never negative; 0 for empty or degenerate input.
double PolygonArea(const Polygon2D& polygon);

// Intersection of two convex counter-clockwise polygons by successive
// half-plane clipping of `subject` against each edge of `clip`.
Polygon2D ConvexClip(const Polygon2D& subject, const Polygon2D& clip);

// Area of the intersection of the two box footprints.
double BevIntersectionArea(const Box3D& a, const Box3D& b);

// Rotated-rectangle IoU in the bird's-eye view. Boxes that only touch along
// an edge or at a point have IoU 0.
double IouBev(const Box3D& a, const Box3D& b);

// Volumetric IoU: BEV intersection area times vertical overlap, divided by
// the union volume.
double Iou3d(const Box3D& a, const Box3D& b);

}  // namespace alkit

#endif  // ALKIT_GEOMETRY_H_
