// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace polydg {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point2& a, const Point2& b) { return norm(a - b); }

/// Axis-aligned rectangle, also used as element bounding box.
struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(const Point2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

/// Signed area of a polygon (positive for counter-clockwise loops).
double polygon_signed_area(std::span<const Point2> poly);

/// Area centroid. Requires nonzero area.
Point2 polygon_centroid(std::span<const Point2> poly);

/// Maximum pairwise vertex distance.
double polygon_diameter(std::span<const Point2> poly);

/// Bounding box of a point set.
Rect bounding_box(std::span<const Point2> pts);

/// Convex hull (counter-clockwise, no duplicate endpoint). Collinear points
/// on the hull boundary are dropped.
std::vector<Point2> convex_hull(std::vector<Point2> pts);

/// Diameter of a point set, computed through its convex hull.
double point_set_diameter(std::span<const Point2> pts);

}  // namespace polydg
