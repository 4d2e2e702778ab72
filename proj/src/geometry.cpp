// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/geometry.hpp"

#include <algorithm>
#include <limits>

namespace polydg {

double polygon_signed_area(std::span<const Point2> poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    twice += cross(a, b);
  }
  return 0.5 * twice;
}

Point2 polygon_centroid(std::span<const Point2> poly) {
  double twice = 0.0;
  double cx = 0.0, cy = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double w = cross(a, b);
    twice += w;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  const double area6 = 3.0 * twice;
  return {cx / area6, cy / area6};
}

double polygon_diameter(std::span<const Point2> poly) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j) {
      const Point2 d = poly[i] - poly[j];
      d2 = std::max(d2, dot(d, d));
    }
  return std::sqrt(d2);
}

Rect bounding_box(std::span<const Point2> pts) {
  Rect b;
  b.xmin = b.ymin = std::numeric_limits<double>::max();
  b.xmax = b.ymax = std::numeric_limits<double>::lowest();
  for (const Point2& p : pts) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  if (pts.size() < 3) return pts;
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;

  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_set_diameter(std::span<const Point2> pts) {
  std::vector<Point2> hull = convex_hull({pts.begin(), pts.end()});
  return polygon_diameter(hull);
}

}  // namespace polydg
