// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <vector>

#include "polydg/geometry.hpp"

namespace polydg {

/// Positive-weight quadrature rule; weights sum to the measure of the
/// integration domain (polygon area or segment length).
struct QuadratureRule {
  std::vector<Point2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
  double total_weight() const;
};

/// Gauss-Legendre nodes/weights on [-1, 1], exact for degree 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule on the triangle (a, b, c), exact for total degree <= order.
/// Built from a collapsed tensor Gauss rule.
QuadratureRule triangle_quadrature(const Point2& a, const Point2& b, const Point2& c,
                                   int order);

/// Rule on a simple polygon, exact for total degree <= order. Fans triangles
/// from the centroid; falls back to ear clipping when the polygon is not
/// star-shaped with respect to its centroid.
QuadratureRule polygon_quadrature(std::span<const Point2> polygon, int order);

/// Gauss rule on the segment [p0, p1] with ceil((order+1)/2) points.
QuadratureRule segment_quadrature(const Point2& p0, const Point2& p1, int order);

/// Ear-clipping triangulation of a simple polygon; returns vertex-index
/// triples into the input loop.
std::vector<std::array<int, 3>> ear_clip(std::span<const Point2> polygon);

}  // namespace polydg
