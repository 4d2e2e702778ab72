// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "polydg/errors.hpp"

namespace polydg {

double QuadratureRule::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  // Newton iteration from the Chebyshev guess; roots come in +/- pairs, so
  // only the lower half is computed and then mirrored.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one clean-up step, then stop
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / dp;
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -std::abs(x);
    nodes[static_cast<std::size_t>(n - 1 - i)] = std::abs(x);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

QuadratureRule triangle_quadrature(const Point2& a, const Point2& b, const Point2& c,
                                   int order) {
  // Collapsed rule: on the reference triangle {xi,eta >= 0, xi+eta <= 1},
  // substitute xi = s, eta = t(1-s) with Jacobian (1-s). A monomial of total
  // degree d becomes degree d+1 in s, so n Gauss points per direction need
  // 2n-1 >= order+1 to integrate total degree <= order exactly.
  const int n = (order + 3) / 2;
  std::vector<double> gn, gw;
  gauss_legendre(n, gn, gw);

  QuadratureRule rule;
  rule.points.reserve(static_cast<std::size_t>(n) * n);
  rule.weights.reserve(static_cast<std::size_t>(n) * n);
  const double area2 = cross(b - a, c - a);  // twice signed area
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * (gn[static_cast<std::size_t>(i)] + 1.0);
    for (int j = 0; j < n; ++j) {
      const double t = 0.5 * (gn[static_cast<std::size_t>(j)] + 1.0);
      const double xi = s;
      const double eta = t * (1.0 - s);
      const Point2 p = a + (b - a) * xi + (c - a) * eta;
      const double w = gw[static_cast<std::size_t>(i)] * gw[static_cast<std::size_t>(j)] *
                       0.25 * (1.0 - s) * area2;
      rule.points.push_back(p);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

std::vector<std::array<int, 3>> ear_clip(std::span<const Point2> polygon) {
  const int n = static_cast<int>(polygon.size());
  if (n < 3) throw MeshError("ear_clip: polygon has fewer than 3 vertices");
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);

  auto tri_area2 = [&](int i, int j, int k) {
    return cross(polygon[static_cast<std::size_t>(j)] - polygon[static_cast<std::size_t>(i)],
                 polygon[static_cast<std::size_t>(k)] - polygon[static_cast<std::size_t>(i)]);
  };
  auto inside = [&](int i, int j, int k, int q) {
    const Point2& p = polygon[static_cast<std::size_t>(q)];
    const Point2& A = polygon[static_cast<std::size_t>(i)];
    const Point2& B = polygon[static_cast<std::size_t>(j)];
    const Point2& C = polygon[static_cast<std::size_t>(k)];
    const double d1 = cross(B - A, p - A);
    const double d2 = cross(C - B, p - B);
    const double d3 = cross(A - C, p - C);
    return d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0;
  };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(n - 2));
  int guard = 0;
  while (idx.size() > 3) {
    const int m = static_cast<int>(idx.size());
    bool clipped = false;
    for (int e = 0; e < m; ++e) {
      const int i = idx[static_cast<std::size_t>((e + m - 1) % m)];
      const int j = idx[static_cast<std::size_t>(e)];
      const int k = idx[static_cast<std::size_t>((e + 1) % m)];
      if (tri_area2(i, j, k) <= 0.0) continue;  // reflex or degenerate corner
      bool ear = true;
      for (int q : idx) {
        if (q == i || q == j || q == k) continue;
        if (inside(i, j, k, q)) {
          ear = false;
          break;
        }
      }
      if (!ear) continue;
      tris.push_back({i, j, k});
      idx.erase(idx.begin() + e);
      clipped = true;
      break;
    }
    if (!clipped) throw MeshError("ear_clip: no ear found (polygon not simple?)");
    if (++guard > 4 * n) throw MeshError("ear_clip: failed to terminate");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

QuadratureRule polygon_quadrature(std::span<const Point2> polygon, int order) {
  if (polygon.size() < 3) throw MeshError("polygon_quadrature: fewer than 3 vertices");
  order = std::max(order, 1);
  const std::size_t n = polygon.size();
  const Point2 c = polygon_centroid(polygon);

  // Centroid fan is valid iff every fan triangle is positively oriented
  // (polygon star-shaped w.r.t. its centroid). Voronoi cells always are.
  const double area = polygon_signed_area(polygon);
  bool fan_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % n];
    if (cross(a - c, b - c) <= 1e-14 * std::abs(area)) {
      fan_ok = false;
      break;
    }
  }

  QuadratureRule rule;
  if (fan_ok) {
    for (std::size_t i = 0; i < n; ++i) {
      QuadratureRule t =
          triangle_quadrature(c, polygon[i], polygon[(i + 1) % n], order);
      rule.points.insert(rule.points.end(), t.points.begin(), t.points.end());
      rule.weights.insert(rule.weights.end(), t.weights.begin(), t.weights.end());
    }
  } else {
    for (const auto& tri : ear_clip(polygon)) {
      QuadratureRule t = triangle_quadrature(polygon[static_cast<std::size_t>(tri[0])],
                                             polygon[static_cast<std::size_t>(tri[1])],
                                             polygon[static_cast<std::size_t>(tri[2])], order);
      rule.points.insert(rule.points.end(), t.points.begin(), t.points.end());
      rule.weights.insert(rule.weights.end(), t.weights.begin(), t.weights.end());
    }
  }
  return rule;
}

QuadratureRule segment_quadrature(const Point2& p0, const Point2& p1, int order) {
  const int n = (std::max(order, 1) + 2) / 2;  // ceil((order+1)/2)
  std::vector<double> gn, gw;
  gauss_legendre(n, gn, gw);
  QuadratureRule rule;
  rule.points.reserve(static_cast<std::size_t>(n));
  rule.weights.reserve(static_cast<std::size_t>(n));
  const double half_len = 0.5 * distance(p0, p1);
  const Point2 mid = (p0 + p1) * 0.5;
  const Point2 dir = (p1 - p0) * 0.5;
  for (int i = 0; i < n; ++i) {
    rule.points.push_back(mid + dir * gn[static_cast<std::size_t>(i)]);
    rule.weights.push_back(gw[static_cast<std::size_t>(i)] * half_len);
  }
  return rule;
}

}  // namespace polydg
