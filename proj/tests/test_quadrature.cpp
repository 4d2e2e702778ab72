// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polydg/mesh.hpp"
#include "polydg/quadrature.hpp"

using namespace polydg;

namespace {
const std::vector<Point2> kUnitSquare = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

TEST_CASE("gauss-legendre basics") {
  std::vector<double> x, w;
  gauss_legendre(1, x, w);
  CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w[0] == doctest::Approx(2.0).epsilon(1e-15));

  // exactness to degree 2n-1 against analytic moments of [-1,1]
  for (int n = 2; n <= 8; ++n) {
    gauss_legendre(n, x, w);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], d);
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("segment quadrature") {
  // one point at the midpoint with the full length as weight
  QuadratureRule r1 = segment_quadrature({0, 0}, {1, 0}, 1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.points[0].x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  // integral of s^2 over a unit segment = 1/3
  QuadratureRule r2 = segment_quadrature({0, 0}, {1, 0}, 2);
  double s = 0.0;
  for (std::size_t q = 0; q < r2.size(); ++q)
    s += r2.weights[q] * r2.points[q].x * r2.points[q].x;
  CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // weights always sum to the segment length
  auto rng = testing::test_rng();
  for (int trial = 0; trial < 20; ++trial) {
    const Point2 a{testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2)};
    const Point2 b{testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2)};
    const int order = 1 + static_cast<int>(testing::uniform(rng, 0, 9));
    const QuadratureRule r = segment_quadrature(a, b, order);
    CHECK(r.total_weight() == doctest::Approx(distance(a, b)).epsilon(1e-14));
  }
}

TEST_CASE("polygon quadrature on the unit square") {
  QuadratureRule r0 = polygon_quadrature(kUnitSquare, 1);
  CHECK(r0.total_weight() == doctest::Approx(1.0).epsilon(1e-14));

  QuadratureRule r2 = polygon_quadrature(kUnitSquare, 2);
  double sx2 = 0.0;
  for (std::size_t q = 0; q < r2.size(); ++q)
    sx2 += r2.weights[q] * r2.points[q].x * r2.points[q].x;
  CHECK(sx2 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("polygon quadrature exactness vs contour-integral moments") {
  // Voronoi cells of a small random mesh exercise generic convex polygons
  const PolygonalMesh mesh = generate_polygonal_mesh(24, Rect{0, 0, 1, 1}, 7, 3);
  auto rng = testing::test_rng(99);
  for (int c : {0, 5, 11, 23}) {
    const auto poly = mesh.cell_points(c);
    for (int order = 1; order <= 10; ++order) {
      const QuadratureRule rule = polygon_quadrature(poly, order);
      for (double w : rule.weights) CHECK(w > 0.0);
      CHECK(rule.total_weight() ==
            doctest::Approx(polygon_signed_area(poly)).epsilon(1e-12));
      for (int a = 0; a + 0 <= order; ++a) {
        for (int b = 0; a + b <= order; ++b) {
          double s = 0.0;
          for (std::size_t q = 0; q < rule.size(); ++q)
            s += rule.weights[q] * std::pow(rule.points[q].x, a) *
                 std::pow(rule.points[q].y, b);
          const double exact = testing::polygon_moment(poly, a, b);
          CHECK(s == doctest::Approx(exact).epsilon(1e-12));
        }
      }
    }
  }
  (void)rng;
}

TEST_CASE("non-convex polygons fall back to ear clipping") {
  const std::vector<Point2> lshape = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const QuadratureRule rule = polygon_quadrature(lshape, 4);
  for (double w : rule.weights) CHECK(w > 0.0);
  CHECK(rule.total_weight() == doctest::Approx(3.0).epsilon(1e-13));
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * std::pow(rule.points[q].x, a) * std::pow(rule.points[q].y, b);
      CHECK(s == doctest::Approx(testing::polygon_moment(lshape, a, b)).epsilon(1e-12));
    }
}

TEST_CASE("triangle quadrature exactness") {
  const Point2 a{0.1, 0.2}, b{1.3, 0.4}, c{0.6, 1.7};
  const std::vector<Point2> tri = {a, b, c};
  for (int order = 1; order <= 8; ++order) {
    const QuadratureRule rule = triangle_quadrature(a, b, c, order);
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j) {
        double s = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q)
          s += rule.weights[q] * std::pow(rule.points[q].x, i) * std::pow(rule.points[q].y, j);
        CHECK(s == doctest::Approx(testing::polygon_moment(tri, i, j)).epsilon(1e-12));
      }
  }
}
