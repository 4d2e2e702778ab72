// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/dg_space.hpp"

#include <cmath>

#include "polydg/errors.hpp"

namespace polydg {

namespace {

// Legendre values and derivatives P_0..P_n at xi via the three-term
// recurrence; derivatives by P'_{k+1} = P'_{k-1} + (2k+1) P_k (exact at the
// endpoints, unlike the (1-x^2) form).
void legendre_all(int n, double xi, double* val, double* der) {
  val[0] = 1.0;
  der[0] = 0.0;
  if (n == 0) return;
  val[1] = xi;
  der[1] = 1.0;
  for (int k = 1; k < n; ++k) {
    val[k + 1] = ((2 * k + 1) * xi * val[k] - k * val[k - 1]) / (k + 1);
    der[k + 1] = der[k - 1] + (2 * k + 1) * val[k];
  }
}

}  // namespace

DGSpace::DGSpace(const PolygonalMesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
  if (degree < 1) throw ConfigError("dg space: degree must be >= 1");
  n_local_ = (degree + 1) * (degree + 2) / 2;
  bbox_.reserve(static_cast<std::size_t>(mesh.n_cells()));
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto pts = mesh.cell_points(c);
    bbox_.push_back(bounding_box(pts));
  }
  modes_.reserve(static_cast<std::size_t>(n_local_));
  for (int d = 0; d <= degree; ++d)
    for (int ax = d; ax >= 0; --ax) modes_.emplace_back(ax, d - ax);
}

BasisEval eval_box_basis(const Rect& box, int degree, std::span<const Point2> points) {
  const int n_loc = (degree + 1) * (degree + 2) / 2;
  const auto n_pts = static_cast<Eigen::Index>(points.size());
  BasisEval out;
  out.values.resize(n_pts, n_loc);
  out.grad_x.resize(n_pts, n_loc);
  out.grad_y.resize(n_pts, n_loc);

  const double wx = box.width(), wy = box.height();
  std::vector<double> px(static_cast<std::size_t>(degree) + 1), dpx(px.size());
  std::vector<double> py(px.size()), dpy(px.size());
  // 1D orthonormal factors sqrt((2k+1)/w) P_k(xi), xi the [-1,1] box coordinate
  std::vector<double> scale(px.size());
  for (int k = 0; k <= degree; ++k)
    scale[static_cast<std::size_t>(k)] = std::sqrt(2.0 * k + 1.0);

  for (Eigen::Index q = 0; q < n_pts; ++q) {
    const Point2& p = points[static_cast<std::size_t>(q)];
    const double xi = (2.0 * p.x - box.xmin - box.xmax) / wx;
    const double eta = (2.0 * p.y - box.ymin - box.ymax) / wy;
    legendre_all(degree, xi, px.data(), dpx.data());
    legendre_all(degree, eta, py.data(), dpy.data());
    const double inv_norm = 1.0 / std::sqrt(wx * wy);
    int m = 0;
    for (int d = 0; d <= degree; ++d) {
      for (int ax = d; ax >= 0; --ax, ++m) {
        const int ay = d - ax;
        const double sx = scale[static_cast<std::size_t>(ax)];
        const double sy = scale[static_cast<std::size_t>(ay)];
        const double fx = sx * px[static_cast<std::size_t>(ax)];
        const double fy = sy * py[static_cast<std::size_t>(ay)];
        out.values(q, m) = inv_norm * fx * fy;
        out.grad_x(q, m) =
            inv_norm * sx * dpx[static_cast<std::size_t>(ax)] * (2.0 / wx) * fy;
        out.grad_y(q, m) =
            inv_norm * fx * sy * dpy[static_cast<std::size_t>(ay)] * (2.0 / wy);
      }
    }
  }
  return out;
}

BasisEval eval_basis(const DGSpace& space, int element, std::span<const Point2> points) {
  if (element < 0 || element >= space.mesh().n_cells())
    throw std::out_of_range("eval_basis: element index out of range");
  return eval_box_basis(space.bbox(element), space.degree(), points);
}

double eval_field(const DGSpace& space, const Eigen::VectorXd& u, int element,
                  const Point2& p) {
  const BasisEval basis = eval_basis(space, element, std::span(&p, 1));
  const auto block = u.segment(space.block_start(element), space.n_local());
  return basis.values.row(0).dot(block);
}

double l2_error(const DGSpace& space, const Eigen::VectorXd& u,
                const std::function<double(const Point2&)>& g, int quad_order) {
  if (quad_order < 1) quad_order = 2 * space.degree() + 2;
  double acc = 0.0;
  for (int c = 0; c < space.mesh().n_cells(); ++c) {
    const QuadratureRule rule = polygon_quadrature(space.mesh().cell_points(c), quad_order);
    const BasisEval basis = eval_basis(space, c, rule.points);
    const auto block = u.segment(space.block_start(c), space.n_local());
    const Eigen::VectorXd uh = basis.values * block;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double diff = uh(static_cast<Eigen::Index>(q)) - g(rule.points[q]);
      acc += rule.weights[q] * diff * diff;
    }
  }
  return std::sqrt(acc);
}

}  // namespace polydg
