// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "polydg/mesh.hpp"
#include "polydg/quadrature.hpp"

namespace polydg {

/// Discontinuous space P^p(T_h) with a per-element modal basis: tensor
/// products of Legendre polynomials scaled to the element bounding box and
/// L2-orthonormal on it. Modes are graded-lexicographic: total degree
/// ascending, x-degree descending within a degree, so mode 0 is the
/// constant 1/sqrt(|bbox|). DoFs are element-major contiguous blocks.
class DGSpace {
public:
  DGSpace(const PolygonalMesh& mesh, int degree);

  const PolygonalMesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int n_local() const { return n_local_; }
  Eigen::Index dimension() const {
    return static_cast<Eigen::Index>(mesh_->n_cells()) * n_local_;
  }
  Eigen::Index block_start(int cell) const {
    return static_cast<Eigen::Index>(cell) * n_local_;
  }
  const Rect& bbox(int cell) const { return bbox_[static_cast<std::size_t>(cell)]; }

  /// (x-degree, y-degree) of each local mode.
  const std::vector<std::pair<int, int>>& modes() const { return modes_; }

private:
  const PolygonalMesh* mesh_;
  int degree_;
  int n_local_;
  std::vector<Rect> bbox_;
  std::vector<std::pair<int, int>> modes_;
};

inline DGSpace build_dg_space(const PolygonalMesh& mesh, int degree) {
  return DGSpace(mesh, degree);
}

/// Basis values and gradients at a set of points: values(q, i), gradients
/// per component. Points may lie outside the element (polynomial extension).
struct BasisEval {
  Eigen::MatrixXd values;  // n_pts x n_loc
  Eigen::MatrixXd grad_x;  // n_pts x n_loc
  Eigen::MatrixXd grad_y;  // n_pts x n_loc
};

BasisEval eval_basis(const DGSpace& space, int element, std::span<const Point2> points);

/// Same basis construction on an arbitrary box (used for coarse spaces).
BasisEval eval_box_basis(const Rect& box, int degree, std::span<const Point2> points);

/// Value of the discrete field with coefficients `u` at a point inside
/// `element`.
double eval_field(const DGSpace& space, const Eigen::VectorXd& u, int element,
                  const Point2& p);

/// L2 norm over the mesh of (u_h - g) for a pointwise reference g.
double l2_error(const DGSpace& space, const Eigen::VectorXd& u,
                const std::function<double(const Point2&)>& g, int quad_order = -1);

}  // namespace polydg
