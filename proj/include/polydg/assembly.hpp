// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>

#include "polydg/dg_space.hpp"

namespace polydg {

/// Per-region anisotropic conductivity: Sigma = sigma_l I + (sigma_n -
/// sigma_l) n (x) n with n the unit normal to the fiber direction l.
/// Piecewise constant per element, constant in time. Units mS/cm.
class ConductivityField {
public:
  ConductivityField(double grey_l, double grey_n, double white_l, double white_n,
                    Point2 white_fiber = {0.0, 1.0}, Point2 grey_fiber = {0.0, 1.0});

  const Eigen::Matrix2d& tensor(Region r) const {
    return tensor_[static_cast<std::size_t>(r)];
  }
  /// Spectral norm of Sigma|_K = max(sigma_l, sigma_n); enters the penalty.
  double spectral_norm(Region r) const { return norm_[static_cast<std::size_t>(r)]; }

  static ConductivityField isotropic(double sigma);

private:
  Eigen::Matrix2d tensor_[2];
  double norm_[2];
};

/// Element tensor lookup.
inline const Eigen::Matrix2d& conductivity_tensor(const ConductivityField& field,
                                                  const PolygonalMesh& mesh, int element) {
  return field.tensor(mesh.region(element));
}

/// Symmetric sparse operator with element-major block metadata. Entries are
/// inserted in (i,j)/(j,i) pairs from one computed value, so the stored
/// matrix is symmetric bit-exactly.
struct SparseSymMatrix {
  Eigen::SparseMatrix<double> mat;
  int block_dim = 0;  // n_loc
  int n_blocks = 0;   // N_h

  Eigen::Index dimension() const { return mat.rows(); }
};

/// Interior-face penalty eta = eta0 * {Sigma_K}_A * p^2 / {h_K}_H with the
/// arithmetic average of the conductivity spectral norms and the harmonic
/// average of the incident element diameters.
double penalty_coefficient(const Face& face, int degree, const ConductivityField& field,
                           double eta0, const PolygonalMesh& mesh);

/// Block-diagonal SPD mass matrix: (i,j) = integral over the owning polygon
/// of phi_i phi_j.
SparseSymMatrix assemble_mass(const DGSpace& space);

/// SIPG stiffness for the pure-Neumann problem: volume diffusion, symmetric
/// consistency fluxes and jump penalty on interior faces only. Symmetric
/// positive semidefinite with the global constants in its kernel.
SparseSymMatrix assemble_stiffness(const DGSpace& space, const ConductivityField& field,
                                   double eta0);

/// K_h = C_m chi_m M_h + (dt/2) A_h.
SparseSymMatrix build_system_matrix(const SparseSymMatrix& M, const SparseSymMatrix& A,
                                    double chi_m, double C_m, double dt);

/// General linear combination a*M + b*A of two matrices with identical block
/// metadata (used for the right-hand-side operator of the time step).
SparseSymMatrix matrix_combination(const SparseSymMatrix& M, const SparseSymMatrix& A,
                                   double a, double b);

/// Cholesky factors of the diagonal blocks of a block-diagonal SPD matrix;
/// solves M x = b block by block.
class BlockDiagonalSolver {
public:
  explicit BlockDiagonalSolver(const SparseSymMatrix& M);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  const Eigen::LLT<Eigen::MatrixXd>& block(int k) const {
    return blocks_[static_cast<std::size_t>(k)];
  }

private:
  std::vector<Eigen::LLT<Eigen::MatrixXd>> blocks_;
  int block_dim_;
};

/// L2 projection of a pointwise field: solves M c = b with b_i = integral of
/// g phi_i (element-local quadrature of order 2p+2).
Eigen::VectorXd l2_project(const DGSpace& space, const BlockDiagonalSolver& mass_solver,
                           const std::function<double(const Point2&)>& g);

}  // namespace polydg
