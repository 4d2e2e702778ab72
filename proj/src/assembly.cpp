// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/assembly.hpp"

#include <cmath>
#include <vector>

#include "polydg/errors.hpp"

namespace polydg {

ConductivityField::ConductivityField(double grey_l, double grey_n, double white_l,
                                     double white_n, Point2 white_fiber, Point2 grey_fiber) {
  if (!(grey_l > 0.0 && grey_n > 0.0 && white_l > 0.0 && white_n > 0.0))
    throw ConfigError("conductivity: all sigma values must be positive");
  auto build = [](double sl, double sn, Point2 fiber) {
    const double len = norm(fiber);
    if (!(len > 0.0)) throw ConfigError("conductivity: zero fiber direction");
    const Point2 n{-fiber.y / len, fiber.x / len};  // unit normal to the fiber
    Eigen::Matrix2d t = sl * Eigen::Matrix2d::Identity();
    t(0, 0) += (sn - sl) * n.x * n.x;
    t(0, 1) += (sn - sl) * n.x * n.y;
    t(1, 0) += (sn - sl) * n.y * n.x;
    t(1, 1) += (sn - sl) * n.y * n.y;
    return t;
  };
  tensor_[static_cast<std::size_t>(Region::Grey)] = build(grey_l, grey_n, grey_fiber);
  tensor_[static_cast<std::size_t>(Region::White)] = build(white_l, white_n, white_fiber);
  norm_[static_cast<std::size_t>(Region::Grey)] = std::max(grey_l, grey_n);
  norm_[static_cast<std::size_t>(Region::White)] = std::max(white_l, white_n);
}

ConductivityField ConductivityField::isotropic(double sigma) {
  return ConductivityField(sigma, sigma, sigma, sigma);
}

double penalty_coefficient(const Face& face, int degree, const ConductivityField& field,
                           double eta0, const PolygonalMesh& mesh) {
  const double nk = field.spectral_norm(mesh.region(face.cell_in));
  const double nl = field.spectral_norm(mesh.region(face.cell_out));
  const double hk = mesh.cell_diameter(face.cell_in);
  const double hl = mesh.cell_diameter(face.cell_out);
  const double sigma_avg = 0.5 * (nk + nl);          // arithmetic
  const double h_avg = 2.0 * hk * hl / (hk + hl);    // harmonic
  return eta0 * sigma_avg * degree * degree / h_avg;
}

namespace {

using Triplet = Eigen::Triplet<double>;

// Diagonal blocks push the upper triangle mirrored; off-diagonal blocks push
// each value and its transpose. One computed value per symmetric entry pair
// keeps the global matrix symmetric bit-exactly.
void push_diag_block(std::vector<Triplet>& trips, Eigen::Index row0,
                     const Eigen::MatrixXd& local) {
  const Eigen::Index n = local.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    trips.emplace_back(row0 + i, row0 + i, local(i, i));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      trips.emplace_back(row0 + i, row0 + j, local(i, j));
      trips.emplace_back(row0 + j, row0 + i, local(i, j));
    }
  }
}

void push_offdiag_block(std::vector<Triplet>& trips, Eigen::Index row0, Eigen::Index col0,
                        const Eigen::MatrixXd& local) {
  for (Eigen::Index i = 0; i < local.rows(); ++i)
    for (Eigen::Index j = 0; j < local.cols(); ++j) {
      trips.emplace_back(row0 + i, col0 + j, local(i, j));
      trips.emplace_back(col0 + j, row0 + i, local(i, j));
    }
}

SparseSymMatrix from_triplets(const DGSpace& space, std::vector<Triplet>& trips) {
  SparseSymMatrix out;
  out.block_dim = space.n_local();
  out.n_blocks = space.mesh().n_cells();
  out.mat.resize(space.dimension(), space.dimension());
  out.mat.setFromTriplets(trips.begin(), trips.end());
  out.mat.makeCompressed();
  return out;
}

}  // namespace

SparseSymMatrix assemble_mass(const DGSpace& space) {
  const int n_loc = space.n_local();
  const int order = 2 * space.degree() + 2;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(space.mesh().n_cells()) * n_loc * n_loc);
  Eigen::MatrixXd local(n_loc, n_loc);
  for (int c = 0; c < space.mesh().n_cells(); ++c) {
    const QuadratureRule rule = polygon_quadrature(space.mesh().cell_points(c), order);
    const BasisEval basis = eval_basis(space, c, rule.points);
    local.setZero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto row = basis.values.row(static_cast<Eigen::Index>(q));
      const double w = rule.weights[q];
      for (int i = 0; i < n_loc; ++i)
        for (int j = i; j < n_loc; ++j) local(i, j) += w * row(i) * row(j);
    }
    push_diag_block(trips, space.block_start(c), local);
  }
  return from_triplets(space, trips);
}

SparseSymMatrix assemble_stiffness(const DGSpace& space, const ConductivityField& field,
                                   double eta0) {
  const PolygonalMesh& mesh = space.mesh();
  const int n_loc = space.n_local();
  const int p = space.degree();
  const int order = 2 * p + 2;
  std::vector<Triplet> trips;

  // volume term: integral of (Sigma grad phi_j) . grad phi_i over each cell
  Eigen::MatrixXd local(n_loc, n_loc);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const Eigen::Matrix2d sigma = field.tensor(mesh.region(c));
    const QuadratureRule rule = polygon_quadrature(mesh.cell_points(c), order);
    const BasisEval basis = eval_basis(space, c, rule.points);
    local.setZero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto qi = static_cast<Eigen::Index>(q);
      const double w = rule.weights[q];
      for (int j = 0; j < n_loc; ++j) {
        const double sx = sigma(0, 0) * basis.grad_x(qi, j) + sigma(0, 1) * basis.grad_y(qi, j);
        const double sy = sigma(1, 0) * basis.grad_x(qi, j) + sigma(1, 1) * basis.grad_y(qi, j);
        for (int i = 0; i <= j; ++i)
          local(i, j) += w * (basis.grad_x(qi, i) * sx + basis.grad_y(qi, i) * sy);
      }
    }
    push_diag_block(trips, space.block_start(c), local);
  }

  // interior-face terms: symmetric consistency fluxes and jump penalty
  Eigen::MatrixXd kk(n_loc, n_loc), ll(n_loc, n_loc), kl(n_loc, n_loc);
  for (const Face& face : mesh.interior_faces()) {
    const int K = face.cell_in;
    const int L = face.cell_out;
    const double eta = penalty_coefficient(face, p, field, eta0, mesh);
    const Eigen::Matrix2d sig_k = field.tensor(mesh.region(K));
    const Eigen::Matrix2d sig_l = field.tensor(mesh.region(L));
    const QuadratureRule rule = face_quadrature(face, order);
    const BasisEval bk = eval_basis(space, K, rule.points);
    const BasisEval bl = eval_basis(space, L, rule.points);
    kk.setZero();
    ll.setZero();
    kl.setZero();
    Eigen::VectorXd ak(n_loc), al(n_loc);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto qi = static_cast<Eigen::Index>(q);
      const double w = rule.weights[q];
      // Sigma-flux normal components, both measured against the K-outward normal
      for (int m = 0; m < n_loc; ++m) {
        ak(m) = (sig_k(0, 0) * bk.grad_x(qi, m) + sig_k(0, 1) * bk.grad_y(qi, m)) * face.normal.x +
                (sig_k(1, 0) * bk.grad_x(qi, m) + sig_k(1, 1) * bk.grad_y(qi, m)) * face.normal.y;
        al(m) = (sig_l(0, 0) * bl.grad_x(qi, m) + sig_l(0, 1) * bl.grad_y(qi, m)) * face.normal.x +
                (sig_l(1, 0) * bl.grad_x(qi, m) + sig_l(1, 1) * bl.grad_y(qi, m)) * face.normal.y;
      }
      for (int i = 0; i < n_loc; ++i) {
        const double vk_i = bk.values(qi, i);
        const double vl_i = bl.values(qi, i);
        for (int j = i; j < n_loc; ++j) {
          kk(i, j) += w * (-0.5 * (ak(j) * vk_i + ak(i) * bk.values(qi, j)) +
                           eta * bk.values(qi, j) * vk_i);
          ll(i, j) += w * (0.5 * (al(j) * vl_i + al(i) * bl.values(qi, j)) +
                           eta * bl.values(qi, j) * vl_i);
        }
        for (int j = 0; j < n_loc; ++j) {
          kl(i, j) += w * (-0.5 * al(j) * vk_i + 0.5 * ak(i) * bl.values(qi, j) -
                           eta * bl.values(qi, j) * vk_i);
        }
      }
    }
    push_diag_block(trips, space.block_start(K), kk);
    push_diag_block(trips, space.block_start(L), ll);
    push_offdiag_block(trips, space.block_start(K), space.block_start(L), kl);
  }
  return from_triplets(space, trips);
}

SparseSymMatrix matrix_combination(const SparseSymMatrix& M, const SparseSymMatrix& A,
                                   double a, double b) {
  if (M.mat.rows() != A.mat.rows() || M.block_dim != A.block_dim)
    throw ConfigError("matrix combination: dimension mismatch");
  SparseSymMatrix out;
  out.block_dim = M.block_dim;
  out.n_blocks = M.n_blocks;
  out.mat = a * M.mat + b * A.mat;
  out.mat.makeCompressed();
  return out;
}

SparseSymMatrix build_system_matrix(const SparseSymMatrix& M, const SparseSymMatrix& A,
                                    double chi_m, double C_m, double dt) {
  if (!(chi_m > 0.0 && C_m > 0.0 && dt > 0.0))
    throw ConfigError("system matrix: chi_m, C_m, dt must be positive");
  return matrix_combination(M, A, C_m * chi_m, 0.5 * dt);
}

BlockDiagonalSolver::BlockDiagonalSolver(const SparseSymMatrix& M)
    : block_dim_(M.block_dim) {
  const int nb = M.n_blocks;
  blocks_.reserve(static_cast<std::size_t>(nb));
  Eigen::MatrixXd dense(block_dim_, block_dim_);
  for (int k = 0; k < nb; ++k) {
    const Eigen::Index b0 = static_cast<Eigen::Index>(k) * block_dim_;
    dense = Eigen::MatrixXd(M.mat.block(b0, b0, block_dim_, block_dim_));
    Eigen::LLT<Eigen::MatrixXd> llt(dense);
    if (llt.info() != Eigen::Success)
      throw SolverError("mass block " + std::to_string(k) + " is not positive definite");
    blocks_.push_back(std::move(llt));
  }
}

Eigen::VectorXd BlockDiagonalSolver::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x(rhs.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Eigen::Index b0 = static_cast<Eigen::Index>(k) * block_dim_;
    x.segment(b0, block_dim_) = blocks_[k].solve(rhs.segment(b0, block_dim_));
  }
  return x;
}

Eigen::VectorXd l2_project(const DGSpace& space, const BlockDiagonalSolver& mass_solver,
                           const std::function<double(const Point2&)>& g) {
  const int n_loc = space.n_local();
  const int order = 2 * space.degree() + 2;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(space.dimension());
  for (int c = 0; c < space.mesh().n_cells(); ++c) {
    const QuadratureRule rule = polygon_quadrature(space.mesh().cell_points(c), order);
    const BasisEval basis = eval_basis(space, c, rule.points);
    auto block = rhs.segment(space.block_start(c), n_loc);
    for (std::size_t q = 0; q < rule.size(); ++q)
      block += rule.weights[q] * g(rule.points[q]) *
               basis.values.row(static_cast<Eigen::Index>(q)).transpose();
  }
  return mass_solver.solve(rhs);
}

}  // namespace polydg
