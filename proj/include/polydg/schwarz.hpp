// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <memory>
#include <vector>

#include "polydg/assembly.hpp"
#include "polydg/krylov.hpp"
#include "polydg/mesh.hpp"

namespace polydg {

/// Ordered global DoF indices owned by one subdomain. Gathering along these
/// indices realizes R_i; scattering back realizes the extension by zero
/// R_i^T. The index sets of a partition are disjoint and cover all DoFs.
struct SubdomainRestriction {
  std::vector<Eigen::Index> dofs;
};

/// Exact embedding of the coarse space P^q(T_H) into the fine space: column
/// j holds the fine-basis coefficients of coarse basis function j. Coarse
/// basis functions are bounding-box Legendre modes per agglomerate; nesting
/// (q <= p, agglomerated cells) makes the representation exact.
struct CoarseEmbedding {
  Eigen::SparseMatrix<double> E;  // dim(V_h) x dim(V_0)
  int q = 0;
  int n_local = 0;                // coarse modes per agglomerate
  std::vector<Rect> boxes;        // agglomerate bounding boxes

  Eigen::Index coarse_dimension() const { return E.cols(); }
};

CoarseEmbedding build_coarse_embedding(const DGSpace& space_h,
                                       const AgglomeratedPartition& partition_H, int q);

/// Two-level non-overlapping additive Schwarz preconditioner
///   B_ad^{-1} r = sum_i R_i^T K_i^{-1} R_i r + E K_0^{-1} E^T r,
/// K_i the principal submatrices of K_h over the subdomain DoF sets and
/// K_0 = E^T K_h E the Galerkin coarse operator. With one element per
/// subdomain and no coarse term this is block-Jacobi. Factorizations are
/// computed once and reused across time steps; immutable after build.
class SchwarzPreconditioner final : public LinearOperator {
public:
  /// `coarse` may be null (one-level method). Throws SolverError naming the
  /// subdomain if a local factorization fails.
  SchwarzPreconditioner(const SparseSymMatrix& K, const DGSpace& space,
                        const AgglomeratedPartition& partition_S,
                        const CoarseEmbedding* coarse);

  Eigen::Index dimension() const override { return dim_; }
  void apply(const Eigen::VectorXd& r, Eigen::VectorXd& z) const override;

  const std::vector<SubdomainRestriction>& restrictions() const { return restrictions_; }
  bool has_coarse() const { return coarse_ != nullptr; }
  const Eigen::SparseMatrix<double>& coarse_matrix() const { return K0_; }

private:
  Eigen::Index dim_ = 0;
  std::vector<SubdomainRestriction> restrictions_;
  // single-element subdomains use a dense Cholesky, larger ones a sparse one
  std::vector<Eigen::LLT<Eigen::MatrixXd>> dense_;
  std::vector<std::unique_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>> sparse_;
  std::vector<int> solver_of_;  // subdomain -> index into dense_ (>=0) or ~index into sparse_
  const CoarseEmbedding* coarse_ = nullptr;
  Eigen::SparseMatrix<double> K0_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> coarse_llt_;
};

}  // namespace polydg
