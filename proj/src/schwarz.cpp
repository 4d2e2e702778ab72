// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/schwarz.hpp"

#include <string>

#include "polydg/errors.hpp"
#include "polydg/parallel.hpp"

namespace polydg {

CoarseEmbedding build_coarse_embedding(const DGSpace& space_h,
                                       const AgglomeratedPartition& partition_H, int q) {
  const int p = space_h.degree();
  if (q < 1 || q > p)
    throw ConfigError("coarse embedding: requires 1 <= q <= p, got q = " + std::to_string(q));
  if (partition_H.parent != &space_h.mesh())
    throw ConfigError("coarse embedding: partition does not cover the space's mesh");

  const PolygonalMesh& mesh = space_h.mesh();
  CoarseEmbedding emb;
  emb.q = q;
  emb.n_local = (q + 1) * (q + 2) / 2;

  // agglomerate bounding boxes from member-cell vertices
  emb.boxes.assign(static_cast<std::size_t>(partition_H.count), Rect{});
  std::vector<bool> seen(static_cast<std::size_t>(partition_H.count), false);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int a = partition_H.owner[static_cast<std::size_t>(c)];
    const Rect cb = bounding_box(mesh.cell_points(c));
    Rect& box = emb.boxes[static_cast<std::size_t>(a)];
    if (!seen[static_cast<std::size_t>(a)]) {
      box = cb;
      seen[static_cast<std::size_t>(a)] = true;
    } else {
      box.xmin = std::min(box.xmin, cb.xmin);
      box.xmax = std::max(box.xmax, cb.xmax);
      box.ymin = std::min(box.ymin, cb.ymin);
      box.ymax = std::max(box.ymax, cb.ymax);
    }
  }

  // Column block per fine cell: coefficients of each coarse mode in the
  // cell's basis, M_K^{-1} integral(phi psi). The integrand has degree
  // <= p + q, so the quadrature is exact and the embedding reproduces coarse
  // polynomials to rounding.
  const int n_loc = space_h.n_local();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(mesh.n_cells()) * n_loc * emb.n_local);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int a = partition_H.owner[static_cast<std::size_t>(c)];
    const QuadratureRule rule =
        polygon_quadrature(mesh.cell_points(c), 2 * p + 2);
    const BasisEval fine = eval_basis(space_h, c, rule.points);
    const BasisEval coarse = eval_box_basis(emb.boxes[static_cast<std::size_t>(a)], q, rule.points);

    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n_loc, n_loc);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n_loc, emb.n_local);
    for (std::size_t qp = 0; qp < rule.size(); ++qp) {
      const auto qi = static_cast<Eigen::Index>(qp);
      const double w = rule.weights[qp];
      mass.noalias() += w * fine.values.row(qi).transpose() * fine.values.row(qi);
      rhs.noalias() += w * fine.values.row(qi).transpose() * coarse.values.row(qi);
    }
    const Eigen::MatrixXd coeff = Eigen::LLT<Eigen::MatrixXd>(mass).solve(rhs);
    const Eigen::Index r0 = space_h.block_start(c);
    const Eigen::Index c0 = static_cast<Eigen::Index>(a) * emb.n_local;
    for (int i = 0; i < n_loc; ++i)
      for (int m = 0; m < emb.n_local; ++m) trips.emplace_back(r0 + i, c0 + m, coeff(i, m));
  }
  emb.E.resize(space_h.dimension(),
               static_cast<Eigen::Index>(partition_H.count) * emb.n_local);
  emb.E.setFromTriplets(trips.begin(), trips.end());
  emb.E.makeCompressed();
  return emb;
}

SchwarzPreconditioner::SchwarzPreconditioner(const SparseSymMatrix& K, const DGSpace& space,
                                             const AgglomeratedPartition& partition_S,
                                             const CoarseEmbedding* coarse)
    : dim_(K.dimension()), coarse_(coarse) {
  if (partition_S.parent != &space.mesh())
    throw ConfigError("schwarz: subdomain partition does not cover the space's mesh");
  const int n_loc = space.n_local();

  const auto members = partition_S.members();
  restrictions_.resize(members.size());
  solver_of_.assign(members.size(), 0);
  for (std::size_t s = 0; s < members.size(); ++s) {
    auto& dofs = restrictions_[s].dofs;
    dofs.reserve(members[s].size() * static_cast<std::size_t>(n_loc));
    for (int cell : members[s]) {
      const Eigen::Index b0 = space.block_start(cell);
      for (int i = 0; i < n_loc; ++i) dofs.push_back(b0 + i);
    }
  }

  // factor each principal submatrix K_i = R_i K R_i^T
  std::vector<int> global_to_local(static_cast<std::size_t>(dim_), -1);
  for (std::size_t s = 0; s < members.size(); ++s) {
    const auto& dofs = restrictions_[s].dofs;
    const auto nd = static_cast<Eigen::Index>(dofs.size());
    if (members[s].size() == 1) {
      Eigen::MatrixXd block = Eigen::MatrixXd(K.mat.block(dofs.front(), dofs.front(), nd, nd));
      Eigen::LLT<Eigen::MatrixXd> llt(block);
      if (llt.info() != Eigen::Success)
        throw SolverError("schwarz: subdomain " + std::to_string(s) +
                          " block is not positive definite");
      solver_of_[s] = static_cast<int>(dense_.size());
      dense_.push_back(std::move(llt));
    } else {
      for (Eigen::Index i = 0; i < nd; ++i)
        global_to_local[static_cast<std::size_t>(dofs[static_cast<std::size_t>(i)])] =
            static_cast<int>(i);
      std::vector<Eigen::Triplet<double>> trips;
      for (Eigen::Index j = 0; j < nd; ++j) {
        const Eigen::Index gj = dofs[static_cast<std::size_t>(j)];
        for (Eigen::SparseMatrix<double>::InnerIterator it(K.mat, gj); it; ++it) {
          const int li = global_to_local[static_cast<std::size_t>(it.row())];
          if (li >= 0) trips.emplace_back(li, j, it.value());
        }
      }
      for (Eigen::Index i = 0; i < nd; ++i)
        global_to_local[static_cast<std::size_t>(dofs[static_cast<std::size_t>(i)])] = -1;
      Eigen::SparseMatrix<double> sub(nd, nd);
      sub.setFromTriplets(trips.begin(), trips.end());
      auto llt = std::make_unique<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
      llt->compute(sub);
      if (llt->info() != Eigen::Success)
        throw SolverError("schwarz: subdomain " + std::to_string(s) +
                          " factorization failed (not positive definite)");
      solver_of_[s] = ~static_cast<int>(sparse_.size());
      sparse_.push_back(std::move(llt));
    }
  }

  if (coarse_) {
    if (coarse_->E.rows() != dim_)
      throw ConfigError("schwarz: coarse embedding dimension mismatch");
    K0_ = coarse_->E.transpose() * K.mat * coarse_->E;
    K0_.makeCompressed();
    coarse_llt_.compute(K0_);
    if (coarse_llt_.info() != Eigen::Success)
      throw SolverError("schwarz: coarse operator factorization failed");
  }
}

void SchwarzPreconditioner::apply(const Eigen::VectorXd& r, Eigen::VectorXd& z) const {
  if (r.size() != dim_) throw SolverError("schwarz apply: dimension mismatch");
  z.resize(dim_);
  z.setZero();
  // local solves scatter to disjoint index sets, so the parallel result is
  // bitwise identical to the serial one
  parallel_for(restrictions_.size(), [&](std::size_t s) {
    const auto& dofs = restrictions_[s].dofs;
    const auto nd = static_cast<Eigen::Index>(dofs.size());
    Eigen::VectorXd loc(nd);
    for (Eigen::Index i = 0; i < nd; ++i) loc(i) = r(dofs[static_cast<std::size_t>(i)]);
    const int tag = solver_of_[s];
    if (tag >= 0) loc = dense_[static_cast<std::size_t>(tag)].solve(loc);
    else loc = sparse_[static_cast<std::size_t>(~tag)]->solve(loc);
    for (Eigen::Index i = 0; i < nd; ++i) z(dofs[static_cast<std::size_t>(i)]) = loc(i);
  });
  if (coarse_) {
    const Eigen::VectorXd r0 = coarse_->E.transpose() * r;
    z += coarse_->E * coarse_llt_.solve(r0);
  }
}

}  // namespace polydg
