// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/krylov.hpp"

#include <cmath>

#include "polydg/errors.hpp"

namespace polydg {

int default_max_iterations(Eigen::Index dimension) {
  const double cap = 20.0 * std::sqrt(static_cast<double>(dimension));
  return static_cast<int>(std::min(cap, static_cast<double>(dimension)));
}

std::pair<Eigen::VectorXd, PCGReport> pcg_solve(const LinearOperator& K,
                                                const Eigen::VectorXd& b,
                                                const LinearOperator* precond, double tol,
                                                int maxit, const Eigen::VectorXd& x0) {
  const Eigen::Index n = K.dimension();
  if (b.size() != n || x0.size() != n)
    throw SolverError("pcg: vector dimension mismatch");
  if (!(tol > 0.0 && tol < 1.0)) throw SolverError("pcg: tol must lie in (0, 1)");

  PCGReport report;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd r(n), z(n), p(n), q(n);
  K.apply(x, r);
  r = b - r;
  const double denom = r.norm();
  if (denom == 0.0) {
    report.converged = true;
    report.residual_history.push_back(0.0);
    return {std::move(x), std::move(report)};
  }

  auto apply_precond = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    if (precond) precond->apply(in, out);
    else out = in;
  };

  apply_precond(r, z);
  p = z;
  double rho = r.dot(z);
  if (!std::isfinite(rho)) throw SolverError("pcg: non-finite preconditioned product");
  if (rho <= 0.0) throw SolverError("pcg: preconditioner is not positive definite");

  for (int it = 0; it < maxit; ++it) {
    K.apply(p, q);
    const double pq = p.dot(q);
    if (!std::isfinite(pq)) throw SolverError("pcg: non-finite operator product");
    if (pq <= 0.0) throw SolverError("pcg: operator is not positive definite");
    const double alpha = rho / pq;
    report.alphas.push_back(alpha);
    x += alpha * p;
    r -= alpha * q;
    const double rel = r.norm() / denom;
    report.residual_history.push_back(rel);
    ++report.iterations;
    if (rel < tol) {
      report.converged = true;
      break;
    }
    apply_precond(r, z);
    const double rho_next = r.dot(z);
    if (!std::isfinite(rho_next)) throw SolverError("pcg: non-finite scalar");
    if (rho_next <= 0.0) throw SolverError("pcg: preconditioner is not positive definite");
    const double beta = rho_next / rho;
    report.betas.push_back(beta);
    p = z + beta * p;
    rho = rho_next;
  }
  report.condition_estimate = condition_estimate(report);
  return {std::move(x), std::move(report)};
}

std::pair<Eigen::VectorXd, PCGReport> pcg_solve(const LinearOperator& K,
                                                const Eigen::VectorXd& b,
                                                const LinearOperator* precond, double tol) {
  return pcg_solve(K, b, precond, tol, default_max_iterations(K.dimension()),
                   Eigen::VectorXd::Zero(K.dimension()));
}

std::optional<double> condition_estimate(const PCGReport& report) {
  const int m = static_cast<int>(report.alphas.size());
  if (m < 2) return std::nullopt;
  Eigen::VectorXd diag(m), offdiag(m - 1);
  diag(0) = 1.0 / report.alphas[0];
  for (int k = 1; k < m; ++k)
    diag(k) = 1.0 / report.alphas[static_cast<std::size_t>(k)] +
              report.betas[static_cast<std::size_t>(k - 1)] /
                  report.alphas[static_cast<std::size_t>(k - 1)];
  for (int k = 0; k + 1 < m; ++k)
    offdiag(k) = std::sqrt(report.betas[static_cast<std::size_t>(k)]) /
                 report.alphas[static_cast<std::size_t>(k)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::nullopt;  // numerically defective tridiagonal
  return hi / lo;
}

std::pair<double, double> dense_spectrum_oracle(const Eigen::MatrixXd& K,
                                                const Eigen::MatrixXd* B_inv) {
  if (K.rows() > 5000)
    throw SolverError("dense_spectrum_oracle: dimension exceeds the 5000 guard");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (B_inv == nullptr) {
    es.compute(K, Eigen::EigenvaluesOnly);
  } else {
    // eig(B^-1 K) = eig(L^T K L) with B^-1 = L L^T
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (*B_inv + B_inv->transpose()));
    if (llt.info() != Eigen::Success)
      throw SolverError("dense_spectrum_oracle: preconditioner not positive definite");
    const Eigen::MatrixXd L = llt.matrixL();
    es.compute(L.transpose() * K * L, Eigen::EigenvaluesOnly);
  }
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

Eigen::MatrixXd materialize_operator(const LinearOperator& op) {
  const Eigen::Index n = op.dimension();
  if (n > 5000) throw SolverError("materialize_operator: dimension exceeds the 5000 guard");
  Eigen::MatrixXd out(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n), col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e(j) = 1.0;
    op.apply(e, col);
    out.col(j) = col;
    e(j) = 0.0;
  }
  return out;
}

}  // namespace polydg
