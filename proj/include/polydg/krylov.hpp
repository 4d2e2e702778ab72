// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <optional>
#include <vector>

namespace polydg {

/// Matrix-free SPD operator contract.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;
  virtual Eigen::Index dimension() const = 0;
  virtual void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const = 0;
};

class SparseOperator final : public LinearOperator {
public:
  explicit SparseOperator(const Eigen::SparseMatrix<double>& m) : m_(&m) {}
  Eigen::Index dimension() const override { return m_->rows(); }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override { y = *m_ * x; }

private:
  const Eigen::SparseMatrix<double>* m_;
};

struct PCGReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // relative Euclidean residual per iteration
  std::vector<double> alphas;            // PCG step lengths
  std::vector<double> betas;             // PCG direction updates
  std::optional<double> condition_estimate;
};

/// Default iteration cap: 20 sqrt(n), never more than n.
int default_max_iterations(Eigen::Index dimension);

/// Preconditioned conjugate gradients for SPD K. Convergence when
/// ||b - K x_k|| / ||b - K x_0|| < tol (denominator ||b|| for x0 = 0).
/// `precond` may be null (plain CG; the iterates then coincide with textbook
/// CG exactly). Records the alpha/beta coefficients for Lanczos-based
/// condition estimation. Throws SolverError on non-finite scalars.
std::pair<Eigen::VectorXd, PCGReport> pcg_solve(
    const LinearOperator& K, const Eigen::VectorXd& b, const LinearOperator* precond,
    double tol, int maxit, const Eigen::VectorXd& x0);

/// Convenience overload: x0 = 0, default maxit.
std::pair<Eigen::VectorXd, PCGReport> pcg_solve(const LinearOperator& K,
                                                const Eigen::VectorXd& b,
                                                const LinearOperator* precond, double tol);

/// Extreme-eigenvalue ratio of the Lanczos tridiagonal built from the PCG
/// coefficients: diag_k = 1/alpha_k + beta_{k-1}/alpha_{k-1} (1/alpha_0
/// first), offdiag_k = sqrt(beta_k)/alpha_k. Needs at least 2 iterations;
/// returns nullopt otherwise.
std::optional<double> condition_estimate(const PCGReport& report);

/// Dense reference for condition numbers: extreme eigenvalues of B_inv * K
/// through the symmetrized pencil (L^T K L with B_inv = L L^T), or of K alone
/// when B_inv is null. Guards dimension <= 5000.
std::pair<double, double> dense_spectrum_oracle(const Eigen::MatrixXd& K,
                                                const Eigen::MatrixXd* B_inv);

/// Materializes an operator column-by-column (test/oracle helper; same
/// dimension guard).
Eigen::MatrixXd materialize_operator(const LinearOperator& op);

}  // namespace polydg
