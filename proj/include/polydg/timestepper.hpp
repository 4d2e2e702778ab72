// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "polydg/ionics.hpp"
#include "polydg/schwarz.hpp"

namespace polydg {

enum class PrecondKind { None, BlockJacobi, TwoLevel };

struct MeshSpec {
  int cells = 512;
  std::uint64_t seed = 42;
  int lloyd = 20;
  std::string file;          // when set, loaded instead of generated
  Rect domain{0.0, 0.0, 1.0, 1.0};
  double split_y = 0.5;      // grey/white interface height (cm)
};

struct InitialSpec {
  double u_rest = -67.0;     // mV
  double u_patch = -50.0;    // mV inside the pathological region
  Point2 omega0_center{0.5, 1.0};
  double omega0_r2 = 0.016;  // cm^2, squared radius
};

struct SolverSpec {
  double tol = 1e-9;
  int maxit = 0;             // 0 = 20 sqrt(n) capped at n
  bool warm_start = true;    // previous step's solution as initial guess
};

struct PrecondSpec {
  PrecondKind kind = PrecondKind::TwoLevel;
  int h_ratio = 2;           // H/h, power of two
  int q = 0;                 // coarse degree; 0 = same as p
};

struct OutputSpec {
  std::string dir;           // empty = no snapshots
  int every = 100;           // steps between snapshots (plus t=0 and t=T)
  std::string format = "vtk-legacy";
};

struct SimulationConfig {
  MeshSpec mesh;
  int degree = 1;
  double eta0 = 10.0;
  double chi_m = 1000.0;     // 1/cm
  double C_m = 1.0;          // uF/cm^2
  double dt = 2.5e-3;        // ms
  double T = 10.0;           // ms
  double sigma_grey_l = 6.3, sigma_grey_n = 6.3;     // mS/cm
  double sigma_white_l = 6.9, sigma_white_n = 25.71; // mS/cm
  Point2 fiber_grey{0.0, 1.0};
  Point2 fiber_white{0.0, 1.0};
  std::string ionic_model = "fhn";   // "fhn" | "barreto-cressman" | "none"
  std::map<std::string, double> ionic_params;
  InitialSpec init;
  SolverSpec solver;
  PrecondSpec precond;
  OutputSpec output;
  /// External current density I_ext(x, t) in uA/cm^2; evaluated at the step
  /// midpoint so the trapezoidal update stays second order. Null = zero.
  std::function<double(const Point2&, double)> I_ext;
  /// Test hook: arbitrary initial potential instead of the disc imbalance.
  std::function<double(const Point2&)> initial_potential;

  void validate() const;
  int n_steps() const;
  int coarse_degree() const { return precond.q > 0 ? precond.q : degree; }
};

struct TimeStepState {
  int k = 0;
  double t = 0.0;                 // ms, equals k * dt
  Eigen::VectorXd U_curr, U_prev;
  IonicStateFields Y_curr, Y_prev;
};

/// Two-point second-order extrapolation 2 u^k - u^{k-1}; falls back to u^k on
/// the first step.
Eigen::VectorXd extrapolate(const Eigen::VectorXd& curr, const Eigen::VectorXd& prev,
                            bool has_prev);

struct StepStats {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  std::optional<double> condition_estimate;
};

struct SimulationResult {
  std::vector<StepStats> steps;
  std::vector<std::string> snapshots;
  double wall_seconds = 0.0;
  double avg_iterations = 0.0;
  std::optional<double> cond_at_max_iter_step;
  std::optional<double> cond_mean;
  bool converged_all = true;

  void finalize_stats();
};

/// Owns the discretization and integrates the semi-implicit scheme: the
/// system matrix, its preconditioner and the mass factorization are built
/// once (K_h is constant in time) and reused by every step.
class Simulation {
public:
  explicit Simulation(SimulationConfig config);

  /// Advances one step of the fully discrete system
  ///   K_h U^{k+1} = (chi C M - dt/2 A) U^k - chi dt I^{k+1} + dt F^{k+1},
  ///   M Y^{k+1}   = M Y^k - dt G^k,
  /// with I evaluated at the extrapolated state. Throws SolverError with the
  /// step index on non-convergence.
  StepStats step();

  /// Full run with snapshot output; N_T = T/dt steps.
  SimulationResult run();

  const PolygonalMesh& mesh() const { return *mesh_; }
  const DGSpace& space() const { return *space_; }
  const TimeStepState& state() const { return state_; }
  const SparseSymMatrix& mass() const { return M_; }
  const SparseSymMatrix& stiffness() const { return A_; }
  const SparseSymMatrix& system_matrix() const { return K_; }
  const SchwarzPreconditioner* preconditioner() const { return precond_.get(); }
  const SimulationConfig& config() const { return config_; }

private:
  SimulationConfig config_;
  std::unique_ptr<PolygonalMesh> mesh_;
  std::unique_ptr<DGSpace> space_;
  std::unique_ptr<IonicModel> model_;  // null for the zero model
  SparseSymMatrix M_, A_, K_, K_rhs_;
  std::unique_ptr<BlockDiagonalSolver> mass_solver_;
  std::unique_ptr<CoarseEmbedding> coarse_;
  std::unique_ptr<SchwarzPreconditioner> precond_;
  std::unique_ptr<SparseOperator> K_op_;
  TimeStepState state_;

  Eigen::VectorXd external_term(double t_mid) const;
};

/// Builds, runs, and reports in one call.
SimulationResult run_simulation(const SimulationConfig& config);

}  // namespace polydg
