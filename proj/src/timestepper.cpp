// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/timestepper.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "polydg/errors.hpp"
#include "polydg/snapshot.hpp"

namespace polydg {

void SimulationConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (!(T >= dt)) throw ConfigError("time.T must be at least one step");
  if (!(solver.tol > 0.0 && solver.tol < 1.0))
    throw ConfigError("solver.tol must lie in (0, 1)");
  if (degree < 1) throw ConfigError("fem.degree must be >= 1");
  if (!(eta0 > 0.0)) throw ConfigError("fem.eta0 must be positive");
  if (!(chi_m > 0.0)) throw ConfigError("membrane.chi must be positive");
  if (!(C_m > 0.0)) throw ConfigError("membrane.Cm must be positive");
  if (precond.kind == PrecondKind::TwoLevel) {
    const int r = precond.h_ratio;
    if (r < 2 || (r & (r - 1)) != 0)
      throw ConfigError("precond.H_ratio must be a power of two >= 2");
    if (coarse_degree() > degree)
      throw ConfigError("precond.q must not exceed fem.degree");
  }
  if (output.every < 1) throw ConfigError("output.every must be >= 1");
  if (output.format != "vtk-legacy" && output.format != "csv-cellmeans")
    throw ConfigError("output.format must be vtk-legacy or csv-cellmeans");
}

int SimulationConfig::n_steps() const {
  return std::max(1, static_cast<int>(std::llround(T / dt)));
}

Eigen::VectorXd extrapolate(const Eigen::VectorXd& curr, const Eigen::VectorXd& prev,
                            bool has_prev) {
  if (!has_prev) return curr;
  return 2.0 * curr - prev;
}

void SimulationResult::finalize_stats() {
  double sum = 0.0;
  int max_it = -1;
  double cond_sum = 0.0;
  int cond_n = 0;
  for (const StepStats& s : steps) {
    sum += s.iterations;
    converged_all = converged_all && s.converged;
    if (s.condition_estimate) {
      cond_sum += *s.condition_estimate;
      ++cond_n;
    }
    if (s.iterations > max_it) {
      max_it = s.iterations;
      cond_at_max_iter_step = s.condition_estimate;
    }
  }
  if (!steps.empty()) avg_iterations = sum / static_cast<double>(steps.size());
  if (cond_n > 0) cond_mean = cond_sum / cond_n;
}

Simulation::Simulation(SimulationConfig config) : config_(std::move(config)) {
  config_.validate();

  if (!config_.mesh.file.empty()) {
    mesh_ = std::make_unique<PolygonalMesh>(read_mesh(config_.mesh.file));
  } else {
    PolygonalMesh generated = generate_polygonal_mesh(
        config_.mesh.cells, config_.mesh.domain, config_.mesh.seed, config_.mesh.lloyd);
    mesh_ = std::make_unique<PolygonalMesh>(assign_regions(generated, config_.mesh.split_y));
  }
  space_ = std::make_unique<DGSpace>(*mesh_, config_.degree);

  const ConductivityField field(config_.sigma_grey_l, config_.sigma_grey_n,
                                config_.sigma_white_l, config_.sigma_white_n,
                                config_.fiber_white, config_.fiber_grey);
  M_ = assemble_mass(*space_);
  A_ = assemble_stiffness(*space_, field, config_.eta0);
  K_ = build_system_matrix(M_, A_, config_.chi_m, config_.C_m, config_.dt);
  K_rhs_ = matrix_combination(M_, A_, config_.chi_m * config_.C_m, -0.5 * config_.dt);
  mass_solver_ = std::make_unique<BlockDiagonalSolver>(M_);
  K_op_ = std::make_unique<SparseOperator>(K_.mat);

  if (config_.ionic_model != "none")
    model_ = make_ionic_model(config_.ionic_model, config_.ionic_params);

  if (config_.precond.kind != PrecondKind::None) {
    const AgglomeratedPartition subdomains = identity_partition(*mesh_);
    if (config_.precond.kind == PrecondKind::TwoLevel) {
      const int levels =
          static_cast<int>(std::lround(std::log2(double(config_.precond.h_ratio))));
      const auto hierarchy = agglomerate_hierarchy(*mesh_, levels);
      coarse_ = std::make_unique<CoarseEmbedding>(
          build_coarse_embedding(*space_, hierarchy.back(), config_.coarse_degree()));
    }
    precond_ = std::make_unique<SchwarzPreconditioner>(K_, *space_, subdomains,
                                                       coarse_.get());
  }

  // initial data: the localized imbalance over Omega_0, or the test override
  const InitialSpec& init = config_.init;
  std::function<double(const Point2&)> u0 = config_.initial_potential;
  if (!u0) {
    u0 = [init](const Point2& p) {
      const double dx = p.x - init.omega0_center.x;
      const double dy = p.y - init.omega0_center.y;
      return dx * dx + dy * dy < init.omega0_r2 ? init.u_patch : init.u_rest;
    };
  }
  state_.U_curr = l2_project(*space_, *mass_solver_, u0);
  state_.U_prev = state_.U_curr;
  const int n_comp = model_ ? model_->state_dim() : 0;
  std::vector<double> y_rest(static_cast<std::size_t>(std::max(n_comp, 1)), 0.0);
  if (model_) model_->resting_state(y_rest);
  for (int l = 0; l < n_comp; ++l) {
    const double value = y_rest[static_cast<std::size_t>(l)];
    state_.Y_curr.Y.push_back(
        l2_project(*space_, *mass_solver_, [value](const Point2&) { return value; }));
  }
  state_.Y_prev = state_.Y_curr;
}

Eigen::VectorXd Simulation::external_term(double t_mid) const {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(space_->dimension());
  if (!config_.I_ext) return F;
  const int n_loc = space_->n_local();
  const int order = 2 * space_->degree() + 2;
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const QuadratureRule rule = polygon_quadrature(mesh_->cell_points(c), order);
    const BasisEval basis = eval_basis(*space_, c, rule.points);
    auto block = F.segment(space_->block_start(c), n_loc);
    for (std::size_t q = 0; q < rule.size(); ++q)
      block += rule.weights[q] * config_.I_ext(rule.points[q], t_mid) *
               basis.values.row(static_cast<Eigen::Index>(q)).transpose();
  }
  return F;
}

StepStats Simulation::step() {
  const bool has_prev = state_.k > 0;
  const double dt = config_.dt;

  Eigen::VectorXd rhs = K_rhs_.mat * state_.U_curr;

  if (model_) {
    // reaction current at the second-order extrapolated state
    const Eigen::VectorXd u_star = extrapolate(state_.U_curr, state_.U_prev, has_prev);
    IonicStateFields y_star;
    for (std::size_t l = 0; l < state_.Y_curr.Y.size(); ++l)
      y_star.Y.push_back(extrapolate(state_.Y_curr.Y[l], state_.Y_prev.Y[l], has_prev));
    const IonicTerms at_star = assemble_ionic_terms(*space_, u_star, y_star, *model_);
    rhs -= (config_.chi_m * dt) * at_star.I;
  }
  if (config_.I_ext) rhs += dt * external_term(state_.t + 0.5 * dt);

  const int maxit = config_.solver.maxit > 0 ? config_.solver.maxit
                                             : default_max_iterations(K_.dimension());
  const Eigen::VectorXd x0 = config_.solver.warm_start
                                 ? state_.U_curr
                                 : Eigen::VectorXd::Zero(K_.dimension()).eval();
  auto [u_next, report] = pcg_solve(*K_op_, rhs, precond_.get(), config_.solver.tol,
                                    maxit, x0);
  if (!report.converged)
    throw SolverError("time step " + std::to_string(state_.k + 1) +
                      ": PCG did not converge within " + std::to_string(maxit) +
                      " iterations (residual " +
                      std::to_string(report.residual_history.empty()
                                         ? 1.0
                                         : report.residual_history.back()) +
                      ")");

  // explicit state update with block-diagonal mass solves
  if (model_ && !state_.Y_curr.Y.empty()) {
    const IonicTerms at_curr =
        assemble_ionic_terms(*space_, state_.U_curr, state_.Y_curr, *model_);
    IonicStateFields y_next = state_.Y_curr;
    for (std::size_t l = 0; l < y_next.Y.size(); ++l)
      y_next.Y[l] -= dt * mass_solver_->solve(at_curr.G[l]);
    state_.Y_prev = std::move(state_.Y_curr);
    state_.Y_curr = std::move(y_next);
  }

  state_.U_prev = std::move(state_.U_curr);
  state_.U_curr = std::move(u_next);
  state_.k += 1;
  state_.t = state_.k * dt;

  StepStats stats;
  stats.iterations = report.iterations;
  stats.final_residual =
      report.residual_history.empty() ? 0.0 : report.residual_history.back();
  stats.converged = report.converged;
  stats.condition_estimate = report.condition_estimate;
  return stats;
}

SimulationResult Simulation::run() {
  const auto t_begin = std::chrono::steady_clock::now();
  SimulationResult result;
  const int n_steps = config_.n_steps();
  const bool writing = !config_.output.dir.empty();

  auto snapshot = [&](int k) {
    if (!writing) return;
    std::filesystem::create_directories(config_.output.dir);
    const bool vtk = config_.output.format == "vtk-legacy";
    char name[64];
    std::snprintf(name, sizeof name, "u_%06d.%s", k, vtk ? "vtk" : "csv");
    const std::string path = config_.output.dir + "/" + name;
    export_snapshot(*space_, state_.U_curr, state_.t, path, config_.output.format);
    result.snapshots.push_back(path);
  };

  snapshot(0);  // the projected initial condition, written before stepping
  for (int k = 0; k < n_steps; ++k) {
    result.steps.push_back(step());
    if ((k + 1) % config_.output.every == 0 && k + 1 != n_steps) snapshot(k + 1);
  }
  if (n_steps > 0) snapshot(n_steps);

  result.finalize_stats();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  return result;
}

SimulationResult run_simulation(const SimulationConfig& config) {
  Simulation sim(config);
  return sim.run();
}

}  // namespace polydg
