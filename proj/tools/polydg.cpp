// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <variant>

#include "polydg/config.hpp"
#include "polydg/errors.hpp"
#include "polydg/krylov.hpp"
#include "polydg/study.hpp"

namespace {

using namespace polydg;

SimulationConfig load_run_config(const std::string& path) {
  ParsedConfig parsed = parse_config(path);
  if (std::holds_alternative<StudySpec>(parsed))
    throw ConfigError(path + ": study.* keys present; use 'polydg study'");
  return std::get<SimulationConfig>(std::move(parsed));
}

int cmd_mesh(int cells, std::uint64_t seed, int lloyd, double split_y,
             const std::string& out) {
  PolygonalMesh mesh = generate_polygonal_mesh(cells, Rect{0.0, 0.0, 1.0, 1.0}, seed, lloyd);
  mesh = assign_regions(mesh, split_y);
  write_mesh(mesh, out);
  std::printf("wrote %s: %d cells, %d vertices, h = %.6g\n", out.c_str(), mesh.n_cells(),
              mesh.n_vertices(), mesh.mesh_size());
  return 0;
}

int cmd_run(const std::string& config_path) {
  const SimulationConfig config = load_run_config(config_path);
  Simulation sim(config);
  std::printf("mesh: %d cells, h = %.6g; space: p = %d, dim = %ld; steps: %d\n",
              sim.mesh().n_cells(), sim.mesh().mesh_size(), config.degree,
              static_cast<long>(sim.space().dimension()), config.n_steps());
  const SimulationResult result = sim.run();
  std::printf("avg PCG iterations/step: %.2f\n", result.avg_iterations);
  if (result.cond_at_max_iter_step)
    std::printf("condition estimate (max-iteration step): %.6g\n",
                *result.cond_at_max_iter_step);
  if (result.cond_mean)
    std::printf("condition estimate (mean over steps):    %.6g\n", *result.cond_mean);
  std::printf("snapshots written: %zu\nwall time: %.2f s\n", result.snapshots.size(),
              result.wall_seconds);
  return 0;
}

int cmd_study(const std::string& config_path, const std::string& out_dir) {
  ParsedConfig parsed = parse_config(config_path);
  if (!std::holds_alternative<StudySpec>(parsed))
    throw ConfigError(config_path + ": no study.* keys; use 'polydg run'");
  const auto rows = run_scaling_study(std::get<StudySpec>(parsed), out_dir);
  write_study_table(rows, std::cout);
  std::printf("\nwrote %s/study.csv and %s/study.txt (%zu rows)\n", out_dir.c_str(),
              out_dir.c_str(), rows.size());
  return 0;
}

int cmd_inspect(const std::string& which, const std::string& config_path) {
  const SimulationConfig config = load_run_config(config_path);
  Simulation sim(config);
  const SparseSymMatrix* m = nullptr;
  if (which == "mass") m = &sim.mass();
  else if (which == "stiffness") m = &sim.stiffness();
  else if (which == "system") m = &sim.system_matrix();
  else throw ConfigError("--matrix must be mass, stiffness, or system");

  const Eigen::Index n = m->dimension();
  std::printf("%s matrix: dim = %ld, nnz = %ld, blocks = %d x %d\n", which.c_str(),
              static_cast<long>(n), static_cast<long>(m->mat.nonZeros()), m->n_blocks,
              m->block_dim);
  const double asym = (Eigen::MatrixXd(m->mat) -
                       Eigen::MatrixXd(m->mat).transpose())
                          .cwiseAbs()
                          .maxCoeff();
  std::printf("max |K - K^T| = %.3g\n", asym);
  if (n <= 5000) {
    const auto [lo, hi] = dense_spectrum_oracle(Eigen::MatrixXd(m->mat), nullptr);
    std::printf("spectrum: lambda_min = %.6g, lambda_max = %.6g, kappa = %.6g\n", lo, hi,
                lo > 0 ? hi / lo : std::numeric_limits<double>::infinity());
  } else {
    std::printf("spectrum: skipped (dim > 5000 dense guard)\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PolyDG monodomain solver with agglomerated two-level Schwarz "
               "preconditioning"};
  app.require_subcommand(1);

  auto* mesh = app.add_subcommand("mesh", "generate a polygonal mesh file");
  int cells = 512;
  std::uint64_t seed = 42;
  int lloyd = 20;
  double split_y = 0.5;
  std::string out_file;
  mesh->add_option("--cells", cells, "number of Voronoi cells")->required();
  mesh->add_option("--seed", seed, "generator seed");
  mesh->add_option("--lloyd", lloyd, "Lloyd relaxation sweeps");
  mesh->add_option("--split-y", split_y, "grey/white interface height (cm)");
  mesh->add_option("--out", out_file, "output mesh file")->required();

  auto* run = app.add_subcommand("run", "run one simulation from a config file");
  std::string run_config;
  run->add_option("--config", run_config, "config file")->required();

  auto* study = app.add_subcommand("study", "run a scaling study from a config file");
  std::string study_config, study_out = "study_out";
  study->add_option("--config", study_config, "config file")->required();
  study->add_option("--out", study_out, "output directory");

  auto* inspect = app.add_subcommand("inspect", "assemble a matrix and print a summary");
  std::string matrix_name = "system", inspect_config;
  inspect->add_option("--matrix", matrix_name, "mass | stiffness | system");
  inspect->add_option("--config", inspect_config, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (mesh->parsed()) return cmd_mesh(cells, seed, lloyd, split_y, out_file);
    if (run->parsed()) return cmd_run(run_config);
    if (study->parsed()) return cmd_study(study_config, study_out);
    if (inspect->parsed()) return cmd_inspect(matrix_name, inspect_config);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
