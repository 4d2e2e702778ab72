// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polydg/config.hpp"
#include "polydg/errors.hpp"
#include "polydg/snapshot.hpp"
#include "polydg/study.hpp"

using namespace polydg;

TEST_CASE("defaults follow the reference experiment") {
  const ParsedConfig parsed = parse_config_text("", "<empty>");
  REQUIRE(std::holds_alternative<SimulationConfig>(parsed));
  const auto& cfg = std::get<SimulationConfig>(parsed);
  CHECK(cfg.eta0 == 10.0);
  CHECK(cfg.dt == doctest::Approx(2.5e-3).epsilon(1e-15));  // 2.5 us in ms
  CHECK(cfg.T == 10.0);
  CHECK(cfg.sigma_grey_l == doctest::Approx(6.3));
  CHECK(cfg.sigma_white_n == doctest::Approx(25.71));
  CHECK(cfg.solver.tol == 1e-9);
  CHECK(cfg.precond.kind == PrecondKind::TwoLevel);
}

TEST_CASE("config parsing") {
  SUBCASE("units convert to the internal system") {
    const auto parsed = parse_config_text(
        "sigma.white.l = 0.69 S/m\n"
        "time.dt = 2.5 us\n"
        "time.T = 0.01 s\n"
        "membrane.chi = 1e5 1/m\n"
        "init.u_rest = -0.067 V\n",
        "<test>");
    const auto& cfg = std::get<SimulationConfig>(parsed);
    CHECK(cfg.sigma_white_l == doctest::Approx(6.9).epsilon(1e-14));
    CHECK(cfg.dt == doctest::Approx(2.5e-3).epsilon(1e-14));
    CHECK(cfg.T == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(cfg.chi_m == doctest::Approx(1000.0).epsilon(1e-14));
    CHECK(cfg.init.u_rest == doctest::Approx(-67.0).epsilon(1e-14));
  }

  SUBCASE("preconditioner spec") {
    const auto parsed = parse_config_text(
        "precond.kind = two-level\nprecond.H_ratio = 2\nprecond.q = 1\n", "<test>");
    const auto& cfg = std::get<SimulationConfig>(parsed);
    CHECK(cfg.precond.kind == PrecondKind::TwoLevel);
    CHECK(cfg.precond.h_ratio == 2);
    CHECK(cfg.precond.q == 1);
  }

  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config_text("fem.degre = 2\n", "<t>"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("unknown.section = 1\n", "<t>"), ConfigError);
  }

  SUBCASE("unit mismatches are rejected") {
    CHECK_THROWS_AS(parse_config_text("time.dt = 2.5 mV\n", "<t>"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("fem.eta0 = 10 ms\n", "<t>"), ConfigError);
  }

  SUBCASE("coarse degree above p is rejected") {
    CHECK_THROWS_AS(
        parse_config_text("fem.degree = 1\nprecond.q = 2\n", "<t>"), ConfigError);
  }

  SUBCASE("bad ratios are rejected") {
    CHECK_THROWS_AS(parse_config_text("precond.H_ratio = 3\n", "<t>"), ConfigError);
    CHECK_THROWS_AS(
        parse_config_text("study.cells = 16\nstudy.ratios = 5\n", "<t>"), ConfigError);
  }

  SUBCASE("ionic parameters pass through") {
    const auto parsed =
        parse_config_text("ionic.model = fhn\nionic.params.a = 0.2\n", "<test>");
    const auto& cfg = std::get<SimulationConfig>(parsed);
    CHECK(cfg.ionic_params.at("a") == 0.2);
  }

  SUBCASE("missing file") { CHECK_THROWS_AS(parse_config("/nonexistent/f.cfg"), ConfigError); }

  SUBCASE("study spec") {
    const auto parsed = parse_config_text(
        "study.cells = 128 512\nstudy.ratios = 2 4\nstudy.degrees = 1:1\n"
        "study.preconds = two-level none\nstudy.T = 0.25 ms\n",
        "<test>");
    REQUIRE(std::holds_alternative<StudySpec>(parsed));
    const auto& spec = std::get<StudySpec>(parsed);
    CHECK(spec.cells == std::vector<int>{128, 512});
    CHECK(spec.ratios == std::vector<int>{2, 4});
    REQUIRE(spec.degrees.size() == 1);
    CHECK(spec.degrees[0] == std::pair<int, int>{1, 1});
    CHECK(spec.base.T == doctest::Approx(0.25));
  }
}

TEST_CASE("snapshot export") {
  const PolygonalMesh mesh =
      assign_regions(generate_polygonal_mesh(64, Rect{0, 0, 1, 1}, 42, 10), 0.5);
  const DGSpace space(mesh, 1);
  const SparseSymMatrix M = assemble_mass(space);
  const BlockDiagonalSolver solver(M);
  const auto tmp = std::filesystem::temp_directory_path();

  SUBCASE("constant fields have constant cell means") {
    const Eigen::VectorXd u =
        l2_project(space, solver, [](const Point2&) { return 3.5; });
    for (double m : cell_means(space, u)) CHECK(m == doctest::Approx(3.5).epsilon(1e-12));
  }

  SUBCASE("vtk header and csv round trip") {
    const Eigen::VectorXd u =
        l2_project(space, solver, [](const Point2& p) { return p.x + 2 * p.y; });
    const std::string vtk_path = tmp / "polydg_snap.vtk";
    export_snapshot(space, u, 0.5, vtk_path, "vtk-legacy");
    std::ifstream vtk(vtk_path);
    std::string first;
    std::getline(vtk, first);
    CHECK(first == "# vtk DataFile Version 3.0");

    const std::string csv_path = tmp / "polydg_snap.csv";
    export_snapshot(space, u, 0.5, csv_path, "csv-cellmeans");
    std::ifstream csv(csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "cell_id,centroid_x,centroid_y,u_mean");
    const std::vector<double> means = cell_means(space, u);
    std::string line;
    int row = 0;
    while (std::getline(csv, line)) {
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream is(line);
      int id = 0;
      double cx = 0, cy = 0, um = 0;
      REQUIRE((is >> id >> cx >> cy >> um));
      CHECK(id == row);
      CHECK(um == means[static_cast<std::size_t>(row)]);  // 17-digit round trip
      ++row;
    }
    CHECK(row == mesh.n_cells());
    std::filesystem::remove(vtk_path);
    std::filesystem::remove(csv_path);
  }

  SUBCASE("initial-condition snapshot brackets the pathological region") {
    const Point2 center{0.5, 1.0};
    const double r2 = 0.016;
    const Eigen::VectorXd u = l2_project(space, solver, [&](const Point2& p) {
      const double dx = p.x - center.x, dy = p.y - center.y;
      return dx * dx + dy * dy < r2 ? -50.0 : -67.0;
    });
    const std::vector<double> means = cell_means(space, u);
    int touched = 0;
    for (int c = 0; c < mesh.n_cells(); ++c) {
      const double m = means[static_cast<std::size_t>(c)];
      if (m > -67.0 + 1e-9) {
        ++touched;
        CHECK(m <= -50.0 + 1e-9);
        CHECK(m > -67.0);
      } else {
        CHECK(m == doctest::Approx(-67.0).epsilon(1e-12));
      }
    }
    CHECK(touched > 0);  // the disc overlaps the top edge cells
  }
}

TEST_CASE("scaling study plumbing") {
  StudySpec spec;
  spec.cells = {32};
  spec.ratios = {2, 4};
  spec.degrees = {{1, 1}};
  spec.kinds = {PrecondKind::TwoLevel, PrecondKind::None};
  spec.base.chi_m = 1.0;
  spec.base.dt = 2.5e-3;
  spec.base.T = 5 * spec.base.dt;
  spec.base.mesh.seed = 42;
  spec.base.initial_potential = [](const Point2& p) {
    return -67.0 + 17.0 * std::exp(-20.0 * ((p.x - 0.5) * (p.x - 0.5) + p.y * p.y));
  };

  const std::vector<StudyRow> rows = run_scaling_study(spec);
  REQUIRE(rows.size() == 4);  // cells x ratios x degrees x kinds

  // preconditioned rows beat the unpreconditioned ones
  double two_level_iters = 0, cg_iters = 0;
  for (const StudyRow& r : rows) {
    CHECK(r.converged);
    if (r.precond == PrecondKind::TwoLevel && r.ratio == 2) two_level_iters = r.avg_iters;
    if (r.precond == PrecondKind::None && r.ratio == 2) cg_iters = r.avg_iters;
    if (r.precond == PrecondKind::TwoLevel) CHECK(r.N_H > 0);
  }
  CHECK(two_level_iters < cg_iters);

  SUBCASE("csv output round-trips numbers at 17 digits") {
    const auto tmp = std::filesystem::temp_directory_path();
    const std::string path = tmp / "polydg_study.csv";
    write_study_csv(rows, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "N_h,h,ratio,N_H,p,q,precond,avg_iters,cond_est,wall_s,converged");
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream is(line);
      int n_h = 0, ratio = 0, n_H = 0, p = 0, q = 0, conv = 0;
      double h = 0, avg = 0, cond = 0, wall = 0;
      std::string kind;
      REQUIRE((is >> n_h >> h >> ratio >> n_H >> p >> q >> kind >> avg >> cond >> wall >>
               conv));
      CHECK(n_h == rows[row].N_h);
      CHECK(h == rows[row].h);
      CHECK(avg == rows[row].avg_iters);
      CHECK(cond == rows[row].cond_est.value_or(0.0));
      CHECK(kind == precond_kind_name(rows[row].precond));
      ++row;
    }
    CHECK(row == rows.size());
    std::filesystem::remove(path);

    SUBCASE("study determinism") {
      const std::vector<StudyRow> rows2 = run_scaling_study(spec);
      REQUIRE(rows2.size() == rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows2[i].avg_iters == rows[i].avg_iters);
        CHECK(rows2[i].h == rows[i].h);
      }
    }
  }

  SUBCASE("human-readable table mentions both solver families") {
    std::ostringstream table;
    write_study_table(rows, table);
    const std::string text = table.str();
    CHECK(text.find("p = 1, q = 1") != std::string::npos);
    CHECK(text.find("2h") != std::string::npos);
    CHECK(text.find("CG") != std::string::npos);
  }
}
