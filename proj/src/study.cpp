// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/study.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "polydg/errors.hpp"

namespace polydg {

std::vector<StudyRow> run_scaling_study(const StudySpec& spec) {
  std::vector<StudyRow> rows;
  for (int n_h : spec.cells) {
    // one mesh per size, shared across ratios/degrees/kinds
    double h = 0.0;
    for (const auto& [p, q] : spec.degrees) {
      for (int ratio : spec.ratios) {
        for (PrecondKind kind : spec.kinds) {
          StudyRow row;
          row.N_h = n_h;
          row.ratio = ratio;
          row.p = p;
          row.q = q;
          row.precond = kind;
          const auto t0 = std::chrono::steady_clock::now();
          try {
            SimulationConfig cfg = spec.base;
            cfg.mesh.cells = n_h;
            cfg.degree = p;
            cfg.precond.kind = kind;
            cfg.precond.h_ratio = ratio;
            cfg.precond.q = q;
            cfg.output.dir.clear();  // studies emit tables, not snapshots
            Simulation sim(cfg);
            h = sim.mesh().mesh_size();
            row.h = h;
            if (const SchwarzPreconditioner* pc = sim.preconditioner();
                pc && pc->has_coarse())
              row.N_H = static_cast<int>(pc->coarse_matrix().rows()) /
                        ((q + 1) * (q + 2) / 2);
            SimulationResult result = sim.run();
            row.avg_iters = result.avg_iterations;
            row.cond_est = result.cond_at_max_iter_step;
            row.cond_mean = result.cond_mean;
            row.converged = result.converged_all;
          } catch (const std::exception& e) {
            std::cerr << "study: combination N_h=" << n_h << " p=" << p
                      << " ratio=" << ratio << " precond=" << precond_kind_name(kind)
                      << " failed: " << e.what() << '\n';
            row.h = h;
            row.converged = false;
          }
          row.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                           .count();
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

void write_study_csv(const std::vector<StudyRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open study csv for writing: " + path);
  out << "N_h,h,ratio,N_H,p,q,precond,avg_iters,cond_est,wall_s,converged\n";
  char buf[256];
  for (const StudyRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%d,%d,%d,%d,%s,%.17g,%.17g,%.17g,%d\n", r.N_h,
                  r.h, r.ratio, r.N_H, r.p, r.q, precond_kind_name(r.precond), r.avg_iters,
                  r.cond_est.value_or(0.0), r.wall_s, r.converged ? 1 : 0);
    out << buf;
  }
  if (!out) throw IoError("study csv write failed: " + path);
}

namespace {

std::string cell_text(const StudyRow& r) {
  char buf[96];
  if (!r.converged) return "failed";
  if (r.cond_est && r.cond_mean)
    std::snprintf(buf, sizeof buf, "%.4g/%.4g (%.4g)", *r.cond_est, *r.cond_mean,
                  r.avg_iters);
  else
    std::snprintf(buf, sizeof buf, "- (%.4g)", r.avg_iters);
  return buf;
}

}  // namespace

void write_study_table(const std::vector<StudyRow>& rows, std::ostream& out) {
  std::set<std::pair<int, int>> degree_pairs;
  std::vector<int> meshes;
  std::vector<int> ratios;
  for (const StudyRow& r : rows) {
    degree_pairs.insert({r.p, r.q});
    if (std::find(meshes.begin(), meshes.end(), r.N_h) == meshes.end())
      meshes.push_back(r.N_h);
    if (r.precond == PrecondKind::TwoLevel &&
        std::find(ratios.begin(), ratios.end(), r.ratio) == ratios.end())
      ratios.push_back(r.ratio);
  }
  std::sort(meshes.begin(), meshes.end());
  std::sort(ratios.begin(), ratios.end());

  auto find_row = [&](int p, int q, int n_h, PrecondKind kind,
                      int ratio) -> const StudyRow* {
    for (const StudyRow& r : rows)
      if (r.p == p && r.q == q && r.N_h == n_h && r.precond == kind &&
          (kind != PrecondKind::TwoLevel || r.ratio == ratio))
        return &r;
    return nullptr;
  };

  out << "condition estimate max-step/mean (average PCG iterations per step)\n";
  for (const auto& [p, q] : degree_pairs) {
    out << "\np = " << p << ", q = " << q << '\n';
    std::map<int, double> h_of;
    for (const StudyRow& r : rows)
      if (r.p == p && r.h > 0.0) h_of[r.N_h] = r.h;
    out << "      ";
    for (int n_h : meshes) {
      char head[64];
      std::snprintf(head, sizeof head, "h=%-7.3g N=%-6d", h_of.count(n_h) ? h_of[n_h] : 0.0,
                    n_h);
      out << "| " << head;
    }
    out << '\n';
    for (int ratio : ratios) {
      char label[16];
      std::snprintf(label, sizeof label, "%4dh ", ratio);
      out << label;
      for (int n_h : meshes) {
        const StudyRow* r = find_row(p, q, n_h, PrecondKind::TwoLevel, ratio);
        char cell[64];
        std::snprintf(cell, sizeof cell, "| %-22s", r ? cell_text(*r).c_str() : "-");
        out << cell;
      }
      out << '\n';
    }
    for (PrecondKind kind : {PrecondKind::BlockJacobi, PrecondKind::None}) {
      bool any = false;
      for (const StudyRow& r : rows)
        if (r.p == p && r.q == q && r.precond == kind) any = true;
      if (!any) continue;
      char label[16];
      std::snprintf(label, sizeof label, "%5s ", kind == PrecondKind::None ? "CG" : "BJ");
      out << label;
      for (int n_h : meshes) {
        const StudyRow* r = find_row(p, q, n_h, kind, 0);
        char cell[64];
        std::snprintf(cell, sizeof cell, "| %-22s", r ? cell_text(*r).c_str() : "-");
        out << cell;
      }
      out << '\n';
    }
  }
}

std::vector<StudyRow> run_scaling_study(const StudySpec& spec, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::vector<StudyRow> rows = run_scaling_study(spec);
  write_study_csv(rows, out_dir + "/study.csv");
  std::ofstream table(out_dir + "/study.txt");
  if (!table) throw IoError("cannot open study table for writing");
  write_study_table(rows, table);
  return rows;
}

}  // namespace polydg
