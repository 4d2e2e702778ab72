// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polydg/config.hpp"

namespace polydg {

struct StudyRow {
  int N_h = 0;
  double h = 0.0;
  int ratio = 0;      // H/h as configured (emitted for every kind)
  int N_H = 0;        // coarse agglomerate count; 0 without a coarse level
  int p = 0;
  int q = 0;
  PrecondKind precond = PrecondKind::None;
  double avg_iters = 0.0;
  std::optional<double> cond_est;  // estimate at the step with most iterations
  std::optional<double> cond_mean; // estimate averaged over steps
  double wall_s = 0.0;
  bool converged = true;
};

/// Runs every (mesh, ratio, degree, preconditioner) combination of the spec.
/// A failing combination is recorded as a non-converged row; it does not
/// abort the study.
std::vector<StudyRow> run_scaling_study(const StudySpec& spec);

/// Fixed header: N_h,h,ratio,N_H,p,q,precond,avg_iters,cond_est,wall_s,converged.
/// Numbers are written with 17 significant digits and round-trip exactly.
void write_study_csv(const std::vector<StudyRow>& rows, const std::string& path);

/// Paper-style grouping: one block per (p, q), rows = coarse ratios plus a
/// final unpreconditioned line, columns = mesh sizes, cells "cond (iters)"
/// with the step-averaged estimate alongside.
void write_study_table(const std::vector<StudyRow>& rows, std::ostream& out);

/// Runs the study and writes study.csv and study.txt under out_dir.
std::vector<StudyRow> run_scaling_study(const StudySpec& spec, const std::string& out_dir);

}  // namespace polydg
