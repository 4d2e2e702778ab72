// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "polydg/dg_space.hpp"

namespace polydg {

/// Per-cell means of the discrete field, computed by quadrature.
std::vector<double> cell_means(const DGSpace& space, const Eigen::VectorXd& U);

/// Writes the field at time t (ms) to `path`.
///   vtk-legacy:    ASCII legacy POLYDATA with per-cell CELL_DATA u_mean.
///   csv-cellmeans: header cell_id,centroid_x,centroid_y,u_mean.
void export_snapshot(const DGSpace& space, const Eigen::VectorXd& U, double t,
                     const std::string& path, const std::string& format);

}  // namespace polydg
