// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/snapshot.hpp"

#include <cstdio>
#include <fstream>

#include "polydg/errors.hpp"

namespace polydg {

std::vector<double> cell_means(const DGSpace& space, const Eigen::VectorXd& U) {
  const PolygonalMesh& mesh = space.mesh();
  std::vector<double> means(static_cast<std::size_t>(mesh.n_cells()));
  const int order = 2 * space.degree() + 2;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const QuadratureRule rule = polygon_quadrature(mesh.cell_points(c), order);
    const BasisEval basis = eval_basis(space, c, rule.points);
    const Eigen::VectorXd u_q =
        basis.values * U.segment(space.block_start(c), space.n_local());
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q)
      acc += rule.weights[q] * u_q(static_cast<Eigen::Index>(q));
    means[static_cast<std::size_t>(c)] = acc / mesh.cell_area(c);
  }
  return means;
}

void export_snapshot(const DGSpace& space, const Eigen::VectorXd& U, double t,
                     const std::string& path, const std::string& format) {
  const PolygonalMesh& mesh = space.mesh();
  const std::vector<double> means = cell_means(space, U);

  std::ofstream out(path);
  if (!out) throw IoError("cannot open snapshot for writing: " + path);
  char buf[96];

  if (format == "vtk-legacy") {
    out << "# vtk DataFile Version 3.0\n";
    std::snprintf(buf, sizeof buf, "polydg transmembrane potential t=%.17g ms\n", t);
    out << buf;
    out << "ASCII\nDATASET POLYDATA\n";
    out << "POINTS " << mesh.n_vertices() << " double\n";
    for (const Point2& v : mesh.vertices()) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", v.x, v.y);
      out << buf;
    }
    std::size_t list_len = 0;
    for (const auto& loop : mesh.cells()) list_len += loop.size() + 1;
    out << "POLYGONS " << mesh.n_cells() << ' ' << list_len << '\n';
    for (const auto& loop : mesh.cells()) {
      out << loop.size();
      for (int v : loop) out << ' ' << v;
      out << '\n';
    }
    out << "CELL_DATA " << mesh.n_cells() << '\n';
    out << "SCALARS u_mean double 1\nLOOKUP_TABLE default\n";
    for (double m : means) {
      std::snprintf(buf, sizeof buf, "%.17g\n", m);
      out << buf;
    }
  } else if (format == "csv-cellmeans") {
    out << "cell_id,centroid_x,centroid_y,u_mean\n";
    for (int c = 0; c < mesh.n_cells(); ++c) {
      const Point2 ctr = mesh.cell_centroid(c);
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", c, ctr.x, ctr.y,
                    means[static_cast<std::size_t>(c)]);
      out << buf;
    }
  } else {
    throw ConfigError("unknown snapshot format '" + format + "'");
  }
  if (!out) throw IoError("snapshot write failed: " + path);
}

}  // namespace polydg
