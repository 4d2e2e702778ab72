// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polydg/geometry.hpp"
#include "polydg/quadrature.hpp"

namespace polydg {

enum class Region : std::uint8_t { Grey, White };

/// A maximal straight interface segment between two cells (interior) or
/// between a cell and the domain boundary.
struct Face {
  Point2 a, b;           // endpoints
  int cell_in = -1;      // first incident cell; normal points out of it
  int cell_out = -1;     // second incident cell, -1 on the boundary
  Point2 normal;         // unit, oriented from cell_in outward
  double length = 0.0;

  bool is_boundary() const { return cell_out < 0; }
};

/// Gauss rule along a face, exact for 1D polynomials of degree <= order.
inline QuadratureRule face_quadrature(const Face& face, int order) {
  return segment_quadrature(face.a, face.b, order);
}

/// Immutable 2D polygonal mesh. Cells are counter-clockwise vertex-index
/// loops; interior/boundary faces and per-cell diameters are derived on
/// construction.
class PolygonalMesh {
public:
  PolygonalMesh(std::vector<Point2> vertices, std::vector<std::vector<int>> cells,
                std::vector<Region> regions);

  int n_cells() const { return static_cast<int>(cells_.size()); }
  int n_vertices() const { return static_cast<int>(vertices_.size()); }

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  const std::vector<Region>& regions() const { return regions_; }
  Region region(int cell) const { return regions_[static_cast<std::size_t>(cell)]; }

  const std::vector<Face>& interior_faces() const { return interior_faces_; }
  const std::vector<Face>& boundary_faces() const { return boundary_faces_; }

  /// Cell polygon as a point loop.
  std::vector<Point2> cell_points(int cell) const;

  double cell_diameter(int cell) const { return h_K_[static_cast<std::size_t>(cell)]; }
  double cell_area(int cell) const { return area_[static_cast<std::size_t>(cell)]; }
  Point2 cell_centroid(int cell) const { return centroid_[static_cast<std::size_t>(cell)]; }

  /// Global mesh size h = max_K h_K.
  double mesh_size() const;
  double total_area() const;

  /// Checks the structural invariants (simple positive-area cells, two/one
  /// incident cells per face, unit normals, diameter consistency). Throws
  /// MeshError on violation.
  void validate() const;

private:
  std::vector<Point2> vertices_;
  std::vector<std::vector<int>> cells_;
  std::vector<Region> regions_;
  std::vector<Face> interior_faces_;
  std::vector<Face> boundary_faces_;
  std::vector<double> h_K_;
  std::vector<double> area_;
  std::vector<Point2> centroid_;

  void build_faces();
};

/// Non-overlapping cover of a fine mesh by face-connected, region-pure
/// agglomerates. Nested levels are produced by agglomerating a partition.
struct AgglomeratedPartition {
  const PolygonalMesh* parent = nullptr;
  std::vector<int> owner;     // fine cell -> agglomerate index in [0, count)
  int count = 0;
  std::vector<double> H_K;    // per-agglomerate diameter
  bool target_achieved = true;

  double max_diameter() const;
  /// Fine-cell indices per agglomerate, in ascending order.
  std::vector<std::vector<int>> members() const;
};

/// Clipped Voronoi tessellation of `domain` from `n_cells` pseudo-random
/// seeds after `lloyd_iters` Lloyd relaxation sweeps. Deterministic for fixed
/// arguments. All cells are labeled Grey; use assign_regions afterwards.
PolygonalMesh generate_polygonal_mesh(int n_cells, const Rect& domain,
                                      std::uint64_t seed, int lloyd_iters = 20);

/// Voronoi tessellation of explicit generator points (no relaxation).
PolygonalMesh voronoi_mesh(const std::vector<Point2>& seeds, const Rect& domain);

/// Labels each cell Grey iff its centroid y >= split_y, else White.
PolygonalMesh assign_regions(const PolygonalMesh& mesh, double split_y);

/// Identity partition: one agglomerate per fine cell.
AgglomeratedPartition identity_partition(const PolygonalMesh& mesh);

/// Region-constrained greedy pairwise merging down to (at most) target_n
/// agglomerates: repeatedly merges the adjacent same-region pair whose union
/// has the smallest diameter, ties broken by lower indices. If region purity
/// prevents reaching target_n, returns the best achievable count with
/// target_achieved = false.
AgglomeratedPartition agglomerate(const PolygonalMesh& mesh, int target_n);
AgglomeratedPartition agglomerate(const AgglomeratedPartition& part, int target_n);

/// Nested hierarchy for a coarse-to-fine ratio H/h = 2^levels: each level
/// divides the count by 4 (halving the linear resolution in 2D).
std::vector<AgglomeratedPartition> agglomerate_hierarchy(const PolygonalMesh& mesh,
                                                         int levels);

/// Line-oriented text format:
///   polymesh 2 <n_cells> <n_vertices>
///   x y                      (n_vertices lines, 17 significant digits)
///   k v1 ... vk <G|W>        (n_cells lines, 0-based indices)
/// '#' starts a comment line.
void write_mesh(const PolygonalMesh& mesh, const std::string& path);
PolygonalMesh read_mesh(const std::string& path);

}  // namespace polydg
