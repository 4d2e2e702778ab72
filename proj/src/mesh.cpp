// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "polydg/errors.hpp"

namespace polydg {

PolygonalMesh::PolygonalMesh(std::vector<Point2> vertices,
                             std::vector<std::vector<int>> cells,
                             std::vector<Region> regions)
    : vertices_(std::move(vertices)), cells_(std::move(cells)), regions_(std::move(regions)) {
  if (regions_.size() != cells_.size())
    throw MeshError("mesh: region count does not match cell count");
  const int nv = n_vertices();
  h_K_.reserve(cells_.size());
  area_.reserve(cells_.size());
  centroid_.reserve(cells_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& loop = cells_[c];
    if (loop.size() < 3)
      throw MeshError("mesh: cell " + std::to_string(c) + " has fewer than 3 vertices");
    for (int v : loop)
      if (v < 0 || v >= nv)
        throw MeshError("mesh: cell " + std::to_string(c) + " references vertex " +
                        std::to_string(v) + " out of range");
    std::vector<Point2> pts = cell_points(static_cast<int>(c));
    const double area = polygon_signed_area(pts);
    if (!(area > 0.0))
      throw MeshError("mesh: cell " + std::to_string(c) +
                      " is not counter-clockwise with positive area");
    area_.push_back(area);
    centroid_.push_back(polygon_centroid(pts));
    h_K_.push_back(polygon_diameter(pts));
  }
  build_faces();
}

std::vector<Point2> PolygonalMesh::cell_points(int cell) const {
  const auto& loop = cells_[static_cast<std::size_t>(cell)];
  std::vector<Point2> pts;
  pts.reserve(loop.size());
  for (int v : loop) pts.push_back(vertices_[static_cast<std::size_t>(v)]);
  return pts;
}

double PolygonalMesh::mesh_size() const {
  return *std::max_element(h_K_.begin(), h_K_.end());
}

double PolygonalMesh::total_area() const {
  double s = 0.0;
  for (double a : area_) s += a;
  return s;
}

void PolygonalMesh::build_faces() {
  struct EdgeUse {
    int cell;
    int va, vb;  // oriented as stored in `cell`
  };
  std::map<std::pair<int, int>, std::vector<EdgeUse>> edges;
  std::vector<std::pair<int, int>> order;  // first-occurrence order of keys
  for (int c = 0; c < n_cells(); ++c) {
    const auto& loop = cells_[static_cast<std::size_t>(c)];
    const int k = static_cast<int>(loop.size());
    for (int e = 0; e < k; ++e) {
      const int va = loop[static_cast<std::size_t>(e)];
      const int vb = loop[static_cast<std::size_t>((e + 1) % k)];
      const std::pair<int, int> key{std::min(va, vb), std::max(va, vb)};
      auto [it, inserted] = edges.try_emplace(key);
      if (inserted) order.push_back(key);
      it->second.push_back({c, va, vb});
      if (it->second.size() > 2)
        throw MeshError("mesh: edge shared by more than two cells (non-manifold)");
    }
  }
  for (const auto& key : order) {
    const auto& uses = edges.at(key);
    const EdgeUse& first = uses.front();
    Face f;
    f.a = vertices_[static_cast<std::size_t>(first.va)];
    f.b = vertices_[static_cast<std::size_t>(first.vb)];
    f.cell_in = first.cell;
    f.length = distance(f.a, f.b);
    if (!(f.length > 0.0)) throw MeshError("mesh: zero-length face");
    // Outward normal of a counter-clockwise loop: edge direction rotated -90.
    f.normal = Point2{(f.b.y - f.a.y) / f.length, -(f.b.x - f.a.x) / f.length};
    if (uses.size() == 2) {
      f.cell_out = uses.back().cell;
      if (f.cell_out == f.cell_in)
        throw MeshError("mesh: interior face with identical incident cells");
      interior_faces_.push_back(f);
    } else {
      boundary_faces_.push_back(f);
    }
  }
}

namespace {

// True when two non-adjacent edges of the loop cross.
bool polygon_self_intersects(std::span<const Point2> pts) {
  const int n = static_cast<int>(pts.size());
  auto seg_intersect = [](const Point2& p1, const Point2& p2, const Point2& q1,
                          const Point2& q2) {
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (seg_intersect(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>((i + 1) % n)],
                        pts[static_cast<std::size_t>(j)], pts[static_cast<std::size_t>((j + 1) % n)]))
        return true;
    }
  }
  return false;
}

}  // namespace

void PolygonalMesh::validate() const {
  for (int c = 0; c < n_cells(); ++c) {
    const std::vector<Point2> pts = cell_points(c);
    if (polygon_self_intersects(pts))
      throw MeshError("mesh: cell " + std::to_string(c) + " is self-intersecting");
    const double d = polygon_diameter(pts);
    if (std::abs(d - cell_diameter(c)) > 1e-12 * std::max(1.0, d))
      throw MeshError("mesh: inconsistent cell diameter");
  }
  for (const Face& f : interior_faces_) {
    if (f.cell_out < 0 || f.cell_out == f.cell_in)
      throw MeshError("mesh: malformed interior face");
    if (std::abs(norm(f.normal) - 1.0) > 1e-14)
      throw MeshError("mesh: non-unit face normal");
  }
  for (const Face& f : boundary_faces_) {
    if (f.cell_out >= 0) throw MeshError("mesh: malformed boundary face");
    if (std::abs(norm(f.normal) - 1.0) > 1e-14)
      throw MeshError("mesh: non-unit face normal");
  }
  // Hanging vertices surface as collinear overlapping "boundary" edges of
  // different cells; conforming meshes tile the boundary disjointly.
  const Rect box = bounding_box(vertices_);
  const double tol = 1e-9 * std::max(box.width(), box.height());
  for (std::size_t i = 0; i < boundary_faces_.size(); ++i) {
    const Face& f = boundary_faces_[i];
    const Point2 dir{(f.b.x - f.a.x) / f.length, (f.b.y - f.a.y) / f.length};
    for (std::size_t j = i + 1; j < boundary_faces_.size(); ++j) {
      const Face& g = boundary_faces_[j];
      if (std::abs(cross(dir, g.a - f.a)) > tol || std::abs(cross(dir, g.b - f.a)) > tol)
        continue;  // not on the same line
      const double ta = dot(dir, g.a - f.a);
      const double tb = dot(dir, g.b - f.a);
      const double overlap = std::min(f.length, std::max(ta, tb)) - std::max(0.0, std::min(ta, tb));
      if (overlap > tol)
        throw MeshError(
            "mesh: overlapping boundary edges (hanging vertex or non-conforming "
            "interface)");
    }
  }
}

PolygonalMesh assign_regions(const PolygonalMesh& mesh, double split_y) {
  const Rect box = bounding_box(mesh.vertices());
  if (!(split_y > box.ymin && split_y < box.ymax))
    throw ConfigError("assign_regions: split_y outside the domain height");
  std::vector<Region> regions(static_cast<std::size_t>(mesh.n_cells()));
  for (int c = 0; c < mesh.n_cells(); ++c)
    regions[static_cast<std::size_t>(c)] =
        mesh.cell_centroid(c).y >= split_y ? Region::Grey : Region::White;
  return PolygonalMesh(mesh.vertices(), mesh.cells(), std::move(regions));
}

double AgglomeratedPartition::max_diameter() const {
  return *std::max_element(H_K.begin(), H_K.end());
}

std::vector<std::vector<int>> AgglomeratedPartition::members() const {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(count));
  for (std::size_t c = 0; c < owner.size(); ++c)
    m[static_cast<std::size_t>(owner[c])].push_back(static_cast<int>(c));
  return m;
}

void write_mesh(const PolygonalMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "# polydg polygonal mesh\n";
  out << "polymesh 2 " << mesh.n_cells() << ' ' << mesh.n_vertices() << '\n';
  char buf[64];
  for (const Point2& v : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
    out << buf;
  }
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& loop = mesh.cells()[static_cast<std::size_t>(c)];
    out << loop.size();
    for (int v : loop) out << ' ' << v;
    out << ' ' << (mesh.region(c) == Region::Grey ? 'G' : 'W') << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

PolygonalMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);

  std::string line;
  int lineno = 0;
  auto next_line = [&](std::string& dst) {
    while (std::getline(in, line)) {
      ++lineno;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      dst = line;
      return true;
    }
    return false;
  };
  auto parse_fail = [&](const std::string& what) -> MeshError {
    return MeshError(path + ":" + std::to_string(lineno) + ": " + what);
  };

  std::string header;
  if (!next_line(header)) throw parse_fail("missing header");
  std::istringstream hs(header);
  std::string magic;
  int dim = 0, n_cells = 0, n_vertices = 0;
  if (!(hs >> magic >> dim >> n_cells >> n_vertices) || magic != "polymesh")
    throw parse_fail("expected 'polymesh 2 <n_cells> <n_vertices>'");
  if (dim != 2) throw parse_fail("only dimension 2 is supported");
  if (n_cells < 1 || n_vertices < 3) throw parse_fail("inconsistent counts");

  std::vector<Point2> vertices;
  vertices.reserve(static_cast<std::size_t>(n_vertices));
  for (int i = 0; i < n_vertices; ++i) {
    std::string s;
    if (!next_line(s)) throw parse_fail("unexpected end of file in vertex list");
    std::istringstream vs(s);
    Point2 p;
    if (!(vs >> p.x >> p.y)) throw parse_fail("malformed vertex line");
    vertices.push_back(p);
  }

  std::vector<std::vector<int>> cells;
  std::vector<Region> regions;
  cells.reserve(static_cast<std::size_t>(n_cells));
  for (int c = 0; c < n_cells; ++c) {
    std::string s;
    if (!next_line(s)) throw parse_fail("unexpected end of file in cell list");
    std::istringstream cs(s);
    int k = 0;
    if (!(cs >> k) || k < 3) throw parse_fail("malformed cell line (vertex count)");
    std::vector<int> loop(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      if (!(cs >> loop[static_cast<std::size_t>(i)])) throw parse_fail("malformed cell line (index)");
      if (loop[static_cast<std::size_t>(i)] < 0 || loop[static_cast<std::size_t>(i)] >= n_vertices)
        throw parse_fail("vertex index out of range");
    }
    std::string reg;
    if (!(cs >> reg) || (reg != "G" && reg != "W"))
      throw parse_fail("malformed cell line (region)");
    cells.push_back(std::move(loop));
    regions.push_back(reg == "G" ? Region::Grey : Region::White);
  }

  try {
    PolygonalMesh mesh(std::move(vertices), std::move(cells), std::move(regions));
    mesh.validate();
    return mesh;
  } catch (const MeshError& e) {
    throw MeshError(path + ": " + e.what());
  }
}

}  // namespace polydg
