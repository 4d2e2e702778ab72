// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "polydg/errors.hpp"
#include "polydg/mesh.hpp"

namespace polydg {

namespace {

struct Unit {
  std::vector<Point2> hull;  // convex hull of member-cell vertices
  Region region = Region::Grey;
  bool alive = true;
  int version = 0;
};

double union_diameter(const Unit& a, const Unit& b) {
  std::vector<Point2> pts;
  pts.reserve(a.hull.size() + b.hull.size());
  pts.insert(pts.end(), a.hull.begin(), a.hull.end());
  pts.insert(pts.end(), b.hull.begin(), b.hull.end());
  return point_set_diameter(pts);
}

// Greedy pairwise merging over the unit adjacency graph: always merge the
// adjacent same-region pair whose union has the smallest diameter; ties
// resolved by lower indices. Merging whole units keeps every level nested in
// the previous one.
AgglomeratedPartition merge_units(const PolygonalMesh& mesh, std::vector<Unit> units,
                                  std::vector<int> unit_of_cell, int target_n) {
  const int m = static_cast<int>(units.size());
  if (target_n < 1) throw ConfigError("agglomerate: target must be >= 1");
  if (target_n > m)
    throw ConfigError("agglomerate: target exceeds current agglomerate count");

  // adjacency through fine interior faces, excluding cross-region pairs
  std::vector<std::set<int>> nbr(static_cast<std::size_t>(m));
  for (const Face& f : mesh.interior_faces()) {
    const int a = unit_of_cell[static_cast<std::size_t>(f.cell_in)];
    const int b = unit_of_cell[static_cast<std::size_t>(f.cell_out)];
    if (a == b) continue;
    nbr[static_cast<std::size_t>(a)].insert(b);
    nbr[static_cast<std::size_t>(b)].insert(a);
  }

  using Entry = std::tuple<double, int, int, int, int>;  // diam, i, j, ver_i, ver_j
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto push_pair = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    const Unit& ui = units[static_cast<std::size_t>(i)];
    const Unit& uj = units[static_cast<std::size_t>(j)];
    if (ui.region != uj.region) return;
    heap.emplace(union_diameter(ui, uj), i, j, ui.version, uj.version);
  };
  for (int i = 0; i < m; ++i)
    for (int j : nbr[static_cast<std::size_t>(i)])
      if (i < j) push_pair(i, j);

  std::vector<int> parent(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };

  int count = m;
  while (count > target_n && !heap.empty()) {
    const auto [diam, i, j, vi, vj] = heap.top();
    heap.pop();
    Unit& ui = units[static_cast<std::size_t>(i)];
    Unit& uj = units[static_cast<std::size_t>(j)];
    if (!ui.alive || !uj.alive || ui.version != vi || uj.version != vj) continue;

    // merge j into i (i < j by construction)
    std::vector<Point2> pts = ui.hull;
    pts.insert(pts.end(), uj.hull.begin(), uj.hull.end());
    ui.hull = convex_hull(std::move(pts));
    ui.version++;
    uj.alive = false;
    parent[static_cast<std::size_t>(j)] = i;

    auto& ni = nbr[static_cast<std::size_t>(i)];
    for (int k : nbr[static_cast<std::size_t>(j)]) {
      if (k == i) continue;
      nbr[static_cast<std::size_t>(k)].erase(j);
      nbr[static_cast<std::size_t>(k)].insert(i);
      ni.insert(k);
    }
    ni.erase(j);
    nbr[static_cast<std::size_t>(j)].clear();
    for (int k : ni) push_pair(i, k);
    --count;
  }

  AgglomeratedPartition part;
  part.parent = &mesh;
  part.count = count;
  part.target_achieved = (count == target_n);

  std::vector<int> label(static_cast<std::size_t>(m), -1);
  int next = 0;
  for (int i = 0; i < m; ++i)
    if (units[static_cast<std::size_t>(i)].alive) label[static_cast<std::size_t>(i)] = next++;

  part.owner.resize(static_cast<std::size_t>(mesh.n_cells()));
  for (int c = 0; c < mesh.n_cells(); ++c)
    part.owner[static_cast<std::size_t>(c)] =
        label[static_cast<std::size_t>(find(unit_of_cell[static_cast<std::size_t>(c)]))];

  part.H_K.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < m; ++i)
    if (units[static_cast<std::size_t>(i)].alive)
      part.H_K[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])] =
          polygon_diameter(units[static_cast<std::size_t>(i)].hull);
  return part;
}

std::vector<Unit> units_from_cells(const PolygonalMesh& mesh) {
  std::vector<Unit> units(static_cast<std::size_t>(mesh.n_cells()));
  for (int c = 0; c < mesh.n_cells(); ++c) {
    units[static_cast<std::size_t>(c)].hull = convex_hull(mesh.cell_points(c));
    units[static_cast<std::size_t>(c)].region = mesh.region(c);
  }
  return units;
}

}  // namespace

AgglomeratedPartition identity_partition(const PolygonalMesh& mesh) {
  AgglomeratedPartition part;
  part.parent = &mesh;
  part.count = mesh.n_cells();
  part.owner.resize(static_cast<std::size_t>(mesh.n_cells()));
  part.H_K.resize(static_cast<std::size_t>(mesh.n_cells()));
  for (int c = 0; c < mesh.n_cells(); ++c) {
    part.owner[static_cast<std::size_t>(c)] = c;
    part.H_K[static_cast<std::size_t>(c)] = mesh.cell_diameter(c);
  }
  return part;
}

AgglomeratedPartition agglomerate(const PolygonalMesh& mesh, int target_n) {
  std::vector<int> unit_of_cell(static_cast<std::size_t>(mesh.n_cells()));
  for (int c = 0; c < mesh.n_cells(); ++c) unit_of_cell[static_cast<std::size_t>(c)] = c;
  return merge_units(mesh, units_from_cells(mesh), std::move(unit_of_cell), target_n);
}

AgglomeratedPartition agglomerate(const AgglomeratedPartition& part, int target_n) {
  if (part.parent == nullptr) throw MeshError("agglomerate: partition has no parent mesh");
  const PolygonalMesh& mesh = *part.parent;
  std::vector<Unit> units(static_cast<std::size_t>(part.count));
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Unit& u = units[static_cast<std::size_t>(part.owner[static_cast<std::size_t>(c)])];
    const auto pts = mesh.cell_points(c);
    u.hull.insert(u.hull.end(), pts.begin(), pts.end());
    u.region = mesh.region(c);
  }
  for (Unit& u : units) u.hull = convex_hull(std::move(u.hull));
  return merge_units(mesh, std::move(units), part.owner, target_n);
}

std::vector<AgglomeratedPartition> agglomerate_hierarchy(const PolygonalMesh& mesh,
                                                         int levels) {
  if (levels < 1) throw ConfigError("agglomerate_hierarchy: levels must be >= 1");
  std::vector<AgglomeratedPartition> hierarchy;
  // Halving the linear resolution quarters the element count in 2D.
  int target = (mesh.n_cells() + 3) / 4;
  hierarchy.push_back(agglomerate(mesh, target));
  for (int l = 1; l < levels; ++l) {
    target = (hierarchy.back().count + 3) / 4;
    hierarchy.push_back(agglomerate(hierarchy.back(), target));
  }
  return hierarchy;
}

}  // namespace polydg
