// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "polydg/errors.hpp"
#include "polydg/mesh.hpp"

namespace polydg {

namespace {

struct Degenerate {};  // internal retry signal

// Keep {x : (x - mid) . dir <= 0}, i.e. the side of the bisector closer to
// the cell's own seed. Sutherland-Hodgman; preserves CCW orientation.
std::vector<Point2> clip_half_plane(const std::vector<Point2>& poly, const Point2& mid,
                                    const Point2& dir) {
  std::vector<Point2> out;
  out.reserve(poly.size() + 1);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double fp = dot(p - mid, dir);
    const double fq = dot(q - mid, dir);
    if (fp <= 0.0) {
      out.push_back(p);
      if (fq > 0.0) {
        const double t = fp / (fp - fq);
        out.push_back(p + (q - p) * t);
      }
    } else if (fq <= 0.0) {
      const double t = fp / (fp - fq);
      out.push_back(p + (q - p) * t);
    }
  }
  return out;
}

// Uniform bucket grid over the domain for nearest-seed candidate queries.
class SeedGrid {
public:
  SeedGrid(const std::vector<Point2>& seeds, const Rect& domain)
      : seeds_(seeds), domain_(domain) {
    const int n = static_cast<int>(seeds.size());
    nx_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    ny_ = nx_;
    buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (int i = 0; i < n; ++i)
      buckets_[bucket_of(seeds[static_cast<std::size_t>(i)])].push_back(i);
    cell_w_ = domain.width() / nx_;
    cell_h_ = domain.height() / ny_;
  }

  // Seeds in the Chebyshev ring at distance `ring` around seed i's bucket,
  // sorted by (squared distance to seed i, index).
  std::vector<std::pair<double, int>> ring_candidates(int i, int ring) const {
    const Point2 s = seeds_[static_cast<std::size_t>(i)];
    const auto [cx, cy] = cell_coords(s);
    std::vector<std::pair<double, int>> out;
    auto visit = [&](int bx, int by) {
      if (bx < 0 || bx >= nx_ || by < 0 || by >= ny_) return;
      for (int j : buckets_[static_cast<std::size_t>(by) * nx_ + bx]) {
        if (j == i) continue;
        const Point2 d = seeds_[static_cast<std::size_t>(j)] - s;
        out.emplace_back(dot(d, d), j);
      }
    };
    if (ring == 0) {
      visit(cx, cy);
    } else {
      for (int bx = cx - ring; bx <= cx + ring; ++bx) {
        visit(bx, cy - ring);
        visit(bx, cy + ring);
      }
      for (int by = cy - ring + 1; by <= cy + ring - 1; ++by) {
        visit(cx - ring, by);
        visit(cx + ring, by);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Lower bound on the distance from seed i to any seed in rings >= `ring`.
  double ring_min_distance(int ring) const {
    return (ring - 1) * std::min(cell_w_, cell_h_);
  }

  int max_ring() const { return std::max(nx_, ny_); }

private:
  std::pair<int, int> cell_coords(const Point2& p) const {
    int cx = static_cast<int>((p.x - domain_.xmin) / domain_.width() * nx_);
    int cy = static_cast<int>((p.y - domain_.ymin) / domain_.height() * ny_);
    cx = std::clamp(cx, 0, nx_ - 1);
    cy = std::clamp(cy, 0, ny_ - 1);
    return {cx, cy};
  }
  std::size_t bucket_of(const Point2& p) const {
    const auto [cx, cy] = cell_coords(p);
    return static_cast<std::size_t>(cy) * nx_ + cx;
  }

  const std::vector<Point2>& seeds_;
  Rect domain_;
  int nx_ = 1, ny_ = 1;
  double cell_w_ = 0.0, cell_h_ = 0.0;
  std::vector<std::vector<int>> buckets_;
};

std::vector<Point2> voronoi_cell(int i, const std::vector<Point2>& seeds,
                                 const SeedGrid& grid, const Rect& domain) {
  const Point2 s = seeds[static_cast<std::size_t>(i)];
  std::vector<Point2> poly = {{domain.xmin, domain.ymin},
                              {domain.xmax, domain.ymin},
                              {domain.xmax, domain.ymax},
                              {domain.xmin, domain.ymax}};
  auto max_r2 = [&] {
    double m = 0.0;
    for (const Point2& v : poly) {
      const Point2 d = v - s;
      m = std::max(m, dot(d, d));
    }
    return m;
  };
  double r2 = max_r2();
  for (int ring = 0; ring <= grid.max_ring(); ++ring) {
    const double lb = grid.ring_min_distance(ring);
    if (lb > 0.0 && lb * lb > 4.0 * r2) break;  // no further seed can cut
    for (const auto& [d2, j] : grid.ring_candidates(i, ring)) {
      if (d2 > 4.0 * r2) break;  // candidates sorted by distance
      const Point2 t = seeds[static_cast<std::size_t>(j)];
      poly = clip_half_plane(poly, (s + t) * 0.5, t - s);
      if (poly.size() < 3) throw Degenerate{};
      r2 = max_r2();
    }
  }
  return poly;
}

// Deterministic uniform double in [0, 1) from the raw 64-bit stream.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct MergedMesh {
  std::vector<Point2> vertices;
  std::vector<std::vector<int>> cells;
};

// Merges coincident polygon corners into a shared vertex list. Clustering
// tolerance is far above the cross-cell rounding mismatch (~1e-15 rel) and
// far below any resolvable edge length.
MergedMesh merge_vertices(const std::vector<std::vector<Point2>>& polys, const Rect& domain) {
  const double tol = 1e-9 * std::max(domain.width(), domain.height());
  std::vector<Point2> pts;
  std::vector<std::pair<int, int>> origin;  // (cell, corner)
  for (std::size_t c = 0; c < polys.size(); ++c)
    for (std::size_t k = 0; k < polys[c].size(); ++k) {
      pts.push_back(polys[c][k]);
      origin.emplace_back(static_cast<int>(c), static_cast<int>(k));
    }

  const std::size_t n = pts.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Point2 &pa = pts[static_cast<std::size_t>(a)], &pb = pts[static_cast<std::size_t>(b)];
    return pa.x < pb.x || (pa.x == pb.x && (pa.y < pb.y || (pa.y == pb.y && a < b)));
  });

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;  // keep the smallest id as root
  };
  for (std::size_t si = 0; si < n; ++si) {
    const int a = order[si];
    for (std::size_t sj = si + 1; sj < n; ++sj) {
      const int b = order[sj];
      if (pts[static_cast<std::size_t>(b)].x - pts[static_cast<std::size_t>(a)].x > tol) break;
      if (std::abs(pts[static_cast<std::size_t>(b)].y - pts[static_cast<std::size_t>(a)].y) <= tol)
        unite(a, b);
    }
  }

  MergedMesh out;
  out.cells.resize(polys.size());
  std::vector<int> vertex_id(n, -1);
  for (std::size_t g = 0; g < n; ++g) {
    const int root = find(static_cast<int>(g));
    if (vertex_id[static_cast<std::size_t>(root)] < 0) {
      vertex_id[static_cast<std::size_t>(root)] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(pts[static_cast<std::size_t>(root)]);
    }
    const auto [c, k] = origin[g];
    (void)k;
    out.cells[static_cast<std::size_t>(c)].push_back(vertex_id[static_cast<std::size_t>(root)]);
  }
  // drop collapsed (repeated) corners
  for (auto& loop : out.cells) {
    std::vector<int> clean;
    clean.reserve(loop.size());
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const int v = loop[k];
      if (clean.empty() || clean.back() != v) clean.push_back(v);
    }
    while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
    if (clean.size() < 3) throw Degenerate{};
    loop = std::move(clean);
  }
  return out;
}

PolygonalMesh build_voronoi(const std::vector<Point2>& seeds, const Rect& domain) {
  const int n = static_cast<int>(seeds.size());
  const SeedGrid grid(seeds, domain);
  std::vector<std::vector<Point2>> polys(static_cast<std::size_t>(n));
  const double min_area = 1e-12 * domain.area();
  for (int i = 0; i < n; ++i) {
    polys[static_cast<std::size_t>(i)] = voronoi_cell(i, seeds, grid, domain);
    if (polygon_signed_area(polys[static_cast<std::size_t>(i)]) < min_area) throw Degenerate{};
  }
  MergedMesh merged = merge_vertices(polys, domain);
  return PolygonalMesh(std::move(merged.vertices), std::move(merged.cells),
                       std::vector<Region>(static_cast<std::size_t>(n), Region::Grey));
}

std::vector<Point2> lloyd_sweep(const std::vector<Point2>& seeds, const Rect& domain) {
  const SeedGrid grid(seeds, domain);
  std::vector<Point2> next(seeds.size());
  for (int i = 0; i < static_cast<int>(seeds.size()); ++i)
    next[static_cast<std::size_t>(i)] = polygon_centroid(voronoi_cell(i, seeds, grid, domain));
  return next;
}

}  // namespace

PolygonalMesh voronoi_mesh(const std::vector<Point2>& seeds, const Rect& domain) {
  if (seeds.empty()) throw MeshError("voronoi_mesh: no seeds");
  if (!(domain.area() > 0.0)) throw MeshError("voronoi_mesh: empty domain");
  for (const Point2& s : seeds)
    if (!domain.contains(s)) throw MeshError("voronoi_mesh: seed outside the domain");
  try {
    return build_voronoi(seeds, domain);
  } catch (const Degenerate&) {
    throw MeshError("voronoi_mesh: degenerate seed configuration");
  }
}

PolygonalMesh generate_polygonal_mesh(int n_cells, const Rect& domain, std::uint64_t seed,
                                      int lloyd_iters) {
  if (n_cells < 1) throw ConfigError("generate_polygonal_mesh: n_cells must be >= 1");
  if (!(domain.area() > 0.0)) throw ConfigError("generate_polygonal_mesh: empty domain");
  if (lloyd_iters < 0) throw ConfigError("generate_polygonal_mesh: negative lloyd_iters");

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Point2> seeds(static_cast<std::size_t>(n_cells));
    for (auto& s : seeds) {
      s.x = domain.xmin + domain.width() * unit_double(rng);
      s.y = domain.ymin + domain.height() * unit_double(rng);
    }
    try {
      for (int sweep = 0; sweep < lloyd_iters; ++sweep) seeds = lloyd_sweep(seeds, domain);
      return build_voronoi(seeds, domain);
    } catch (const Degenerate&) {
      continue;  // fresh perturbed seeds from the same stream
    }
  }
  throw MeshError("generate_polygonal_mesh: degenerate cells after 10 attempts");
}

}  // namespace polydg
