#include "euler/error.hpp"
#include "euler/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <unordered_map>

namespace euler {

namespace {

void require_positive(std::initializer_list<int> sizes) {
  for (int s : sizes)
    if (s <= 0) throw Error(ErrorCode::InvalidInput, "generator sizes must be positive");
}

// Merges points closer than `tol` through a hash grid of cell size `tol`.
class Welder {
 public:
  explicit Welder(double tol) : tol_(tol) {}

  VertexId add(const Vec2& p) {
    const long gx = std::lround(std::floor(p.x() / tol_)), gy = std::lround(std::floor(p.y() / tol_));
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find(key(gx + dx, gy + dy));
        if (it == grid_.end()) continue;
        for (VertexId v : it->second)
          if ((points_[v] - p).norm() <= tol_) return v;
      }
    const VertexId v = static_cast<VertexId>(points_.size());
    points_.push_back(p);
    grid_[key(gx, gy)].push_back(v);
    return v;
  }

  std::vector<VertexId> cycle(const std::vector<Vec2>& poly) {
    std::vector<VertexId> out;
    for (const Vec2& p : poly) {
      const VertexId v = add(p);
      if (out.empty() || out.back() != v) out.push_back(v);
    }
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
  }

  std::vector<Vec2> take() { return std::move(points_); }

 private:
  static std::uint64_t key(long x, long y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
  }
  double tol_;
  std::vector<Vec2> points_;
  std::unordered_map<std::uint64_t, std::vector<VertexId>> grid_;
};

// Keeps the part of a convex polygon with (x - m) . n <= 0.
std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, const Vec2& m, const Vec2& n) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const double da = (a - m).dot(n), db = (b - m).dot(n);
    if (da <= 0) out.push_back(a);
    if ((da < 0 && db > 0) || (da > 0 && db < 0)) out.push_back(a + (da / (da - db)) * (b - a));
  }
  return out;
}

Vec2 area_centroid(const std::vector<Vec2>& poly) {
  double a = 0.0;
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    const double w = cross2(p, q);
    a += w;
    c += w * (p + q);
  }
  return a != 0.0 ? Vec2(c / (3.0 * a)) : vertex_centroid(poly);
}

// Sites are bucketed on a grid and clipped ring by ring outward; a cell is final
// once the next ring lies beyond twice its farthest vertex.
std::vector<std::vector<Vec2>> voronoi_cells(const std::vector<Vec2>& sites, double side) {
  const int g = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(sites.size()))));
  const double h = side / g;
  auto bucket_of = [&](double x) { return std::clamp(static_cast<int>(x / h), 0, g - 1); };
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(g) * g);
  for (std::size_t i = 0; i < sites.size(); ++i)
    buckets[bucket_of(sites[i].y()) * g + bucket_of(sites[i].x())].push_back(static_cast<int>(i));

  std::vector<std::vector<Vec2>> cells;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const Vec2 s = sites[i];
    const int bx = bucket_of(s.x()), by = bucket_of(s.y());
    std::vector<Vec2> poly{{0, 0}, {side, 0}, {side, side}, {0, side}};
    for (int r = 0; r <= g && !poly.empty(); ++r) {
      for (int y = by - r; y <= by + r; ++y)
        for (int x = bx - r; x <= bx + r; ++x) {
          if (std::max(std::abs(x - bx), std::abs(y - by)) != r || x < 0 || y < 0 || x >= g || y >= g) continue;
          for (int j : buckets[y * g + x])
            if (j != static_cast<int>(i) && !poly.empty())
              poly = clip_half_plane(poly, 0.5 * (s + sites[j]), sites[j] - s);
        }
      double reach = 0.0;
      for (const Vec2& v : poly) reach = std::max(reach, (v - s).norm());
      if (r * h > 2 * reach) break;
    }
    cells.push_back(std::move(poly));
  }
  return cells;
}

// Uniform double in [0, 1) from the top 53 bits, independent of the standard
// library's distribution implementation.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct FaceTable {
  std::vector<std::vector<VertexId>> faces;
  std::map<std::vector<VertexId>, FaceId> index;

  FaceId get(std::vector<VertexId> cycle) {
    auto key = cycle;
    std::sort(key.begin(), key.end());
    auto [it, fresh] = index.try_emplace(std::move(key), static_cast<FaceId>(faces.size()));
    if (fresh) faces.push_back(std::move(cycle));
    return it->second;
  }
};

}  // namespace

Complex2 square_grid(int nx, int ny, double cell, bool center_hole) {
  require_positive({nx, ny});
  if (center_hole && (nx < 3 || ny < 3)) throw Error(ErrorCode::InvalidInput, "a centre hole needs at least 3x3 cells");
  std::vector<Vec2> pts;
  for (int y = 0; y <= ny; ++y)
    for (int x = 0; x <= nx; ++x) pts.emplace_back(x * cell, y * cell);
  auto id = [&](int x, int y) { return static_cast<VertexId>(y * (nx + 1) + x); };
  std::vector<std::vector<VertexId>> faces, holes;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) {
      std::vector<VertexId> f{id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1)};
      if (center_hole && x == nx / 2 && y == ny / 2)
        holes.push_back(std::move(f));
      else
        faces.push_back(std::move(f));
    }
  return build_complex_2d(std::move(pts), std::move(faces), std::move(holes));
}

Complex2 hex_grid(int cols, int rows, double radius) {
  require_positive({cols, rows});
  Welder weld(1e-9 * radius);
  std::vector<std::vector<VertexId>> faces;
  const double w = std::sqrt(3.0) * radius;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const Vec2 center(w * (c + 0.5 * (r & 1)), 1.5 * radius * r);
      std::vector<Vec2> hex;
      for (int k = 0; k < 6; ++k) {
        const double a = std::numbers::pi / 6 + k * std::numbers::pi / 3;
        hex.push_back(center + radius * Vec2(std::cos(a), std::sin(a)));
      }
      faces.push_back(weld.cycle(hex));
    }
  return build_complex_2d(weld.take(), std::move(faces));
}

Complex2 clipped_voronoi(int sites, std::uint64_t seed, int lloyd_iterations, double side) {
  require_positive({sites});
  if (lloyd_iterations < 0 || !(side > 0)) throw Error(ErrorCode::InvalidInput, "bad Voronoi parameters");
  std::mt19937_64 rng(seed);
  std::vector<Vec2> pts;
  for (int i = 0; i < sites; ++i) {
    const double x = unit(rng) * side;
    pts.emplace_back(x, unit(rng) * side);
  }
  auto cells = voronoi_cells(pts, side);
  for (int it = 0; it < lloyd_iterations; ++it) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (cells[i].size() >= 3) pts[i] = area_centroid(cells[i]);
    cells = voronoi_cells(pts, side);
  }
  Welder weld(1e-9 * side);
  std::vector<std::vector<VertexId>> faces;
  for (const auto& c : cells) {
    auto cy = weld.cycle(c);
    if (cy.size() >= 3) faces.push_back(std::move(cy));
  }
  return build_complex_2d(weld.take(), std::move(faces));
}

Complex3 cubical_block(int nx, int ny, int nz, double cell) {
  require_positive({nx, ny, nz});
  std::vector<Vec3> pts;
  auto id = [&](int x, int y, int z) { return static_cast<VertexId>((z * (ny + 1) + y) * (nx + 1) + x); };
  for (int z = 0; z <= nz; ++z)
    for (int y = 0; y <= ny; ++y)
      for (int x = 0; x <= nx; ++x) pts.emplace_back(x * cell, y * cell, z * cell);
  FaceTable ft;
  std::vector<std::vector<FaceId>> cells;
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x)
        cells.push_back({ft.get({id(x, y, z), id(x + 1, y, z), id(x + 1, y + 1, z), id(x, y + 1, z)}),
                         ft.get({id(x, y, z + 1), id(x + 1, y, z + 1), id(x + 1, y + 1, z + 1), id(x, y + 1, z + 1)}),
                         ft.get({id(x, y, z), id(x + 1, y, z), id(x + 1, y, z + 1), id(x, y, z + 1)}),
                         ft.get({id(x, y + 1, z), id(x + 1, y + 1, z), id(x + 1, y + 1, z + 1), id(x, y + 1, z + 1)}),
                         ft.get({id(x, y, z), id(x, y + 1, z), id(x, y + 1, z + 1), id(x, y, z + 1)}),
                         ft.get({id(x + 1, y, z), id(x + 1, y + 1, z), id(x + 1, y + 1, z + 1), id(x + 1, y, z + 1)})});
  return build_complex_3d(std::move(pts), std::move(ft.faces), std::move(cells));
}

Complex3 tet_block(int nx, int ny, int nz, double cell) {
  require_positive({nx, ny, nz});
  std::vector<Vec3> pts;
  auto id = [&](int x, int y, int z) { return static_cast<VertexId>((z * (ny + 1) + y) * (nx + 1) + x); };
  for (int z = 0; z <= nz; ++z)
    for (int y = 0; y <= ny; ++y)
      for (int x = 0; x <= nx; ++x) pts.emplace_back(x * cell, y * cell, z * cell);
  FaceTable ft;
  std::vector<std::vector<FaceId>> cells;
  std::array<int, 3> axes{0, 1, 2};
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        std::sort(axes.begin(), axes.end());
        do {
          // Monotone path from the low corner to the high corner.
          std::array<int, 3> c{x, y, z};
          std::array<VertexId, 4> t{id(x, y, z), 0, 0, 0};
          for (int k = 0; k < 3; ++k) {
            ++c[axes[k]];
            t[k + 1] = id(c[0], c[1], c[2]);
          }
          cells.push_back({ft.get({t[0], t[1], t[2]}), ft.get({t[0], t[1], t[3]}), ft.get({t[0], t[2], t[3]}),
                           ft.get({t[1], t[2], t[3]})});
        } while (std::next_permutation(axes.begin(), axes.end()));
      }
  return build_complex_3d(std::move(pts), std::move(ft.faces), std::move(cells));
}

std::variant<Complex2, Complex3> generate_mesh(const GenerateRequest& r) {
  auto pad2 = [&](Complex2 k) { return r.pad ? pad_boundary_2d(k, default_pad_thickness_2d(k)) : k; };
  auto pad3 = [&](Complex3 k) { return r.pad ? pad_boundary_3d(k, default_pad_thickness_3d(k)) : k; };
  if (r.kind == "square-grid") return pad2(square_grid(r.nx, r.ny, 1.0, r.hole));
  if (r.kind == "hex-grid") return pad2(hex_grid(r.nx, r.ny));
  if (r.kind == "clipped-voronoi") return pad2(clipped_voronoi(r.sites, r.seed));
  if (r.kind == "cubical-block") return pad3(cubical_block(r.nx, r.ny, r.nz));
  if (r.kind == "tet-block") return pad3(tet_block(r.nx, r.ny, r.nz));
  throw Error(ErrorCode::InvalidInput, "unknown mesh kind \"" + r.kind + "\"");
}

}  // namespace euler
