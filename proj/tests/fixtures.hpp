#pragma once

#include "euler/complex.hpp"
#include "euler/geometry.hpp"
#include "euler/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace fx {

using namespace euler;

inline Complex2 unit_square() { return build_complex_2d({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}}); }

// Two unit squares side by side.
inline Complex2 strip() {
  return build_complex_2d({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}, {{0, 1, 4, 3}, {1, 2, 5, 4}});
}

// Three unit squares forming an L.
inline Complex2 l_shape() {
  return build_complex_2d({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}},
                          {{0, 1, 4, 3}, {1, 2, 5, 4}, {3, 4, 7, 6}});
}

// Two unit squares meeting at the single vertex (1, 1).
inline Complex2 bowtie() {
  return build_complex_2d({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 1}, {2, 2}, {1, 2}}, {{0, 1, 2, 3}, {2, 4, 5, 6}});
}

// 4x4 grid of unit squares whose two holes (1,1) and (2,2) touch at (2,2).
inline Complex2 touching_holes() {
  std::vector<Vec2> pts;
  for (int y = 0; y <= 4; ++y)
    for (int x = 0; x <= 4; ++x) pts.emplace_back(x, y);
  auto id = [](int x, int y) { return y * 5 + x; };
  std::vector<std::vector<VertexId>> faces, holes;
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      std::vector<VertexId> f{id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1)};
      ((x == 1 && y == 1) || (x == 2 && y == 2) ? holes : faces).push_back(f);
    }
  return build_complex_2d(pts, faces, holes);
}

// Builds a 3-complex from cells given as vertex loops, sharing identical faces.
inline Complex3 from_cells(std::vector<Vec3> pts, const std::vector<std::vector<std::vector<VertexId>>>& cells) {
  std::vector<std::vector<VertexId>> faces;
  std::map<std::vector<VertexId>, FaceId> index;
  std::vector<std::vector<FaceId>> out;
  for (const auto& cell : cells) {
    out.emplace_back();
    for (const auto& f : cell) {
      auto key = f;
      std::sort(key.begin(), key.end());
      auto [it, fresh] = index.try_emplace(key, static_cast<FaceId>(faces.size()));
      if (fresh) faces.push_back(f);
      out.back().push_back(it->second);
    }
  }
  return build_complex_3d(std::move(pts), std::move(faces), std::move(out));
}

inline std::vector<std::vector<VertexId>> box_faces(const std::array<VertexId, 8>& v) {
  // v: bottom 0..3 counterclockwise, top 4..7 above them
  return {{v[0], v[3], v[2], v[1]}, {v[4], v[5], v[6], v[7]}, {v[0], v[1], v[5], v[4]},
          {v[1], v[2], v[6], v[5]}, {v[2], v[3], v[7], v[6]}, {v[3], v[0], v[4], v[7]}};
}

inline Complex3 unit_cube() { return cubical_block(1, 1, 1); }

inline Complex3 two_cubes() { return cubical_block(2, 1, 1); }

inline Complex3 box(double a, double b, double c) {
  return from_cells({{0, 0, 0}, {a, 0, 0}, {a, b, 0}, {0, b, 0}, {0, 0, c}, {a, 0, c}, {a, b, c}, {0, b, c}},
                    {box_faces({0, 1, 2, 3, 4, 5, 6, 7})});
}

inline Complex3 regular_tetrahedron() {
  const double s = 1.0 / std::sqrt(8.0);
  return from_cells({{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}}, {{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}});
}

// Square pyramid with a trapezium base; the apex has degree 4.
inline Complex3 trapezium_pyramid() {
  return from_cells({{0, 0, 0}, {2, 0, 0}, {1.5, 1, 0}, {0.5, 1, 0}, {1, 0.5, 1}},
                    {{{0, 3, 2, 1}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}});
}

inline Complex3 octahedron() {
  return from_cells({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
                    {{{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}}});
}

inline std::vector<Vec2> square_poly(double s = 1.0) { return {{0, 0}, {s, 0}, {s, s}, {0, s}}; }

inline std::vector<Vec2> regular_polygon(int n, double side) {
  const double r = side / (2 * std::sin(std::numbers::pi / n));
  std::vector<Vec2> out;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * std::numbers::pi * i / n;
    out.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return out;
}

// 2x2 square minus the top-right unit square.
inline std::vector<Vec2> l_hexomino() { return {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}; }

inline double total_area(const Complex2& k) {
  double a = 0.0;
  for (FaceId f : k.interior_faces()) a += signed_area(k.face_points(f));
  return a;
}

inline double total_volume(const Complex3& k) {
  double v = 0.0;
  for (CellId c : k.interior_cells()) v += k.cell_volume(c);
  return v;
}

inline std::vector<int> degrees(const Complex2& k) {
  std::vector<int> d(k.num_vertices(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) {
    ++d[k.edge(e)[0]];
    ++d[k.edge(e)[1]];
  }
  return d;
}

// Brute-force count of edge pairs that touch away from shared endpoints.
inline std::size_t crossings(const Complex2& k) {
  std::size_t bad = 0;
  for (EdgeId a = 0; a < static_cast<EdgeId>(k.num_edges()); ++a)
    for (EdgeId b = a + 1; b < static_cast<EdgeId>(k.num_edges()); ++b) {
      const auto ea = k.edge(a), eb = k.edge(b);
      const bool share = ea[0] == eb[0] || ea[0] == eb[1] || ea[1] == eb[0] || ea[1] == eb[1];
      if (share) {
        // Shared endpoint: only collinear overlap counts.
        const VertexId s = (ea[0] == eb[0] || ea[0] == eb[1]) ? ea[0] : ea[1];
        const Vec2 da = k.point(k.other_end(a, s)) - k.point(s), db = k.point(k.other_end(b, s)) - k.point(s);
        if (std::abs(cross2(da, db)) < 1e-12 && da.dot(db) > 0) ++bad;
        continue;
      }
      if (segments_touch(k.point(ea[0]), k.point(ea[1]), k.point(eb[0]), k.point(eb[1]))) ++bad;
    }
  return bad;
}

}  // namespace fx
