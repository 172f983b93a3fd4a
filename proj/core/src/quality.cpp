#include "euler/analysis.hpp"
#include "euler/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace euler {

CellQuality cell_quality_2d(std::span<const Vec2> poly) {
  std::vector<Vec2> ccw(poly.begin(), poly.end());
  const double area = signed_area(ccw);
  if (ccw.size() < 3 || std::abs(area) <= 1e-300)
    throw Error(ErrorCode::InvalidInput, "degenerate polygon: zero area");
  if (area < 0) std::reverse(ccw.begin(), ccw.end());
  CellQuality q;
  q.diameter = diameter(ccw);
  q.inradius = inradius_2d(ccw);
  q.aspect = q.diameter / q.inradius;
  q.min_edge = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const double len = (ccw[(i + 1) % ccw.size()] - ccw[i]).norm();
    q.min_edge = std::min(q.min_edge, len);
    q.max_edge = std::max(q.max_edge, len);
  }
  const auto angles = interior_angles(ccw);
  q.min_angle = *std::min_element(angles.begin(), angles.end());
  q.max_angle = *std::max_element(angles.begin(), angles.end());
  return q;
}

CellQuality cell_quality_3d(const Polyhedron& t) {
  CellQuality q;
  q.diameter = diameter(t.points);
  const Inradius r = inradius_3d(t);
  q.inradius = r.value;
  q.approximate = r.approximate;
  q.aspect = q.diameter / q.inradius;
  q.min_edge = std::numeric_limits<double>::infinity();
  for (const auto& e : t.edges()) {
    const double len = (t.points[e[1]] - t.points[e[0]]).norm();
    q.min_edge = std::min(q.min_edge, len);
    q.max_edge = std::max(q.max_edge, len);
  }
  q.min_angle = std::numeric_limits<double>::infinity();
  for (const auto& f : t.faces)
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Vec3& p = t.points[f[i]];
      const Vec3 back = t.points[f[(i + f.size() - 1) % f.size()]] - p, ahead = t.points[f[(i + 1) % f.size()]] - p;
      const double a = angle_between(back, ahead);
      q.min_angle = std::min(q.min_angle, a);
      q.max_angle = std::max(q.max_angle, a);
    }
  return q;
}

std::pair<double, double> measured_scale_range(const Complex2& k, const TransformedComplex2& t) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) {
    const double len = (k.point(k.edge(e)[1]) - k.point(k.edge(e)[0])).norm();
    for (int side = 0; side < 2; ++side) {
      if (!k.is_interior(k.edge_faces(e)[side])) continue;
      const auto& ends = t.complex.edge(t.edge_copies[e][side]);
      const double s = (t.complex.point(ends[1]) - t.complex.point(ends[0])).norm() / len;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  return {lo, hi};
}

LengthBudget euclidean_length_bound(const Complex2& k, const TransformedComplex2& t, double lambda_star,
                                    double mu_star) {
  LengthBudget b;
  b.lambda_star = lambda_star;
  b.mu_star = mu_star;
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e)
    b.length += (k.point(k.edge(e)[1]) - k.point(k.edge(e)[0])).norm();
  for (EdgeId e = 0; e < static_cast<EdgeId>(t.complex.num_edges()); ++e)
    b.transformed += (t.complex.point(t.complex.edge(e)[1]) - t.complex.point(t.complex.edge(e)[0])).norm();
  const auto [lo, hi] = measured_scale_range(k, t);
  const double tol = 1e-12;
  b.applicable = lo >= lambda_star - tol && hi <= mu_star + tol && lambda_star < mu_star;
  b.lower = 2 * b.length;
  b.upper = (std::sqrt(5.0) + (2 * mu_star - std::sqrt(5.0) * lambda_star)) * b.length;
  b.holds = b.applicable && b.lower < b.transformed && b.transformed < b.upper;
  return b;
}

}  // namespace euler
