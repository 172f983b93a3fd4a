#include "euler/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace euler {

double signed_area(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += cross2(poly[i], poly[(i + 1) % n]);
  return 0.5 * twice;
}

double perimeter(std::span<const Vec2> poly) {
  double sum = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) sum += (poly[(i + 1) % poly.size()] - poly[i]).norm();
  return sum;
}

Vec2 vertex_centroid(std::span<const Vec2> poly) {
  Vec2 c = Vec2::Zero();
  for (const auto& p : poly) c += p;
  return poly.empty() ? c : Vec2(c / static_cast<double>(poly.size()));
}

Vec3 vertex_centroid(std::span<const Vec3> poly) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : poly) c += p;
  return poly.empty() ? c : Vec3(c / static_cast<double>(poly.size()));
}

std::vector<double> interior_angles(std::span<const Vec2> ccw) {
  const std::size_t n = ccw.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& prev = ccw[(i + n - 1) % n];
    const Vec2& cur = ccw[i];
    const Vec2& next = ccw[(i + 1) % n];
    const Vec2 to_next = next - cur;
    const Vec2 to_prev = prev - cur;
    // Counterclockwise sweep from the outgoing edge to the incoming edge.
    double a = std::atan2(cross2(to_next, to_prev), to_next.dot(to_prev));
    if (a < 0) a += 2 * std::numbers::pi;
    out[i] = a;
  }
  return out;
}

double diameter(std::span<const Vec2> pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(best);
}

double diameter(std::span<const Vec3> pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(best);
}

bool is_convex(std::span<const Vec2> ccw, double angle_tol) {
  for (double a : interior_angles(ccw))
    if (a > std::numbers::pi + angle_tol) return false;
  return true;
}

namespace {

double orient(const Vec2& a, const Vec2& b, const Vec2& c) { return cross2(b - a, c - a); }

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b, double eps) {
  return point_segment_distance(p, a, b) <= eps;
}

}  // namespace

bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps) {
  const double scale = std::max({(b - a).norm(), (d - c).norm(), 1e-300});
  const double tol = eps * scale;
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  const double z1 = tol * (b - a).norm();
  const double z2 = tol * (d - c).norm();
  if (((o1 > z1 && o2 < -z1) || (o1 < -z1 && o2 > z1)) && ((o3 > z2 && o4 < -z2) || (o3 < -z2 && o4 > z2)))
    return true;
  return on_segment(c, a, b, tol) || on_segment(d, a, b, tol) || on_segment(a, c, d, tol) ||
         on_segment(b, c, d, tol);
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool is_simple(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((poly[i] - poly[j]).norm() == 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2& c = poly[j];
      const Vec2& d = poly[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share their common vertex: reject fold-backs.
        const Vec2& shared = (j == i + 1) ? b : a;
        const Vec2& other1 = (j == i + 1) ? a : b;
        const Vec2& other2 = (j == i + 1) ? d : c;
        const Vec2 u = other1 - shared;
        const Vec2 v = other2 - shared;
        if (std::abs(cross2(u, v)) <= 1e-14 * u.norm() * v.norm() && u.dot(v) > 0) return false;
        continue;
      }
      if (segments_touch(a, b, c, d)) return false;
    }
  }
  return true;
}

int classify_point(const Vec2& p, std::span<const Vec2> poly, double eps) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= eps) return 0;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside ? 1 : -1;
}

Vec3 newell_normal(std::span<const Vec3> poly) {
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < poly.size(); ++i) n += poly[i].cross(poly[(i + 1) % poly.size()]);
  return n;
}

std::optional<Plane> fit_plane(std::span<const Vec3> pts) {
  if (pts.size() < 3) return std::nullopt;
  const Vec3 c = vertex_centroid(pts);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  double scale2 = 0.0;
  for (const auto& p : pts) {
    const Vec3 d = p - c;
    cov += d * d.transpose();
    scale2 = std::max(scale2, d.squaredNorm());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  const auto& evals = solver.eigenvalues();
  if (scale2 == 0.0 || evals(1) <= 1e-20 * scale2) return std::nullopt;
  Plane plane;
  plane.normal = solver.eigenvectors().col(0).normalized();
  // Keep the normal aligned with the polygon's winding when it is a loop.
  if (plane.normal.dot(newell_normal(pts)) < 0) plane.normal = -plane.normal;
  plane.offset = plane.normal.dot(c);
  return plane;
}

double planarity_residual(std::span<const Vec3> pts, const Plane& plane) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, std::abs(plane.signed_distance(p)));
  return r;
}

namespace {

template <int D, typename Vec>
std::optional<std::pair<Vec, double>> chebyshev_enumerate(std::span<const Vec> normals,
                                                          std::span<const double> offsets) {
  constexpr int K = D + 1;
  const int m = static_cast<int>(normals.size());
  if (m < K) return std::nullopt;
  double scale = 1.0;
  for (double b : offsets) scale = std::max(scale, std::abs(b));
  const double feas_tol = 1e-9 * scale;

  std::optional<std::pair<Vec, double>> best;
  std::array<int, K> idx{};
  for (int i = 0; i < K; ++i) idx[i] = i;
  while (true) {
    Eigen::Matrix<double, K, K> a;
    Eigen::Matrix<double, K, 1> rhs;
    for (int r = 0; r < K; ++r) {
      a.template block<1, D>(r, 0) = normals[idx[r]].transpose();
      a(r, D) = 1.0;
      rhs(r) = offsets[idx[r]];
    }
    const double det = a.determinant();
    if (std::abs(det) > 1e-12) {
      const Eigen::Matrix<double, K, 1> sol = a.partialPivLu().solve(rhs);
      const Vec x = sol.template head<D>();
      const double radius = sol(D);
      if (radius >= -feas_tol && (!best || radius > best->second)) {
        bool feasible = true;
        for (int j = 0; j < m && feasible; ++j)
          feasible = normals[j].dot(x) + radius <= offsets[j] + feas_tol;
        if (feasible) best = std::make_pair(x, std::max(0.0, radius));
      }
    }
    int pos = K - 1;
    while (pos >= 0 && idx[pos] == m - K + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int r = pos + 1; r < K; ++r) idx[r] = idx[r - 1] + 1;
  }
  return best;
}

}  // namespace

std::optional<Ball2> chebyshev_ball(std::span<const Vec2> normals, std::span<const double> offsets) {
  auto r = chebyshev_enumerate<2, Vec2>(normals, offsets);
  if (!r) return std::nullopt;
  return Ball2{r->first, r->second};
}

std::optional<Ball3> chebyshev_ball(std::span<const Vec3> normals, std::span<const double> offsets) {
  auto r = chebyshev_enumerate<3, Vec3>(normals, offsets);
  if (!r) return std::nullopt;
  return Ball3{r->first, r->second};
}

Ball2 chebyshev_ball(std::span<const Vec2> ccw_convex) {
  std::vector<Vec2> normals;
  std::vector<double> offsets;
  const std::size_t n = ccw_convex.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d = ccw_convex[(i + 1) % n] - ccw_convex[i];
    const double len = d.norm();
    if (len == 0.0) continue;
    const Vec2 out(d.y() / len, -d.x() / len);
    normals.push_back(out);
    offsets.push_back(out.dot(ccw_convex[i]));
  }
  return chebyshev_ball(normals, offsets).value_or(Ball2{});
}

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

double angle_between(const Vec2& a, const Vec2& b) { return std::atan2(std::abs(cross2(a, b)), a.dot(b)); }

}  // namespace euler
