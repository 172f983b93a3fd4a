#include "euler/offset.hpp"
#include "euler/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace euler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec2 inward_normal(const Vec2& a, const Vec2& b) {
  const Vec2 d = (b - a).normalized();
  return {-d.y(), d.x()};
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

std::vector<std::array<int, 2>> Polyhedron::edges() const {
  std::vector<std::array<int, 2>> out;
  std::map<std::pair<int, int>, int> seen;
  for (const auto& f : faces)
    for (std::size_t i = 0; i < f.size(); ++i) {
      int a = f[i], b = f[(i + 1) % f.size()];
      if (a > b) std::swap(a, b);
      if (seen.emplace(std::make_pair(a, b), static_cast<int>(out.size())).second) out.push_back({a, b});
    }
  return out;
}

Polyhedron cell_polyhedron(const Complex3& k, CellId c, std::vector<VertexId>* global_ids) {
  Polyhedron t;
  const auto verts = k.cell_vertices(c);
  std::map<VertexId, int> local;
  for (VertexId v : verts) {
    local[v] = static_cast<int>(t.points.size());
    t.points.push_back(k.point(v));
  }
  for (std::size_t i = 0; i < k.cell(c).faces.size(); ++i) {
    std::vector<int> loop;
    for (VertexId v : k.oriented_cycle(c, i)) loop.push_back(local.at(v));
    t.faces.push_back(std::move(loop));
  }
  if (global_ids) global_ids->assign(verts.begin(), verts.end());
  return t;
}

namespace {

struct FacePlane {
  Vec3 normal;
  double offset;
};

std::vector<FacePlane> face_planes(const Polyhedron& t) {
  std::vector<FacePlane> out;
  for (const auto& f : t.faces) {
    std::vector<Vec3> pts;
    for (int v : f) pts.push_back(t.points[v]);
    const Vec3 n = newell_normal(pts).normalized();
    out.push_back({n, n.dot(vertex_centroid(pts))});
  }
  return out;
}

double extent(const Polyhedron& t) { return diameter(t.points); }

}  // namespace

bool is_convex(const Polyhedron& t, double rel_tol) {
  const double tol = rel_tol * std::max(extent(t), 1e-300);
  const auto planes = face_planes(t);
  for (const auto& pl : planes)
    for (const Vec3& p : t.points)
      if (pl.normal.dot(p) - pl.offset > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Polygons
// ---------------------------------------------------------------------------

std::vector<Vec2> miter_velocities(std::span<const Vec2> ccw) {
  const std::size_t n = ccw.size();
  const auto angles = interior_angles(ccw);
  std::vector<Vec2> vel(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = angles[i];
    if (a < kMiterAngleTol || a > 2 * std::numbers::pi - kMiterAngleTol)
      throw Error(ErrorCode::DegenerateMiter, "degenerate miter at vertex " + std::to_string(i) +
                                                  " (interior angle " + num(a) + " rad)");
    const Vec2& prev = ccw[(i + n - 1) % n];
    const Vec2& next = ccw[(i + 1) % n];
    const Vec2 n1 = inward_normal(prev, ccw[i]);
    const Vec2 n2 = inward_normal(ccw[i], next);
    vel[i] = (n1 + n2) / (1.0 + n1.dot(n2));
  }
  return vel;
}

double first_event_distance_2d(std::span<const Vec2> ccw) {
  const std::size_t n = ccw.size();
  const auto vel = miter_velocities(ccw);
  const auto angles = interior_angles(ccw);
  double best = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Vec2 d = ccw[j] - ccw[i];
    const double len = d.norm();
    const double rate = (vel[j] - vel[i]).dot(d / len);
    if (rate < -1e-15) best = std::min(best, -len / rate);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (angles[i] <= std::numbers::pi) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t j1 = (j + 1) % n;
      if (j == i || j1 == i) continue;
      const Vec2 nj = inward_normal(ccw[j], ccw[j1]);
      const double denom = nj.dot(vel[i]) - 1.0;
      if (std::abs(denom) < 1e-15) continue;
      const double b = nj.dot(ccw[j] - ccw[i]) / denom;
      if (!(b > 0) || b >= best) continue;
      const Vec2 p = ccw[i] + b * vel[i];
      const Vec2 a0 = ccw[j] + b * vel[j], a1 = ccw[j1] + b * vel[j1];
      const Vec2 dir = a1 - a0;
      const double len2 = dir.squaredNorm();
      if (len2 <= 0) continue;
      const double s = (p - a0).dot(dir) / len2;
      if (s >= -1e-12 && s <= 1 + 1e-12) best = b;
    }
  }
  return best;
}

double inradius_2d(std::span<const Vec2> ccw) {
  if (is_convex(ccw)) return chebyshev_ball(ccw).radius;
  return first_event_distance_2d(ccw);
}

OffsetRange admissible_offset_range_2d(std::span<const Vec2> ccw, double lambda, double mu) {
  if (!(0 < lambda && lambda < mu && mu < 1))
    throw Error(ErrorCode::InvalidInput, "offset ratios must satisfy 0 < lambda < mu < 1");
  double emin = kInf, emax = 0.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const double len = (ccw[(i + 1) % ccw.size()] - ccw[i]).norm();
    emin = std::min(emin, len);
    emax = std::max(emax, len);
  }
  const double limit = (1 - lambda) / (1 - mu);
  if (emax / emin >= limit)
    throw Error(ErrorCode::InfeasibleParameters, "infeasible parameters: edge ratio " + num(emax / emin) +
                                                     " >= (1-lambda)/(1-mu) = " + num(limit));
  OffsetRange r;
  r.lo = (1 - mu) * emax / 2;
  r.hi = std::min({(1 - lambda) * emin / 2, inradius_2d(ccw), first_event_distance_2d(ccw)});
  return r;
}

double auto_offset_2d(std::span<const Vec2> ccw, double lambda, double mu) {
  try {
    const OffsetRange r = admissible_offset_range_2d(ccw, lambda, mu);
    if (!r.empty()) return 0.5 * (r.lo + r.hi);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InfeasibleParameters) throw;
  }
  return 0.5 * std::min(inradius_2d(ccw), first_event_distance_2d(ccw));
}

OffsetResult2 mitered_offset_2d(std::span<const Vec2> ccw, double b) {
  if (ccw.size() < 3 || signed_area(ccw) <= 0)
    throw Error(ErrorCode::InvalidInput, "offset input must be a counterclockwise polygon");
  if (!(b > 0)) throw Error(ErrorCode::InvalidInput, "offset distance must be positive");
  const auto vel = miter_velocities(ccw);
  const double event = first_event_distance_2d(ccw);
  if (b >= event - 1e-12 * diameter(ccw))
    throw Error(ErrorCode::CombinatorialChange,
                "combinatorial change at offset b = " + num(b) + " (first event at " + num(event) + ")");
  OffsetResult2 r;
  const std::size_t n = ccw.size();
  for (std::size_t i = 0; i < n; ++i) {
    r.displacement.push_back(b * vel[i]);
    r.polygon.push_back(ccw[i] + b * vel[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    r.edge_scale.push_back((r.polygon[j] - r.polygon[i]).norm() / (ccw[j] - ccw[i]).norm());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Polyhedra
// ---------------------------------------------------------------------------

std::vector<Vec3> miter_velocities(const Polyhedron& t) {
  const auto planes = face_planes(t);
  std::vector<std::vector<int>> vfaces(t.points.size());
  for (std::size_t f = 0; f < t.faces.size(); ++f)
    for (int v : t.faces[f]) vfaces[v].push_back(static_cast<int>(f));
  std::vector<int> degree(t.points.size(), 0);
  for (const auto& e : t.edges()) {
    ++degree[e[0]];
    ++degree[e[1]];
  }
  std::vector<Vec3> vel(t.points.size());
  for (std::size_t v = 0; v < t.points.size(); ++v) {
    if (degree[v] != 3 || vfaces[v].size() != 3)
      throw Error(ErrorCode::IllDefinedMiter,
                  "ill-defined miter: vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]));
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r) m.row(r) = planes[vfaces[v][r]].normal.transpose();
    const double det = m.determinant();
    if (std::abs(det) < 1e-12)
      throw Error(ErrorCode::DegenerateMiter, "degenerate miter at vertex " + std::to_string(v) +
                                                  " (normal determinant " + num(det) + ")");
    vel[v] = m.partialPivLu().solve(Vec3(-1, -1, -1));
  }
  return vel;
}

double first_event_distance_3d(const Polyhedron& t) {
  const auto vel = miter_velocities(t);
  double best = kInf;
  for (const auto& e : t.edges()) {
    const Vec3 d = t.points[e[1]] - t.points[e[0]];
    const double len = d.norm();
    const double rate = (vel[e[1]] - vel[e[0]]).dot(d / len);
    if (rate < -1e-15) best = std::min(best, -len / rate);
  }
  if (is_convex(t)) return best;
  // A vertex crossing a non-incident face is the other event kind.
  const auto planes = face_planes(t);
  for (std::size_t f = 0; f < t.faces.size(); ++f) {
    const auto& face = t.faces[f];
    const Vec3 n = planes[f].normal;
    const Vec3 ax = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 u = n.cross(ax).normalized(), w = n.cross(u);
    for (std::size_t v = 0; v < t.points.size(); ++v) {
      if (std::find(face.begin(), face.end(), static_cast<int>(v)) != face.end()) continue;
      const double denom = n.dot(vel[v]) + 1.0;
      if (std::abs(denom) < 1e-15) continue;
      const double b = (planes[f].offset - n.dot(t.points[v])) / denom;
      if (!(b > 0) || b >= best) continue;
      const Vec3 p = t.points[v] + b * vel[v];
      std::vector<Vec2> poly;
      for (int q : face) {
        const Vec3 x = t.points[q] + b * vel[q];
        poly.emplace_back(u.dot(x), w.dot(x));
      }
      if (classify_point({u.dot(p), w.dot(p)}, poly, 1e-12 * extent(t)) >= 0) best = b;
    }
  }
  return best;
}

Inradius inradius_3d(const Polyhedron& t) {
  const auto planes = face_planes(t);
  std::vector<Vec3> normals;
  std::vector<double> offsets;
  for (const auto& p : planes) {
    normals.push_back(p.normal);
    offsets.push_back(p.offset);
  }
  const auto ball = chebyshev_ball(std::span<const Vec3>(normals), std::span<const double>(offsets));
  if (is_convex(t)) return {ball ? ball->radius : 0.0, false};
  if (ball && ball->radius > 0) return {ball->radius, true};
  return {first_event_distance_3d(t), true};
}

double auto_offset_3d(const Polyhedron& t) {
  return 0.5 * std::min(inradius_3d(t).value, first_event_distance_3d(t));
}

OffsetResult3 mitered_offset_3d(const Polyhedron& t, double b) {
  if (!(b > 0)) throw Error(ErrorCode::InvalidInput, "offset distance must be positive");
  const auto vel = miter_velocities(t);
  const double event = first_event_distance_3d(t);
  if (b >= event - 1e-12 * extent(t))
    throw Error(ErrorCode::CombinatorialChange,
                "combinatorial change at offset b = " + num(b) + " (first event at " + num(event) + ")");
  OffsetResult3 r;
  r.cell.faces = t.faces;
  for (std::size_t v = 0; v < t.points.size(); ++v) {
    r.displacement.push_back(b * vel[v]);
    r.cell.points.push_back(t.points[v] + b * vel[v]);
  }
  r.edges = t.edges();
  for (const auto& e : r.edges)
    r.edge_scale.push_back((r.cell.points[e[1]] - r.cell.points[e[0]]).norm() /
                           (t.points[e[1]] - t.points[e[0]]).norm());
  return r;
}

}  // namespace euler
