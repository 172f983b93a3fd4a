#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <optional>
#include <span>
#include <vector>

namespace euler {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Planar polygons are vertex loops without a repeated closing point.
double signed_area(std::span<const Vec2> poly);
double perimeter(std::span<const Vec2> poly);
Vec2 vertex_centroid(std::span<const Vec2> poly);

// Interior angle at every vertex of a counterclockwise polygon, in (0, 2*pi).
std::vector<double> interior_angles(std::span<const Vec2> ccw);

// Largest pairwise vertex distance; the diameter of a polytope is attained at vertices.
double diameter(std::span<const Vec2> pts);
double diameter(std::span<const Vec3> pts);

bool is_convex(std::span<const Vec2> ccw, double angle_tol = 1e-12);

// True if the polygon has no two non-adjacent edges touching and no
// overlapping adjacent edges.
bool is_simple(std::span<const Vec2> poly);

// True if closed segments [a,b] and [c,d] share at least one point.
bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps = 0.0);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);
double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

// +1 inside, 0 within eps of the boundary, -1 outside.
int classify_point(const Vec2& p, std::span<const Vec2> poly, double eps);

struct Plane {
  Vec3 normal{0, 0, 1};  // unit
  double offset = 0.0;   // normal . x == offset on the plane

  double signed_distance(const Vec3& p) const { return normal.dot(p) - offset; }
};

// Newell normal (not normalised); its length is twice the vector area.
Vec3 newell_normal(std::span<const Vec3> poly);
Vec3 vertex_centroid(std::span<const Vec3> poly);

// Least-squares plane through the points (principal axis of least variance).
// Empty when the points are (numerically) collinear.
std::optional<Plane> fit_plane(std::span<const Vec3> pts);

// Max distance of any point from the plane.
double planarity_residual(std::span<const Vec3> pts, const Plane& plane);

// Largest ball inside the intersection of half-spaces n_i . x <= b_i with unit
// normals. Found by enumerating the (d+1)-subsets of constraints that can
// define an optimal vertex of the Chebyshev linear program.
struct Ball2 {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};
struct Ball3 {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};
std::optional<Ball2> chebyshev_ball(std::span<const Vec2> normals, std::span<const double> offsets);
std::optional<Ball3> chebyshev_ball(std::span<const Vec3> normals, std::span<const double> offsets);

// Inscribed circle of a convex counterclockwise polygon.
Ball2 chebyshev_ball(std::span<const Vec2> ccw_convex);

// Unsigned angle between two directions, in [0, pi].
double angle_between(const Vec3& a, const Vec3& b);
double angle_between(const Vec2& a, const Vec2& b);

}  // namespace euler
