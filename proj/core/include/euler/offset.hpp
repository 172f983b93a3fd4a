#pragma once

#include "euler/complex.hpp"
#include "euler/geometry.hpp"

#include <array>
#include <span>
#include <vector>

namespace euler {

// Closed polyhedral cell with face loops wound counterclockwise seen from outside.
struct Polyhedron {
  std::vector<Vec3> points;
  std::vector<std::vector<int>> faces;

  // Undirected edges in first-seen order.
  std::vector<std::array<int, 2>> edges() const;
};

// Cell c as a standalone polyhedron; `global_ids[i]` is the complex vertex of point i.
Polyhedron cell_polyhedron(const Complex3& k, CellId c, std::vector<VertexId>* global_ids = nullptr);

bool is_convex(const Polyhedron& t, double rel_tol = 1e-9);

struct OffsetRange {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};

struct OffsetResult2 {
  std::vector<Vec2> polygon;       // vertex i is the offset of input vertex i
  std::vector<Vec2> displacement;  // polygon[i] - input[i]
  std::vector<double> edge_scale;  // |e_hat| / |e| for edge (i, i+1)
};

struct OffsetResult3 {
  Polyhedron cell;                 // same faces as the input, moved points
  std::vector<Vec3> displacement;
  std::vector<std::array<int, 2>> edges;
  std::vector<double> edge_scale;  // aligned with `edges`
};

// Interior angles within this many radians of 0 or 2*pi make a miter degenerate.
inline constexpr double kMiterAngleTol = 1e-6;

// Mitered velocity of each vertex of a counterclockwise polygon: the vertex
// sits at v + b * velocity[i] after offsetting every edge inward by b.
std::vector<Vec2> miter_velocities(std::span<const Vec2> ccw);

// Smallest offset at which an edge vanishes or a reflex vertex reaches a
// non-adjacent edge.
double first_event_distance_2d(std::span<const Vec2> ccw);

// Radius of the largest inscribed disk for convex polygons; for nonconvex
// polygons the first event distance, which is a lower bound.
double inradius_2d(std::span<const Vec2> ccw);

// b_lo = (1-mu)|e_max|/2, b_hi = min((1-lambda)|e_min|/2, inradius, first event).
// Throws InfeasibleParameters if |e_max|/|e_min| >= (1-lambda)/(1-mu).
OffsetRange admissible_offset_range_2d(std::span<const Vec2> ccw, double lambda, double mu);

// Midpoint of the admissible range. When the range is empty or the ratios are
// infeasible, the midpoint of (0, min(inradius, first event)) instead.
double auto_offset_2d(std::span<const Vec2> ccw, double lambda, double mu);

OffsetResult2 mitered_offset_2d(std::span<const Vec2> ccw, double b);

// Per-vertex velocities for a cell whose vertices all have degree 3.
// Throws IllDefinedMiter or DegenerateMiter.
std::vector<Vec3> miter_velocities(const Polyhedron& t);

double first_event_distance_3d(const Polyhedron& t);

struct Inradius {
  double value = 0.0;
  bool approximate = false;
};

// Chebyshev ball radius for convex cells; a facet-distance lower bound otherwise.
Inradius inradius_3d(const Polyhedron& t);

// Half of min(inradius, first event).
double auto_offset_3d(const Polyhedron& t);

OffsetResult3 mitered_offset_3d(const Polyhedron& t, double b);

}  // namespace euler
