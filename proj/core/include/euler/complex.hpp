#pragma once

#include "euler/geometry.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace euler {

// Dense handles into a complex; never reused after build.
using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;
using CellId = std::int32_t;

inline constexpr std::int32_t kInvalidId = -1;

// Top-dimensional cells are either part of K, a hole, or the single outside
// cell. The outside cell is stored through its bounded inner boundary.
enum class CellKind : std::uint8_t { Interior, Hole, Outside };

// ---------------------------------------------------------------------------
// 2-complexes
// ---------------------------------------------------------------------------

struct Face2 {
  std::vector<VertexId> cycle;  // counterclockwise for interior and hole faces
  std::vector<EdgeId> edges;    // edges[i] joins cycle[i] and cycle[i+1]
  CellKind kind = CellKind::Interior;
};

// The angular sector at a vertex between two consecutive incident edges,
// swept counterclockwise from `first` to `second`, and the face occupying it.
struct Wedge {
  FaceId face = kInvalidId;
  EdgeId first = kInvalidId;
  EdgeId second = kInvalidId;
};

class Complex2 {
public:
  Complex2() = default;

  std::size_t num_vertices() const { return points_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  // All face records, including holes and the outside boundary record.
  std::size_t num_face_records() const { return faces_.size(); }

  std::span<const Vec2> points() const { return points_; }
  const Vec2& point(VertexId v) const { return points_[v]; }
  const std::array<VertexId, 2>& edge(EdgeId e) const { return edges_[e]; }
  const Face2& face(FaceId f) const { return faces_[f]; }
  std::span<const Face2> faces() const { return faces_; }

  std::span<const FaceId> interior_faces() const { return interior_; }
  std::span<const FaceId> hole_faces() const { return holes_; }
  // The outside record's cycle is the closed boundary walk of the domain; it
  // may revisit articulation vertices.
  FaceId outside_face() const { return outside_; }

  const std::array<FaceId, 2>& edge_faces(EdgeId e) const { return edge_faces_[e]; }
  std::span<const EdgeId> vertex_edges(VertexId v) const { return vertex_edges_[v]; }
  // Distinct face records incident to v.
  std::span<const FaceId> vertex_faces(VertexId v) const { return vertex_faces_[v]; }
  // Counterclockwise rotation of sectors around v.
  std::span<const Wedge> wedges(VertexId v) const { return wedges_[v]; }

  EdgeId find_edge(VertexId a, VertexId b) const;
  VertexId other_end(EdgeId e, VertexId v) const { return edges_[e][0] == v ? edges_[e][1] : edges_[e][0]; }
  FaceId other_face(EdgeId e, FaceId f) const { return edge_faces_[e][0] == f ? edge_faces_[e][1] : edge_faces_[e][0]; }

  std::vector<Vec2> face_points(FaceId f) const;
  bool is_interior(FaceId f) const { return faces_[f].kind == CellKind::Interior; }

  // Diagonal of the axis-aligned bounding box.
  double scale() const;

private:
  friend Complex2 build_complex_2d(std::vector<Vec2>, std::vector<std::vector<VertexId>>,
                                   std::vector<std::vector<VertexId>>, std::vector<VertexId>);

  std::vector<Vec2> points_;
  std::vector<std::array<VertexId, 2>> edges_;
  std::vector<Face2> faces_;
  std::vector<FaceId> interior_;
  std::vector<FaceId> holes_;
  FaceId outside_ = kInvalidId;
  std::vector<std::array<FaceId, 2>> edge_faces_;
  std::vector<std::vector<EdgeId>> vertex_edges_;
  std::vector<std::vector<FaceId>> vertex_faces_;
  std::vector<std::vector<Wedge>> wedges_;
};

// Builds and indexes a 2-complex. `outside_cycle` may be empty, in which case
// the boundary of K and its holes is derived from edges covered only once.
// Throws Error(InvalidInput) on duplicate faces, open or non-simple cycles,
// edges shared by more than two faces, overlaps, and non-face intersections.
Complex2 build_complex_2d(std::vector<Vec2> points, std::vector<std::vector<VertexId>> faces,
                          std::vector<std::vector<VertexId>> holes = {},
                          std::vector<VertexId> outside_cycle = {});

// ---------------------------------------------------------------------------
// 3-complexes
// ---------------------------------------------------------------------------

struct Face3 {
  std::vector<VertexId> cycle;
  std::vector<EdgeId> edges;  // edges[i] joins cycle[i] and cycle[i+1]
};

struct Cell3 {
  std::vector<FaceId> faces;
  // +1 when the face's cycle winds counterclockwise seen from outside the cell.
  std::vector<std::int8_t> orientation;
  CellKind kind = CellKind::Interior;
};

// One step of the cyclic walk around an edge: `cell` is entered through `face`.
struct EdgeStar {
  CellId cell = kInvalidId;
  FaceId face = kInvalidId;
};

class Complex3 {
public:
  Complex3() = default;

  std::size_t num_vertices() const { return points_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_faces() const { return faces_.size(); }
  std::size_t num_cell_records() const { return cells_.size(); }

  std::span<const Vec3> points() const { return points_; }
  const Vec3& point(VertexId v) const { return points_[v]; }
  const std::array<VertexId, 2>& edge(EdgeId e) const { return edges_[e]; }
  const Face3& face(FaceId f) const { return faces_[f]; }
  const Cell3& cell(CellId c) const { return cells_[c]; }
  std::span<const Cell3> cells() const { return cells_; }

  std::span<const CellId> interior_cells() const { return interior_; }
  std::span<const CellId> hole_cells() const { return holes_; }
  CellId outside_cell() const { return outside_; }
  bool is_interior(CellId c) const { return cells_[c].kind == CellKind::Interior; }

  const std::array<CellId, 2>& face_cells(FaceId f) const { return face_cells_[f]; }
  CellId other_cell(FaceId f, CellId c) const { return face_cells_[f][0] == c ? face_cells_[f][1] : face_cells_[f][0]; }
  std::span<const FaceId> edge_faces(EdgeId e) const { return edge_faces_[e]; }
  std::span<const EdgeId> vertex_edges(VertexId v) const { return vertex_edges_[v]; }
  std::span<const CellId> vertex_cells(VertexId v) const { return vertex_cells_[v]; }
  std::span<const VertexId> cell_vertices(CellId c) const { return cell_vertices_[c]; }
  std::span<const EdgeId> cell_edges(CellId c) const { return cell_edges_[c]; }
  // Cyclic sequence of cells around an edge.
  std::span<const EdgeStar> edge_star(EdgeId e) const { return edge_stars_[e]; }

  // Number of edges of cell c incident to vertex v.
  int degree_in_cell(CellId c, VertexId v) const;
  // Faces of cell c incident to v, in cyclic order around v.
  std::vector<FaceId> cell_faces_around(CellId c, VertexId v) const;

  EdgeId find_edge(VertexId a, VertexId b) const;
  VertexId other_end(EdgeId e, VertexId v) const { return edges_[e][0] == v ? edges_[e][1] : edges_[e][0]; }
  bool face_has_edge(FaceId f, EdgeId e) const;
  bool face_has_vertex(FaceId f, VertexId v) const;

  std::vector<Vec3> face_points(FaceId f) const;
  // Face loop wound counterclockwise seen from outside cell c.
  std::vector<VertexId> oriented_cycle(CellId c, std::size_t local_face) const;
  // Unit outward normal of local face i of cell c (Newell).
  Vec3 outward_normal(CellId c, std::size_t local_face) const;
  double cell_volume(CellId c) const;
  double scale() const;

private:
  friend Complex3 build_complex_3d(std::vector<Vec3>, std::vector<std::vector<VertexId>>,
                                   std::vector<std::vector<FaceId>>, std::vector<std::vector<FaceId>>,
                                   std::vector<FaceId>);

  std::vector<Vec3> points_;
  std::vector<std::array<VertexId, 2>> edges_;
  std::vector<Face3> faces_;
  std::vector<Cell3> cells_;
  std::vector<CellId> interior_;
  std::vector<CellId> holes_;
  CellId outside_ = kInvalidId;
  std::vector<std::array<CellId, 2>> face_cells_;
  std::vector<std::vector<FaceId>> edge_faces_;
  std::vector<std::vector<EdgeId>> vertex_edges_;
  std::vector<std::vector<CellId>> vertex_cells_;
  std::vector<std::vector<VertexId>> cell_vertices_;
  std::vector<std::vector<EdgeId>> cell_edges_;
  std::vector<std::vector<EdgeStar>> edge_stars_;
};

// Builds and indexes a 3-complex. `outside_cell` may be empty, in which case
// it is derived from faces used by exactly one interior or hole cell.
Complex3 build_complex_3d(std::vector<Vec3> points, std::vector<std::vector<VertexId>> faces,
                          std::vector<std::vector<FaceId>> cells,
                          std::vector<std::vector<FaceId>> hole_cells = {},
                          std::vector<FaceId> outside_cell = {});

// Signed volume enclosed by oriented polygon loops, each fanned from its vertex
// centroid so that shared faces triangulate identically.
double enclosed_volume(std::span<const Vec3> points, std::span<const std::vector<VertexId>> loops);

// ---------------------------------------------------------------------------
// Validation and statistics
// ---------------------------------------------------------------------------

enum class Rule : std::uint8_t {
  Purity = 1,
  Connectivity = 2,
  HolesDisjoint = 3,
  HoleSingleFacet = 4,
  AdjacentBoundaryFacets = 5,
  VertexDegree = 6,
  EdgeFaceIncidence = 7,
};

const char* to_string(Rule rule) noexcept;

struct Violation {
  Rule rule;
  std::vector<std::int32_t> handles;  // offending faces (2D) or cells (3D), or vertices where stated
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  bool passed = true;
  std::vector<Violation> violations;
  // Informational findings that never fail validation (articulation vertices).
  std::vector<std::string> notes;

  bool has(Rule rule) const;
  bool only(Rule rule) const;
  bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate_assumptions(const Complex2& k);
ValidationReport validate_assumptions(const Complex3& k);

// Over the cells of K only; holes and the outside are excluded.
long euler_characteristic(const Complex2& k);
long euler_characteristic(const Complex3& k);

struct ComplexStats {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  std::size_t num_faces = 0;
  std::size_t num_cells = 0;      // 3-cells of K (0 in 2D)
  std::size_t max_cell_vertices = 0;  // nu
  std::size_t max_face_edges = 0;     // pi
  std::vector<int> vertex_degree;     // delta(v), over the whole 1-skeleton
  std::vector<bool> boundary_cell;    // indexed like interior_faces()/interior_cells()
};

// Counts are over K: faces of K in 2D; faces used by at least one cell of K in 3D.
ComplexStats stats(const Complex2& k);
ComplexStats stats(const Complex3& k);

}  // namespace euler
