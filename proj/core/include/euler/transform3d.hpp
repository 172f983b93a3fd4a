#pragma once

#include "euler/complex.hpp"
#include "euler/transform2d.hpp"

#include <array>
#include <optional>
#include <vector>

namespace euler {

struct TransformOptions3 {
  // Uniform offset for every cell; automatic per cell when unset.
  std::optional<double> b;
  // Per-cell offsets indexed by cell id; overrides `b` when non-empty.
  std::vector<double> cell_b;
  bool include_class_3_4 = true;
  // Accept complexes failing rule (5). Edge and vertex cells that collapse to
  // fewer than three copies are then counted but not built.
  bool allow_rule5 = false;
};

// A q-gon capping a Class-3 cell at one end of its generating edge.
struct RingPolygon {
  FaceId face = kInvalidId;
  EdgeId edge = kInvalidId;    // generating edge of K
  VertexId end = kInvalidId;   // endpoint of that edge the ring surrounds
  // Per ring vertex, the far end of the new edge along which it may slide
  // during planarization; kInvalidId for unmoved boundary copies.
  std::vector<VertexId> slide_towards;
};

struct TransformedComplex3 {
  std::vector<Vec3> points;
  std::vector<VertexId> source_vertex;  // vertex of K each point copies
  std::vector<CellId> source_cell;      // cell record of K it lies in
  std::vector<bool> fixed_copy;         // unmoved copy inside a hole or the outside
  std::vector<std::vector<VertexId>> faces;
  std::vector<std::vector<FaceId>> cells;
  std::vector<CellClass> cell_class;
  std::vector<std::int32_t> generator;
  // Per face of K: its copies inside the two incident cell records.
  std::vector<std::array<FaceId, 2>> face_copies;
  std::vector<RingPolygon> rings;
  std::vector<double> offsets;  // per cell record of K (0 when carried)
  bool include_class_3_4 = true;

  // vertices: copies inside cells of K; edges: half the degree sum over those
  // copies; faces: built polygons; cells: generated cells including collapsed ones.
  TransformCounts counts;
  std::size_t boundary_vertices = 0;  // unmoved copies inside holes and the outside
  std::size_t skeleton_edges = 0;     // distinct edges of the 1-skeleton

  std::vector<std::array<VertexId, 2>> edges() const;
  std::vector<int> degrees() const;
  bool is_boundary_copy(VertexId v) const;
  // Requires Classes 3 and 4; carried cells become holes and the outside.
  Complex3 to_complex() const;
};

// Requires validate_assumptions to pass (rule (5) excepted with allow_rule5).
TransformedComplex3 euler_transform_3d(const Complex3& k, const TransformOptions3& options = {});

struct PlanarizeReport {
  int passes = 0;
  double max_residual_before = 0.0;
  double max_residual_after = 0.0;
  double max_displacement = 0.0;
};

// Moves ring vertices along their sliding edges onto least-squares planes
// until every ring is planar to 1e-9 of the bounding-box diagonal.
PlanarizeReport planarize_ring_polygons(TransformedComplex3& t, int max_passes = 200);

double ring_residual(const TransformedComplex3& t, const RingPolygon& ring);

// Every skeleton edge must lie on exactly four polygons.
ValidationReport edge_face_incidence_check(const TransformedComplex3& t);

bool check_connectivity_3d(const TransformedComplex3& t);
bool check_connectivity_3d(const Complex3& k);

// Truncates every boundary vertex that has degree above three in some cell by
// a plane cutting its edges no farther than `cut` from the vertex. The cut-off
// tips join the outside. Throws CombinatorialChange if a cut reaches the middle
// of an edge and InvalidInput for such vertices in the interior.
Complex3 pre_offset_fix_3d(const Complex3& k, double cut);

// Adds one prism per boundary face between the original boundary and an
// inward least-squares mitered offset of it. The domain is unchanged.
Complex3 pad_boundary_3d(const Complex3& k, double thickness);

double default_pad_thickness_3d(const Complex3& k);

}  // namespace euler
