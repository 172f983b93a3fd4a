#pragma once

#include "euler/complex.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace euler {

// Generating dimension of a transformed cell. Carried cells are the unchanged
// copies of holes and the outside.
enum class CellClass : std::uint8_t { Class1 = 1, Class2 = 2, Class3 = 3, Class4 = 4, Carried = 0 };

const char* to_string(CellClass c) noexcept;

struct TransformOptions2 {
  double lambda = 0.4;
  double mu = 0.6;
  // Uniform offset for every face; automatic per face when unset.
  std::optional<double> b;
  // Per-face offsets indexed by face id; overrides `b` when non-empty.
  std::vector<double> face_b;
  // Build the intermediate complex of the double transform: rule (5) may fail
  // and degenerate two-vertex Class-3 polygons are dropped.
  bool intermediate = false;
};

struct TransformCounts {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;  // Class 1, 2 and 3 only
  std::size_t cells = 0;  // 3D: Class 1 to 4
};

struct TransformedComplex2 {
  Complex2 complex;
  // Indexed by face record of `complex`.
  std::vector<CellClass> face_class;
  std::vector<std::int32_t> generator;
  // Indexed by vertex of `complex`: the source vertex and the face record of K
  // it was copied into (hole or outside record for unmoved boundary copies).
  std::vector<VertexId> source_vertex;
  std::vector<FaceId> source_face;
  // Per edge of K: its copies inside the two incident face records.
  std::vector<std::array<EdgeId, 2>> edge_copies;
  // Offset used for each face record of K (0 for holes and the outside).
  std::vector<double> offsets;
  // Counts of the built complex, and the tallies of the counting argument in
  // which coincident side edges and dropped two-vertex polygons still count.
  TransformCounts counts;
  TransformCounts tallied;
};

TransformedComplex2 euler_transform_2d(const Complex2& k, const TransformOptions2& options = {});

struct DoubleTransform2 {
  TransformedComplex2 intermediate;
  TransformedComplex2 result;
};

// For complexes failing only rule (5): transform once in intermediate mode,
// then transform the result.
DoubleTransform2 double_transform_2d(const Complex2& k, const TransformOptions2& first = {},
                                     const TransformOptions2& second = {});

bool check_connectivity_2d(const Complex2& k);

// Thickens the outer boundary: boundary vertices move inward by a mitered
// offset of the domain outline and one quadrilateral per boundary edge fills
// the gap, so no face of the result has two adjacent boundary edges.
Complex2 pad_boundary_2d(const Complex2& k, double thickness);

// Largest pad thickness considered safe: a fraction of the shortest edge at a
// boundary vertex, capped below the outline's first event distance.
double default_pad_thickness_2d(const Complex2& k);

}  // namespace euler
