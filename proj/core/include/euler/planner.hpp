#pragma once

#include "euler/complex.hpp"
#include "euler/geometry.hpp"
#include "euler/transform2d.hpp"
#include "euler/transform3d.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace euler {

// Undirected multigraph with embedded vertices.
class SkeletonGraph {
 public:
  int add_vertex(const Vec3& p);
  int add_edge(int a, int b);

  std::size_t num_vertices() const { return points_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const Vec3& point(int v) const { return points_[v]; }
  const std::vector<Vec3>& points() const { return points_; }
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  // Incident edge ids; a loop appears twice.
  const std::vector<int>& incident(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  int other_end(int e, int v) const { return edges_[e][0] == v ? edges_[e][1] : edges_[e][0]; }

  std::vector<int> odd_vertices() const;
  // Component label per vertex; isolated vertices get their own label.
  std::vector<int> component_labels(int* count = nullptr) const;
  // Components that own at least one edge, as standalone graphs ordered by
  // their lowest edge id. The maps give the original id of each local vertex
  // and edge.
  std::vector<SkeletonGraph> edge_components(std::vector<std::vector<int>>* vertex_maps = nullptr,
                                             std::vector<std::vector<int>>* edge_maps = nullptr) const;

 private:
  std::vector<Vec3> points_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

SkeletonGraph skeleton_graph(const Complex2& k);
SkeletonGraph skeleton_graph(const TransformedComplex3& t);

struct Traversal {
  int edge = -1;
  int from = -1;
  int to = -1;
};

struct Tour {
  std::vector<Traversal> steps;
  int start = -1;
  double turn_cost = 0.0;  // sum of absolute turning angles, closing turn included
};

// Absolute turning angles summed around the closed walk.
double tour_turn_cost(const SkeletonGraph& g, const std::vector<Traversal>& steps);

// Every edge exactly once, consecutive steps chained, closed.
bool is_valid_tour(const SkeletonGraph& g, const Tour& tour);

// Hierholzer. Throws OddDegree or Disconnected.
Tour eulerian_tour(const SkeletonGraph& g);

// Fleury walk choosing, among non-bridge edges, the smallest turn; ties go to
// the lowest edge id.
Tour greedy_min_turn_tour(const SkeletonGraph& g);

struct SlicePlane {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;  // plane is normal . x = offset

  double distance(const Vec3& p) const { return normal.dot(p) - offset; }
};

// One vertex per crossed edge and one edge per crossing segment of each
// polygon. Throws DegenerateSlice ("degenerate slice, perturb plane") when the
// plane passes within 1e-9 times the bounding-box diagonal of a vertex.
SkeletonGraph slice_polygons(std::span<const Vec3> points, const std::vector<std::vector<VertexId>>& faces,
                             const SlicePlane& plane);
SkeletonGraph slice_complex(const TransformedComplex3& t, const SlicePlane& plane);

// Closed polygon loops; the first is the outer boundary (CCW), the rest holes.
struct LayerDomain {
  std::vector<Vec2> outer;
  std::vector<std::vector<Vec2>> holes;
};

// Joins odd-degree vertices lying on a loop by paths that follow the loop.
// Along each loop the odd vertices are sorted by arc length and paired with
// their neighbours, taking whichever of the two alternating pairings is
// shorter. Throws InteriorParityDefect for an odd vertex off every loop or an
// odd count on one loop. Indices of the added edges go to `repair_edges`.
SkeletonGraph repair_odd_degrees(const SkeletonGraph& g, const std::vector<std::vector<Vec2>>& loops,
                                 std::vector<int>* repair_edges = nullptr);

struct Layer {
  double z = 0.0;
  SkeletonGraph graph;  // trimmed and repaired, lying in the plane z = 0
  std::vector<int> repair_edges;
  std::size_t odd_before_repair = 0;
  std::size_t clipped_edges = 0;
  double shortest_stub = 0.0;  // shortest clipped segment, 0 when none
  // One tour per connected component, in order of first vertex.
  std::vector<Tour> tours;

  bool empty() const { return graph.num_edges() == 0; }
};

struct LayerPlan {
  std::vector<Layer> layers;
  double layer_height = 0.0;
};

// Trims the base skeleton to a domain and clips crossing edges at its boundary.
SkeletonGraph trim_to_domain(const SkeletonGraph& base, const LayerDomain& domain, std::size_t* clipped = nullptr,
                             double* shortest_stub = nullptr);

LayerPlan build_layers(const TransformedComplex2& base, const std::vector<LayerDomain>& domains, double layer_height);

// Squares centred on `center` whose sides shrink linearly from `base_side` to
// `top_side` over `count` layers.
std::vector<LayerDomain> shrinking_square_domains(const Vec2& center, double base_side, double top_side, int count);

struct ToolpathMove {
  bool draw = false;
  Vec2 to = Vec2::Zero();
};

struct ToolpathLayer {
  double z = 0.0;
  std::vector<ToolpathMove> moves;
};

std::vector<ToolpathLayer> toolpath_from_plan(const LayerPlan& plan);
// "LAYER z=<z>" headers followed by "MOVE x y" and "DRAW x y" lines.
std::string write_toolpath(const std::vector<ToolpathLayer>& layers);
std::vector<ToolpathLayer> parse_toolpath(const std::string& text);

}  // namespace euler
