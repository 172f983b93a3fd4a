#include "euler/error.hpp"
#include "euler/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace euler {

int SkeletonGraph::add_vertex(const Vec3& p) {
  points_.push_back(p);
  adjacency_.emplace_back();
  return static_cast<int>(points_.size()) - 1;
}

int SkeletonGraph::add_edge(int a, int b) {
  const int n = static_cast<int>(points_.size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorCode::InvalidInput, "edge endpoint out of range");
  const int e = static_cast<int>(edges_.size());
  edges_.push_back({a, b});
  adjacency_[a].push_back(e);
  adjacency_[b].push_back(e);
  return e;
}

std::vector<int> SkeletonGraph::odd_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(num_vertices()); ++v)
    if (degree(v) % 2) out.push_back(v);
  return out;
}

std::vector<int> SkeletonGraph::component_labels(int* count) const {
  std::vector<int> label(num_vertices(), -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < static_cast<int>(num_vertices()); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : adjacency_[v]) {
        const int w = other_end(e, v);
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

std::vector<SkeletonGraph> SkeletonGraph::edge_components(std::vector<std::vector<int>>* vertex_maps,
                                                         std::vector<std::vector<int>>* edge_maps) const {
  int count = 0;
  const auto label = component_labels(&count);
  std::vector<int> slot(count, -1);
  std::vector<SkeletonGraph> out;
  std::vector<int> local(num_vertices(), -1);
  if (vertex_maps) vertex_maps->clear();
  if (edge_maps) edge_maps->clear();
  for (int e = 0; e < static_cast<int>(num_edges()); ++e) {
    const int c = label[edges_[e][0]];
    if (slot[c] < 0) {
      slot[c] = static_cast<int>(out.size());
      out.emplace_back();
      if (vertex_maps) vertex_maps->emplace_back();
      if (edge_maps) edge_maps->emplace_back();
    }
    SkeletonGraph& g = out[slot[c]];
    std::array<int, 2> ends{};
    for (int i = 0; i < 2; ++i) {
      int& l = local[edges_[e][i]];
      if (l < 0) {
        l = g.add_vertex(points_[edges_[e][i]]);
        if (vertex_maps) (*vertex_maps)[slot[c]].push_back(edges_[e][i]);
      }
      ends[i] = l;
    }
    g.add_edge(ends[0], ends[1]);
    if (edge_maps) (*edge_maps)[slot[c]].push_back(e);
  }
  return out;
}

SkeletonGraph skeleton_graph(const Complex2& k) {
  SkeletonGraph g;
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_vertices()); ++v) {
    const Vec2& p = k.point(v);
    g.add_vertex(Vec3(p.x(), p.y(), 0.0));
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) g.add_edge(k.edge(e)[0], k.edge(e)[1]);
  return g;
}

SkeletonGraph skeleton_graph(const TransformedComplex3& t) {
  SkeletonGraph g;
  for (const Vec3& p : t.points) g.add_vertex(p);
  for (const auto& e : t.edges()) g.add_edge(e[0], e[1]);
  return g;
}

namespace {

double turn(const SkeletonGraph& g, const Traversal& in, const Traversal& out) {
  const Vec3 a = g.point(in.to) - g.point(in.from);
  const Vec3 b = g.point(out.to) - g.point(out.from);
  if (a.squaredNorm() == 0.0 || b.squaredNorm() == 0.0) return 0.0;
  return angle_between(a, b);
}

void require_eulerian(const SkeletonGraph& g) {
  if (!g.odd_vertices().empty()) throw Error(ErrorCode::OddDegree, "odd degrees: graph has no Eulerian tour");
  const auto label = g.component_labels();
  int comp = -1;
  for (const auto& e : g.edges()) {
    if (comp < 0) comp = label[e[0]];
    if (label[e[0]] != comp) throw Error(ErrorCode::Disconnected, "disconnected graph: edges in several components");
  }
}

Tour finish(const SkeletonGraph& g, std::vector<Traversal> steps) {
  Tour t;
  t.start = steps.empty() ? -1 : steps.front().from;
  t.turn_cost = tour_turn_cost(g, steps);
  t.steps = std::move(steps);
  return t;
}

}  // namespace

double tour_turn_cost(const SkeletonGraph& g, const std::vector<Traversal>& steps) {
  double cost = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) cost += turn(g, steps[i], steps[(i + 1) % steps.size()]);
  return cost;
}

bool is_valid_tour(const SkeletonGraph& g, const Tour& tour) {
  if (tour.steps.size() != g.num_edges()) return false;
  if (tour.steps.empty()) return true;
  std::vector<char> used(g.num_edges(), 0);
  for (std::size_t i = 0; i < tour.steps.size(); ++i) {
    const Traversal& s = tour.steps[i];
    if (s.edge < 0 || s.edge >= static_cast<int>(g.num_edges()) || used[s.edge]) return false;
    used[s.edge] = 1;
    const auto& e = g.edge(s.edge);
    if (!((e[0] == s.from && e[1] == s.to) || (e[1] == s.from && e[0] == s.to))) return false;
    if (s.to != tour.steps[(i + 1) % tour.steps.size()].from) return false;
  }
  return tour.start == tour.steps.front().from;
}

Tour eulerian_tour(const SkeletonGraph& g) {
  require_eulerian(g);
  if (g.num_edges() == 0) return {};
  std::vector<char> used(g.num_edges(), 0);
  std::vector<std::size_t> cursor(g.num_vertices(), 0);
  // Stack of (vertex, edge used to reach it).
  std::vector<std::pair<int, int>> stack{{g.edge(0)[0], -1}};
  std::vector<Traversal> reversed;
  while (!stack.empty()) {
    const int v = stack.back().first;
    auto& c = cursor[v];
    const auto& inc = g.incident(v);
    while (c < inc.size() && used[inc[c]]) ++c;
    if (c == inc.size()) {
      const int e = stack.back().second;
      stack.pop_back();
      if (e >= 0) reversed.push_back({e, stack.back().first, v});
      continue;
    }
    const int e = inc[c];
    used[e] = 1;
    stack.emplace_back(g.other_end(e, v), e);
  }
  std::reverse(reversed.begin(), reversed.end());
  return finish(g, std::move(reversed));
}

namespace {

// Connectivity queries on the unused part of the graph. A bridge test runs two
// searches in lockstep, one from each end, and stops as soon as either side
// meets the other or runs out.
class BridgeOracle {
 public:
  BridgeOracle(const SkeletonGraph& g, const std::vector<char>& used)
      : g_(g), used_(used), mark_(g.num_vertices(), 0) {}

  bool is_bridge(int e) {
    const int a = g_.edge(e)[0], b = g_.edge(e)[1];
    if (a == b) return false;
    stamp_ += 2;
    const std::uint32_t sa = stamp_, sb = stamp_ + 1;
    std::vector<int> qa{a}, qb{b};
    std::size_t ia = 0, ib = 0;
    mark_[a] = sa;
    mark_[b] = sb;
    while (true) {
      if (ia == qa.size() || ib == qb.size()) return true;
      if (step(qa, ia, sa, sb, e) || step(qb, ib, sb, sa, e)) return false;
    }
  }

 private:
  bool step(std::vector<int>& q, std::size_t& i, std::uint32_t own, std::uint32_t other, int skip) {
    if (i == q.size()) return false;
    const int v = q[i++];
    for (int f : g_.incident(v)) {
      if (f == skip || used_[f]) continue;
      const int w = g_.other_end(f, v);
      if (mark_[w] == other) return true;
      if (mark_[w] != own) {
        mark_[w] = own;
        q.push_back(w);
      }
    }
    return false;
  }

  const SkeletonGraph& g_;
  const std::vector<char>& used_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

Tour greedy_min_turn_tour(const SkeletonGraph& g) {
  require_eulerian(g);
  if (g.num_edges() == 0) return {};
  std::vector<char> used(g.num_edges(), 0);
  BridgeOracle oracle(g, used);

  std::vector<Traversal> steps;
  steps.reserve(g.num_edges());
  int v = g.edge(0)[0];
  // Turns are compared on a 1e-12 grid so that equal angles computed along
  // different directions tie exactly.
  std::vector<std::pair<double, int>> candidates;
  while (steps.size() < g.num_edges()) {
    candidates.clear();
    for (int e : g.incident(v)) {
      if (used[e]) continue;
      const Traversal t{e, v, g.other_end(e, v)};
      const double cost = steps.empty() ? 0.0 : turn(g, steps.back(), t);
      candidates.emplace_back(std::round(cost * 1e12), e);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const auto& x, const auto& y) { return x.second == y.second; }),
                     candidates.end());
    int chosen = candidates.front().second;
    if (candidates.size() > 1) {
      for (const auto& [cost, e] : candidates) {
        if (!oracle.is_bridge(e)) {
          chosen = e;
          break;
        }
      }
    }
    const int w = g.other_end(chosen, v);
    used[chosen] = 1;
    steps.push_back({chosen, v, w});
    v = w;
  }
  return finish(g, std::move(steps));
}

}  // namespace euler
