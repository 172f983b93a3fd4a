#include "euler/error.hpp"
#include "euler/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace euler {

SkeletonGraph slice_polygons(std::span<const Vec3> points, const std::vector<std::vector<VertexId>>& faces,
                             const SlicePlane& plane) {
  SkeletonGraph g;
  if (points.empty()) return g;
  Vec3 lo = points.front(), hi = points.front();
  for (const Vec3& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double tol = 1e-9 * std::max((hi - lo).norm(), 1e-300);
  std::vector<double> dist(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) dist[i] = plane.distance(points[i]);

  std::map<std::pair<VertexId, VertexId>, int> crossing;
  for (const auto& face : faces) {
    for (VertexId v : face)
      if (std::abs(dist[v]) <= tol) throw Error(ErrorCode::DegenerateSlice, "degenerate slice, perturb plane");
    std::vector<int> hits;
    for (std::size_t i = 0; i < face.size(); ++i) {
      const VertexId a = face[i], b = face[(i + 1) % face.size()];
      if ((dist[a] < 0) == (dist[b] < 0)) continue;
      const auto key = std::minmax(a, b);
      auto [it, fresh] = crossing.try_emplace({key.first, key.second}, -1);
      if (fresh) {
        const double s = dist[key.first] / (dist[key.first] - dist[key.second]);
        it->second = g.add_vertex(points[key.first] + s * (points[key.second] - points[key.first]));
      }
      hits.push_back(it->second);
    }
    if (hits.size() > 2) {
      // Nonconvex polygon: pair crossings in order along the cut line.
      std::vector<Vec3> poly;
      for (VertexId v : face) poly.push_back(points[v]);
      const Vec3 dir = plane.normal.cross(newell_normal(poly));
      std::sort(hits.begin(), hits.end(), [&](int x, int y) { return dir.dot(g.point(x)) < dir.dot(g.point(y)); });
    }
    for (std::size_t i = 0; i + 1 < hits.size(); i += 2) g.add_edge(hits[i], hits[i + 1]);
  }
  return g;
}

SkeletonGraph slice_complex(const TransformedComplex3& t, const SlicePlane& plane) {
  if (!t.include_class_3_4)
    throw Error(ErrorCode::InvalidInput, "slicing needs the Class-3 and Class-4 cells of the transformed complex");
  return slice_polygons(t.points, t.faces, plane);
}

namespace {

Vec2 xy(const Vec3& p) { return {p.x(), p.y()}; }

std::vector<const std::vector<Vec2>*> loops_of(const LayerDomain& d) {
  std::vector<const std::vector<Vec2>*> out{&d.outer};
  for (const auto& h : d.holes) out.push_back(&h);
  return out;
}

double domain_scale(const LayerDomain& d) {
  return std::max(diameter(std::span<const Vec2>(d.outer)), 1e-300);
}

bool inside(const LayerDomain& d, const Vec2& p, double eps) {
  if (classify_point(p, d.outer, eps) < 0) return false;
  for (const auto& h : d.holes)
    if (classify_point(p, h, eps) > 0) return false;
  return true;
}

// Parameters in (0, 1) where segment ab properly crosses segment cd.
void crossings(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, std::vector<double>& out) {
  const Vec2 r = b - a, s = d - c;
  const double den = cross2(r, s);
  if (den == 0.0) return;
  const double t = cross2(c - a, s) / den;
  const double u = cross2(c - a, r) / den;
  if (t > 0.0 && t < 1.0 && u >= 0.0 && u <= 1.0) out.push_back(t);
}

}  // namespace

SkeletonGraph trim_to_domain(const SkeletonGraph& base, const LayerDomain& domain, std::size_t* clipped,
                             double* shortest_stub) {
  const double eps = 1e-9 * domain_scale(domain);
  SkeletonGraph out;
  std::vector<int> mapped(base.num_vertices(), -1);
  auto original = [&](int v) {
    if (mapped[v] < 0) mapped[v] = out.add_vertex(base.point(v));
    return mapped[v];
  };
  std::size_t n_clipped = 0;
  double stub = std::numeric_limits<double>::infinity();
  std::vector<double> ts;
  for (int e = 0; e < static_cast<int>(base.num_edges()); ++e) {
    const int va = base.edge(e)[0], vb = base.edge(e)[1];
    const Vec2 a = xy(base.point(va)), b = xy(base.point(vb));
    ts.assign({0.0, 1.0});
    for (const auto* loop : loops_of(domain))
      for (std::size_t i = 0; i < loop->size(); ++i) crossings(a, b, (*loop)[i], (*loop)[(i + 1) % loop->size()], ts);
    std::sort(ts.begin(), ts.end());
    // Merge kept intervals into maximal pieces.
    double start = -1.0;
    auto emit = [&](double t0, double t1) {
      const int u = t0 == 0.0 ? original(va) : out.add_vertex(base.point(va) + t0 * (base.point(vb) - base.point(va)));
      const int w = t1 == 1.0 ? original(vb) : out.add_vertex(base.point(va) + t1 * (base.point(vb) - base.point(va)));
      out.add_edge(u, w);
      if (t0 != 0.0 || t1 != 1.0) {
        ++n_clipped;
        stub = std::min(stub, (t1 - t0) * (b - a).norm());
      }
    };
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double m = 0.5 * (ts[i] + ts[i + 1]);
      const bool keep = ts[i + 1] > ts[i] && inside(domain, a + m * (b - a), eps);
      if (keep && start < 0) start = ts[i];
      if (!keep && start >= 0 && ts[i + 1] > ts[i]) {
        emit(start, ts[i]);
        start = -1.0;
      }
    }
    if (start >= 0) emit(start, 1.0);
  }
  if (clipped) *clipped = n_clipped;
  if (shortest_stub) *shortest_stub = n_clipped ? stub : 0.0;
  return out;
}

namespace {

struct LoopPoint {
  int vertex;
  double s;  // arc length from the first loop corner
};

struct LoopFrame {
  const std::vector<Vec2>* loop;
  std::vector<double> arc;  // arc length at each corner; back() is the perimeter
};

LoopFrame frame_of(const std::vector<Vec2>& loop) {
  LoopFrame f{&loop, {0.0}};
  for (std::size_t i = 0; i < loop.size(); ++i) f.arc.push_back(f.arc.back() + (loop[(i + 1) % loop.size()] - loop[i]).norm());
  return f;
}

// Arc position of p on the loop, or a negative value when farther than eps.
double locate(const LoopFrame& f, const Vec2& p, double eps) {
  const auto& l = *f.loop;
  double best = std::numeric_limits<double>::infinity(), s = -1.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    const Vec2 a = l[i], b = l[(i + 1) % l.size()];
    const double d = point_segment_distance(p, a, b);
    if (d <= eps && d < best) {
      best = d;
      const double len = (b - a).norm();
      const double t = len > 0 ? std::clamp((p - a).dot(b - a) / (len * len), 0.0, 1.0) : 0.0;
      s = f.arc[i] + t * len;
    }
  }
  return s;
}

}  // namespace

SkeletonGraph repair_odd_degrees(const SkeletonGraph& g, const std::vector<std::vector<Vec2>>& loops,
                                 std::vector<int>* repair_edges) {
  SkeletonGraph out = g;
  if (repair_edges) repair_edges->clear();
  const auto odd = g.odd_vertices();
  if (odd.empty()) return out;
  double scale = 0.0;
  for (const auto& l : loops) scale = std::max(scale, diameter(std::span<const Vec2>(l)));
  const double eps = 1e-9 * std::max(scale, 1e-300);

  std::vector<LoopFrame> frames;
  for (const auto& l : loops) frames.push_back(frame_of(l));
  std::vector<std::vector<LoopPoint>> on(loops.size());
  for (int v : odd) {
    bool found = false;
    for (std::size_t i = 0; i < frames.size() && !found; ++i) {
      const double s = locate(frames[i], xy(g.point(v)), eps);
      if (s >= 0) {
        on[i].push_back({v, s});
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::InteriorParityDefect, "interior parity defect: odd vertex off the perimeter");
  }

  for (std::size_t li = 0; li < loops.size(); ++li) {
    auto& pts = on[li];
    if (pts.empty()) continue;
    if (pts.size() % 2) throw Error(ErrorCode::InteriorParityDefect, "interior parity defect: odd count on a boundary loop");
    std::sort(pts.begin(), pts.end(), [](const LoopPoint& a, const LoopPoint& b) {
      return a.s != b.s ? a.s < b.s : a.vertex < b.vertex;
    });
    const LoopFrame& f = frames[li];
    const double total = f.arc.back();
    const std::size_t n = pts.size();
    auto gap = [&](std::size_t i) {
      const double d = pts[(i + 1) % n].s - pts[i].s;
      return i + 1 < n ? d : d + total;
    };
    double even = 0.0, odd_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) (i % 2 ? odd_sum : even) += gap(i);
    const std::size_t first = odd_sum < even ? 1 : 0;
    const auto& l = *f.loop;
    const double z = g.point(pts.front().vertex).z();
    for (std::size_t i = first; i < n; i += 2) {
      const double s0 = pts[i].s;
      const double s1 = s0 + gap(i);
      int prev = pts[i].vertex;
      // Loop corners strictly between s0 and s1, walking forward and wrapping once.
      for (int lap = 0; lap < 2; ++lap) {
        for (std::size_t c = 0; c < l.size(); ++c) {
          const double sc = f.arc[c] + lap * total;
          if (sc <= s0 || sc >= s1) continue;
          const int corner = out.add_vertex(Vec3(l[c].x(), l[c].y(), z));
          const int e = out.add_edge(prev, corner);
          if (repair_edges) repair_edges->push_back(e);
          prev = corner;
        }
      }
      const int e = out.add_edge(prev, pts[(i + 1) % n].vertex);
      if (repair_edges) repair_edges->push_back(e);
    }
  }
  return out;
}

LayerPlan build_layers(const TransformedComplex2& base, const std::vector<LayerDomain>& domains, double layer_height) {
  if (!(layer_height > 0)) throw Error(ErrorCode::InvalidInput, "layer height must be positive");
  const SkeletonGraph skeleton = skeleton_graph(base.complex);
  LayerPlan plan;
  plan.layer_height = layer_height;
  plan.layers.resize(domains.size());
  for (std::size_t i = 0; i < domains.size(); ++i) {
    Layer& layer = plan.layers[i];
    layer.z = static_cast<double>(i) * layer_height;
    SkeletonGraph trimmed = trim_to_domain(skeleton, domains[i], &layer.clipped_edges, &layer.shortest_stub);
    layer.odd_before_repair = trimmed.odd_vertices().size();
    std::vector<std::vector<Vec2>> loops{domains[i].outer};
    loops.insert(loops.end(), domains[i].holes.begin(), domains[i].holes.end());
    layer.graph = repair_odd_degrees(trimmed, loops, &layer.repair_edges);
    std::vector<std::vector<int>> vmap, emap;
    const auto parts = layer.graph.edge_components(&vmap, &emap);
    for (std::size_t c = 0; c < parts.size(); ++c) {
      Tour t = greedy_min_turn_tour(parts[c]);
      for (auto& s : t.steps) {
        s.edge = emap[c][s.edge];
        s.from = vmap[c][s.from];
        s.to = vmap[c][s.to];
      }
      t.start = t.steps.front().from;
      layer.tours.push_back(std::move(t));
    }
  }
  return plan;
}

std::vector<LayerDomain> shrinking_square_domains(const Vec2& center, double base_side, double top_side, int count) {
  if (count <= 0 || !(base_side > 0) || !(top_side > 0))
    throw Error(ErrorCode::InvalidInput, "layer count and square sides must be positive");
  std::vector<LayerDomain> out;
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    const double h = 0.5 * (base_side + f * (top_side - base_side));
    out.push_back({{center + Vec2(-h, -h), center + Vec2(h, -h), center + Vec2(h, h), center + Vec2(-h, h)}, {}});
  }
  return out;
}

std::vector<ToolpathLayer> toolpath_from_plan(const LayerPlan& plan) {
  std::vector<ToolpathLayer> out;
  for (const Layer& layer : plan.layers) {
    ToolpathLayer tl{layer.z, {}};
    for (const Tour& t : layer.tours) {
      tl.moves.push_back({false, xy(layer.graph.point(t.start))});
      for (const auto& s : t.steps) tl.moves.push_back({true, xy(layer.graph.point(s.to))});
    }
    out.push_back(std::move(tl));
  }
  return out;
}

std::string write_toolpath(const std::vector<ToolpathLayer>& layers) {
  std::string out;
  char line[128];
  for (const auto& l : layers) {
    std::snprintf(line, sizeof line, "LAYER z=%.17g\n", l.z);
    out += line;
    for (const auto& m : l.moves) {
      std::snprintf(line, sizeof line, "%s %.17g %.17g\n", m.draw ? "DRAW" : "MOVE", m.to.x(), m.to.y());
      out += line;
    }
  }
  return out;
}

std::vector<ToolpathLayer> parse_toolpath(const std::string& text) {
  std::vector<ToolpathLayer> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  auto fail = [&](const char* what) {
    throw Error(ErrorCode::InvalidInput, "toolpath line " + std::to_string(number) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "LAYER") {
      std::string z;
      ls >> z;
      if (z.rfind("z=", 0) != 0) fail("expected z=<height>");
      try {
        out.push_back({std::stod(z.substr(2)), {}});
      } catch (const std::exception&) {
        fail("bad layer height");
      }
    } else if (word == "MOVE" || word == "DRAW") {
      if (out.empty()) fail("move before the first LAYER");
      double x = 0, y = 0;
      if (!(ls >> x >> y)) fail("expected two coordinates");
      out.back().moves.push_back({word == "DRAW", Vec2(x, y)});
    } else {
      fail("unknown command");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  return out;
}

}  // namespace euler
