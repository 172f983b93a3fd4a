#include "euler/complex.hpp"
#include "euler/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace euler {

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

std::uint64_t pair_key(std::int32_t a, std::int32_t b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

std::string face_label(std::size_t f) { return "face " + std::to_string(f); }

void check_cycle(const std::vector<VertexId>& cycle, std::size_t npts, const std::string& label) {
  if (cycle.size() < 3) fail("open cycle: " + label + " has fewer than 3 vertices");
  for (VertexId v : cycle)
    if (v < 0 || static_cast<std::size_t>(v) >= npts) fail(label + " references a missing vertex");
  std::vector<VertexId> sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail("non-simple polygon: " + label + " repeats a vertex");
}

std::vector<Vec2> gather(const std::vector<Vec2>& pts, const std::vector<VertexId>& cycle) {
  std::vector<Vec2> out;
  out.reserve(cycle.size());
  for (VertexId v : cycle) out.push_back(pts[v]);
  return out;
}

}  // namespace

EdgeId Complex2::find_edge(VertexId a, VertexId b) const {
  for (EdgeId e : vertex_edges_[a])
    if (other_end(e, a) == b) return e;
  return kInvalidId;
}

std::vector<Vec2> Complex2::face_points(FaceId f) const { return gather(points_, faces_[f].cycle); }

double Complex2::scale() const {
  if (points_.empty()) return 0.0;
  Vec2 lo = points_[0], hi = points_[0];
  for (const Vec2& p : points_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

Complex2 build_complex_2d(std::vector<Vec2> points, std::vector<std::vector<VertexId>> faces,
                          std::vector<std::vector<VertexId>> holes, std::vector<VertexId> outside_cycle) {
  Complex2 k;
  for (const Vec2& p : points)
    if (!p.allFinite()) fail("non-finite vertex coordinate");
  k.points_ = std::move(points);
  const std::size_t npts = k.points_.size();
  if (faces.empty()) fail("complex has no faces");

  // Face records: interior first, then holes.
  for (std::size_t i = 0; i < faces.size() + holes.size(); ++i) {
    const bool hole = i >= faces.size();
    std::vector<VertexId> cycle = hole ? std::move(holes[i - faces.size()]) : std::move(faces[i]);
    const std::string label = hole ? "hole " + std::to_string(i - faces.size()) : face_label(i);
    check_cycle(cycle, npts, label);
    const auto poly = gather(k.points_, cycle);
    if (!is_simple(poly)) fail("non-simple polygon: " + label);
    const double area = signed_area(poly);
    if (std::abs(area) <= 1e-18 * std::max(1.0, perimeter(poly) * perimeter(poly)))
      fail("degenerate polygon: " + label + " has zero area");
    if (area < 0) std::reverse(cycle.begin(), cycle.end());
    Face2 rec;
    rec.cycle = std::move(cycle);
    rec.kind = hole ? CellKind::Hole : CellKind::Interior;
    (hole ? k.holes_ : k.interior_).push_back(static_cast<FaceId>(k.faces_.size()));
    k.faces_.push_back(std::move(rec));
  }

  {
    std::vector<std::pair<std::vector<VertexId>, std::size_t>> keys;
    for (std::size_t f = 0; f < k.faces_.size(); ++f) {
      auto s = k.faces_[f].cycle;
      std::sort(s.begin(), s.end());
      keys.emplace_back(std::move(s), f);
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 1; i < keys.size(); ++i)
      if (keys[i].first == keys[i - 1].first)
        fail("duplicate face: " + face_label(keys[i - 1].second) + " and " + face_label(keys[i].second));
  }

  // Edge deduplication.
  std::unordered_map<std::uint64_t, EdgeId> edge_ids;
  k.vertex_edges_.assign(npts, {});
  for (Face2& f : k.faces_) {
    const std::size_t n = f.cycle.size();
    f.edges.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const VertexId a = f.cycle[i], b = f.cycle[(i + 1) % n];
      auto [it, fresh] = edge_ids.emplace(edge_key(a, b), static_cast<EdgeId>(k.edges_.size()));
      if (fresh) {
        k.edges_.push_back({std::min(a, b), std::max(a, b)});
        k.vertex_edges_[a].push_back(it->second);
        k.vertex_edges_[b].push_back(it->second);
      }
      f.edges[i] = it->second;
    }
  }

  // Faces meeting at a vertex must share exactly that vertex or one common edge.
  {
    std::vector<std::vector<FaceId>> vf(npts);
    for (FaceId f = 0; f < static_cast<FaceId>(k.faces_.size()); ++f)
      for (VertexId v : k.faces_[f].cycle) vf[v].push_back(f);
    std::vector<int> mark(k.faces_.size(), -1);
    for (FaceId f = 0; f < static_cast<FaceId>(k.faces_.size()); ++f) {
      std::vector<FaceId> seen;
      for (VertexId v : k.faces_[f].cycle)
        for (FaceId g : vf[v])
          if (g > f && mark[g] != f) {
            mark[g] = f;
            seen.push_back(g);
          }
      for (FaceId g : seen) {
        std::vector<VertexId> a = k.faces_[f].cycle, b = k.faces_[g].cycle, shared;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
        if (shared.size() == 1) continue;
        if (shared.size() == 2) {
          const auto it = edge_ids.find(edge_key(shared[0], shared[1]));
          if (it != edge_ids.end()) {
            const auto& ef = k.faces_[f].edges;
            const auto& eg = k.faces_[g].edges;
            if (std::find(ef.begin(), ef.end(), it->second) != ef.end() &&
                std::find(eg.begin(), eg.end(), it->second) != eg.end())
              continue;
          }
        }
        fail("non-face intersection between " + face_label(f) + " and " + face_label(g));
      }
    }
  }

  // Edge-face incidence; interior edges must be traversed in opposite directions.
  const std::size_t ne = k.edges_.size();
  k.edge_faces_.assign(ne, {kInvalidId, kInvalidId});
  std::vector<int> cover(ne, 0);
  std::vector<VertexId> tail(ne, kInvalidId);
  for (FaceId f = 0; f < static_cast<FaceId>(k.faces_.size()); ++f) {
    const Face2& rec = k.faces_[f];
    for (std::size_t i = 0; i < rec.cycle.size(); ++i) {
      const EdgeId e = rec.edges[i];
      if (cover[e] == 2) fail("edge shared by more than two faces: edge " + std::to_string(e));
      if (cover[e] == 1 && tail[e] == rec.cycle[i])
        fail("overlapping faces along edge " + std::to_string(e));
      tail[e] = rec.cycle[i];
      k.edge_faces_[e][cover[e]++] = f;
    }
  }

  // Angular rotation at each vertex; sectors not owned by a face are outside.
  const FaceId outside = static_cast<FaceId>(k.faces_.size());
  std::unordered_map<std::uint64_t, std::pair<FaceId, EdgeId>> corner;  // (v, next edge) -> (face, prev edge)
  for (FaceId f = 0; f < outside; ++f) {
    const Face2& rec = k.faces_[f];
    const std::size_t n = rec.cycle.size();
    for (std::size_t i = 0; i < n; ++i)
      corner[pair_key(rec.cycle[i], rec.edges[i])] = {f, rec.edges[(i + n - 1) % n]};
  }
  k.wedges_.assign(npts, {});
  std::unordered_map<std::uint64_t, EdgeId> outside_next;  // (v, arriving edge) -> leaving edge
  for (VertexId v = 0; v < static_cast<VertexId>(npts); ++v) {
    auto& inc = k.vertex_edges_[v];
    if (inc.empty()) continue;
    auto dir = [&](EdgeId e) -> Vec2 { return k.points_[k.other_end(e, v)] - k.points_[v]; };
    std::sort(inc.begin(), inc.end(), [&](EdgeId a, EdgeId b) {
      const Vec2 da = dir(a), db = dir(b);
      const double ta = std::atan2(da.y(), da.x()), tb = std::atan2(db.y(), db.x());
      return ta != tb ? ta < tb : a < b;
    });
    const std::size_t m = inc.size();
    for (std::size_t i = 0; i < m; ++i) {
      const EdgeId a = inc[i], b = inc[(i + 1) % m];
      if (m > 1) {
        const Vec2 da = dir(a).normalized(), db = dir(b).normalized();
        if (std::abs(cross2(da, db)) < 1e-12 && da.dot(db) > 0)
          fail("overlapping edges at vertex " + std::to_string(v));
      }
      Wedge w{kInvalidId, a, b};
      const auto it = corner.find(pair_key(v, a));
      if (it != corner.end()) {
        if (it->second.second != b) fail("overlapping faces around vertex " + std::to_string(v));
        w.face = it->second.first;
      } else {
        w.face = outside;
        outside_next[pair_key(v, b)] = a;
      }
      k.wedges_[v].push_back(w);
    }
  }

  // Trace the boundary walks of the outside region.
  std::vector<std::vector<VertexId>> loops;
  std::vector<std::vector<EdgeId>> loop_edges;
  {
    std::vector<std::uint64_t> starts;
    for (const auto& kv : outside_next) starts.push_back(kv.first);
    std::sort(starts.begin(), starts.end());
    std::unordered_map<std::uint64_t, bool> used;
    for (std::uint64_t s : starts) {
      if (used[s]) continue;
      std::vector<VertexId> cyc;
      std::vector<EdgeId> es;
      std::uint64_t key = s;
      while (!used[key]) {
        used[key] = true;
        const VertexId v = static_cast<VertexId>(key >> 32);
        const EdgeId leave = outside_next.at(key);
        cyc.push_back(v);
        es.push_back(leave);
        key = pair_key(k.other_end(leave, v), leave);
      }
      if (key != s) fail("inconsistent boundary walk at vertex " + std::to_string(static_cast<VertexId>(key >> 32)));
      loops.push_back(std::move(cyc));
      loop_edges.push_back(std::move(es));
    }
  }
  // The outside lies to the left of each walk, so outer boundaries wind clockwise.
  double outer_area = 0.0;
  std::size_t main_loop = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const double a = signed_area(gather(k.points_, loops[i]));
    if (a > 0) fail("outside boundary has an inner component; declare it as a hole");
    outer_area -= a;
    if (-a > best) {
      best = -a;
      main_loop = i;
    }
  }
  if (loops.empty()) fail("complex has no boundary");

  Face2 out;
  out.kind = CellKind::Outside;
  out.cycle = loops[main_loop];
  out.edges = loop_edges[main_loop];
  k.faces_.push_back(std::move(out));
  k.outside_ = outside;
  for (const auto& es : loop_edges)
    for (EdgeId e : es) k.edge_faces_[e][cover[e]++] = outside;

  if (!outside_cycle.empty()) {
    std::vector<std::uint64_t> given, derived;
    for (std::size_t i = 0; i < outside_cycle.size(); ++i) {
      const VertexId a = outside_cycle[i], b = outside_cycle[(i + 1) % outside_cycle.size()];
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= npts || static_cast<std::size_t>(b) >= npts)
        fail("outside cycle references a missing vertex");
      given.push_back(edge_key(a, b));
    }
    for (const auto& es : loop_edges)
      for (EdgeId e : es) derived.push_back(edge_key(k.edges_[e][0], k.edges_[e][1]));
    std::sort(given.begin(), given.end());
    std::sort(derived.begin(), derived.end());
    if (given != derived) fail("outside cycle does not match the boundary of the faces and holes");
  }

  // Faces and holes must tile the region enclosed by the outer boundary.
  double tiled = 0.0;
  for (FaceId f = 0; f < outside; ++f) tiled += signed_area(k.face_points(f));
  if (std::abs(tiled - outer_area) > 1e-9 * std::max(outer_area, 1e-300))
    fail("overlapping faces: face areas do not sum to the enclosed area");

  k.vertex_faces_.assign(npts, {});
  for (VertexId v = 0; v < static_cast<VertexId>(npts); ++v) {
    for (const Wedge& w : k.wedges_[v]) k.vertex_faces_[v].push_back(w.face);
    auto& vf = k.vertex_faces_[v];
    std::sort(vf.begin(), vf.end());
    vf.erase(std::unique(vf.begin(), vf.end()), vf.end());
  }
  return k;
}

}  // namespace euler
