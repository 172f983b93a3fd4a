#include "euler/complex.hpp"
#include "euler/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_map>

namespace euler {

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

std::string cell_label(std::size_t c) { return "cell " + std::to_string(c); }

// Direction in which face f traverses edge e: +1 along (lo, hi), -1 against.
int traversal(const Face3& f, EdgeId e, const std::array<VertexId, 2>& ends) {
  const std::size_t n = f.cycle.size();
  for (std::size_t i = 0; i < n; ++i)
    if (f.edges[i] == e) return f.cycle[i] == ends[0] ? 1 : -1;
  return 0;
}

}  // namespace

double enclosed_volume(std::span<const Vec3> points, std::span<const std::vector<VertexId>> loops) {
  if (loops.empty() || loops.front().empty()) return 0.0;
  const Vec3 o = points[loops.front().front()];
  double vol = 0.0;
  for (const auto& loop : loops) {
    Vec3 m = Vec3::Zero();
    for (VertexId v : loop) m += points[v];
    m /= static_cast<double>(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vec3 a = points[loop[i]] - o, b = points[loop[(i + 1) % loop.size()]] - o;
      vol += (m - o).dot(a.cross(b));
    }
  }
  return vol / 6.0;
}

EdgeId Complex3::find_edge(VertexId a, VertexId b) const {
  for (EdgeId e : vertex_edges_[a])
    if (other_end(e, a) == b) return e;
  return kInvalidId;
}

bool Complex3::face_has_edge(FaceId f, EdgeId e) const {
  const auto& es = faces_[f].edges;
  return std::find(es.begin(), es.end(), e) != es.end();
}

bool Complex3::face_has_vertex(FaceId f, VertexId v) const {
  const auto& cy = faces_[f].cycle;
  return std::find(cy.begin(), cy.end(), v) != cy.end();
}

int Complex3::degree_in_cell(CellId c, VertexId v) const {
  int d = 0;
  for (EdgeId e : cell_edges_[c])
    if (edges_[e][0] == v || edges_[e][1] == v) ++d;
  return d;
}

std::vector<Vec3> Complex3::face_points(FaceId f) const {
  std::vector<Vec3> out;
  for (VertexId v : faces_[f].cycle) out.push_back(points_[v]);
  return out;
}

std::vector<VertexId> Complex3::oriented_cycle(CellId c, std::size_t local_face) const {
  std::vector<VertexId> cy = faces_[cells_[c].faces[local_face]].cycle;
  if (cells_[c].orientation[local_face] < 0) std::reverse(cy.begin(), cy.end());
  return cy;
}

Vec3 Complex3::outward_normal(CellId c, std::size_t local_face) const {
  std::vector<Vec3> pts;
  for (VertexId v : oriented_cycle(c, local_face)) pts.push_back(points_[v]);
  return newell_normal(pts).normalized();
}

double Complex3::cell_volume(CellId c) const {
  std::vector<std::vector<VertexId>> loops;
  for (std::size_t i = 0; i < cells_[c].faces.size(); ++i) loops.push_back(oriented_cycle(c, i));
  return enclosed_volume(points_, loops);
}

double Complex3::scale() const {
  if (points_.empty()) return 0.0;
  Vec3 lo = points_[0], hi = points_[0];
  for (const Vec3& p : points_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

std::vector<FaceId> Complex3::cell_faces_around(CellId c, VertexId v) const {
  const Cell3& cell = cells_[c];
  std::vector<std::size_t> local;
  for (std::size_t i = 0; i < cell.faces.size(); ++i)
    if (face_has_vertex(cell.faces[i], v)) local.push_back(i);
  std::vector<FaceId> out;
  if (local.empty()) return out;
  // Leaving edge at v in the oriented loop of each face.
  auto leaving = [&](std::size_t i) {
    const auto cy = oriented_cycle(c, i);
    const std::size_t n = cy.size();
    for (std::size_t j = 0; j < n; ++j)
      if (cy[j] == v) return find_edge(v, cy[(j + 1) % n]);
    return kInvalidId;
  };
  auto arriving = [&](std::size_t i) {
    const auto cy = oriented_cycle(c, i);
    const std::size_t n = cy.size();
    for (std::size_t j = 0; j < n; ++j)
      if (cy[j] == v) return find_edge(cy[(j + n - 1) % n], v);
    return kInvalidId;
  };
  std::vector<bool> used(local.size(), false);
  std::size_t cur = 0;
  for (std::size_t step = 0; step < local.size(); ++step) {
    used[cur] = true;
    out.push_back(cell.faces[local[cur]]);
    const EdgeId e = leaving(local[cur]);
    std::size_t next = local.size();
    for (std::size_t j = 0; j < local.size(); ++j)
      if (!used[j] && arriving(local[j]) == e) {
        next = j;
        break;
      }
    if (next == local.size()) break;
    cur = next;
  }
  return out;
}

Complex3 build_complex_3d(std::vector<Vec3> points, std::vector<std::vector<VertexId>> faces,
                          std::vector<std::vector<FaceId>> cells, std::vector<std::vector<FaceId>> hole_cells,
                          std::vector<FaceId> outside_cell) {
  Complex3 k;
  for (const Vec3& p : points)
    if (!p.allFinite()) fail("non-finite vertex coordinate");
  k.points_ = std::move(points);
  const std::size_t npts = k.points_.size();
  if (cells.empty()) fail("complex has no cells");

  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& cy = faces[f];
    const std::string label = "face " + std::to_string(f);
    if (cy.size() < 3) fail("open cycle: " + label + " has fewer than 3 vertices");
    for (VertexId v : cy)
      if (v < 0 || static_cast<std::size_t>(v) >= npts) fail(label + " references a missing vertex");
    auto s = cy;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail("non-simple polygon: " + label + " repeats a vertex");
  }
  {
    std::vector<std::pair<std::vector<VertexId>, std::size_t>> keys;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      auto s = faces[f];
      std::sort(s.begin(), s.end());
      keys.emplace_back(std::move(s), f);
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 1; i < keys.size(); ++i)
      if (keys[i].first == keys[i - 1].first)
        fail("duplicate face: face " + std::to_string(keys[i - 1].second) + " and face " +
             std::to_string(keys[i].second));
  }

  std::unordered_map<std::uint64_t, EdgeId> edge_ids;
  k.vertex_edges_.assign(npts, {});
  for (auto& cy : faces) {
    Face3 rec;
    rec.cycle = std::move(cy);
    const std::size_t n = rec.cycle.size();
    rec.edges.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const VertexId a = rec.cycle[i], b = rec.cycle[(i + 1) % n];
      auto [it, fresh] = edge_ids.emplace(edge_key(a, b), static_cast<EdgeId>(k.edges_.size()));
      if (fresh) {
        k.edges_.push_back({std::min(a, b), std::max(a, b)});
        k.vertex_edges_[a].push_back(it->second);
        k.vertex_edges_[b].push_back(it->second);
      }
      rec.edges[i] = it->second;
    }
    k.faces_.push_back(std::move(rec));
  }
  const std::size_t nf = k.faces_.size();
  const std::size_t ne = k.edges_.size();

  // Closed, connected, orientable genus-0 boundary for every bounded cell.
  auto add_bounded_cell = [&](std::vector<FaceId> fs, CellKind kind, const std::string& label) {
    std::sort(fs.begin(), fs.end());
    if (std::adjacent_find(fs.begin(), fs.end()) != fs.end()) fail(label + " lists a face twice");
    for (FaceId f : fs)
      if (f < 0 || static_cast<std::size_t>(f) >= nf) fail(label + " references a missing face");
    std::unordered_map<EdgeId, std::vector<std::size_t>> uses;
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (EdgeId e : k.faces_[fs[i]].edges) uses[e].push_back(i);
    for (const auto& [e, u] : uses)
      if (u.size() != 2) fail("non-closed cell boundary: " + label + " at edge " + std::to_string(e));
    std::vector<std::int8_t> orient(fs.size(), 0);
    std::deque<std::size_t> queue{0};
    orient[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (EdgeId e : k.faces_[fs[i]].edges) {
        const auto& u = uses[e];
        const std::size_t j = u[0] == i ? u[1] : u[0];
        const int want = -orient[i] * traversal(k.faces_[fs[i]], e, k.edges_[e]) *
                         traversal(k.faces_[fs[j]], e, k.edges_[e]);
        if (orient[j] == 0) {
          orient[j] = static_cast<std::int8_t>(want);
          ++reached;
          queue.push_back(j);
        } else if (orient[j] != want) {
          fail("non-orientable cell boundary: " + label);
        }
      }
    }
    if (reached != fs.size()) fail("non-closed cell boundary: " + label + " is not connected");
    std::vector<VertexId> verts;
    for (FaceId f : fs) verts.insert(verts.end(), k.faces_[f].cycle.begin(), k.faces_[f].cycle.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const long chi = static_cast<long>(verts.size()) - static_cast<long>(uses.size()) + static_cast<long>(fs.size());
    if (chi != 2) fail("cell boundary is not a sphere: " + label);
    Cell3 cell;
    cell.faces = std::move(fs);
    cell.orientation = std::move(orient);
    cell.kind = kind;
    const CellId id = static_cast<CellId>(k.cells_.size());
    k.cells_.push_back(std::move(cell));
    const double vol = k.cell_volume(id);
    const double s = k.scale();
    if (std::abs(vol) <= 1e-12 * s * s * s) fail("degenerate cell: " + label + " has zero volume");
    if (vol < 0)
      for (auto& o : k.cells_[id].orientation) o = static_cast<std::int8_t>(-o);
    (kind == CellKind::Hole ? k.holes_ : k.interior_).push_back(id);
  };
  for (std::size_t c = 0; c < cells.size(); ++c) add_bounded_cell(std::move(cells[c]), CellKind::Interior, cell_label(c));
  for (std::size_t c = 0; c < hole_cells.size(); ++c)
    add_bounded_cell(std::move(hole_cells[c]), CellKind::Hole, "hole cell " + std::to_string(c));

  std::vector<int> count(nf, 0);
  k.face_cells_.assign(nf, {kInvalidId, kInvalidId});
  for (CellId c = 0; c < static_cast<CellId>(k.cells_.size()); ++c)
    for (FaceId f : k.cells_[c].faces) {
      if (count[f] == 2) fail("face in more than two cells: face " + std::to_string(f));
      k.face_cells_[f][count[f]++] = c;
    }
  if (outside_cell.empty()) {
    for (FaceId f = 0; f < static_cast<FaceId>(nf); ++f)
      if (count[f] == 1) outside_cell.push_back(f);
  } else {
    std::sort(outside_cell.begin(), outside_cell.end());
    outside_cell.erase(std::unique(outside_cell.begin(), outside_cell.end()), outside_cell.end());
  }
  if (outside_cell.empty()) fail("complex has no boundary");
  {
    Cell3 out;
    out.kind = CellKind::Outside;
    k.outside_ = static_cast<CellId>(k.cells_.size());
    for (FaceId f : outside_cell) {
      if (f < 0 || static_cast<std::size_t>(f) >= nf) fail("outside cell references a missing face");
      if (count[f] == 2) fail("face in more than two cells: face " + std::to_string(f));
      if (count[f] == 0) fail("dangling face: face " + std::to_string(f));
      const CellId nb = k.face_cells_[f][0];
      const auto& nbc = k.cells_[nb];
      const auto pos = std::find(nbc.faces.begin(), nbc.faces.end(), f) - nbc.faces.begin();
      out.faces.push_back(f);
      out.orientation.push_back(static_cast<std::int8_t>(-nbc.orientation[pos]));
      k.face_cells_[f][count[f]++] = k.outside_;
    }
    k.cells_.push_back(std::move(out));
  }
  for (FaceId f = 0; f < static_cast<FaceId>(nf); ++f) {
    if (count[f] == 0) fail("dangling face: face " + std::to_string(f));
    if (count[f] == 1) fail("face in fewer than two cells: face " + std::to_string(f));
  }

  // Incidence tables.
  const std::size_t nc = k.cells_.size();
  k.edge_faces_.assign(ne, {});
  for (FaceId f = 0; f < static_cast<FaceId>(nf); ++f)
    for (EdgeId e : k.faces_[f].edges) k.edge_faces_[e].push_back(f);
  k.cell_vertices_.assign(nc, {});
  k.cell_edges_.assign(nc, {});
  k.vertex_cells_.assign(npts, {});
  for (CellId c = 0; c < static_cast<CellId>(nc); ++c) {
    auto& cv = k.cell_vertices_[c];
    auto& ce = k.cell_edges_[c];
    for (FaceId f : k.cells_[c].faces) {
      cv.insert(cv.end(), k.faces_[f].cycle.begin(), k.faces_[f].cycle.end());
      ce.insert(ce.end(), k.faces_[f].edges.begin(), k.faces_[f].edges.end());
    }
    std::sort(cv.begin(), cv.end());
    cv.erase(std::unique(cv.begin(), cv.end()), cv.end());
    std::sort(ce.begin(), ce.end());
    ce.erase(std::unique(ce.begin(), ce.end()), ce.end());
    for (VertexId v : cv) k.vertex_cells_[v].push_back(c);
  }

  // Walk around each edge, alternating between faces and the cells they separate.
  k.edge_stars_.assign(ne, {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(ne); ++e) {
    const auto& fs = k.edge_faces_[e];
    std::vector<bool> used(fs.size(), false);
    auto& star = k.edge_stars_[e];
    for (std::size_t s = 0; s < fs.size(); ++s) {
      if (used[s]) continue;
      std::size_t cur = s;
      CellId cell = k.face_cells_[fs[s]][1];
      while (!used[cur]) {
        used[cur] = true;
        cell = k.other_cell(fs[cur], cell);
        star.push_back({cell, fs[cur]});
        std::size_t next = fs.size();
        for (std::size_t j = 0; j < fs.size(); ++j)
          if (!used[j] && (k.face_cells_[fs[j]][0] == cell || k.face_cells_[fs[j]][1] == cell)) {
            next = j;
            break;
          }
        if (next == fs.size()) break;
        cur = next;
      }
    }
  }
  return k;
}

}  // namespace euler
