#include "euler/transform3d.hpp"
#include "euler/error.hpp"
#include "euler/offset.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

namespace euler {

namespace {

std::string rules_of(const ValidationReport& r) {
  std::string s;
  for (const auto& v : r.violations) {
    const std::string id = "(" + std::to_string(static_cast<int>(v.rule)) + ")";
    if (s.find(id) == std::string::npos) s += (s.empty() ? "" : ", ") + id;
  }
  return s;
}

class Assembler {
public:
  explicit Assembler(TransformedComplex3& t) : t_(t) {}

  FaceId face(std::vector<VertexId> cycle) {
    auto key = cycle;
    std::sort(key.begin(), key.end());
    auto [it, fresh] = ids_.emplace(std::move(key), static_cast<FaceId>(t_.faces.size()));
    if (fresh) t_.faces.push_back(std::move(cycle));
    return it->second;
  }

  void cell(std::vector<FaceId> facets, CellClass cls, std::int32_t gen) {
    t_.cells.push_back(std::move(facets));
    t_.cell_class.push_back(cls);
    t_.generator.push_back(gen);
  }

private:
  TransformedComplex3& t_;
  std::map<std::vector<VertexId>, FaceId> ids_;
};

bool distinct(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

std::vector<std::array<VertexId, 2>> TransformedComplex3::edges() const {
  std::vector<std::array<VertexId, 2>> out;
  for (const auto& f : faces)
    for (std::size_t i = 0; i < f.size(); ++i) {
      const VertexId a = f[i], b = f[(i + 1) % f.size()];
      out.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> TransformedComplex3::degrees() const {
  std::vector<int> deg(points.size(), 0);
  for (const auto& e : edges()) {
    ++deg[e[0]];
    ++deg[e[1]];
  }
  return deg;
}

bool TransformedComplex3::is_boundary_copy(VertexId v) const { return fixed_copy[v]; }

Complex3 TransformedComplex3::to_complex() const {
  if (!include_class_3_4) throw Error(ErrorCode::InvalidInput, "complex requires Class-3 and Class-4 cells");
  std::vector<std::vector<FaceId>> interior, holes;
  std::vector<FaceId> outside;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cell_class[c] != CellClass::Carried)
      interior.push_back(cells[c]);
    else if (generator[c] == -1)
      outside = cells[c];
    else
      holes.push_back(cells[c]);
  }
  return build_complex_3d(points, faces, std::move(interior), std::move(holes), std::move(outside));
}

TransformedComplex3 euler_transform_3d(const Complex3& k, const TransformOptions3& opt) {
  const ValidationReport report = validate_assumptions(k);
  for (const auto& v : report.violations) {
    if (opt.allow_rule5 && v.rule == Rule::AdjacentBoundaryFacets) continue;
    std::string hint;
    if (v.rule == Rule::VertexDegree) hint = "; use pre_offset_fix_3d";
    if (v.rule == Rule::AdjacentBoundaryFacets) hint = "; use pad_boundary_3d";
    throw Error(ErrorCode::AssumptionViolation, "complex violates assumption " + rules_of(report) + ": " + v.message + hint);
  }

  TransformedComplex3 t;
  t.include_class_3_4 = opt.include_class_3_4;
  const std::size_t nrec = k.num_cell_records();
  t.offsets.assign(nrec, 0.0);

  // copies[c][i] is the copy of cell_vertices(c)[i] inside cell record c.
  std::vector<std::vector<VertexId>> copies(nrec);
  std::vector<VertexId> fixed(k.num_vertices(), kInvalidId);
  auto add_point = [&](const Vec3& p, VertexId v, CellId c) {
    t.points.push_back(p);
    t.fixed_copy.push_back(!k.is_interior(c));
    t.source_vertex.push_back(v);
    t.source_cell.push_back(c);
    return static_cast<VertexId>(t.points.size() - 1);
  };
  for (CellId c = 0; c < static_cast<CellId>(nrec); ++c) {
    const auto verts = k.cell_vertices(c);
    if (k.is_interior(c)) {
      std::vector<VertexId> ids;
      const Polyhedron poly = cell_polyhedron(k, c, &ids);
      double b = 0.0;
      if (!opt.cell_b.empty()) {
        if (static_cast<std::size_t>(c) >= opt.cell_b.size())
          throw Error(ErrorCode::InvalidInput, "per-cell offsets do not cover cell " + std::to_string(c));
        b = opt.cell_b[c];
      } else {
        b = opt.b ? *opt.b : auto_offset_3d(poly);
      }
      OffsetResult3 res;
      try {
        res = mitered_offset_3d(poly, b);
      } catch (const Error& e) {
        throw Error(e.code(), "cell " + std::to_string(c) + ": " + e.what());
      }
      t.offsets[c] = b;
      for (std::size_t i = 0; i < verts.size(); ++i) copies[c].push_back(add_point(res.cell.points[i], verts[i], c));
    } else {
      for (VertexId v : verts) {
        if (fixed[v] == kInvalidId) fixed[v] = add_point(k.point(v), v, c);
        copies[c].push_back(fixed[v]);
      }
    }
  }
  std::size_t interior_copies = 0;
  for (CellId c : k.interior_cells()) interior_copies += copies[c].size();
  t.boundary_vertices = t.points.size() - interior_copies;

  auto copy = [&](VertexId v, CellId c) {
    const auto verts = k.cell_vertices(c);
    return copies[c][std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()];
  };
  auto copy_cycle = [&](FaceId f, CellId c) {
    std::vector<VertexId> out;
    for (VertexId v : k.face(f).cycle) out.push_back(copy(v, c));
    return out;
  };

  Assembler as(t);
  std::size_t tallied = 0;

  // Class 1 and carried cells.
  for (CellId c = 0; c < static_cast<CellId>(nrec); ++c) {
    std::vector<FaceId> facets;
    for (FaceId f : k.cell(c).faces) facets.push_back(as.face(copy_cycle(f, c)));
    if (k.is_interior(c)) {
      as.cell(std::move(facets), CellClass::Class1, c);
      ++tallied;
    } else {
      as.cell(std::move(facets), CellClass::Carried, c == k.outside_cell() ? -1 : c);
    }
  }

  // Class 2: prisms over faces.
  for (FaceId f = 0; f < static_cast<FaceId>(k.num_faces()); ++f) {
    const auto [c0, c1] = k.face_cells(f);
    const FaceId top = as.face(copy_cycle(f, c0)), bottom = as.face(copy_cycle(f, c1));
    t.face_copies.push_back({top, bottom});
    std::vector<FaceId> facets{top, bottom};
    const auto& cy = k.face(f).cycle;
    for (std::size_t i = 0; i < cy.size(); ++i) {
      const VertexId a = cy[i], b = cy[(i + 1) % cy.size()];
      facets.push_back(as.face({copy(a, c0), copy(b, c0), copy(b, c1), copy(a, c1)}));
    }
    as.cell(std::move(facets), CellClass::Class2, f);
    ++tallied;
  }

  // Class 3: cells around edges, capped by rings at both ends.
  std::map<std::pair<EdgeId, VertexId>, FaceId> ring_at;
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) {
    ++tallied;
    const auto star = k.edge_star(e);
    const auto [a, b] = k.edge(e);
    std::vector<VertexId> ra, rb;
    for (const EdgeStar& s : star) {
      ra.push_back(copy(a, s.cell));
      rb.push_back(copy(b, s.cell));
    }
    if (ra.size() < 3 || !distinct(ra) || !distinct(rb)) {
      if (opt.allow_rule5) continue;
      throw Error(ErrorCode::AssumptionViolation, "degenerate ring around edge " + std::to_string(e));
    }
    if (!opt.include_class_3_4) continue;
    std::vector<FaceId> facets;
    for (std::size_t i = 0; i < star.size(); ++i) {
      const std::size_t j = (i + 1) % star.size();
      facets.push_back(as.face({ra[i], rb[i], rb[j], ra[j]}));
    }
    for (const auto& [end, ring] : {std::pair{a, ra}, std::pair{b, rb}}) {
      RingPolygon rp;
      rp.face = as.face(ring);
      rp.edge = e;
      rp.end = end;
      for (const EdgeStar& s : star) {
        if (!k.is_interior(s.cell)) {
          rp.slide_towards.push_back(kInvalidId);
          continue;
        }
        VertexId towards = kInvalidId;
        for (FaceId g : k.cell_faces_around(s.cell, end))
          if (!k.face_has_edge(g, e)) towards = copy(end, k.other_cell(g, s.cell));
        rp.slide_towards.push_back(towards);
      }
      ring_at[{e, end}] = rp.face;
      facets.push_back(rp.face);
      t.rings.push_back(std::move(rp));
    }
    as.cell(std::move(facets), CellClass::Class3, e);
  }

  // Class 4: cells around vertices, bounded by the rings at that vertex.
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_vertices()); ++v) {
    if (k.vertex_edges(v).empty()) continue;
    ++tallied;
    if (!opt.include_class_3_4) continue;
    std::vector<FaceId> facets;
    bool complete = true;
    for (EdgeId e : k.vertex_edges(v)) {
      const auto it = ring_at.find({e, v});
      if (it == ring_at.end()) {
        complete = false;
        break;
      }
      facets.push_back(it->second);
    }
    if (!complete) continue;
    as.cell(std::move(facets), CellClass::Class4, v);
  }

  const auto deg = t.degrees();
  std::size_t degree_sum = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(t.points.size()); ++v)
    if (!t.fixed_copy[v]) degree_sum += deg[v];
  t.counts.vertices = interior_copies;
  t.counts.edges = degree_sum / 2;
  t.counts.faces = t.faces.size();
  t.counts.cells = tallied;
  t.skeleton_edges = t.edges().size();
  return t;
}

double ring_residual(const TransformedComplex3& t, const RingPolygon& ring) {
  std::vector<Vec3> pts;
  for (VertexId v : t.faces[ring.face]) pts.push_back(t.points[v]);
  const auto plane = fit_plane(pts);
  return plane ? planarity_residual(pts, *plane) : 0.0;
}

PlanarizeReport planarize_ring_polygons(TransformedComplex3& t, int max_passes) {
  if (!t.include_class_3_4) throw Error(ErrorCode::InvalidInput, "planarization requires Class-3 cells");
  PlanarizeReport rep;
  Vec3 lo = Vec3::Constant(1e300), hi = Vec3::Constant(-1e300);
  for (const Vec3& p : t.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double tol = 1e-9 * (t.points.empty() ? 1.0 : (hi - lo).norm());
  const std::vector<Vec3> start = t.points;
  auto worst = [&] {
    double r = 0.0;
    for (const auto& ring : t.rings) r = std::max(r, ring_residual(t, ring));
    return r;
  };
  rep.max_residual_before = worst();
  rep.max_residual_after = rep.max_residual_before;
  while (rep.max_residual_after > tol && rep.passes < max_passes) {
    ++rep.passes;
    for (const auto& ring : t.rings) {
      const auto& cy = t.faces[ring.face];
      std::vector<Vec3> pts;
      for (VertexId v : cy) pts.push_back(t.points[v]);
      const auto plane = fit_plane(pts);
      if (!plane)
        throw Error(ErrorCode::UnprojectableVertex,
                    "unprojectable vertex: ring around edge " + std::to_string(ring.edge) + " is degenerate");
      if (planarity_residual(pts, *plane) <= tol) continue;
      for (std::size_t i = 0; i < cy.size(); ++i) {
        const VertexId v = cy[i];
        const double dist = plane->signed_distance(t.points[v]);
        if (std::abs(dist) <= 0.0 || ring.slide_towards[i] == kInvalidId) continue;
        const Vec3 dir = t.points[ring.slide_towards[i]] - t.points[v];
        const double along = plane->normal.dot(dir);
        if (std::abs(along) < 1e-9 * dir.norm())
          throw Error(ErrorCode::UnprojectableVertex, "unprojectable vertex " + std::to_string(v) +
                                                          " on ring around edge " + std::to_string(ring.edge));
        t.points[v] -= (dist / along) * dir;
      }
    }
    rep.max_residual_after = worst();
  }
  for (std::size_t v = 0; v < t.points.size(); ++v)
    rep.max_displacement = std::max(rep.max_displacement, (t.points[v] - start[v]).norm());
  return rep;
}

ValidationReport edge_face_incidence_check(const TransformedComplex3& t) {
  ValidationReport r;
  std::map<std::array<VertexId, 2>, int> count;
  for (const auto& f : t.faces)
    for (std::size_t i = 0; i < f.size(); ++i) {
      const VertexId a = f[i], b = f[(i + 1) % f.size()];
      ++count[{std::min(a, b), std::max(a, b)}];
    }
  for (const auto& [e, n] : count)
    if (n != 4)
      r.violations.push_back({Rule::EdgeFaceIncidence, {e[0], e[1]},
                              "edge {" + std::to_string(e[0]) + ", " + std::to_string(e[1]) + "} lies on " +
                                  std::to_string(n) + " polygons"});
  r.passed = r.violations.empty();
  return r;
}

namespace {

bool connected(std::size_t n, const std::vector<std::array<VertexId, 2>>& edges) {
  if (n == 0) return true;
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<bool> seen(n, false);
  std::deque<VertexId> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
  }
  return count == n;
}

}  // namespace

bool check_connectivity_3d(const TransformedComplex3& t) { return connected(t.points.size(), t.edges()); }

bool check_connectivity_3d(const Complex3& k) {
  std::vector<std::array<VertexId, 2>> edges;
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) edges.push_back(k.edge(e));
  return connected(k.num_vertices(), edges);
}

}  // namespace euler
