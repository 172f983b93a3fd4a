#include "euler/complex.hpp"
#include "euler/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace euler {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid input";
    case ErrorCode::AssumptionViolation: return "assumption violation";
    case ErrorCode::InfeasibleParameters: return "infeasible parameters";
    case ErrorCode::CombinatorialChange: return "combinatorial change";
    case ErrorCode::DegenerateMiter: return "degenerate miter";
    case ErrorCode::IllDefinedMiter: return "ill-defined miter";
    case ErrorCode::UnprojectableVertex: return "unprojectable vertex";
    case ErrorCode::OddDegree: return "odd degrees";
    case ErrorCode::Disconnected: return "disconnected";
    case ErrorCode::DegenerateSlice: return "degenerate slice";
    case ErrorCode::InteriorParityDefect: return "interior parity defect";
    case ErrorCode::Io: return "i/o failure";
  }
  return "unknown";
}

const char* to_string(Rule rule) noexcept {
  switch (rule) {
    case Rule::Purity: return "purity";
    case Rule::Connectivity: return "connectivity";
    case Rule::HolesDisjoint: return "holes-disjoint";
    case Rule::HoleSingleFacet: return "hole-single-facet";
    case Rule::AdjacentBoundaryFacets: return "adjacent-boundary-facets";
    case Rule::VertexDegree: return "vertex-degree";
    case Rule::EdgeFaceIncidence: return "edge-face-incidence";
  }
  return "unknown";
}

bool ValidationReport::has(Rule rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

bool ValidationReport::only(Rule rule) const {
  return !violations.empty() &&
         std::all_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

void add(ValidationReport& r, Rule rule, std::vector<std::int32_t> handles, std::string msg) {
  r.violations.push_back({rule, std::move(handles), std::move(msg)});
}

// Components of `cells` under vertex sharing; returns one representative per component.
template <class VertexCells, class IsMember>
std::vector<std::int32_t> components(std::size_t nverts, std::span<const std::int32_t> cells, std::size_t nrecords,
                                     VertexCells vertex_cells, IsMember member) {
  DisjointSets ds(nrecords);
  for (std::size_t v = 0; v < nverts; ++v) {
    std::int32_t first = kInvalidId;
    for (std::int32_t c : vertex_cells(static_cast<VertexId>(v))) {
      if (!member(c)) continue;
      if (first == kInvalidId)
        first = c;
      else
        ds.unite(first, c);
    }
  }
  std::vector<std::int32_t> reps, roots;
  for (std::int32_t c : cells) {
    const int root = ds.find(c);
    if (std::find(roots.begin(), roots.end(), root) != roots.end()) continue;
    roots.push_back(root);
    reps.push_back(c);
  }
  return reps;
}

std::string join(const std::vector<std::int32_t>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
  return s;
}

}  // namespace

ValidationReport validate_assumptions(const Complex2& k) {
  ValidationReport r;
  const std::size_t nv = k.num_vertices();
  const FaceId outside = k.outside_face();

  std::vector<bool> in_k(nv, false), on_outside(nv, false);
  std::vector<FaceId> hole_at(nv, kInvalidId);
  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v)
    for (FaceId f : k.vertex_faces(v)) {
      if (k.is_interior(f)) in_k[v] = true;
      if (f == outside) on_outside[v] = true;
    }

  // (1) purity
  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v)
    if (!in_k[v]) add(r, Rule::Purity, {v}, "vertex " + std::to_string(v) + " lies on no face of K");

  // (2) connectivity
  {
    auto reps = components(
        nv, k.interior_faces(), k.num_face_records(), [&](VertexId v) { return k.vertex_faces(v); },
        [&](FaceId f) { return k.is_interior(f); });
    if (reps.size() > 1) add(r, Rule::Connectivity, reps, "K has " + std::to_string(reps.size()) + " components");
  }

  // (3) holes pairwise disjoint and disjoint from the outside
  for (FaceId h : k.hole_faces()) {
    std::vector<std::int32_t> other_holes;
    bool touches_outside = false;
    for (VertexId v : k.face(h).cycle) {
      if (on_outside[v]) touches_outside = true;
      for (FaceId g : k.vertex_faces(v))
        if (g != h && k.face(g).kind == CellKind::Hole && g > h) other_holes.push_back(g);
    }
    std::sort(other_holes.begin(), other_holes.end());
    other_holes.erase(std::unique(other_holes.begin(), other_holes.end()), other_holes.end());
    for (FaceId g : other_holes)
      add(r, Rule::HolesDisjoint, {h, g}, "holes " + std::to_string(h) + " and " + std::to_string(g) + " intersect");
    if (touches_outside)
      add(r, Rule::HolesDisjoint, {h, outside}, "hole " + std::to_string(h) + " meets the outside boundary");
  }

  // (4) a face of K and a hole share at most one edge
  for (FaceId f : k.interior_faces()) {
    std::vector<FaceId> nb;
    for (EdgeId e : k.face(f).edges) {
      const FaceId g = k.other_face(e, f);
      if (g != kInvalidId && k.face(g).kind == CellKind::Hole) nb.push_back(g);
    }
    std::sort(nb.begin(), nb.end());
    for (std::size_t i = 0; i + 1 < nb.size(); ++i)
      if (nb[i] == nb[i + 1] && (i == 0 || nb[i - 1] != nb[i]))
        add(r, Rule::HoleSingleFacet, {f, nb[i]},
            "face " + std::to_string(f) + " shares more than one edge with hole " + std::to_string(nb[i]));
  }

  // (5) no two adjacent edges of a face both on the outside
  for (FaceId f : k.interior_faces()) {
    const auto& es = k.face(f).edges;
    const std::size_t n = es.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (k.other_face(es[i], f) == outside && k.other_face(es[(i + 1) % n], f) == outside) {
        add(r, Rule::AdjacentBoundaryFacets, {f},
            "face " + std::to_string(f) + " has adjacent edges on the outside at vertex " +
                std::to_string(k.face(f).cycle[(i + 1) % n]));
        break;
      }
    }
  }

  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
    const auto ws = k.wedges(v);
    for (FaceId f : k.vertex_faces(v)) {
      if (k.is_interior(f)) continue;
      const auto hits = std::count_if(ws.begin(), ws.end(), [&](const Wedge& w) { return w.face == f; });
      if (hits > 1) r.notes.push_back("articulation vertex " + std::to_string(v));
    }
  }
  r.passed = r.violations.empty();
  return r;
}

ValidationReport validate_assumptions(const Complex3& k) {
  ValidationReport r;
  const std::size_t nv = k.num_vertices();
  const CellId outside = k.outside_cell();

  std::vector<bool> in_k(nv, false);
  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v)
    for (CellId c : k.vertex_cells(v))
      if (k.is_interior(c)) in_k[v] = true;

  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v)
    if (!in_k[v]) add(r, Rule::Purity, {v}, "vertex " + std::to_string(v) + " lies on no cell of K");

  {
    auto reps = components(
        nv, k.interior_cells(), k.num_cell_records(), [&](VertexId v) { return k.vertex_cells(v); },
        [&](CellId c) { return k.is_interior(c); });
    if (reps.size() > 1) add(r, Rule::Connectivity, reps, "K has " + std::to_string(reps.size()) + " components");
  }

  for (CellId h : k.hole_cells()) {
    std::vector<std::int32_t> others;
    bool touches_outside = false;
    for (VertexId v : k.cell_vertices(h))
      for (CellId g : k.vertex_cells(v)) {
        if (g == outside) touches_outside = true;
        if (g > h && k.cell(g).kind == CellKind::Hole) others.push_back(g);
      }
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    for (CellId g : others)
      add(r, Rule::HolesDisjoint, {h, g}, "hole cells " + std::to_string(h) + " and " + std::to_string(g) + " intersect");
    if (touches_outside)
      add(r, Rule::HolesDisjoint, {h, outside}, "hole cell " + std::to_string(h) + " meets the outside");
  }

  for (CellId c : k.interior_cells()) {
    std::vector<CellId> nb;
    for (FaceId f : k.cell(c).faces) {
      const CellId g = k.other_cell(f, c);
      if (k.cell(g).kind == CellKind::Hole) nb.push_back(g);
    }
    std::sort(nb.begin(), nb.end());
    for (std::size_t i = 0; i + 1 < nb.size(); ++i)
      if (nb[i] == nb[i + 1] && (i == 0 || nb[i - 1] != nb[i]))
        add(r, Rule::HoleSingleFacet, {c, nb[i]},
            "cell " + std::to_string(c) + " shares more than one face with hole cell " + std::to_string(nb[i]));
  }

  for (CellId c : k.interior_cells()) {
    const auto& fs = k.cell(c).faces;
    bool found = false;
    for (std::size_t i = 0; i < fs.size() && !found; ++i) {
      if (k.other_cell(fs[i], c) != outside) continue;
      for (std::size_t j = i + 1; j < fs.size() && !found; ++j) {
        if (k.other_cell(fs[j], c) != outside) continue;
        for (EdgeId e : k.face(fs[i]).edges)
          if (k.face_has_edge(fs[j], e)) {
            add(r, Rule::AdjacentBoundaryFacets, {c},
                "cell " + std::to_string(c) + " has adjacent faces " + std::to_string(fs[i]) + " and " +
                    std::to_string(fs[j]) + " on the outside");
            found = true;
            break;
          }
      }
    }
  }

  for (CellId c : k.interior_cells()) {
    std::vector<std::int32_t> bad;
    for (VertexId v : k.cell_vertices(c))
      if (k.degree_in_cell(c, v) != 3) bad.push_back(v);
    if (!bad.empty())
      add(r, Rule::VertexDegree, {c},
          "cell " + std::to_string(c) + " has vertices of degree other than 3: " + join(bad));
  }
  r.passed = r.violations.empty();
  return r;
}

long euler_characteristic(const Complex2& k) {
  std::vector<bool> v_in(k.num_vertices(), false), e_in(k.num_edges(), false);
  for (FaceId f : k.interior_faces()) {
    for (VertexId v : k.face(f).cycle) v_in[v] = true;
    for (EdgeId e : k.face(f).edges) e_in[e] = true;
  }
  return std::count(v_in.begin(), v_in.end(), true) - std::count(e_in.begin(), e_in.end(), true) +
         static_cast<long>(k.interior_faces().size());
}

long euler_characteristic(const Complex3& k) {
  std::vector<bool> v_in(k.num_vertices(), false), e_in(k.num_edges(), false), f_in(k.num_faces(), false);
  for (CellId c : k.interior_cells()) {
    for (VertexId v : k.cell_vertices(c)) v_in[v] = true;
    for (EdgeId e : k.cell_edges(c)) e_in[e] = true;
    for (FaceId f : k.cell(c).faces) f_in[f] = true;
  }
  return std::count(v_in.begin(), v_in.end(), true) - std::count(e_in.begin(), e_in.end(), true) +
         std::count(f_in.begin(), f_in.end(), true) - static_cast<long>(k.interior_cells().size());
}

ComplexStats stats(const Complex2& k) {
  ComplexStats s;
  s.num_vertices = k.num_vertices();
  s.num_edges = k.num_edges();
  s.num_faces = k.interior_faces().size();
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_vertices()); ++v)
    s.vertex_degree.push_back(static_cast<int>(k.vertex_edges(v).size()));
  for (FaceId f : k.interior_faces()) {
    const std::size_t n = k.face(f).cycle.size();
    s.max_cell_vertices = std::max(s.max_cell_vertices, n);
    s.max_face_edges = std::max(s.max_face_edges, n);
    bool boundary = false;
    for (VertexId v : k.face(f).cycle)
      for (FaceId g : k.vertex_faces(v))
        if (!k.is_interior(g)) boundary = true;
    s.boundary_cell.push_back(boundary);
  }
  return s;
}

ComplexStats stats(const Complex3& k) {
  ComplexStats s;
  s.num_vertices = k.num_vertices();
  s.num_edges = k.num_edges();
  s.num_cells = k.interior_cells().size();
  std::vector<bool> f_in(k.num_faces(), false);
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_vertices()); ++v)
    s.vertex_degree.push_back(static_cast<int>(k.vertex_edges(v).size()));
  for (CellId c : k.interior_cells()) {
    s.max_cell_vertices = std::max(s.max_cell_vertices, k.cell_vertices(c).size());
    for (FaceId f : k.cell(c).faces) {
      f_in[f] = true;
      s.max_face_edges = std::max(s.max_face_edges, k.face(f).edges.size());
    }
    bool boundary = false;
    for (VertexId v : k.cell_vertices(c))
      for (CellId g : k.vertex_cells(v))
        if (!k.is_interior(g)) boundary = true;
    s.boundary_cell.push_back(boundary);
  }
  s.num_faces = static_cast<std::size_t>(std::count(f_in.begin(), f_in.end(), true));
  return s;
}

}  // namespace euler
