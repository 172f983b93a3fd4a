#include "euler/transform2d.hpp"
#include "euler/error.hpp"
#include "euler/offset.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace euler {

const char* to_string(CellClass c) noexcept {
  switch (c) {
    case CellClass::Class1: return "class1";
    case CellClass::Class2: return "class2";
    case CellClass::Class3: return "class3";
    case CellClass::Class4: return "class4";
    case CellClass::Carried: return "carried";
  }
  return "unknown";
}

namespace {

std::string rules_of(const ValidationReport& r) {
  std::string s;
  for (const auto& v : r.violations) {
    const std::string id = std::to_string(static_cast<int>(v.rule));
    if (s.find("(" + id + ")") == std::string::npos) s += (s.empty() ? "" : ", ") + ("(" + id + ")");
  }
  return s;
}

double face_offset(const Complex2& k, FaceId f, const TransformOptions2& opt) {
  if (!opt.face_b.empty()) {
    if (static_cast<std::size_t>(f) >= opt.face_b.size())
      throw Error(ErrorCode::InvalidInput, "per-face offsets do not cover face " + std::to_string(f));
    return opt.face_b[f];
  }
  if (opt.b) return *opt.b;
  return auto_offset_2d(k.face_points(f), opt.lambda, opt.mu);
}

}  // namespace

TransformedComplex2 euler_transform_2d(const Complex2& k, const TransformOptions2& opt) {
  const ValidationReport report = validate_assumptions(k);
  if (opt.intermediate) {
    for (const auto& v : report.violations)
      if (v.rule != Rule::AdjacentBoundaryFacets)
        throw Error(ErrorCode::AssumptionViolation, "complex violates assumption " + rules_of(report) + ": " + v.message);
  } else if (!report.passed) {
    const std::string hint = report.only(Rule::AdjacentBoundaryFacets) ? "; use double_transform_2d" : "";
    throw Error(ErrorCode::AssumptionViolation,
                "complex violates assumption " + rules_of(report) + ": " + report.violations.front().message + hint);
  }

  TransformedComplex2 out;
  const std::size_t nrec = k.num_face_records();
  std::vector<Vec2> pts;
  std::vector<VertexId> src_v;
  std::vector<FaceId> src_f;
  auto new_vertex = [&](const Vec2& p, VertexId v, FaceId f) {
    pts.push_back(p);
    src_v.push_back(v);
    src_f.push_back(f);
    return static_cast<VertexId>(pts.size() - 1);
  };

  // Copies of every vertex inside each incident face record, by corner.
  out.offsets.assign(nrec, 0.0);
  std::vector<std::vector<VertexId>> corner(nrec);
  std::vector<VertexId> fixed(k.num_vertices(), kInvalidId);
  for (FaceId f = 0; f < static_cast<FaceId>(nrec); ++f) {
    const Face2& face = k.face(f);
    if (face.kind == CellKind::Interior) {
      const double b = face_offset(k, f, opt);
      OffsetResult2 res;
      try {
        res = mitered_offset_2d(k.face_points(f), b);
      } catch (const Error& e) {
        throw Error(e.code(), "face " + std::to_string(f) + ": " + e.what());
      }
      out.offsets[f] = b;
      for (std::size_t i = 0; i < face.cycle.size(); ++i)
        corner[f].push_back(new_vertex(res.polygon[i], face.cycle[i], f));
    } else {
      for (VertexId v : face.cycle) {
        if (fixed[v] == kInvalidId) fixed[v] = new_vertex(k.point(v), v, f);
        corner[f].push_back(fixed[v]);
      }
    }
  }
  auto copy = [&](VertexId v, FaceId f) {
    const auto& cy = k.face(f).cycle;
    const auto it = std::find(cy.begin(), cy.end(), v);
    return corner[f][it - cy.begin()];
  };

  std::vector<std::vector<VertexId>> faces;
  std::vector<CellClass> cls;
  std::vector<std::int32_t> gen;
  std::size_t tallied_faces = 0;
  for (FaceId f : k.interior_faces()) {
    faces.push_back(corner[f]);
    cls.push_back(CellClass::Class1);
    gen.push_back(f);
    ++tallied_faces;
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) {
    const auto [a, b] = k.edge(e);
    const auto [f, g] = k.edge_faces(e);
    faces.push_back({copy(a, f), copy(b, f), copy(b, g), copy(a, g)});
    cls.push_back(CellClass::Class2);
    gen.push_back(e);
    ++tallied_faces;
  }
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_vertices()); ++v) {
    const auto ws = k.wedges(v);
    if (ws.empty()) continue;
    std::vector<VertexId> ring;
    for (const Wedge& w : ws) ring.push_back(copy(v, w.face));
    // An unmoved copy of v that appears more than once splits the polygon.
    std::vector<std::vector<VertexId>> polys;
    const VertexId self = fixed[v];
    const auto first = std::find(ring.begin(), ring.end(), self);
    if (self == kInvalidId || std::count(ring.begin(), ring.end(), self) < 2) {
      polys.push_back(ring);
    } else {
      std::rotate(ring.begin(), first, ring.end());
      for (std::size_t i = 0; i < ring.size();) {
        std::vector<VertexId> poly{self};
        for (++i; i < ring.size() && ring[i] != self; ++i) poly.push_back(ring[i]);
        polys.push_back(std::move(poly));
      }
    }
    for (auto& poly : polys) {
      ++tallied_faces;
      if (poly.size() < 3) {
        if (opt.intermediate) continue;
        throw Error(ErrorCode::AssumptionViolation,
                    "degenerate Class-3 polygon at vertex " + std::to_string(v) + "; use double_transform_2d");
      }
      faces.push_back(std::move(poly));
      cls.push_back(CellClass::Class3);
      gen.push_back(v);
    }
  }

  std::vector<std::vector<VertexId>> holes;
  for (FaceId h : k.hole_faces()) holes.push_back(corner[h]);
  std::vector<VertexId> outside_cycle = corner[k.outside_face()];

  out.tallied.vertices = pts.size();
  out.tallied.faces = tallied_faces;
  {
    std::size_t carried_edges = 0;
    for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) {
      const auto [f, g] = k.edge_faces(e);
      if (!k.is_interior(f) || !k.is_interior(g)) ++carried_edges;
    }
    std::size_t class1_edges = 0;
    for (FaceId f : k.interior_faces()) class1_edges += k.face(f).cycle.size();
    out.tallied.edges = class1_edges + carried_edges + 2 * k.num_edges();
  }

  const std::size_t nfaces = faces.size();
  out.complex = build_complex_2d(std::move(pts), std::move(faces), std::move(holes), std::move(outside_cycle));
  out.face_class = std::move(cls);
  out.generator = std::move(gen);
  for (std::size_t i = nfaces; i < out.complex.num_face_records(); ++i) {
    out.face_class.push_back(CellClass::Carried);
    out.generator.push_back(i + 1 == out.complex.num_face_records() ? k.outside_face()
                                                                     : k.hole_faces()[i - nfaces]);
  }
  out.source_vertex = std::move(src_v);
  out.source_face = std::move(src_f);
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) {
    const auto [a, b] = k.edge(e);
    const auto [f, g] = k.edge_faces(e);
    out.edge_copies.push_back(
        {out.complex.find_edge(copy(a, f), copy(b, f)), out.complex.find_edge(copy(a, g), copy(b, g))});
  }
  out.counts.vertices = out.complex.num_vertices();
  out.counts.edges = out.complex.num_edges();
  out.counts.faces = nfaces;
  return out;
}

DoubleTransform2 double_transform_2d(const Complex2& k, const TransformOptions2& first,
                                     const TransformOptions2& second) {
  const ValidationReport report = validate_assumptions(k);
  if (report.passed)
    throw Error(ErrorCode::InvalidInput, "complex already satisfies all assumptions; use euler_transform_2d");
  if (!report.only(Rule::AdjacentBoundaryFacets))
    throw Error(ErrorCode::AssumptionViolation,
                "double transform only repairs rule (5); complex violates " + rules_of(report));
  DoubleTransform2 out;
  TransformOptions2 opt1 = first;
  opt1.intermediate = true;
  out.intermediate = euler_transform_2d(k, opt1);
  TransformOptions2 opt2 = second;
  opt2.intermediate = false;
  out.result = euler_transform_2d(out.intermediate.complex, opt2);
  return out;
}

bool check_connectivity_2d(const Complex2& k) {
  const std::size_t n = k.num_vertices();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::deque<VertexId> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : k.vertex_edges(v)) {
      const VertexId w = k.other_end(e, v);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count == n;
}

namespace {

// Counterclockwise outline of the domain; the stored walk winds clockwise.
std::vector<VertexId> outline(const Complex2& k) {
  std::vector<VertexId> loop = k.face(k.outside_face()).cycle;
  std::reverse(loop.begin(), loop.end());
  auto sorted = loop;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidInput, "cannot pad a boundary with articulation vertices");
  return loop;
}

}  // namespace

double default_pad_thickness_2d(const Complex2& k) {
  const auto loop = outline(k);
  std::vector<Vec2> poly;
  double shortest = std::numeric_limits<double>::infinity();
  for (VertexId v : loop) {
    poly.push_back(k.point(v));
    for (EdgeId e : k.vertex_edges(v)) shortest = std::min(shortest, (k.point(k.other_end(e, v)) - k.point(v)).norm());
  }
  return std::min(0.3 * shortest, 0.5 * first_event_distance_2d(poly));
}

Complex2 pad_boundary_2d(const Complex2& k, double thickness) {
  if (!(thickness > 0)) throw Error(ErrorCode::InvalidInput, "pad thickness must be positive");
  const auto loop = outline(k);
  std::vector<Vec2> poly;
  for (VertexId v : loop) poly.push_back(k.point(v));
  const OffsetResult2 inner = mitered_offset_2d(poly, thickness);

  std::vector<Vec2> pts(k.points().begin(), k.points().end());
  std::vector<VertexId> moved(k.num_vertices(), kInvalidId);
  for (std::size_t i = 0; i < loop.size(); ++i) {
    moved[loop[i]] = static_cast<VertexId>(pts.size());
    pts.push_back(pts[loop[i]]);
    pts[loop[i]] = inner.polygon[i];
  }
  // Boundary vertices keep their ids at the inner position; the outer ring
  // gets fresh ids so hole cycles stay valid.
  std::vector<std::vector<VertexId>> faces, holes;
  for (FaceId f : k.interior_faces()) faces.push_back(k.face(f).cycle);
  for (FaceId h : k.hole_faces()) holes.push_back(k.face(h).cycle);
  std::vector<VertexId> outer;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const VertexId a = loop[i], b = loop[(i + 1) % loop.size()];
    faces.push_back({moved[a], moved[b], b, a});
    outer.push_back(moved[a]);
  }
  return build_complex_2d(std::move(pts), std::move(faces), std::move(holes), std::move(outer));
}

}  // namespace euler
