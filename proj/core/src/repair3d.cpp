#include "euler/error.hpp"
#include "euler/transform3d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace euler {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<std::vector<FaceId>> faces_of(const Complex3& k, std::span<const CellId> cells) {
  std::vector<std::vector<FaceId>> out;
  for (CellId c : cells) out.push_back(k.cell(c).faces);
  return out;
}

}  // namespace

Complex3 pre_offset_fix_3d(const Complex3& k, double cut) {
  if (!(cut > 0)) throw Error(ErrorCode::InvalidInput, "truncation distance must be positive");
  const std::size_t nv = k.num_vertices();
  std::vector<bool> target(nv, false);
  for (CellId c : k.interior_cells())
    for (VertexId v : k.cell_vertices(c))
      if (k.degree_in_cell(c, v) > 3) target[v] = true;
  if (std::none_of(target.begin(), target.end(), [](bool b) { return b; })) return k;

  // Cut point of every edge at every target vertex.
  std::map<std::pair<VertexId, EdgeId>, VertexId> cut_id;
  std::vector<Vec3> pts;
  std::vector<VertexId> remap(nv, kInvalidId);
  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
    if (target[v]) continue;
    remap[v] = static_cast<VertexId>(pts.size());
    pts.push_back(k.point(v));
  }
  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
    if (!target[v]) continue;
    const auto cells = k.vertex_cells(v);
    if (std::find(cells.begin(), cells.end(), k.outside_cell()) == cells.end())
      throw Error(ErrorCode::InvalidInput, "vertex " + std::to_string(v) +
                                               " has degree above 3 in a cell but is not on the boundary");
    Vec3 n = Vec3::Zero();
    for (EdgeId e : k.vertex_edges(v)) n += (k.point(k.other_end(e, v)) - k.point(v)).normalized();
    if (n.norm() < 1e-12) throw Error(ErrorCode::InvalidInput, "vertex " + std::to_string(v) + " has no truncation plane");
    n.normalize();
    double min_dot = std::numeric_limits<double>::infinity();
    for (EdgeId e : k.vertex_edges(v)) min_dot = std::min(min_dot, n.dot((k.point(k.other_end(e, v)) - k.point(v)).normalized()));
    if (min_dot <= 1e-9) throw Error(ErrorCode::InvalidInput, "vertex " + std::to_string(v) + " has no truncation plane");
    const double h = cut * min_dot;
    for (EdgeId e : k.vertex_edges(v)) {
      const Vec3 d = k.point(k.other_end(e, v)) - k.point(v);
      const double s = h / n.dot(d.normalized());
      if (s >= 0.5 * d.norm())
        throw Error(ErrorCode::CombinatorialChange, "combinatorial change: truncating vertex " + std::to_string(v) +
                                                        " at " + num(cut) + " reaches the middle of edge " +
                                                        std::to_string(e));
      cut_id[{v, e}] = static_cast<VertexId>(pts.size());
      pts.push_back(k.point(v) + s * d.normalized());
    }
  }

  std::vector<std::vector<VertexId>> faces;
  for (FaceId f = 0; f < static_cast<FaceId>(k.num_faces()); ++f) {
    const auto& cy = k.face(f).cycle;
    const auto& es = k.face(f).edges;
    const std::size_t m = cy.size();
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < m; ++i) {
      if (!target[cy[i]]) {
        out.push_back(remap[cy[i]]);
        continue;
      }
      out.push_back(cut_id.at({cy[i], es[(i + m - 1) % m]}));
      out.push_back(cut_id.at({cy[i], es[i]}));
    }
    faces.push_back(std::move(out));
  }
  std::vector<std::vector<FaceId>> cells = faces_of(k, k.interior_cells());
  for (std::size_t ci = 0; ci < k.interior_cells().size(); ++ci) {
    const CellId c = k.interior_cells()[ci];
    for (VertexId v : k.cell_vertices(c)) {
      if (!target[v]) continue;
      const auto ring = k.cell_faces_around(c, v);
      std::vector<VertexId> cap;
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const FaceId f = ring[i], g = ring[(i + 1) % ring.size()];
        for (EdgeId e : k.vertex_edges(v))
          if (k.face_has_edge(f, e) && k.face_has_edge(g, e)) cap.push_back(cut_id.at({v, e}));
      }
      cells[ci].push_back(static_cast<FaceId>(faces.size()));
      faces.push_back(std::move(cap));
    }
  }
  return build_complex_3d(std::move(pts), std::move(faces), std::move(cells), faces_of(k, k.hole_cells()));
}

double default_pad_thickness_3d(const Complex3& k) {
  double shortest = std::numeric_limits<double>::infinity();
  for (VertexId v : k.cell_vertices(k.outside_cell()))
    for (EdgeId e : k.vertex_edges(v)) shortest = std::min(shortest, (k.point(k.other_end(e, v)) - k.point(v)).norm());
  return 0.25 * shortest;
}

Complex3 pad_boundary_3d(const Complex3& k, double thickness) {
  if (!(thickness > 0)) throw Error(ErrorCode::InvalidInput, "pad thickness must be positive");
  const CellId out = k.outside_cell();
  const Cell3& shell = k.cell(out);

  // Outward normals of the domain at each boundary face.
  std::vector<Vec3> normal(shell.faces.size());
  for (std::size_t i = 0; i < shell.faces.size(); ++i) normal[i] = -k.outward_normal(out, i);

  std::vector<Vec3> pts(k.points().begin(), k.points().end());
  std::map<VertexId, VertexId> outer;
  for (VertexId v : k.cell_vertices(out)) {
    std::vector<Vec3> ns;
    for (std::size_t i = 0; i < shell.faces.size(); ++i) {
      if (!k.face_has_vertex(shell.faces[i], v)) continue;
      if (std::none_of(ns.begin(), ns.end(), [&](const Vec3& n) { return n.dot(normal[i]) > 1 - 1e-9; }))
        ns.push_back(normal[i]);
    }
    Eigen::MatrixXd a(ns.size(), 3);
    for (std::size_t r = 0; r < ns.size(); ++r) a.row(r) = ns[r].transpose();
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(ns.size(), -thickness);
    const Vec3 delta = a.completeOrthogonalDecomposition().solve(rhs);
    outer[v] = static_cast<VertexId>(pts.size());
    pts.push_back(k.point(v));
    pts[v] = k.point(v) + delta;
  }

  std::vector<std::vector<VertexId>> faces;
  for (FaceId f = 0; f < static_cast<FaceId>(k.num_faces()); ++f) faces.push_back(k.face(f).cycle);
  std::vector<std::vector<FaceId>> cells = faces_of(k, k.interior_cells());
  std::map<EdgeId, FaceId> lateral;
  for (FaceId f : shell.faces) {
    const auto& cy = k.face(f).cycle;
    const auto& es = k.face(f).edges;
    std::vector<FaceId> pad{f};
    std::vector<VertexId> top;
    for (VertexId v : cy) top.push_back(outer.at(v));
    pad.push_back(static_cast<FaceId>(faces.size()));
    faces.push_back(std::move(top));
    for (std::size_t i = 0; i < cy.size(); ++i) {
      const VertexId a = cy[i], b = cy[(i + 1) % cy.size()];
      auto [it, fresh] = lateral.emplace(es[i], static_cast<FaceId>(faces.size()));
      if (fresh) faces.push_back({a, b, outer.at(b), outer.at(a)});
      pad.push_back(it->second);
    }
    cells.push_back(std::move(pad));
  }
  return build_complex_3d(std::move(pts), std::move(faces), std::move(cells), faces_of(k, k.hole_cells()));
}

}  // namespace euler
