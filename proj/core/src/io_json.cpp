#include "euler/error.hpp"
#include "euler/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace euler {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, "mesh JSON: " + what); }

std::vector<std::int32_t> id_list(const ojson& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of ids");
  std::vector<std::int32_t> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad(std::string(what) + " must contain integers");
    out.push_back(x.get<std::int32_t>());
  }
  return out;
}

std::vector<std::vector<std::int32_t>> id_lists(const ojson& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::vector<std::int32_t>> out;
  for (const auto& x : j) out.push_back(id_list(x, what));
  return out;
}

void check_range(const std::vector<std::int32_t>& ids, std::size_t n, const char* what) {
  for (auto i : ids)
    if (i < 0 || static_cast<std::size_t>(i) >= n) bad(std::string(what) + " id " + std::to_string(i) + " out of range");
}

}  // namespace

MeshDocument parse_mesh_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  static const std::set<std::string> known{"dim",   "vertices", "faces",     "cells",
                                           "holes", "outside",  "class",     "generator",
                                           "include_class_3_4"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) bad("unknown key \"" + key + "\"");
  MeshDocument d;
  if (!j.contains("dim") || !j["dim"].is_number_integer()) bad("missing integer \"dim\"");
  d.dim = j["dim"].get<int>();
  if (d.dim != 2 && d.dim != 3) bad("dim must be 2 or 3");
  if (!j.contains("vertices") || !j["vertices"].is_array()) bad("missing \"vertices\"");
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != static_cast<std::size_t>(d.dim)) bad("vertex arity must equal dim");
    Vec3 p = Vec3::Zero();
    for (int i = 0; i < d.dim; ++i) {
      if (!v[i].is_number()) bad("vertex coordinates must be numbers");
      p[i] = v[i].get<double>();
    }
    d.vertices.push_back(p);
  }
  if (!j.contains("faces")) bad("missing \"faces\"");
  d.faces = id_lists(j["faces"], "faces");
  for (const auto& f : d.faces) check_range(f, d.vertices.size(), "face vertex");
  if (j.contains("cells")) {
    if (d.dim != 3) bad("\"cells\" only allowed in 3D");
    d.cells = id_lists(j["cells"], "cells");
  }
  if (j.contains("holes")) d.holes = id_lists(j["holes"], "holes");
  if (j.contains("outside")) d.outside = id_list(j["outside"], "outside");
  const std::size_t target = d.dim == 2 ? d.vertices.size() : d.faces.size();
  for (const auto& c : d.cells) check_range(c, d.faces.size(), "cell face");
  for (const auto& h : d.holes) check_range(h, target, "hole");
  check_range(d.outside, target, "outside");
  if (j.contains("class")) {
    if (!j["class"].is_array()) bad("\"class\" must be an array");
    for (const auto& c : j["class"]) {
      if (!c.is_string()) bad("\"class\" entries must be strings");
      d.cell_class.push_back(c.get<std::string>());
    }
  }
  if (j.contains("generator")) d.generator = id_list(j["generator"], "generator");
  const std::size_t annotated = d.dim == 2 ? d.faces.size() : d.cells.size();
  if (!d.cell_class.empty() && d.cell_class.size() != annotated) bad("\"class\" length mismatch");
  if (!d.generator.empty() && d.generator.size() != annotated) bad("\"generator\" length mismatch");
  if (j.contains("include_class_3_4")) {
    if (!j["include_class_3_4"].is_boolean()) bad("include_class_3_4 must be a boolean");
    d.include_class_3_4 = j["include_class_3_4"].get<bool>();
  }
  return d;
}

std::string dump_mesh_json(const MeshDocument& d) {
  ojson j;
  j["dim"] = d.dim;
  ojson verts = ojson::array();
  for (const Vec3& p : d.vertices) {
    ojson v = ojson::array();
    for (int i = 0; i < d.dim; ++i) v.push_back(p[i]);
    verts.push_back(std::move(v));
  }
  j["vertices"] = std::move(verts);
  j["faces"] = d.faces;
  if (d.dim == 3) j["cells"] = d.cells;
  if (!d.holes.empty()) j["holes"] = d.holes;
  if (!d.outside.empty()) j["outside"] = d.outside;
  if (!d.cell_class.empty()) j["class"] = d.cell_class;
  if (!d.generator.empty()) j["generator"] = d.generator;
  if (!d.include_class_3_4) j["include_class_3_4"] = false;
  return j.dump(2) + "\n";
}

MeshDocument to_document(const Complex2& k) {
  MeshDocument d;
  d.dim = 2;
  for (const Vec2& p : k.points()) d.vertices.emplace_back(p.x(), p.y(), 0.0);
  for (FaceId f : k.interior_faces()) d.faces.push_back(k.face(f).cycle);
  for (FaceId f : k.hole_faces()) d.holes.push_back(k.face(f).cycle);
  return d;
}

MeshDocument to_document(const Complex3& k) {
  MeshDocument d;
  d.dim = 3;
  d.vertices.assign(k.points().begin(), k.points().end());
  for (FaceId f = 0; f < static_cast<FaceId>(k.num_faces()); ++f) d.faces.push_back(k.face(f).cycle);
  for (CellId c : k.interior_cells()) d.cells.push_back(k.cell(c).faces);
  for (CellId c : k.hole_cells()) d.holes.push_back(k.cell(c).faces);
  return d;
}

MeshDocument to_document(const TransformedComplex2& t) {
  MeshDocument d = to_document(t.complex);
  for (FaceId f : t.complex.interior_faces()) {
    d.cell_class.emplace_back(to_string(t.face_class[f]));
    d.generator.push_back(t.generator[f]);
  }
  return d;
}

MeshDocument to_document(const TransformedComplex3& t) {
  MeshDocument d;
  d.dim = 3;
  d.vertices = t.points;
  d.faces = t.faces;
  d.include_class_3_4 = t.include_class_3_4;
  for (std::size_t c = 0; c < t.cells.size(); ++c) {
    if (t.cell_class[c] == CellClass::Carried) {
      if (t.generator[c] == -1)
        d.outside = t.cells[c];
      else
        d.holes.push_back(t.cells[c]);
      continue;
    }
    d.cells.push_back(t.cells[c]);
    d.cell_class.emplace_back(to_string(t.cell_class[c]));
    d.generator.push_back(t.generator[c]);
  }
  return d;
}

Complex2 complex2_from(const MeshDocument& d) {
  if (d.dim != 2) throw Error(ErrorCode::InvalidInput, "expected a 2-complex");
  std::vector<Vec2> pts;
  for (const Vec3& p : d.vertices) pts.emplace_back(p.x(), p.y());
  return build_complex_2d(std::move(pts), d.faces, d.holes, d.outside);
}

Complex3 complex3_from(const MeshDocument& d) {
  if (d.dim != 3) throw Error(ErrorCode::InvalidInput, "expected a 3-complex");
  if (!d.include_class_3_4)
    throw Error(ErrorCode::InvalidInput, "transformed complex without Class-3 and Class-4 cells is not a complex");
  return build_complex_3d(d.vertices, d.faces, d.cells, d.holes, d.outside);
}

SkeletonGraph skeleton_graph(const MeshDocument& d) {
  SkeletonGraph g;
  for (const Vec3& p : d.vertices) g.add_vertex(p);
  std::set<std::pair<std::int32_t, std::int32_t>> seen;
  for (const auto& f : d.faces)
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto [a, b] = std::minmax(f[i], f[(i + 1) % f.size()]);
      if (seen.insert({a, b}).second) g.add_edge(a, b);
    }
  return g;
}

std::string tour_to_json(const SkeletonGraph& g, const Tour& tour) {
  ojson j;
  j["edges"] = g.num_edges();
  j["coverage"] = tour.steps.size();
  j["valid"] = is_valid_tour(g, tour);
  j["start"] = tour.start;
  j["turn_cost"] = tour.turn_cost;
  ojson walk = ojson::array();
  for (const auto& s : tour.steps) walk.push_back(ojson::array({s.from, s.to, s.edge}));
  j["walk"] = std::move(walk);
  return j.dump(2) + "\n";
}

std::string validation_to_json(const ValidationReport& r) {
  ojson j;
  j["passed"] = r.passed;
  ojson vs = ojson::array();
  for (const auto& v : r.violations)
    vs.push_back({{"rule", static_cast<int>(v.rule)}, {"name", to_string(v.rule)}, {"handles", v.handles}, {"message", v.message}});
  j["violations"] = std::move(vs);
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace euler
