#include "euler/error.hpp"
#include "euler/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace euler {

namespace {

// Next token, skipping '#' comments.
bool next_token(std::istream& in, std::string& tok) {
  while (in >> tok) {
    if (tok[0] != '#') return true;
    std::string rest;
    std::getline(in, rest);
  }
  return false;
}

template <class T>
T next_value(std::istream& in, const char* what) {
  std::string tok;
  if (!next_token(in, tok)) throw Error(ErrorCode::InvalidInput, std::string("OFF: missing ") + what);
  std::istringstream ts(tok);
  T v{};
  if (!(ts >> v) || !ts.eof()) throw Error(ErrorCode::InvalidInput, std::string("OFF: bad ") + what + " '" + tok + "'");
  return v;
}

}  // namespace

MeshDocument parse_off(const std::string& text) {
  std::istringstream in(text);
  std::string head;
  if (!next_token(in, head) || head != "OFF") throw Error(ErrorCode::InvalidInput, "OFF: missing header");
  const long nv = next_value<long>(in, "vertex count");
  const long nf = next_value<long>(in, "face count");
  next_value<long>(in, "edge count");
  if (nv < 0 || nf < 0) throw Error(ErrorCode::InvalidInput, "OFF: negative counts");
  MeshDocument d;
  for (long i = 0; i < nv; ++i) {
    Vec3 p;
    for (int k = 0; k < 3; ++k) p[k] = next_value<double>(in, "coordinate");
    d.vertices.push_back(p);
  }
  for (long i = 0; i < nf; ++i) {
    const long n = next_value<long>(in, "face size");
    if (n < 3) throw Error(ErrorCode::InvalidInput, "OFF: face with fewer than three vertices");
    std::vector<std::int32_t> f;
    for (long k = 0; k < n; ++k) {
      const long v = next_value<long>(in, "face index");
      if (v < 0 || v >= nv) throw Error(ErrorCode::InvalidInput, "OFF: face index out of range");
      f.push_back(static_cast<std::int32_t>(v));
    }
    d.faces.push_back(std::move(f));
  }
  const bool planar = std::all_of(d.vertices.begin(), d.vertices.end(),
                                  [&](const Vec3& p) { return p.z() == d.vertices.front().z(); });
  if (planar) {
    d.dim = 2;
    std::vector<std::vector<std::int32_t>> cells;
    for (auto& f : d.faces) {
      std::vector<Vec2> poly;
      for (auto v : f) poly.emplace_back(d.vertices[v].x(), d.vertices[v].y());
      if (signed_area(poly) < 0) {
        std::reverse(f.begin(), f.end());
        d.holes.push_back(f);
      } else {
        cells.push_back(f);
      }
    }
    d.faces = std::move(cells);
    for (auto& p : d.vertices) p.z() = 0.0;
  } else {
    d.dim = 3;
    d.cells.emplace_back();
    for (std::size_t f = 0; f < d.faces.size(); ++f) d.cells[0].push_back(static_cast<std::int32_t>(f));
  }
  return d;
}

namespace {

const char* fill_of(CellClass c) {
  switch (c) {
    case CellClass::Class1: return "#8fb8de";
    case CellClass::Class2: return "#f4c26b";
    case CellClass::Class3: return "#9ad19a";
    case CellClass::Class4: return "#d49ad1";
    case CellClass::Carried: return "#dddddd";
  }
  return "#ffffff";
}

}  // namespace

std::string export_svg(const Complex2& k, SvgStyle style, const std::vector<CellClass>& face_class) {
  Vec2 lo(0, 0), hi(1, 1);
  if (k.num_vertices() > 0) {
    lo = hi = k.point(0);
    for (const Vec2& p : k.points()) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
  const double size = 800.0, margin = 10.0, s = (size - 2 * margin) / span;
  auto map = [&](const Vec2& p) { return Vec2(margin + (p.x() - lo.x()) * s, size - margin - (p.y() - lo.y()) * s); };
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", size,
                size, size, size);
  out += buf;
  if (style == SvgStyle::Faces) {
    for (FaceId f : k.interior_faces()) {
      const char* fill = face_class.empty() ? "#cfe0f0" : fill_of(face_class[f]);
      out += "<polygon class=\"";
      out += face_class.empty() ? "face" : to_string(face_class[f]);
      out += "\" fill=\"";
      out += fill;
      out += "\" stroke=\"#222\" stroke-width=\"0.5\" points=\"";
      const auto& cy = k.face(f).cycle;
      for (std::size_t i = 0; i < cy.size(); ++i) {
        const Vec2 p = map(k.point(cy[i]));
        std::snprintf(buf, sizeof buf, "%s%.6g,%.6g", i ? " " : "", p.x(), p.y());
        out += buf;
      }
      out += "\"/>\n";
    }
  } else {
    for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) {
      const Vec2 a = map(k.point(k.edge(e)[0])), b = map(k.point(k.edge(e)[1]));
      std::snprintf(buf, sizeof buf,
                    "<line x1=\"%.6g\" y1=\"%.6g\" x2=\"%.6g\" y2=\"%.6g\" stroke=\"#222\" stroke-width=\"0.5\"/>\n",
                    a.x(), a.y(), b.x(), b.y());
      out += buf;
    }
  }
  out += "</svg>\n";
  return out;
}

std::string export_obj(std::span<const Vec3> points, const std::vector<std::array<std::int32_t, 2>>& edges) {
  std::string out;
  char buf[128];
  for (const Vec3& p : points) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
    out += buf;
  }
  for (const auto& e : edges) {
    std::snprintf(buf, sizeof buf, "l %d %d\n", e[0] + 1, e[1] + 1);
    out += buf;
  }
  return out;
}

}  // namespace euler
