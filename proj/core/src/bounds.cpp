#include "euler/analysis.hpp"
#include "euler/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>

namespace euler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStrictTol = 1e-12;
constexpr double kLooseTol = 1e-9;

void check(QualityBoundsReport& r, CellClass cls, std::int32_t gen, const char* name, BoundCheck::Kind kind,
           bool strict, double value, double limit) {
  BoundCheck c;
  c.cell_class = cls;
  c.generator = gen;
  c.name = name;
  c.kind = kind;
  c.strict = strict;
  c.value = value;
  c.limit = limit;
  const double scale = std::max(1.0, std::isfinite(limit) ? std::abs(limit) : 1.0);
  switch (kind) {
    case BoundCheck::Kind::Upper: c.margin = limit - value; break;
    case BoundCheck::Kind::Lower: c.margin = value - limit; break;
    case BoundCheck::Kind::Equal: c.margin = -std::abs(value - limit); break;
  }
  if (kind == BoundCheck::Kind::Equal)
    c.satisfied = -c.margin <= kLooseTol * scale;
  else if (strict)
    c.satisfied = c.margin > kStrictTol * scale;
  else
    c.satisfied = c.margin >= -kLooseTol * scale;
  r.checks.push_back(std::move(c));
}

using K = BoundCheck::Kind;

struct FaceParams {
  double lambda = 0.0;
  double mu = 0.0;
  CellQuality quality;
  double b = 0.0;
};

}  // namespace

std::size_t QualityBoundsReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.satisfied; }));
}

double QualityBoundsReport::min_margin(CellClass cls, const std::string& name) const {
  double m = kInf;
  for (const auto& c : checks)
    if (c.cell_class == cls && (name.empty() || c.name == name)) m = std::min(m, c.margin);
  return m;
}

QualityBoundsReport verify_quality_bounds_2d(const Complex2& k, const TransformedComplex2& t, double lambda,
                                             double mu) {
  QualityBoundsReport rep;
  const Complex2& kh = t.complex;
  std::map<std::pair<CellClass, std::int32_t>, std::vector<FaceId>> produced;
  for (FaceId f = 0; f < static_cast<FaceId>(kh.num_face_records()); ++f)
    produced[{t.face_class[f], t.generator[f]}].push_back(f);

  // Offset copy of K-vertex v inside K-face f, by corner.
  auto copy_in = [&](FaceId f, std::size_t corner) {
    return kh.face(produced.at({CellClass::Class1, f}).front()).cycle[corner];
  };

  std::map<FaceId, FaceParams> params;
  for (FaceId f : k.interior_faces()) {
    const auto poly = k.face_points(f);
    FaceParams p;
    p.quality = cell_quality_2d(poly);
    p.b = t.offsets[f];
    const std::size_t n = poly.size();
    double smin = kInf, smax = 0.0, rmin = kInf, rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = kh.point(copy_in(f, i)), b = kh.point(copy_in(f, (i + 1) % n));
      const double s = (b - a).norm() / (poly[(i + 1) % n] - poly[i]).norm();
      smin = std::min(smin, s);
      smax = std::max(smax, s);
      const double r = (a - poly[i]).norm();
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    const double emin = p.quality.min_edge, emax = p.quality.max_edge;
    p.lambda = std::min({lambda, smin, 1 - 2 * p.b / emin, 1 - std::sqrt(2.0) * rmax / emin});
    p.mu = std::max({mu, smax, 1 - 2 * p.b / emax, 1 - std::sqrt(2.0) * rmin / emax});
    if (p.lambda < lambda || p.mu > mu)
      rep.notes.push_back("face " + std::to_string(f) + ": effective ratios widened to [" + std::to_string(p.lambda) +
                          ", " + std::to_string(p.mu) + "]");
    params[f] = p;
  }
  // Vacuous when the effective ratios leave (0, 1).
  auto ratio_bound = [](double num, double lam, double m) {
    return (lam > 0 && m < 1) ? num : kInf;
  };

  // Class 1.
  for (FaceId f : k.interior_faces()) {
    const FaceParams& p = params[f];
    const FaceId fh = produced.at({CellClass::Class1, f}).front();
    const CellQuality q = cell_quality_2d(kh.face_points(fh));
    check(rep, CellClass::Class1, f, "aspect-lower", K::Lower, true, q.aspect, 2.0);
    check(rep, CellClass::Class1, f, "aspect", K::Upper, false, q.aspect,
          p.b < p.quality.inradius ? p.quality.aspect / (1 - p.b / p.quality.inradius) : kInf);
    check(rep, CellClass::Class1, f, "min-edge", K::Lower, false, q.min_edge, p.lambda * p.quality.min_edge);
    check(rep, CellClass::Class1, f, "max-angle", K::Equal, false, q.max_angle, p.quality.max_angle);
    auto a = interior_angles(k.face_points(f)), ah = interior_angles(kh.face_points(fh));
    std::sort(a.begin(), a.end());
    std::sort(ah.begin(), ah.end());
    double diff = a.size() == ah.size() ? 0.0 : kInf;
    for (std::size_t i = 0; i < std::min(a.size(), ah.size()); ++i) diff = std::max(diff, std::abs(a[i] - ah[i]));
    check(rep, CellClass::Class1, f, "angle-multiset", K::Equal, false, diff, 0.0);
  }

  // Class 2.
  for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e) {
    const auto it = produced.find({CellClass::Class2, e});
    if (it == produced.end()) continue;
    double lam = kInf, m = 0.0, theta = kInf;
    for (FaceId f : k.edge_faces(e)) {
      if (!k.is_interior(f)) continue;
      lam = std::min(lam, params[f].lambda);
      m = std::max(m, params[f].mu);
      theta = std::min(theta, params[f].quality.min_angle);
    }
    const double len = (k.point(k.edge(e)[1]) - k.point(k.edge(e)[0])).norm();
    const CellQuality q = cell_quality_2d(kh.face_points(it->second.front()));
    check(rep, CellClass::Class2, e, "aspect-lower", K::Lower, true, q.aspect, 2.0);
    check(rep, CellClass::Class2, e, "aspect", K::Upper, true, q.aspect,
          ratio_bound(4 * ((1 - lam) * std::sqrt(2.0) + 1) / ((1 - m) * lam * lam), lam, m));
    check(rep, CellClass::Class2, e, "min-edge", K::Lower, false, q.min_edge, (1 - m) * lam * len);
    check(rep, CellClass::Class2, e, "max-angle", K::Upper, true, q.max_angle, std::numbers::pi - theta / 2);
  }

  // Class 3.
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_vertices()); ++v) {
    const auto it = produced.find({CellClass::Class3, v});
    if (it == produced.end()) continue;
    double lam = kInf, m = 0.0, theta = kInf, emin = kInf, emax = 0.0;
    for (FaceId f : k.vertex_faces(v)) {
      if (!k.is_interior(f)) continue;
      lam = std::min(lam, params[f].lambda);
      m = std::max(m, params[f].mu);
      theta = std::min(theta, params[f].quality.min_angle);
      emin = std::min(emin, params[f].quality.min_edge);
      emax = std::max(emax, params[f].quality.max_edge);
    }
    const Vec2 pv = k.point(v);
    for (FaceId fh : it->second) {
      const auto& cy = kh.face(fh).cycle;
      VertexAngles va;
      va.vertex = v;
      double r = kInf, rr = 0.0;
      for (VertexId c : cy) {
        if (!k.is_interior(t.source_face[c])) {
          va.boundary = true;
          continue;
        }
        const double d = (kh.point(c) - pv).norm();
        r = std::min(r, d);
        rr = std::max(rr, d);
      }
      if (va.boundary && std::adjacent_find(t.offsets.begin(), t.offsets.end(), std::not_equal_to<>()) != t.offsets.end())
        rep.notes.push_back("vertex " + std::to_string(v) + ": boundary bound uses unequal offsets (conservative)");
      va.alpha = 0.0;
      va.beta = kInf;
      for (std::size_t i = 0; i < cy.size(); ++i) {
        const VertexId a = cy[i], b = cy[(i + 1) % cy.size()];
        if (!k.is_interior(t.source_face[a]) || !k.is_interior(t.source_face[b])) continue;
        const double ang = angle_between(Vec2(kh.point(a) - pv), Vec2(kh.point(b) - pv));
        va.alpha = std::max(va.alpha, ang);
        va.beta = std::min(va.beta, ang);
      }
      const double sb = std::sin(va.beta / 2);
      va.l_sin = sb * std::sqrt((1 - sb) / (1 + sb));
      va.c = 2 * emin / (emax * std::cos(va.alpha / 2));
      va.c_bar = 2 * emin / (emax * va.l_sin);
      const CellQuality q = cell_quality_2d(kh.face_points(fh));
      check(rep, CellClass::Class3, v, "aspect-lower", K::Lower, true, q.aspect, 2.0);
      if (!va.boundary) {
        check(rep, CellClass::Class3, v, "aspect-geometric", K::Upper, false, q.aspect,
              2 * rr / (r * std::cos(va.alpha / 2)));
        check(rep, CellClass::Class3, v, "aspect", K::Upper, true, q.aspect,
              ratio_bound(va.c * (1 - lam) / (1 - m), lam, m));
        check(rep, CellClass::Class3, v, "min-edge-geometric", K::Lower, false, q.min_edge, 2 * r * sb);
        check(rep, CellClass::Class3, v, "min-edge", K::Lower, true, q.min_edge,
              std::sqrt(2.0) * (1 - m) * emax * sb);
      } else {
        check(rep, CellClass::Class3, v, "aspect", K::Upper, true, q.aspect,
              ratio_bound(va.c_bar * (1 - lam) / (1 - m), lam, m));
        check(rep, CellClass::Class3, v, "min-edge-geometric", K::Lower, false, q.min_edge, std::min(r, 2 * r * sb));
        check(rep, CellClass::Class3, v, "min-edge", K::Lower, true, q.min_edge,
              std::sqrt(2.0) * (1 - m) * emax * std::min(0.5, sb));
      }
      check(rep, CellClass::Class3, v, "max-angle", K::Upper, true, q.max_angle, 2 * std::numbers::pi - theta);
      rep.class3_angles.push_back(va);
    }
  }
  return rep;
}

namespace {

void orient_outward(Polyhedron& p) {
  std::vector<std::vector<VertexId>> loops;
  for (const auto& f : p.faces) loops.emplace_back(f.begin(), f.end());
  if (enclosed_volume(p.points, loops) < 0)
    for (auto& f : p.faces) std::reverse(f.begin(), f.end());
}

// Inradius and incenter of a planar polygon given in 3D.
std::pair<double, Vec3> facet_incircle(const std::vector<Vec3>& pts) {
  const Vec3 n = newell_normal(pts).normalized();
  const Vec3 ax = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 u = n.cross(ax).normalized(), w = n.cross(u);
  const Vec3 o = vertex_centroid(pts);
  std::vector<Vec2> flat;
  for (const Vec3& p : pts) flat.emplace_back(u.dot(p - o), w.dot(p - o));
  if (signed_area(flat) < 0) std::reverse(flat.begin(), flat.end());
  if (is_convex(flat)) {
    const Ball2 b = chebyshev_ball(flat);
    return {b.radius, o + b.center.x() * u + b.center.y() * w};
  }
  return {inradius_2d(flat), o};
}

}  // namespace

QualityBoundsReport verify_quality_bounds_3d(const Complex3& k, const TransformedComplex3& t) {
  QualityBoundsReport rep;
  std::map<std::pair<VertexId, CellId>, VertexId> copy;
  for (VertexId i = 0; i < static_cast<VertexId>(t.points.size()); ++i)
    copy[{t.source_vertex[i], t.fixed_copy[i] ? kInvalidId : t.source_cell[i]}] = i;
  auto copy_of = [&](VertexId v, CellId c) {
    return copy.at({v, k.is_interior(c) ? c : kInvalidId});
  };

  std::map<CellId, CellQuality> quality;
  for (CellId c : k.interior_cells()) {
    const Polyhedron p = cell_polyhedron(k, c);
    quality[c] = cell_quality_3d(p);
    Polyhedron ph = p;
    const auto verts = k.cell_vertices(c);
    for (std::size_t i = 0; i < verts.size(); ++i) ph.points[i] = t.points[copy_of(verts[i], c)];
    const CellQuality q = cell_quality_3d(ph);
    const double b = t.offsets[c];
    const double rho = quality[c].inradius;
    check(rep, CellClass::Class1, c, "aspect-lower", K::Lower, true, q.aspect, 2.0);
    check(rep, CellClass::Class1, c, "aspect", K::Upper, true, q.aspect, b < rho ? quality[c].aspect / (1 - b / rho) : kInf);
    if (q.approximate || quality[c].approximate)
      rep.notes.push_back("cell " + std::to_string(c) + ": nonconvex, inradius is a lower bound");
  }

  for (FaceId f = 0; f < static_cast<FaceId>(k.num_faces()); ++f) {
    const auto [c0, c1] = k.face_cells(f);
    if (!k.is_interior(c0) && !k.is_interior(c1)) continue;
    const auto& cy = k.face(f).cycle;
    const std::size_t n = cy.size();
    Polyhedron prism;
    std::vector<Vec3> top, bottom;
    for (VertexId v : cy) {
      top.push_back(t.points[copy_of(v, c0)]);
      bottom.push_back(t.points[copy_of(v, c1)]);
    }
    prism.points = top;
    prism.points.insert(prism.points.end(), bottom.begin(), bottom.end());
    std::vector<int> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(static_cast<int>(i));
      b.push_back(static_cast<int>(2 * n - 1 - i));
      prism.faces.push_back({static_cast<int>((i + 1) % n), static_cast<int>(i), static_cast<int>(n + i),
                             static_cast<int>(n + (i + 1) % n)});
    }
    prism.faces.push_back(a);
    prism.faces.push_back(b);
    orient_outward(prism);
    const CellQuality q = cell_quality_3d(prism);

    const double d0 = k.is_interior(c0) ? quality[c0].diameter : 0.0;
    const double d1 = k.is_interior(c1) ? quality[c1].diameter : 0.0;
    const double b0 = k.is_interior(c0) ? t.offsets[c0] : 0.0;
    const double b1 = k.is_interior(c1) ? t.offsets[c1] : 0.0;
    const auto [r0, i0] = facet_incircle(top);
    const auto [r1, i1] = facet_incircle(bottom);
    const Vec3 normal = newell_normal(top).normalized();
    double skew = angle_between(Vec3(i1 - i0), normal);
    skew = std::min(skew, std::numbers::pi - skew);
    const double radius = std::min((b0 + b1) / 2, std::min(r0, r1)) * std::cos(skew);
    check(rep, CellClass::Class2, f, "aspect-lower", K::Lower, true, q.aspect, 2.0);
    check(rep, CellClass::Class2, f, "aspect", K::Upper, false, q.aspect, radius > 0 ? (d0 + d1) / radius : kInf);
  }
  return rep;
}

namespace {

const char* kind_name(BoundCheck::Kind k) {
  switch (k) {
    case BoundCheck::Kind::Upper: return "upper";
    case BoundCheck::Kind::Lower: return "lower";
    case BoundCheck::Kind::Equal: return "equal";
  }
  return "";
}

nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

std::string report_to_json(const QualityBoundsReport& r) {
  nlohmann::json j;
  j["failures"] = r.failures();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"class", to_string(c.cell_class)},
                           {"generator", c.generator},
                           {"bound", c.name},
                           {"kind", kind_name(c.kind)},
                           {"strict", c.strict},
                           {"value", number(c.value)},
                           {"limit", number(c.limit)},
                           {"margin", number(c.margin)},
                           {"satisfied", c.satisfied}});
  j["class3_angles"] = nlohmann::json::array();
  for (const auto& a : r.class3_angles)
    j["class3_angles"].push_back({{"vertex", a.vertex},
                                  {"boundary", a.boundary},
                                  {"alpha", number(a.alpha)},
                                  {"beta", number(a.beta)},
                                  {"C", number(a.c)},
                                  {"C_bar", number(a.c_bar)},
                                  {"L_sin", number(a.l_sin)}});
  j["notes"] = r.notes;
  return j.dump(2);
}

std::string report_to_table(const QualityBoundsReport& r) {
  struct Row {
    std::size_t count = 0, failed = 0;
    double margin = kInf;
  };
  std::map<std::pair<std::string, std::string>, Row> rows;
  for (const auto& c : r.checks) {
    Row& row = rows[{to_string(c.cell_class), c.name}];
    ++row.count;
    if (!c.satisfied) ++row.failed;
    row.margin = std::min(row.margin, c.margin);
  }
  std::string out = "class    bound               checks  failed  min-margin\n";
  char line[128];
  for (const auto& [key, row] : rows) {
    std::snprintf(line, sizeof line, "%-8s %-19s %6zu  %6zu  %.3e\n", key.first.c_str(), key.second.c_str(), row.count,
                  row.failed, row.margin);
    out += line;
  }
  return out;
}

std::string budget_to_json(const LengthBudget& b) {
  nlohmann::json j{{"L", b.length},         {"L_hat", b.transformed}, {"lambda_star", b.lambda_star},
                   {"mu_star", b.mu_star},   {"lower", b.lower},       {"upper", b.upper},
                   {"applicable", b.applicable}, {"holds", b.holds}};
  return j.dump(2);
}

}  // namespace euler
