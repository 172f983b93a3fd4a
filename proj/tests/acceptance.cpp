// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include "fixtures.hpp"

#include "euler/analysis.hpp"
#include "euler/error.hpp"
#include "euler/io.hpp"
#include "euler/offset.hpp"
#include "euler/planner.hpp"
#include "euler/transform2d.hpp"
#include "euler/transform3d.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace euler;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Input2 {
  std::string name;
  Complex2 k;
};

Complex2 padded(const Complex2& k) { return pad_boundary_2d(k, default_pad_thickness_2d(k)); }

Complex3 padded(const Complex3& k) { return pad_boundary_3d(k, default_pad_thickness_3d(k)); }

// The five generated inputs of criteria 1, 2, 8 and 9 (up to ~10^4 faces).
std::vector<Input2> criterion1_inputs(int scale) {
  std::vector<Input2> in;
  in.push_back({"square-grid", padded(square_grid(scale, scale))});
  in.push_back({"hex-grid", padded(hex_grid(scale, scale))});
  for (std::uint64_t seed : {1u, 2u, 3u})
    in.push_back({"voronoi-seed" + std::to_string(seed), padded(clipped_voronoi(scale * scale, seed))});
  return in;
}

bool all_degree(const std::vector<int>& deg, int d) {
  return std::all_of(deg.begin(), deg.end(), [&](int x) { return x == d; });
}

Verdict criterion1(const std::vector<Input2>& inputs) {
  Verdict v;
  std::ostringstream os;
  for (const auto& [name, k] : inputs) {
    const bool valid = validate_assumptions(k).passed;
    const auto t0 = std::chrono::steady_clock::now();
    const TransformedComplex2 t = euler_transform_2d(k);
    const double secs = seconds_since(t0);
    const bool ok = valid && all_degree(fx::degrees(t.complex), 4) && secs < 5.0;
    v.pass &= ok;
    os << name << " |F|=" << k.interior_faces().size() << " " << secs << "s" << (ok ? "" : " BAD") << "; ";
  }
  v.detail = os.str();
  return v;
}

Verdict criterion2(const std::vector<Input2>& inputs) {
  Verdict v;
  std::ostringstream os;
  auto all = inputs;
  all.push_back({"annulus", padded(square_grid(6, 6, 1.0, true))});
  for (const auto& [name, k] : all) {
    const TransformedComplex2 t = euler_transform_2d(k);
    const bool ok = t.counts.vertices == 2 * k.num_edges() && t.counts.edges == 4 * k.num_edges() &&
                    t.counts.faces == k.num_vertices() + k.num_edges() + k.interior_faces().size() &&
                    euler_characteristic(t.complex) == euler_characteristic(k);
    v.pass &= ok;
    if (!ok) os << name << " mismatch; ";
  }
  const long chi = euler_characteristic(all.back().k);
  v.pass &= chi == 0;
  os << "annulus chi=" << chi << ", " << all.size() << " inputs";
  v.detail = os.str();
  return v;
}

Verdict criterion3() {
  Verdict v;
  std::ostringstream os;
  for (const Input2& in : criterion1_inputs(10)) {
    const TransformedComplex2 t = euler_transform_2d(in.k);
    const std::size_t bad = fx::crossings(t.complex);
    v.pass &= bad == 0;
    os << in.name << " " << t.counts.edges << " edges " << bad << " crossings; ";
  }
  v.detail = os.str();
  return v;
}

Verdict criterion4(const std::vector<Input2>& inputs) {
  Verdict v;
  double worst2 = 0.0, worst3 = 0.0;
  for (const auto& in : inputs) {
    const double a = fx::total_area(in.k);
    worst2 = std::max(worst2, std::abs(fx::total_area(euler_transform_2d(in.k).complex) - a) / a);
  }
  std::mt19937_64 rng(4);
  std::vector<Complex3> solids{padded(cubical_block(2, 2, 2)), padded(cubical_block(3, 3, 3)),
                               padded(tet_block(2, 2, 2))};
  for (Complex3& k : solids) {
    TransformedComplex3 t = euler_transform_3d(k);
    // Nudge ring vertices along their sliding edges so planarization has work to do.
    for (const RingPolygon& r : t.rings) {
      const auto& cy = t.faces[r.face];
      for (std::size_t i = 0; i < cy.size(); ++i)
        if (r.slide_towards[i] != kInvalidId && rng() % 7 == 0)
          t.points[cy[i]] += 1e-3 * (t.points[r.slide_towards[i]] - t.points[cy[i]]);
    }
    planarize_ring_polygons(t);
    const double vol = fx::total_volume(k);
    worst3 = std::max(worst3, std::abs(fx::total_volume(t.to_complex()) - vol) / vol);
  }
  v.pass = worst2 <= 1e-9 && worst3 <= 1e-6;
  char buf[96];
  std::snprintf(buf, sizeof buf, "2D worst rel %.3g, 3D worst rel %.3g", worst2, worst3);
  v.detail = buf;
  return v;
}

Verdict criterion5() {
  Verdict v;
  std::ostringstream os;
  for (int n : {2, 3}) {
    const Complex3 k = padded(cubical_block(n, n, n));
    const TransformedComplex3 t = euler_transform_3d(k);
    const std::size_t T = k.interior_cells().size();
    const auto deg = t.degrees();
    std::size_t inner_bad = 0, boundary6 = 0, boundary_other = 0;
    for (std::size_t i = 0; i < deg.size(); ++i) {
      if (!t.is_boundary_copy(static_cast<VertexId>(i)))
        inner_bad += deg[i] != 6;
      else
        (deg[i] == 6 ? boundary6 : boundary_other) += 1;
    }
    const bool counts = t.counts.cells == T + k.num_faces() + k.num_edges() + k.num_vertices() &&
                        t.counts.vertices == 8 * T && t.counts.edges == 24 * T;
    v.pass &= inner_bad == 0 && boundary_other == 0 && counts;
    os << n << "^3 block: cell copies off 6: " << inner_bad << ", boundary copies deg 6: " << boundary6
       << ", other: " << boundary_other << ", counts " << (counts ? "exact" : "WRONG") << "; ";
  }
  TransformOptions3 opt;
  opt.allow_rule5 = true;
  const Complex3 tets = tet_block(1, 1, 1);
  const TransformedComplex3 tt = euler_transform_3d(tets, opt);
  const bool tight = tt.counts.vertices == 4 * tets.interior_cells().size();
  v.pass &= tight;
  os << "tet block |V^|=" << tt.counts.vertices << " vs 4|T|=" << 4 * tets.interior_cells().size();
  v.detail = os.str();
  return v;
}

Verdict criterion6() {
  Verdict v;
  std::ostringstream os;
  for (int n : {2, 3}) {
    const TransformedComplex3 t = euler_transform_3d(padded(cubical_block(n, n, n)));
    const ValidationReport r = edge_face_incidence_check(t);
    v.pass &= r.passed;
    os << n << "^3: " << t.edges().size() << " edges, " << r.violations.size() << " violations; ";
  }
  v.detail = os.str();
  return v;
}

Verdict criterion7() {
  Verdict v;
  const TransformedComplex3 t = euler_transform_3d(padded(cubical_block(3, 3, 3)));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1), w(0.3, 2.7);
  int planes = 0, redraws = 0, bad_degree = 0, components = 0, bad_tours = 0;
  while (planes < 20) {
    SlicePlane p;
    Vec3 n(u(rng), u(rng), u(rng));
    if (n.norm() < 0.1) continue;
    p.normal = n.normalized();
    p.offset = p.normal.dot(Vec3(w(rng), w(rng), w(rng)));
    SkeletonGraph s;
    try {
      s = slice_complex(t, p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateSlice) throw;
      ++redraws;
      continue;
    }
    ++planes;
    for (int i = 0; i < static_cast<int>(s.num_vertices()); ++i) bad_degree += s.degree(i) != 4;
    for (const SkeletonGraph& c : s.edge_components()) {
      ++components;
      try {
        bad_tours += !is_valid_tour(c, eulerian_tour(c));
      } catch (const Error&) {
        ++bad_tours;
      }
    }
  }
  v.pass = bad_degree == 0 && bad_tours == 0;
  v.detail = std::to_string(planes) + " planes (" + std::to_string(redraws) + " redrawn), " +
             std::to_string(components) + " components, " + std::to_string(bad_degree) + " vertices off degree 4, " +
             std::to_string(bad_tours) + " failed tours";
  return v;
}

Verdict criterion8(const std::vector<Input2>& inputs) {
  Verdict v;
  std::ostringstream os;
  std::map<std::string, std::size_t> failing;
  std::size_t checks = 0;
  for (const auto& in : inputs) {
    TransformOptions2 opt;  // lambda 0.4, mu 0.6, b auto
    const TransformedComplex2 t = euler_transform_2d(in.k, opt);
    const QualityBoundsReport r = verify_quality_bounds_2d(in.k, t, opt.lambda, opt.mu);
    checks += r.checks.size();
    // Strict bounds are satisfied only with positive margin.
    for (const BoundCheck& c : r.checks)
      if (!c.satisfied) ++failing[std::string(to_string(c.cell_class)) + "/" + c.name];
  }
  for (int n : {2, 3}) {
    const Complex3 k = padded(cubical_block(n, n, n));
    const QualityBoundsReport r = verify_quality_bounds_3d(k, euler_transform_3d(k));
    for (const BoundCheck& c : r.checks) {
      if (c.cell_class != CellClass::Class1) continue;
      ++checks;
      if (!c.satisfied) ++failing["3d-class1/" + c.name];
    }
  }
  v.pass = failing.empty();
  os << checks << " checks";
  for (const auto& [name, n] : failing) os << "; " << name << " violated: " << n;
  v.detail = os.str();
  return v;
}

Verdict criterion9(const std::vector<Input2>& inputs) {
  Verdict v;
  std::ostringstream os;
  for (const auto& in : inputs) {
    const TransformedComplex2 t = euler_transform_2d(in.k);
    const auto [lo, hi] = measured_scale_range(in.k, t);
    const LengthBudget b = euclidean_length_bound(in.k, t, lo, hi);
    v.pass &= b.applicable && b.holds;
    os << in.name << " " << b.lower << " < " << b.transformed << " < " << b.upper << (b.holds ? "" : " BAD") << "; ";
  }
  v.detail = os.str();
  return v;
}

Complex2 jittered_grid(int nx, int ny, std::mt19937_64& rng) {
  const Complex2 g = square_grid(nx, ny);
  std::uniform_real_distribution<double> u(-0.15, 0.15);
  std::vector<Vec2> pts;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) pts.push_back(g.point(v) + Vec2(u(rng), u(rng)));
  std::vector<std::vector<VertexId>> faces;
  for (FaceId f : g.interior_faces()) faces.push_back(g.face(f).cycle);
  return padded(build_complex_2d(pts, faces));
}

Verdict criterion10() {
  Verdict v;
  std::ostringstream os;
  const SkeletonGraph big = skeleton_graph(euler_transform_2d(padded(square_grid(68, 68))).complex);
  for (bool greedy : {false, true}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Tour t = greedy ? greedy_min_turn_tour(big) : eulerian_tour(big);
    const double secs = seconds_since(t0);
    const bool ok = is_valid_tour(big, t) && secs < 2.0;
    v.pass &= ok;
    os << (greedy ? "greedy " : "hierholzer ") << big.num_edges() << " edges " << secs << "s; ";
  }
  std::mt19937_64 rng(10);
  int wins = 0;
  for (int i = 0; i < 10; ++i) {
    const int nx = 3 + static_cast<int>(rng() % 10), ny = 3 + static_cast<int>(rng() % 10);
    const SkeletonGraph g = skeleton_graph(euler_transform_2d(jittered_grid(nx, ny, rng)).complex);
    const Tour h = eulerian_tour(g), f = greedy_min_turn_tour(g);
    v.pass &= is_valid_tour(g, h) && is_valid_tour(g, f);
    wins += f.turn_cost <= h.turn_cost + 1e-9;
  }
  v.pass &= wins >= 9;
  os << "greedy <= hierholzer on " << wins << "/10";
  v.detail = os.str();
  return v;
}

Verdict criterion11() {
  Verdict v;
  const TransformedComplex2 base = euler_transform_2d(padded(square_grid(15, 15, 10.0)));
  const auto domains = shrinking_square_domains({75.3, 74.6}, 140.0, 20.0, 20);
  const LayerPlan plan = build_layers(base, domains, 0.2);
  int odd_pre = 0, odd_post = 0, bad_tours = 0;
  for (const Layer& l : plan.layers) {
    odd_pre += l.odd_before_repair % 2 != 0;
    odd_post += !l.graph.odd_vertices().empty();
    std::vector<int> hits(l.graph.num_edges(), 0);
    for (const Tour& t : l.tours) {
      int at = t.start;
      for (const Traversal& s : t.steps) {
        if (s.from != at) ++bad_tours;
        ++hits[s.edge];
        at = s.to;
      }
      if (at != t.start) ++bad_tours;
    }
    for (int h : hits) bad_tours += h != 1;
  }
  const auto path = toolpath_from_plan(plan);
  const std::string text = write_toolpath(path);
  const bool round_trip = write_toolpath(parse_toolpath(text)) == text;
  v.pass = plan.layers.size() == 20 && odd_pre == 0 && odd_post == 0 && bad_tours == 0 && round_trip;
  v.detail = std::to_string(plan.layers.size()) + " layers, odd pre-repair counts " + std::to_string(odd_pre) +
             ", odd after repair " + std::to_string(odd_post) + ", tour defects " + std::to_string(bad_tours) +
             ", toolpath round trip " + (round_trip ? "ok" : "BROKEN");
  return v;
}

Verdict criterion12() {
  Verdict v;
  std::ostringstream os;
  const Complex2 sq = fx::unit_square();
  bool refused = false;
  try {
    euler_transform_2d(sq);
  } catch (const Error& e) {
    refused = e.code() == ErrorCode::AssumptionViolation;
  }
  const DoubleTransform2 d = double_transform_2d(sq);
  const bool deg4 = all_degree(fx::degrees(d.result.complex), 4);
  os << "square refused " << (refused ? "yes" : "no") << ", double transform degree 4 " << (deg4 ? "yes" : "no");

  bool pyr_refused = false;
  try {
    TransformOptions3 opt;
    opt.allow_rule5 = true;
    euler_transform_3d(fx::trapezium_pyramid(), opt);
  } catch (const Error& e) {
    pyr_refused = e.code() == ErrorCode::AssumptionViolation;
  }
  const Complex3 fixed = padded(pre_offset_fix_3d(fx::trapezium_pyramid(), 0.2));
  const auto deg = euler_transform_3d(fixed).degrees();
  const bool deg6 = all_degree(deg, 6);
  os << "; pyramid refused " << (pyr_refused ? "yes" : "no") << ", fixed pyramid degree 6 on " << deg.size()
     << " vertices " << (deg6 ? "yes" : "no");
  v.pass = refused && deg4 && pyr_refused && deg6;
  v.detail = os.str();
  return v;
}

}  // namespace

int main() {
  const std::vector<Input2> inputs = criterion1_inputs(90);
  const std::vector<std::function<Verdict()>> criteria{
      [&] { return criterion1(inputs); }, [&] { return criterion2(inputs); }, criterion3,
      [&] { return criterion4(inputs); }, criterion5, criterion6, criterion7,
      [&] { return criterion8(inputs); }, [&] { return criterion9(inputs); }, criterion10, criterion11, criterion12};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("criterion %zu: %s  %s\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
