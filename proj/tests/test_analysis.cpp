#include "fixtures.hpp"

#include "euler/analysis.hpp"
#include "euler/error.hpp"
#include "euler/io.hpp"

#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>

using namespace euler;

namespace {

// Largest inscribed circle of a convex CCW polygon by dense sampling.
double sampled_inradius(const std::vector<Vec2>& p, int n = 400) {
  Vec2 lo = p[0], hi = p[0];
  for (const Vec2& q : p) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  double best = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Vec2 x = lo + Vec2((hi.x() - lo.x()) * i / n, (hi.y() - lo.y()) * j / n);
      double d = 1e300;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Vec2 a = p[k], b = p[(k + 1) % p.size()];
        const Vec2 e = (b - a).normalized();
        d = std::min(d, e.x() * (x.y() - a.y()) - e.y() * (x.x() - a.x()));
      }
      best = std::max(best, d);
    }
  return best;
}

double brute_diameter(const std::vector<Vec2>& p) {
  double d = 0.0;
  for (const Vec2& a : p)
    for (const Vec2& b : p) d = std::max(d, (a - b).norm());
  return d;
}

Polyhedron poly_of(const Complex3& k) { return cell_polyhedron(k, k.interior_cells()[0]); }

Complex2 padded_grid() {
  const Complex2 g = square_grid(3, 3);
  return pad_boundary_2d(g, default_pad_thickness_2d(g));
}

}  // namespace

TEST_CASE("2D cell quality on reference shapes") {
  const double s3 = std::sqrt(3.0);
  CHECK(cell_quality_2d(fx::square_poly()).aspect == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(cell_quality_2d(fx::regular_polygon(3, 1.0)).aspect == doctest::Approx(2 * s3));
  const std::vector<Vec2> rect{{0, 0}, {10, 0}, {10, 1}, {0, 1}};
  CHECK(cell_quality_2d(rect).aspect == doctest::Approx(20.0998).epsilon(1e-5));
  const CellQuality sq = cell_quality_2d(fx::square_poly(2.0));
  CHECK(sq.min_edge == doctest::Approx(2.0));
  CHECK(sq.max_angle == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(cell_quality_2d(std::vector<Vec2>{{0, 0}, {1, 0}, {2, 0}}), Error);
}

TEST_CASE("2D cell quality against sampled oracles") {
  const std::vector<std::vector<Vec2>> shapes{
      fx::regular_polygon(5, 1.0), fx::regular_polygon(6, 0.7), {{0, 0}, {3, 0}, {2, 1.5}, {0.5, 1}},
      {{0, 0}, {4, 0}, {0, 1}}};
  for (const auto& p : shapes) {
    const CellQuality q = cell_quality_2d(p);
    CHECK(q.diameter == doctest::Approx(brute_diameter(p)));
    const double r = sampled_inradius(p);
    CHECK(q.inradius >= r - 1e-12);
    CHECK(q.inradius <= r + 0.02 * brute_diameter(p));
  }
}

TEST_CASE("3D cell quality on reference solids") {
  const double s3 = std::sqrt(3.0);
  CHECK(cell_quality_3d(poly_of(fx::unit_cube())).aspect == doctest::Approx(2 * s3));
  CHECK(cell_quality_3d(poly_of(fx::regular_tetrahedron())).aspect == doctest::Approx(2 * std::sqrt(6.0)));
  CHECK(cell_quality_3d(poly_of(fx::box(4, 1, 1))).aspect == doctest::Approx(6 * std::sqrt(2.0)));
}

TEST_CASE("aspect ratio is invariant under rigid motion and scaling") {
  const std::vector<Vec2> p{{0, 0}, {3, 0}, {2.5, 1.5}, {0.5, 1}};
  const double g = cell_quality_2d(p).aspect;
  for (double ang : {0.3, 1.1, 2.9}) {
    const Eigen::Rotation2Dd rot(ang);
    std::vector<Vec2> q;
    for (const Vec2& x : p) q.push_back(2.5 * (rot * x) + Vec2(7, -3));
    CHECK(cell_quality_2d(q).aspect == doctest::Approx(g).epsilon(1e-12));
  }
}

TEST_CASE("2D bounds on a padded square grid") {
  const Complex2 k = padded_grid();
  TransformOptions2 opt;
  const TransformedComplex2 t = euler_transform_2d(k, opt);
  const QualityBoundsReport r = verify_quality_bounds_2d(k, t, opt.lambda, opt.mu);
  CHECK(r.min_margin(CellClass::Class1) >= -1e-9);
  CHECK(r.min_margin(CellClass::Class1, "angle-multiset") >= -1e-9);

  // Interior edges give Class-2 quads with slack; boundary edges hit the bound exactly.
  double interior = 1e300, boundary = 1e300;
  for (const BoundCheck& c : r.checks) {
    if (c.cell_class != CellClass::Class2 || c.name != "max-angle") continue;
    const auto fs = k.edge_faces(c.generator);
    const bool on_boundary = !k.is_interior(fs[0]) || !k.is_interior(fs[1]);
    (on_boundary ? boundary : interior) = std::min(on_boundary ? boundary : interior, c.margin);
  }
  CHECK(interior > 1e-3);
  CHECK(std::abs(boundary) < 1e-9);
  CHECK(r.failures() > 0);
  CHECK(r.min_margin(CellClass::Class2, "aspect") > 0);
}

TEST_CASE("hex grid Class-3 geometric bounds") {
  const Complex2 h = hex_grid(4, 4);
  const Complex2 k = pad_boundary_2d(h, default_pad_thickness_2d(h));
  const TransformedComplex2 t = euler_transform_2d(k);
  const QualityBoundsReport r = verify_quality_bounds_2d(k, t, 0.4, 0.6);
  CHECK(r.min_margin(CellClass::Class3, "aspect-geometric") >= -1e-9);
  CHECK(r.min_margin(CellClass::Class3, "min-edge-geometric") >= -1e-9);
  CHECK(r.min_margin(CellClass::Class3, "max-angle") > 0);
  CHECK_FALSE(r.class3_angles.empty());
  for (const VertexAngles& a : r.class3_angles) CHECK(a.beta <= a.alpha + 1e-12);
}

TEST_CASE("3D Class-1 bound on cubes") {
  TransformOptions3 opt;
  opt.allow_rule5 = true;
  opt.b = 0.2;
  const Complex3 k = fx::unit_cube();
  const TransformedComplex3 t = euler_transform_3d(k, opt);
  const QualityBoundsReport r = verify_quality_bounds_3d(k, t);
  for (const BoundCheck& c : r.checks)
    if (c.cell_class == CellClass::Class1 && c.name == "aspect") {
      CHECK(c.limit == doctest::Approx(std::sqrt(3.0) / 0.3));
      CHECK(c.satisfied);
    }
  const Complex3 two = fx::two_cubes();
  const QualityBoundsReport r2 = verify_quality_bounds_3d(two, euler_transform_3d(two, opt));
  std::size_t prisms = 0;
  for (const BoundCheck& c : r2.checks)
    if (c.cell_class == CellClass::Class2 && c.name == "aspect") {
      ++prisms;
      CHECK(c.satisfied);
    }
  CHECK(prisms >= 1);
}

TEST_CASE("length budget") {
  const Complex2 k = padded_grid();
  const TransformedComplex2 t = euler_transform_2d(k);
  const auto [lo, hi] = measured_scale_range(k, t);
  CHECK(lo > 0);
  CHECK(lo <= hi);
  CHECK(hi < 1);
  const LengthBudget b = euclidean_length_bound(k, t, lo, hi);
  CHECK(b.applicable);
  CHECK(b.holds);
  CHECK(b.lower == doctest::Approx(2 * b.length));
  CHECK(b.upper == doctest::Approx((std::sqrt(5.0) + 2 * hi - std::sqrt(5.0) * lo) * b.length));
  CHECK(b.lower < b.transformed);
  CHECK(b.transformed < b.upper);
  CHECK(std::sqrt(5.0) * 0.6 + 1.2 == doctest::Approx(2.5416).epsilon(1e-4));

  const LengthBudget narrow = euclidean_length_bound(k, t, hi + 0.01, hi + 0.02);
  CHECK_FALSE(narrow.applicable);
}

TEST_CASE("report serialization") {
  const Complex2 k = padded_grid();
  const TransformedComplex2 t = euler_transform_2d(k);
  const QualityBoundsReport r = verify_quality_bounds_2d(k, t, 0.4, 0.6);
  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["checks"].size() == r.checks.size());
  CHECK(j["failures"].get<std::size_t>() == r.failures());
  const std::string table = report_to_table(r);
  CHECK(table.find("class1") != std::string::npos);
  CHECK(table.find("max-angle") != std::string::npos);
  const auto bj = nlohmann::json::parse(budget_to_json(euclidean_length_bound(k, t, 0.4, 0.6)));
  CHECK(bj.contains("holds"));
}
