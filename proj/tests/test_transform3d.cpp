#include "fixtures.hpp"

#include "euler/error.hpp"
#include "euler/transform3d.hpp"

#include <doctest.h>

using namespace euler;

namespace {

Complex3 padded(const Complex3& k) { return pad_boundary_3d(k, default_pad_thickness_3d(k)); }

void check_interior_degree_6(const TransformedComplex3& t) {
  const auto deg = t.degrees();
  std::size_t bad = 0, odd_boundary = 0;
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (t.is_boundary_copy(static_cast<VertexId>(v)))
      odd_boundary += deg[v] % 2;
    else
      bad += deg[v] != 6;
  }
  CHECK(bad == 0);
  CHECK(odd_boundary == 0);
}

double transformed_volume(const TransformedComplex3& t) { return fx::total_volume(t.to_complex()); }

}  // namespace

TEST_CASE("single cube: |T^| = |T|+|F|+|E|+|V| = 27") {
  TransformOptions3 opt;
  opt.allow_rule5 = true;
  const TransformedComplex3 t = euler_transform_3d(fx::unit_cube(), opt);
  CHECK(t.counts.cells == 27);
  CHECK(t.counts.vertices == 8);
}

TEST_CASE("rule violations are refused with remedies") {
  try {
    euler_transform_3d(fx::unit_cube());
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AssumptionViolation);
    CHECK(std::string(e.what()).find("pad_boundary_3d") != std::string::npos);
  }
  try {
    TransformOptions3 opt;
    opt.allow_rule5 = true;
    euler_transform_3d(fx::trapezium_pyramid(), opt);
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("pre_offset_fix_3d") != std::string::npos);
  }
}

TEST_CASE("degree-6 theorem and tight counts on padded cubical blocks") {
  for (int n : {1, 2}) {
    const Complex3 k = padded(cubical_block(n, n, n));
    REQUIRE(validate_assumptions(k).passed);
    const TransformedComplex3 t = euler_transform_3d(k);
    const std::size_t T = k.interior_cells().size();
    check_interior_degree_6(t);
    CHECK(t.counts.vertices == 8 * T);
    CHECK(t.counts.edges == 24 * T);
    CHECK(t.counts.cells == T + k.num_faces() + k.num_edges() + k.num_vertices());
    const ComplexStats s = stats(k);
    CHECK(t.counts.faces <= (s.max_face_edges + 2) * k.num_faces() + 2 * k.num_edges());
    CHECK(edge_face_incidence_check(t).passed);
    CHECK(check_connectivity_3d(t));
    CHECK(transformed_volume(t) == doctest::Approx(fx::total_volume(k)).epsilon(1e-9));
  }
}

TEST_CASE("tetrahedral block is tight with nu = 4") {
  const Complex3 k = padded(tet_block(1, 1, 1));
  REQUIRE(validate_assumptions(k).passed);
  const std::size_t T = k.interior_cells().size();
  const TransformedComplex3 t = euler_transform_3d(k);
  std::size_t tets = 0, nu_sum = 0;
  for (CellId c : k.interior_cells()) {
    tets += k.cell_vertices(c).size() == 4;
    nu_sum += k.cell_vertices(c).size();
  }
  CHECK(tets == 6);
  check_interior_degree_6(t);
  CHECK(t.counts.vertices == nu_sum);
  CHECK(t.counts.edges == 3 * nu_sum);
  CHECK(t.counts.vertices <= 8 * T);
}

TEST_CASE("provenance bijections and prism facet counts") {
  const Complex3 k = padded(fx::two_cubes());
  const TransformedComplex3 t = euler_transform_3d(k);
  std::size_t n[5] = {0, 0, 0, 0, 0};
  for (std::size_t c = 0; c < t.cells.size(); ++c) {
    ++n[static_cast<int>(t.cell_class[c])];
    if (t.cell_class[c] == CellClass::Class2)
      CHECK(t.cells[c].size() == k.face(t.generator[c]).cycle.size() + 2);
    if (t.cell_class[c] == CellClass::Class3) {
      const EdgeId e = t.generator[c];
      CHECK(t.cells[c].size() == k.edge_star(e).size() + 2);
    }
  }
  CHECK(n[1] == k.interior_cells().size());
  CHECK(n[2] == k.num_faces());
  CHECK(n[3] == k.num_edges());
  CHECK(n[4] == k.num_vertices());
}

TEST_CASE("omitting Classes 3 and 4 keeps the skeleton") {
  const Complex3 k = padded(cubical_block(2, 2, 2));
  TransformOptions3 opt;
  opt.include_class_3_4 = false;
  const TransformedComplex3 lean = euler_transform_3d(k, opt);
  const TransformedComplex3 full = euler_transform_3d(k);
  CHECK(lean.edges() == full.edges());
  check_interior_degree_6(lean);
  CHECK(check_connectivity_3d(lean));
  CHECK_FALSE(edge_face_incidence_check(lean).passed);
}

TEST_CASE("two cubes stay connected through the shared prism") {
  TransformOptions3 opt;
  opt.allow_rule5 = true;
  opt.include_class_3_4 = false;
  CHECK(check_connectivity_3d(euler_transform_3d(fx::two_cubes(), opt)));
  CHECK(check_connectivity_3d(euler_transform_3d(fx::unit_cube(), opt)));
}

TEST_CASE("ring planarization") {
  const Complex3 k = padded(cubical_block(2, 2, 1));
  TransformedComplex3 t = euler_transform_3d(k);
  SUBCASE("planar rings are untouched") {
    const auto before = t.points;
    const PlanarizeReport r = planarize_ring_polygons(t);
    CHECK(r.max_displacement == 0.0);
    CHECK(t.points == before);
  }
  SUBCASE("perturbed vertices return to the fitted plane") {
    std::size_t ring_index = 0;
    for (std::size_t i = 0; i < t.rings.size(); ++i)
      if (t.faces[t.rings[i].face].size() >= 4) ring_index = i;
    const RingPolygon& ring = t.rings[ring_index];
    const auto& cy = t.faces[ring.face];
    std::vector<std::size_t> movable;
    for (std::size_t i = 0; i < cy.size(); ++i)
      if (ring.slide_towards[i] != kInvalidId) movable.push_back(i);
    REQUIRE(movable.size() >= 2);
    std::vector<Vec3> pts;
    for (VertexId v : cy) pts.push_back(t.points[v]);
    const Vec3 n = newell_normal(pts).normalized();
    // One vertex pushed up and another pushed down, each along its sliding edge.
    for (int s : {0, 1}) {
      const VertexId v = cy[movable[s]];
      const Vec3 dir = (t.points[ring.slide_towards[movable[s]]] - t.points[v]).normalized();
      t.points[v] += (s ? -0.01 : 0.01) / std::abs(dir.dot(n)) * dir;
    }
    const std::size_t nv = t.points.size(), ne = t.edges().size();
    CHECK(ring_residual(t, ring) > 1e-3);
    const PlanarizeReport r = planarize_ring_polygons(t);
    CHECK(r.max_residual_after <= 1e-9 * 3.0);
    for (const auto& rg : t.rings) CHECK(ring_residual(t, rg) <= 1e-9 * 3.0);
    CHECK(t.points.size() == nv);
    CHECK(t.edges().size() == ne);
    check_interior_degree_6(t);
  }
}

TEST_CASE("pre-offset fix") {
  SUBCASE("trapezium pyramid apex becomes a quadrilateral") {
    const Complex3 k = fx::trapezium_pyramid();
    const Complex3 f = pre_offset_fix_3d(k, 0.2);
    CHECK_FALSE(validate_assumptions(f).has(Rule::VertexDegree));
    const CellId c = f.interior_cells()[0];
    std::size_t quads = 0;
    for (FaceId face : f.cell(c).faces) quads += f.face(face).cycle.size() == 4;
    CHECK(f.cell(c).faces.size() == 6);
    CHECK(quads == 6);  // the four sides lose their apex
    for (VertexId v : f.cell_vertices(c)) CHECK(f.degree_in_cell(c, v) == 3);
  }
  SUBCASE("octahedron: every vertex expands") {
    const Complex3 f = pre_offset_fix_3d(fx::octahedron(), 0.2);
    const CellId c = f.interior_cells()[0];
    CHECK(f.cell(c).faces.size() == 8 + 6);
    CHECK(f.cell_vertices(c).size() == 24);
    for (VertexId v : f.cell_vertices(c)) CHECK(f.degree_in_cell(c, v) == 3);
  }
  SUBCASE("degree-3 complex is unchanged") {
    const Complex3 k = fx::unit_cube();
    const Complex3 f = pre_offset_fix_3d(k, 0.2);
    CHECK(f.num_vertices() == k.num_vertices());
    CHECK(f.num_faces() == k.num_faces());
  }
  SUBCASE("cut past the middle of an edge") {
    try {
      pre_offset_fix_3d(fx::trapezium_pyramid(), 10.0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CombinatorialChange);
    }
  }
  SUBCASE("fixed pyramid transforms with degree 6") {
    const Complex3 f = padded(pre_offset_fix_3d(fx::trapezium_pyramid(), 0.2));
    REQUIRE(validate_assumptions(f).passed);
    check_interior_degree_6(euler_transform_3d(f));
  }
}
