#include "fixtures.hpp"

#include "euler/error.hpp"

#include <doctest.h>

#include <numeric>

using namespace euler;

TEST_CASE("2x1 strip counts and outside boundary") {
  const Complex2 k = fx::strip();
  CHECK(k.num_vertices() == 6);
  CHECK(k.num_edges() == 7);
  CHECK(k.interior_faces().size() == 2);
  REQUIRE(k.outside_face() != kInvalidId);
  CHECK(k.face(k.outside_face()).edges.size() == 6);
  CHECK(euler_characteristic(k) == 1);
  const ComplexStats s = stats(k);
  CHECK(s.vertex_degree[1] == 3);
  CHECK(s.vertex_degree[4] == 3);
  CHECK(std::accumulate(s.vertex_degree.begin(), s.vertex_degree.end(), 0) == 2 * 7);
}

TEST_CASE("clockwise input is normalised") {
  const Complex2 a = fx::unit_square();
  const Complex2 b = build_complex_2d({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 3, 2, 1}});
  CHECK(signed_area(b.face_points(b.interior_faces()[0])) == doctest::Approx(1.0));
  CHECK(b.num_edges() == a.num_edges());
  CHECK(b.face(b.outside_face()).cycle.size() == 4);
}

TEST_CASE("2D builder rejections") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 0}, {2, 1}};
  SUBCASE("duplicate face") {
    CHECK_THROWS_WITH_AS(build_complex_2d(pts, {{0, 1, 2, 3}, {1, 2, 3, 0}}), doctest::Contains("duplicate face"), Error);
  }
  SUBCASE("index out of range") { CHECK_THROWS_AS(build_complex_2d(pts, {{0, 1, 9}}), Error); }
  SUBCASE("non-simple polygon") {
    CHECK_THROWS_WITH_AS(build_complex_2d(pts, {{0, 2, 1, 3}}), doctest::Contains("non-simple"), Error);
  }
  SUBCASE("two faces sharing two edges without a common face") {
    // Both quads contain the path 1-2-5 but neither contains the other.
    const std::vector<Vec2> q{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {3, 3}, {2, 1}, {-1, 3}};
    CHECK_THROWS_WITH_AS(build_complex_2d(q, {{1, 5, 2, 3}, {1, 5, 4, 2}}), doctest::Contains("intersection"), Error);
  }
}

TEST_CASE("3D builder counts") {
  const Complex3 cube = fx::unit_cube();
  CHECK(cube.num_vertices() == 8);
  CHECK(cube.num_edges() == 12);
  CHECK(cube.num_faces() == 6);
  CHECK(cube.interior_cells().size() == 1);
  CHECK(cube.outside_cell() != kInvalidId);
  CHECK(euler_characteristic(cube) == 1);

  const Complex3 two = fx::two_cubes();
  CHECK(two.num_vertices() == 12);
  CHECK(two.num_edges() == 20);
  CHECK(two.num_faces() == 11);
  CHECK(two.interior_cells().size() == 2);
}

TEST_CASE("3D builder rejects a cell with a missing face") {
  std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  auto faces = fx::box_faces({0, 1, 2, 3, 4, 5, 6, 7});
  faces.pop_back();
  CHECK_THROWS_WITH_AS(build_complex_3d(pts, faces, {{0, 1, 2, 3, 4}}), doctest::Contains("non-closed"), Error);
}

TEST_CASE("stats: nu and pi") {
  const ComplexStats cube = stats(fx::unit_cube());
  CHECK(cube.max_cell_vertices == 8);
  CHECK(cube.max_face_edges == 4);
  const ComplexStats tet = stats(fx::regular_tetrahedron());
  CHECK(tet.max_cell_vertices == 4);
  CHECK(tet.max_face_edges == 3);
}

TEST_CASE("validation rules") {
  SUBCASE("single square violates rule 5 only") {
    const ValidationReport r = validate_assumptions(fx::unit_square());
    CHECK_FALSE(r.passed);
    CHECK(r.only(Rule::AdjacentBoundaryFacets));
  }
  SUBCASE("touching holes violate rule 3") {
    const ValidationReport r = validate_assumptions(fx::touching_holes());
    CHECK(r.has(Rule::HolesDisjoint));
  }
  SUBCASE("trapezium pyramid violates rule 6") {
    const ValidationReport r = validate_assumptions(fx::trapezium_pyramid());
    CHECK(r.has(Rule::VertexDegree));
  }
  SUBCASE("padded grid passes") {
    const Complex2 k = std::get<Complex2>(generate_mesh({.kind = "square-grid", .nx = 4, .ny = 4}));
    CHECK(validate_assumptions(k).passed);
  }
  SUBCASE("disconnected input violates rule 2") {
    const Complex2 k = build_complex_2d({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {3, 0}, {4, 0}, {4, 1}, {3, 1}},
                                        {{0, 1, 2, 3}, {4, 5, 6, 7}});
    CHECK(validate_assumptions(k).has(Rule::Connectivity));
  }
  SUBCASE("articulation vertex is a note, not a violation") {
    const ValidationReport r = validate_assumptions(fx::bowtie());
    CHECK_FALSE(r.has(Rule::Connectivity));
    CHECK_FALSE(r.notes.empty());
  }
  SUBCASE("validation is deterministic") {
    const Complex2 k = fx::touching_holes();
    CHECK(validate_assumptions(k) == validate_assumptions(k));
  }
}

TEST_CASE("Euler characteristic of an annulus is zero") {
  const Complex2 k = square_grid(3, 3, 1.0, true);
  CHECK(k.hole_faces().size() == 1);
  CHECK(euler_characteristic(k) == 0);
}

TEST_CASE("incidence symmetry and degree sum") {
  for (const Complex2& k : {fx::l_shape(), square_grid(3, 2), hex_grid(3, 3), clipped_voronoi(20, 3)}) {
    std::size_t deg = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(k.num_vertices()); ++v) {
      deg += k.vertex_edges(v).size();
      for (EdgeId e : k.vertex_edges(v)) CHECK((k.edge(e)[0] == v || k.edge(e)[1] == v));
    }
    CHECK(deg == 2 * k.num_edges());
    for (EdgeId e = 0; e < static_cast<EdgeId>(k.num_edges()); ++e)
      for (VertexId v : k.edge(e)) {
        const auto inc = k.vertex_edges(v);
        CHECK(std::find(inc.begin(), inc.end(), e) != inc.end());
      }
  }
}

TEST_CASE("face and hole areas fill the outer boundary") {
  const Complex2 k = square_grid(5, 5, 1.0, true);
  double holes = 0.0;
  for (FaceId h : k.hole_faces()) holes += std::abs(signed_area(k.face_points(h)));
  CHECK(fx::total_area(k) + holes == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("3D incidence and degree sum") {
  const Complex3 k = cubical_block(2, 2, 1);
  std::size_t deg = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_vertices()); ++v) deg += k.vertex_edges(v).size();
  CHECK(deg == 2 * k.num_edges());
  for (FaceId f = 0; f < static_cast<FaceId>(k.num_faces()); ++f) {
    const auto [a, b] = k.face_cells(f);
    CHECK(a != b);
    CHECK(a != kInvalidId);
    CHECK(b != kInvalidId);
  }
  CHECK(fx::total_volume(k) == doctest::Approx(4.0));
  for (CellId c : k.interior_cells())
    for (VertexId v : k.cell_vertices(c)) CHECK(k.degree_in_cell(c, v) == 3);
}
