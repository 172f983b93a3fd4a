#include "fixtures.hpp"

#include "euler/error.hpp"
#include "euler/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <nlohmann/json.hpp>

using namespace euler;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

Complex2 padded(const Complex2& k) { return pad_boundary_2d(k, default_pad_thickness_2d(k)); }

}  // namespace

TEST_CASE("JSON round trip is byte-identical") {
  const Complex2 v = clipped_voronoi(20, 3);
  const std::string a = dump_mesh_json(to_document(v));
  const std::string b = dump_mesh_json(parse_mesh_json(a));
  CHECK(a == b);
  CHECK(a.back() == '\n');
  const Complex2 again = complex2_from(parse_mesh_json(a));
  CHECK(again.num_vertices() == v.num_vertices());
  CHECK(again.interior_faces().size() == v.interior_faces().size());
  CHECK(fx::total_area(again) == doctest::Approx(fx::total_area(v)).epsilon(1e-15));

  const Complex2 ring = square_grid(3, 3, 1.0, true);
  const Complex2 ring2 = complex2_from(parse_mesh_json(dump_mesh_json(to_document(ring))));
  CHECK(ring2.hole_faces().size() == 1);

  const Complex3 c = fx::two_cubes();
  const std::string s3 = dump_mesh_json(to_document(c));
  CHECK(dump_mesh_json(parse_mesh_json(s3)) == s3);
  const Complex3 c2 = complex3_from(parse_mesh_json(s3));
  CHECK(c2.interior_cells().size() == 2);
  CHECK(fx::total_volume(c2) == doctest::Approx(2.0));
}

TEST_CASE("transformed documents carry provenance") {
  const Complex2 k = padded(square_grid(2, 2));
  const TransformedComplex2 t = euler_transform_2d(k);
  const MeshDocument d = to_document(t);
  CHECK(d.cell_class.size() == t.counts.faces);
  const std::string s = dump_mesh_json(d);
  CHECK(dump_mesh_json(parse_mesh_json(s)) == s);
  const auto j = nlohmann::json::parse(s);
  CHECK(j.contains("class"));
  CHECK(j.contains("generator"));
  std::size_t c1 = 0;
  for (const auto& c : j["class"]) c1 += c.get<std::string>() == "class1";
  CHECK(c1 == k.interior_faces().size());

  const Complex3 b = cubical_block(1, 1, 1);
  const TransformedComplex3 t3 = euler_transform_3d(pad_boundary_3d(b, default_pad_thickness_3d(b)));
  const MeshDocument d3 = to_document(t3);
  CHECK(d3.dim == 3);
  CHECK(skeleton_graph(d3).num_edges() == t3.edges().size());
}

TEST_CASE("malformed documents are rejected") {
  const char* bad[] = {
      R"({"dim": 2, "vertices": [[0,0],[1,0],[0,1]], "faces": [[0,1,2]], "color": 1})",
      R"({"dim": 4, "vertices": [], "faces": []})",
      R"({"dim": 2, "vertices": [[0,0],[1,0],[0,1]], "faces": [[0,1,7]]})",
      R"({"dim": 2, "vertices": [[0,0]], "faces": "no"})",
      "not json",
  };
  for (const char* text : bad) {
    try {
      const MeshDocument d = parse_mesh_json(text);
      complex2_from(d);
      FAIL("accepted: " << text);
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::InvalidInput));
    }
  }
}

TEST_CASE("OFF import") {
  const MeshDocument flat = parse_off("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
  CHECK(flat.dim == 2);
  const Complex2 sq = complex2_from(flat);
  CHECK(fx::total_area(sq) == doctest::Approx(1.0));

  const MeshDocument tet = parse_off(
      "OFF\n# tetrahedron\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 1 2 3\n3 0 3 2\n");
  CHECK(tet.dim == 3);
  const Complex3 k = complex3_from(tet);
  CHECK(fx::total_volume(k) == doctest::Approx(1.0 / 6));
  CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n"), Error);
}

TEST_CASE("SVG and OBJ export") {
  const TransformedComplex2 t = euler_transform_2d(padded(square_grid(3, 2)));
  const std::string faces = export_svg(t.complex, SvgStyle::Faces, t.face_class);
  CHECK(count_of(faces, "<polygon") == t.counts.faces);
  CHECK(count_of(faces, "class=\"class2\"") > 0);
  const std::string lines = export_svg(t.complex, SvgStyle::SkeletonOnly);
  CHECK(count_of(lines, "<line") == t.counts.edges);
  const std::string empty = export_svg(Complex2{});
  CHECK(empty.find("<svg") != std::string::npos);
  CHECK(count_of(empty, "<polygon") == 0);

  const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const std::string obj = export_obj(pts, {{0, 1}, {1, 2}});
  CHECK(count_of(obj, "v ") == 3);
  CHECK(obj.find("l 1 2") != std::string::npos);
  CHECK(obj.find("l 2 3") != std::string::npos);
}

TEST_CASE("file helpers") {
  const auto path = std::filesystem::temp_directory_path() / "euler_io_test.txt";
  write_file(path.string(), "abc\n");
  CHECK(read_file(path.string()) == "abc\n");
  std::filesystem::remove(path);
  try {
    read_file((path.parent_path() / "definitely_missing_euler.json").string());
    FAIL("expected Io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("generators") {
  for (const char* kind : {"square-grid", "hex-grid", "clipped-voronoi"}) {
    GenerateRequest r;
    r.kind = kind;
    const Complex2 k = std::get<Complex2>(generate_mesh(r));
    CHECK_MESSAGE(validate_assumptions(k).passed, kind);
  }
  GenerateRequest holed{.kind = "square-grid", .nx = 5, .ny = 5, .hole = true};
  CHECK(std::get<Complex2>(generate_mesh(holed)).hole_faces().size() == 1);

  const std::string a = dump_mesh_json(to_document(clipped_voronoi(50, 7)));
  CHECK(a == dump_mesh_json(to_document(clipped_voronoi(50, 7))));
  CHECK(a != dump_mesh_json(to_document(clipped_voronoi(50, 8))));
  CHECK(clipped_voronoi(50, 7).interior_faces().size() == 50);
  CHECK(fx::total_area(clipped_voronoi(50, 7)) == doctest::Approx(1.0));

  const Complex3 cb = cubical_block(2, 3, 1);
  CHECK(cb.interior_cells().size() == 6);
  for (CellId c : cb.interior_cells())
    for (VertexId v : cb.cell_vertices(c)) CHECK(cb.degree_in_cell(c, v) == 3);
  CHECK(fx::total_volume(tet_block(2, 1, 1)) == doctest::Approx(2.0));

  for (const char* kind : {"cubical-block", "tet-block"}) {
    GenerateRequest r{.kind = kind, .nx = 2, .ny = 2, .nz = 2};
    CHECK_MESSAGE(validate_assumptions(std::get<Complex3>(generate_mesh(r))).passed, kind);
  }
  CHECK_THROWS_AS(generate_mesh({.kind = "klein-bottle"}), Error);
  CHECK_THROWS_AS(square_grid(0, 3), Error);
}
