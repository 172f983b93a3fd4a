#include "euler/analysis.hpp"
#include "euler/error.hpp"
#include "euler/io.hpp"
#include "euler/planner.hpp"
#include "euler/transform2d.hpp"
#include "euler/transform3d.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

using namespace euler;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefused = 2;
constexpr int kExitUsage = 64;

MeshDocument load(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".off") == 0) return parse_off(text);
  return parse_mesh_json(text);
}

// "auto" or a positive number.
std::optional<double> parse_offset(const std::string& s) {
  if (s == "auto") return std::nullopt;
  std::size_t used = 0;
  double b = 0.0;
  try {
    b = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(b > 0)) throw CLI::ValidationError("--b", "expected 'auto' or a positive number");
  return b;
}

void print_counts_2d(const Complex2& k, const TransformedComplex2& t) {
  const std::size_t v = k.num_vertices(), e = k.num_edges(), f = k.interior_faces().size();
  std::printf("K:     |V| = %zu  |E| = %zu  |F| = %zu  chi = %ld\n", v, e, f, euler_characteristic(k));
  std::printf("K-hat: |V^| = %zu (2|E| = %zu)  |E^| = %zu (4|E| = %zu)  |F^| = %zu (|V|+|E|+|F| = %zu)  chi = %ld\n",
              t.tallied.vertices, 2 * e, t.tallied.edges, 4 * e, t.tallied.faces, v + e + f,
              euler_characteristic(t.complex));
  if (t.counts.vertices != t.tallied.vertices || t.counts.edges != t.tallied.edges || t.counts.faces != t.tallied.faces)
    std::printf("built: |V^| = %zu  |E^| = %zu  |F^| = %zu\n", t.counts.vertices, t.counts.edges, t.counts.faces);
}

void print_counts_3d(const Complex3& k, const TransformedComplex3& t) {
  const std::size_t v = k.num_vertices(), e = k.num_edges(), f = k.num_faces(), c = k.interior_cells().size();
  std::printf("K:     |V| = %zu  |E| = %zu  |F| = %zu  |T| = %zu\n", v, e, f, c);
  std::printf("K-hat: |V^| = %zu  |E^| = %zu  |F^| = %zu  |T^| = %zu (|T|+|F|+|E|+|V| = %zu)\n", t.counts.vertices,
              t.counts.edges, t.counts.faces, t.counts.cells, c + f + e + v);
}

int run_validate(const std::string& in, bool json) {
  const MeshDocument doc = load(in);
  const ValidationReport r =
      doc.dim == 2 ? validate_assumptions(complex2_from(doc)) : validate_assumptions(complex3_from(doc));
  if (json) {
    std::cout << validation_to_json(r);
  } else {
    std::printf("%s\n", r.passed ? "valid" : "invalid");
    for (const auto& v : r.violations) std::printf("  rule %d (%s): %s\n", static_cast<int>(v.rule), to_string(v.rule), v.message.c_str());
    for (const auto& n : r.notes) std::printf("  note: %s\n", n.c_str());
  }
  return r.passed ? kExitOk : kExitRefused;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler transformation of polyhedral complexes"};
  app.require_subcommand(1);

  std::string in, out, b_text = "auto", kind, format = "svg", style = "faces";
  bool json = false, intermediate = false, twice = false, greedy = false, no34 = false, rule5 = false;
  bool planarize = false, hole = false, no_pad = false;
  double lambda = 0.4, mu = 0.6, height = 1.0, top_scale = 0.2, offset = 0.0;
  std::vector<double> normal{0, 0, 1};
  int count = 10;
  GenerateRequest gen;

  auto* validate = app.add_subcommand("validate", "check the structural assumptions");
  validate->add_option("--in", in, "input complex (JSON or OFF)")->required();
  validate->add_flag("--json", json, "machine-readable report");

  auto* t2 = app.add_subcommand("transform2d", "Euler-transform a 2-complex");
  t2->add_option("--in", in)->required();
  t2->add_option("--out", out, "transformed complex JSON");
  t2->add_option("--lambda", lambda)->check(CLI::Range(0.0, 1.0));
  t2->add_option("--mu", mu)->check(CLI::Range(0.0, 1.0));
  t2->add_option("--b", b_text, "offset distance or 'auto'");
  t2->add_flag("--intermediate", intermediate, "build the first stage of a double transform");
  t2->add_flag("--double", twice, "apply the double transform");

  auto* t3 = app.add_subcommand("transform3d", "Euler-transform a 3-complex");
  t3->add_option("--in", in)->required();
  t3->add_option("--out", out);
  t3->add_option("--b", b_text);
  t3->add_flag("--no-class34", no34, "omit Class-3 and Class-4 cells");
  t3->add_flag("--allow-rule5", rule5, "tally degenerate cells instead of refusing");
  t3->add_flag("--planarize", planarize, "flatten the ring polygons");

  auto* quality = app.add_subcommand("quality", "verify the quality bounds of the transform");
  quality->add_option("--in", in)->required();
  quality->add_option("--lambda", lambda)->check(CLI::Range(0.0, 1.0));
  quality->add_option("--mu", mu)->check(CLI::Range(0.0, 1.0));
  quality->add_option("--b", b_text);
  quality->add_flag("--json", json);

  auto* tour = app.add_subcommand("tour", "Eulerian tour of a transformed skeleton");
  tour->add_option("--in", in)->required();
  tour->add_option("--out", out, "tour JSON (stdout when omitted)");
  tour->add_flag("--greedy-turns", greedy, "minimise turning greedily");

  auto* slice = app.add_subcommand("slice", "slice a transformed 3-complex by a plane");
  slice->add_option("--in", in)->required();
  slice->add_option("--normal", normal)->expected(3);
  slice->add_option("--offset", offset);
  slice->add_option("--out", out, "slice graph as OBJ");

  auto* layers = app.add_subcommand("layers", "layered toolpath from a transformed 2-complex");
  layers->add_option("--in", in)->required();
  layers->add_option("--count", count)->check(CLI::PositiveNumber);
  layers->add_option("--height", height)->check(CLI::PositiveNumber);
  layers->add_option("--top-scale", top_scale, "top layer side as a fraction of the base")->check(CLI::Range(0.0, 1.0));
  layers->add_option("--out", out, "toolpath text");

  auto* generate = app.add_subcommand("generate", "generate a test mesh");
  generate->add_option("--kind", gen.kind)
      ->required()
      ->check(CLI::IsMember({"square-grid", "hex-grid", "clipped-voronoi", "cubical-block", "tet-block"}));
  generate->add_option("--nx", gen.nx)->check(CLI::PositiveNumber);
  generate->add_option("--ny", gen.ny)->check(CLI::PositiveNumber);
  generate->add_option("--nz", gen.nz)->check(CLI::PositiveNumber);
  generate->add_option("--sites", gen.sites)->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed);
  generate->add_flag("--hole", hole, "square grid with a centre hole");
  generate->add_flag("--no-pad", no_pad, "skip boundary padding");
  generate->add_option("--out", out);

  auto* exporter = app.add_subcommand("export", "export a complex as SVG or OBJ");
  exporter->add_option("--in", in)->required();
  exporter->add_option("--format", format)->check(CLI::IsMember({"svg", "obj"}));
  exporter->add_option("--style", style)->check(CLI::IsMember({"faces", "skeleton"}));
  exporter->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto emit = [&](const std::string& text) {
    if (out.empty())
      std::cout << text;
    else
      write_file(out, text);
  };

  try {
    if (*validate) return run_validate(in, json);

    if (*t2) {
      const Complex2 k = complex2_from(load(in));
      TransformOptions2 opt;
      opt.lambda = lambda;
      opt.mu = mu;
      opt.b = parse_offset(b_text);
      opt.intermediate = intermediate;
      TransformedComplex2 t;
      if (twice) {
        TransformOptions2 second = opt;
        second.b.reset();
        t = double_transform_2d(k, opt, second).result;
      } else {
        t = euler_transform_2d(k, opt);
      }
      print_counts_2d(k, t);
      if (!out.empty()) write_file(out, dump_mesh_json(to_document(t)));
      return kExitOk;
    }

    if (*t3) {
      const Complex3 k = complex3_from(load(in));
      TransformOptions3 opt;
      opt.b = parse_offset(b_text);
      opt.include_class_3_4 = !no34;
      opt.allow_rule5 = rule5;
      TransformedComplex3 t = euler_transform_3d(k, opt);
      print_counts_3d(k, t);
      if (planarize) {
        const PlanarizeReport r = planarize_ring_polygons(t);
        std::printf("planarize: %d passes, residual %.3e -> %.3e\n", r.passes, r.max_residual_before, r.max_residual_after);
      }
      if (!out.empty()) write_file(out, dump_mesh_json(to_document(t)));
      return kExitOk;
    }

    if (*quality) {
      const MeshDocument doc = load(in);
      QualityBoundsReport r;
      std::string budget;
      if (doc.dim == 2) {
        const Complex2 k = complex2_from(doc);
        TransformOptions2 opt;
        opt.lambda = lambda;
        opt.mu = mu;
        opt.b = parse_offset(b_text);
        const TransformedComplex2 t = euler_transform_2d(k, opt);
        r = verify_quality_bounds_2d(k, t, lambda, mu);
        const auto [ls, ms] = measured_scale_range(k, t);
        budget = budget_to_json(euclidean_length_bound(k, t, ls, ms));
      } else {
        const Complex3 k = complex3_from(doc);
        TransformOptions3 opt;
        opt.b = parse_offset(b_text);
        r = verify_quality_bounds_3d(k, euler_transform_3d(k, opt));
      }
      if (json) {
        std::cout << report_to_json(r) << "\n";
        if (!budget.empty()) std::cout << budget << "\n";
      } else {
        std::cout << report_to_table(r);
        for (const auto& n : r.notes) std::printf("note: %s\n", n.c_str());
        if (!budget.empty()) std::cout << "length budget: " << budget << "\n";
      }
      return kExitOk;
    }

    if (*tour) {
      const SkeletonGraph g = skeleton_graph(load(in));
      const Tour t = greedy ? greedy_min_turn_tour(g) : eulerian_tour(g);
      emit(tour_to_json(g, t));
      return kExitOk;
    }

    if (*slice) {
      const MeshDocument doc = load(in);
      if (doc.dim != 3 || !doc.include_class_3_4)
        throw Error(ErrorCode::InvalidInput, "slice needs a transformed 3-complex with Class-3 and Class-4 cells");
      SlicePlane plane;
      plane.normal = Vec3(normal[0], normal[1], normal[2]);
      if (plane.normal.norm() == 0) throw CLI::ValidationError("--normal", "must be nonzero");
      plane.normal.normalize();
      plane.offset = offset;
      const SkeletonGraph g = slice_polygons(doc.vertices, doc.faces, plane);
      std::size_t deg4 = 0;
      for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) deg4 += g.degree(v) == 4;
      std::printf("slice: %zu vertices, %zu edges, %zu of degree 4\n", g.num_vertices(), g.num_edges(), deg4);
      if (!out.empty()) write_file(out, export_obj(g.points(), g.edges()));
      return kExitOk;
    }

    if (*layers) {
      const MeshDocument doc = load(in);
      if (doc.dim != 2) throw Error(ErrorCode::InvalidInput, "layers need a transformed 2-complex");
      TransformedComplex2 base;
      base.complex = complex2_from(doc);
      Vec2 lo = base.complex.point(0), hi = lo;
      for (const Vec2& p : base.complex.points()) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
      }
      const double side = std::min(hi.x() - lo.x(), hi.y() - lo.y());
      const auto domains = shrinking_square_domains(0.5 * (lo + hi), side, side * top_scale, count);
      const LayerPlan plan = build_layers(base, domains, height);
      std::size_t repairs = 0;
      for (const auto& l : plan.layers) repairs += l.repair_edges.size();
      std::printf("layers: %zu, repair edges: %zu\n", plan.layers.size(), repairs);
      emit(write_toolpath(toolpath_from_plan(plan)));
      return kExitOk;
    }

    if (*generate) {
      gen.hole = hole;
      gen.pad = !no_pad;
      const auto mesh = generate_mesh(gen);
      const MeshDocument doc = std::visit([](const auto& k) { return to_document(k); }, mesh);
      emit(dump_mesh_json(doc));
      return kExitOk;
    }

    if (*exporter) {
      const MeshDocument doc = load(in);
      if (format == "obj") {
        const SkeletonGraph g = skeleton_graph(doc);
        write_file(out, export_obj(g.points(), g.edges()));
        return kExitOk;
      }
      if (doc.dim != 2) throw Error(ErrorCode::InvalidInput, "SVG export needs a 2-complex");
      const Complex2 k = complex2_from(doc);
      std::vector<CellClass> classes;
      if (!doc.cell_class.empty()) {
        classes.assign(k.num_face_records(), CellClass::Carried);
        const auto interior = k.interior_faces();
        for (std::size_t i = 0; i < interior.size(); ++i) {
          const std::string& c = doc.cell_class[i];
          classes[interior[i]] = c == "class1"   ? CellClass::Class1
                                 : c == "class2" ? CellClass::Class2
                                 : c == "class3" ? CellClass::Class3
                                                 : CellClass::Carried;
        }
      }
      write_file(out, export_svg(k, style == "skeleton" ? SvgStyle::SkeletonOnly : SvgStyle::Faces, classes));
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", to_string(e.code()), e.what());
    return e.code() == ErrorCode::AssumptionViolation ? kExitRefused : kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitOk;
}
