#pragma once

#include "euler/complex.hpp"
#include "euler/planner.hpp"
#include "euler/transform2d.hpp"
#include "euler/transform3d.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace euler {

// In-memory form of the JSON complex document:
//   {"dim": 2|3, "vertices": [[x, y(, z)], ...], "faces": [[v, ...], ...],
//    "cells": [[f, ...], ...], "holes": [...], "outside": [...]}
// In 2D, holes and outside are vertex cycles; in 3D they are face-id lists.
// Transformed complexes add per-face (2D) or per-cell (3D) "class" and
// "generator" arrays.
struct MeshDocument {
  int dim = 2;
  std::vector<Vec3> vertices;  // z = 0 in 2D
  std::vector<std::vector<std::int32_t>> faces;
  std::vector<std::vector<std::int32_t>> cells;
  std::vector<std::vector<std::int32_t>> holes;
  std::vector<std::int32_t> outside;
  std::vector<std::string> cell_class;
  std::vector<std::int32_t> generator;
  bool include_class_3_4 = true;
};

// Throws InvalidInput on malformed documents and unknown keys.
MeshDocument parse_mesh_json(const std::string& text);
// Canonical form: two-space indent, keys in schema order, shortest
// round-tripping numbers, optional members omitted when empty.
std::string dump_mesh_json(const MeshDocument& doc);

MeshDocument to_document(const Complex2& k);
MeshDocument to_document(const Complex3& k);
MeshDocument to_document(const TransformedComplex2& t);
MeshDocument to_document(const TransformedComplex3& t);

Complex2 complex2_from(const MeshDocument& doc);
Complex3 complex3_from(const MeshDocument& doc);
// Edges of every face cycle, in order of first appearance.
SkeletonGraph skeleton_graph(const MeshDocument& doc);

std::string tour_to_json(const SkeletonGraph& g, const Tour& tour);
std::string validation_to_json(const ValidationReport& r);

// OFF import. A planar file (all z equal) becomes a 2-complex whose
// counterclockwise faces are cells and clockwise faces are holes. Otherwise the
// faces bound a single 3-cell.
MeshDocument parse_off(const std::string& text);

enum class SvgStyle { Faces, SkeletonOnly };
// Faces coloured by class when `face_class` is non-empty, in record order.
std::string export_svg(const Complex2& k, SvgStyle style = SvgStyle::Faces,
                       const std::vector<CellClass>& face_class = {});
// Vertices and the 1-skeleton as "l" line elements.
std::string export_obj(std::span<const Vec3> points, const std::vector<std::array<std::int32_t, 2>>& edges);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Generators. All are deterministic; the Voronoi generator depends only on
// the seed.
Complex2 square_grid(int nx, int ny, double cell = 1.0, bool center_hole = false);
Complex2 hex_grid(int cols, int rows, double radius = 1.0);
Complex2 clipped_voronoi(int sites, std::uint64_t seed, int lloyd_iterations = 5, double side = 1.0);
Complex3 cubical_block(int nx, int ny, int nz, double cell = 1.0);
// Every cube split into six tetrahedra around its main diagonal.
Complex3 tet_block(int nx, int ny, int nz, double cell = 1.0);

struct GenerateRequest {
  std::string kind;  // square-grid, hex-grid, clipped-voronoi, cubical-block, tet-block
  int nx = 4, ny = 4, nz = 4;
  int sites = 50;
  std::uint64_t seed = 1;
  bool hole = false;
  // Pad the boundary so that no cell has two adjacent boundary facets.
  bool pad = true;
};

std::variant<Complex2, Complex3> generate_mesh(const GenerateRequest& request);

}  // namespace euler
