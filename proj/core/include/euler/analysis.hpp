#pragma once

#include "euler/complex.hpp"
#include "euler/offset.hpp"
#include "euler/transform2d.hpp"
#include "euler/transform3d.hpp"

#include <span>
#include <string>
#include <vector>

namespace euler {

struct CellQuality {
  double diameter = 0.0;
  double inradius = 0.0;
  double aspect = 0.0;  // diameter / inradius
  double min_edge = 0.0;
  double max_edge = 0.0;
  double min_angle = 0.0;  // polygon corners; for cells, over all facet corners
  double max_angle = 0.0;
  bool approximate = false;  // inradius is a lower bound (nonconvex cell)
};

// Either orientation; throws InvalidInput for zero-area polygons.
CellQuality cell_quality_2d(std::span<const Vec2> poly);
CellQuality cell_quality_3d(const Polyhedron& t);

// One instantiated inequality. Upper bounds hold when value < limit (strict)
// or value <= limit; lower bounds mirror that. Equality checks compare within
// tolerance.
struct BoundCheck {
  enum class Kind { Upper, Lower, Equal };
  CellClass cell_class = CellClass::Class1;
  std::int32_t generator = kInvalidId;  // generating cell of K
  std::string name;
  Kind kind = Kind::Upper;
  bool strict = false;
  double value = 0.0;
  double limit = 0.0;
  double margin = 0.0;  // positive when satisfied with room to spare
  bool satisfied = false;
};

// Angle data of a Class-3 polygon around vertex v.
struct VertexAngles {
  VertexId vertex = kInvalidId;
  bool boundary = false;
  double alpha = 0.0;  // largest angle at v subtended by an edge of the polygon
  double beta = 0.0;   // smallest such angle
  double c = 0.0;      // 2|e~min| / (|e~max| cos(alpha/2))
  double c_bar = 0.0;  // 2|e~min| / (|e~max| L_sin)
  double l_sin = 0.0;  // sin(beta/2) sqrt((1 - sin(beta/2)) / (1 + sin(beta/2)))
};

struct QualityBoundsReport {
  std::vector<BoundCheck> checks;
  std::vector<VertexAngles> class3_angles;
  std::vector<std::string> notes;

  std::size_t failures() const;
  bool all_satisfied() const { return failures() == 0; }
  // Smallest margin over checks of one class and bound name ("" for any name).
  double min_margin(CellClass cls, const std::string& name = "") const;
};

// Bounds for the transform of a 2-complex. Each face uses the loosest ratios
// that make the derivation's premises true: lambda_f never above the user
// lambda or any achieved edge scale, mu_f never below mu or any achieved scale.
QualityBoundsReport verify_quality_bounds_2d(const Complex2& k, const TransformedComplex2& t, double lambda,
                                             double mu);
QualityBoundsReport verify_quality_bounds_3d(const Complex3& k, const TransformedComplex3& t);

// Smallest and largest |e_hat|/|e| over the offset edges of Class-1 faces.
std::pair<double, double> measured_scale_range(const Complex2& k, const TransformedComplex2& t);

struct LengthBudget {
  double length = 0.0;      // L over K
  double transformed = 0.0; // L-hat over the transformed complex
  double lambda_star = 0.0;
  double mu_star = 0.0;
  double lower = 0.0;       // 2L
  double upper = 0.0;       // (sqrt5 + 2 mu* - sqrt5 lambda*) L
  bool applicable = true;   // every offset edge scale lies in [lambda*, mu*]
  bool holds = false;
};

LengthBudget euclidean_length_bound(const Complex2& k, const TransformedComplex2& t, double lambda_star,
                                    double mu_star);

std::string report_to_json(const QualityBoundsReport& r);
std::string report_to_table(const QualityBoundsReport& r);
std::string budget_to_json(const LengthBudget& b);

}  // namespace euler
