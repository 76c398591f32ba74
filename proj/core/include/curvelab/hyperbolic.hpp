#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvelab/topology.hpp"

namespace curvelab {

/// Real 2x2 matrix; used with unit determinant as an element of SL(2,R).
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  static constexpr Mat2 identity() { return {1, 0, 0, 1}; }
  /// Divides by sqrt(det); throws NUMERIC_DEGENERACY for det <= 0.
  static Mat2 unimodular(double a, double b, double c, double d);

  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
  /// Inverse of a unit-determinant matrix.
  Mat2 inverse() const { return {d, -b, -c, a}; }
  /// Rescales to det 1 when the drift is both above 1e-12 and above the
  /// rounding noise of the determinant itself.
  Mat2 renormalized() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

/// Cuff lengths of a hyperbolic pair of pants; 0 is a cusp.
struct PantsCuffs {
  double x = 0, y = 0, z = 0;
  static PantsCuffs make(double x, double y, double z);
};

/// Fenchel-Nielsen coordinates on a fixed pants decomposition.
struct FNPoint {
  PantsDecomposition decomposition;
  std::vector<double> lengths;
  std::vector<double> twists;

  static FNPoint make(PantsDecomposition decomposition, std::vector<double> lengths, std::vector<double> twists);
  const SurfaceSig& sig() const { return decomposition.sig; }
};

/// Generator entries kept in quad precision (GCC/Clang __float128);
/// relations among the generators only hold to rounding, and long
/// conjugators or pinched curves amplify that.
using PreciseMat = std::array<__float128, 4>;

/// Holonomy representation: images of the free generators, plus the exact
/// lengths of the decomposition curves it was built from.
struct Holonomy {
  SurfaceSig sig;
  std::vector<Mat2> generators;
  std::vector<CurveWord> known_curves;
  std::vector<double> known_lengths;
  /// Same generators before rounding to double; empty means use generators.
  std::vector<PreciseMat> precise;
  /// (length, twist) when built from the (1,1) closed form, so consumers can
  /// rebuild the generators at any precision.
  std::optional<std::array<double, 2>> torus_closed_form;

  Mat2 image(std::span<const Letter> word) const;
  Mat2 image(const CurveWord& w) const { return image(w.letters()); }
  /// Trace of the image, taken before rounding the product to double.
  double trace(std::span<const Letter> word) const;
};

/// Largest accepted cuff length; cosh of larger values overflows products.
inline constexpr double kMaxCuffLength = 50.0;
/// Smallest accepted decomposition length on (1,1), built in closed form.
inline constexpr double kMinTorusLength = 1e-12;
/// Smallest accepted decomposition length on surfaces glued from pants.
inline constexpr double kMinGluedLength = 5e-8;

Holonomy build_holonomy(const FNPoint& X);

/// Dehn twist along decomposition curve i, as generator images, matching the
/// twist convention of build_holonomy: raising twist i by length i gives the
/// holonomy rho' with rho'(w) = rho(twist(w)).
std::vector<Word> dehn_twist_images(const PantsDecomposition& P, std::size_t i);
Word apply_substitution(std::span<const Word> images, std::span<const Letter> w);

/// Hyperbolic structure on (1,1) where a, b and ab all have trace 3.
FNPoint modular_torus_point();
/// A fixed reference point on each pants type (lengths 2.5, twists 0 unless
/// the type is the modular torus).
FNPoint reference_point(const PantsDecomposition& P);

double curve_length(const Holonomy& h, const CurveWord& w);
double multicurve_length(const Holonomy& h, const Multicurve& m);

/// Width of the standard collar, arcsinh(1 / sinh(l/2)).
double collar_width(double l);

enum class Fig8 { XY, YZ, XZ };
std::string to_string(Fig8 f);
using InteriorClass = std::variant<Fig8, CurveWord>;

/// Holonomy of the pants with cuffs (x,y,z): generators a and b with
/// traces -2cosh(x/2), -2cosh(y/2) and tr(ab) = -2cosh(z/2).
Holonomy pants_holonomy(const PantsCuffs& c);
/// Word of a figure-eight class in the pants generators.
CurveWord fig8_word(Fig8 which);
double pants_interior_length(const PantsCuffs& c, const InteriorClass& which);

enum class Axis { X, Y, Z };
double stretch_derivative(const PantsCuffs& c, const InteriorClass& which, Axis axis, double h = 1e-4);

struct SystoleEstimate {
  double length = 0;
  CurveWord word;
};
SystoleEstimate systole_estimate(const Holonomy& h, int word_budget);

}  // namespace curvelab
