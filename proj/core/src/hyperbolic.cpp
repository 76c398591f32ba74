#include "curvelab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvelab/error.hpp"

namespace curvelab {

Mat2 Mat2::unimodular(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0) || !std::isfinite(det)) fail(ErrorCode::NumericDegeneracy, "matrix with non-positive determinant");
  const double s = std::sqrt(det);
  return {a / s, b / s, c / s, d / s};
}

Mat2 Mat2::renormalized() const {
  const double dt = det();
  const double drift = std::abs(dt - 1);
  const double noise = 64 * std::numeric_limits<double>::epsilon() * (std::abs(a * d) + std::abs(b * c));
  if (drift > 1e-12 && drift > noise && dt > 0) {
    const double s = std::sqrt(dt);
    return {a / s, b / s, c / s, d / s};
  }
  return *this;
}

PantsCuffs PantsCuffs::make(double x, double y, double z) {
  for (double v : {x, y, z}) {
    if (!std::isfinite(v) || v < 0) fail(ErrorCode::InvalidArgument, "cuff lengths must be finite and >= 0");
  }
  return {x, y, z};
}

FNPoint FNPoint::make(PantsDecomposition decomposition, std::vector<double> lengths, std::vector<double> twists) {
  if (lengths.size() != decomposition.curves.size() || twists.size() != decomposition.curves.size()) {
    fail(ErrorCode::InvalidArgument, "need one (length, twist) pair per decomposition curve");
  }
  for (double l : lengths) {
    if (!(l > 0) || !std::isfinite(l)) fail(ErrorCode::InvalidArgument, "decomposition lengths must be positive");
  }
  for (double t : twists) {
    if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "twists must be finite");
  }
  return FNPoint{std::move(decomposition), std::move(lengths), std::move(twists)};
}

namespace {

using Quad4 = std::array<__float128, 4>;

Quad4 precise_product(const std::vector<PreciseMat>& gens, std::span<const Letter> word) {
  __float128 a = 1, b = 0, c = 0, d = 1;
  for (Letter l : word) {
    const auto& g = gens[static_cast<std::size_t>(std::abs(l) - 1)];
    const __float128 ga = l > 0 ? g[0] : g[3], gb = l > 0 ? g[1] : -g[1];
    const __float128 gc = l > 0 ? g[2] : -g[2], gd = l > 0 ? g[3] : g[0];
    const __float128 na = a * ga + b * gc, nb = a * gb + b * gd;
    const __float128 nc = c * ga + d * gc, nd = c * gb + d * gd;
    a = na, b = nb, c = nc, d = nd;
  }
  return {a, b, c, d};
}

}  // namespace

Mat2 Holonomy::image(std::span<const Letter> word) const {
  if (precise.size() == generators.size()) {
    const auto m = precise_product(precise, word);
    return Mat2{static_cast<double>(m[0]), static_cast<double>(m[1]), static_cast<double>(m[2]),
                static_cast<double>(m[3])};
  }
  Mat2 m = Mat2::identity();
  for (Letter l : word) {
    const Mat2& g = generators[static_cast<std::size_t>(std::abs(l) - 1)];
    m = (m * (l > 0 ? g : g.inverse())).renormalized();
  }
  return m;
}

double Holonomy::trace(std::span<const Letter> word) const {
  if (precise.size() == generators.size()) {
    const auto m = precise_product(precise, word);
    return static_cast<double>(m[0] + m[3]);
  }
  return image(word).trace();
}

double curve_length(const Holonomy& h, const CurveWord& w) {
  if (!(w.sig() == h.sig)) fail(ErrorCode::WrongSurface, "curve and holonomy on different surfaces");
  if (!h.known_curves.empty()) {
    const Word key = w.canonical();
    for (std::size_t i = 0; i < h.known_curves.size(); ++i) {
      if (h.known_curves[i].canonical() == key) return h.known_lengths[i];
    }
  }
  const double t = std::abs(h.trace(w.letters()));
  if (!std::isfinite(t)) fail(ErrorCode::NumericDegeneracy, "trace overflow for '" + w.str() + "'");
  if (t <= 2 + 1e-9) fail(ErrorCode::NotHyperbolic, "word '" + w.str() + "' is not hyperbolic (|trace| <= 2)");
  return 2 * std::acosh(t / 2);
}

double multicurve_length(const Holonomy& h, const Multicurve& m) {
  double total = 0;
  for (std::size_t i = 0; i < m.components.size(); ++i) {
    double l = 0;
    try {
      l = curve_length(h, m.components[i]);
    } catch (const CurveLabError& e) {
      throw CurveLabError(e.code(), "component " + std::to_string(i) + " ('" + m.components[i].str() + "'): " + e.what());
    }
    total = m.aggregator == Aggregator::Sum ? total + l : std::max(total, l);
  }
  return total;
}

double collar_width(double l) {
  if (!(l > 0)) fail(ErrorCode::InvalidArgument, "collar width needs a positive length");
  return std::asinh(1 / std::sinh(l / 2));
}

std::string to_string(Fig8 f) {
  switch (f) {
    case Fig8::XY: return "FIG8_XY";
    case Fig8::YZ: return "FIG8_YZ";
    case Fig8::XZ: return "FIG8_XZ";
  }
  return "?";
}

Holonomy pants_holonomy(const PantsCuffs& c) {
  const SurfaceSig sig = SurfaceSig::make(0, 3);
  const double t1 = -2 * std::cosh(c.x / 2);
  const double t2 = -2 * std::cosh(c.y / 2);
  const double s = -std::exp(-c.z / 2);
  Holonomy h{sig, {Mat2{t1, -1, 1, 0}, Mat2{0, s, -1 / s, t2}}, {}, {}, {}, std::nullopt};
  const double lengths[] = {c.x, c.y, c.z};
  const char* words[] = {"a", "b", "ab"};
  for (int i = 0; i < 3; ++i) {
    if (lengths[i] > 0) {
      h.known_curves.push_back(CurveWord::parse(sig, words[i]));
      h.known_lengths.push_back(lengths[i]);
    }
  }
  return h;
}

CurveWord fig8_word(Fig8 which) {
  const SurfaceSig sig = SurfaceSig::make(0, 3);
  switch (which) {
    case Fig8::XY: return CurveWord::parse(sig, "aB");
    case Fig8::YZ: return CurveWord::parse(sig, "bab");
    case Fig8::XZ: return CurveWord::parse(sig, "aab");
  }
  fail(ErrorCode::InvalidArgument, "unknown figure-eight class");
}

namespace {

bool is_boundary_class(const CurveWord& w) {
  const Word& l = w.letters();
  if (std::all_of(l.begin(), l.end(), [&](Letter x) { return x == l.front(); })) return true;
  const Word key = w.canonical();
  if (key.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] != (i % 2 == 0 ? 1 : 2)) return false;
  }
  return true;
}

double fig8_closed_form(double u, double v, double w) {
  return 2 * std::acosh(2 * std::cosh(u / 2) * std::cosh(v / 2) + std::cosh(w / 2));
}

double cuff(const PantsCuffs& c, Axis axis) {
  switch (axis) {
    case Axis::X: return c.x;
    case Axis::Y: return c.y;
    case Axis::Z: return c.z;
  }
  return 0;
}

PantsCuffs with_cuff(PantsCuffs c, Axis axis, double value) {
  switch (axis) {
    case Axis::X: c.x = value; break;
    case Axis::Y: c.y = value; break;
    case Axis::Z: c.z = value; break;
  }
  return c;
}

}  // namespace

double pants_interior_length(const PantsCuffs& c, const InteriorClass& which) {
  if (const auto* f = std::get_if<Fig8>(&which)) {
    switch (*f) {
      case Fig8::XY: return fig8_closed_form(c.x, c.y, c.z);
      case Fig8::YZ: return fig8_closed_form(c.y, c.z, c.x);
      case Fig8::XZ: return fig8_closed_form(c.x, c.z, c.y);
    }
  }
  const CurveWord& w = std::get<CurveWord>(which);
  if (!(w.sig() == SurfaceSig::make(0, 3))) fail(ErrorCode::WrongSurface, "pants words live on 0,3");
  if (is_boundary_class(w)) fail(ErrorCode::BoundaryClass, "word '" + w.str() + "' is a power of a cuff");
  return curve_length(pants_holonomy(c), w);
}

double stretch_derivative(const PantsCuffs& c, const InteriorClass& which, Axis axis, double h) {
  if (!(h >= 1e-6 && h <= 1e-2)) fail(ErrorCode::InvalidArgument, "finite-difference step must lie in [1e-6, 1e-2]");
  const double v = cuff(c, axis);
  auto f = [&](double value) { return pants_interior_length(with_cuff(c, axis, value), which); };
  if (v - h < 0) return (f(v + h) - f(v)) / h;
  auto central = [&](double step) { return (f(v + step) - f(v - step)) / (2 * step); };
  const double d1 = central(h);
  const double d2 = central(h / 2);
  if (std::abs(d1 - d2) > 1e-3 * std::abs(d2)) return (4 * d2 - d1) / 3;
  return d1;
}

SystoleEstimate systole_estimate(const Holonomy& h, int word_budget) {
  if (word_budget < 2) fail(ErrorCode::InvalidArgument, "systole word budget must be >= 2");
  std::vector<CurveWord> candidates = h.known_curves;
  const auto pool = enumerate_words(h.sig, word_budget);
  candidates.insert(candidates.end(), pool.begin(), pool.end());
  std::optional<SystoleEstimate> best;
  for (const auto& w : candidates) {
    double l = 0;
    try {
      l = curve_length(h, w);
    } catch (const CurveLabError& e) {
      if (e.code() == ErrorCode::NotHyperbolic) continue;
      throw;
    }
    if (!best || l < best->length) best = SystoleEstimate{l, w};
  }
  if (!best) fail(ErrorCode::SearchExhausted, "no hyperbolic word within budget");
  return *best;
}

}  // namespace curvelab
