#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "curvelab/hyperbolic.hpp"
#include "curvelab/serialize.hpp"

using namespace curvelab;
using testing::error_of;
using testing::sig;
using testing::word;

namespace {

FNPoint random_point(const PantsDecomposition& P, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.3, 4.0), tw(-2.0, 2.0);
  std::vector<double> l, t;
  for (std::size_t i = 0; i < P.curves.size(); ++i) {
    l.push_back(len(rng));
    t.push_back(tw(rng));
  }
  return FNPoint::make(P, l, t);
}

}  // namespace

TEST_SUITE("hyperbolic") {

TEST_CASE("figure-eight closed form") {
  CHECK(pants_interior_length(PantsCuffs::make(0, 0, 0), Fig8::XY) == doctest::Approx(2 * std::acosh(3.0)).epsilon(1e-12));
  const double c1 = std::cosh(1.0);
  CHECK(pants_interior_length(PantsCuffs::make(2, 2, 2), Fig8::XY) ==
        doctest::Approx(2 * std::acosh(2 * c1 * c1 + c1)).epsilon(1e-12));
  CHECK(pants_interior_length(PantsCuffs::make(1, 2, 3), Fig8::XY) ==
        doctest::Approx(pants_interior_length(PantsCuffs::make(2, 1, 3), Fig8::XY)).epsilon(1e-14));
  // the word form agrees with the closed form away from the cusps
  const auto c = PantsCuffs::make(0.7, 1.9, 2.4);
  for (Fig8 f : {Fig8::XY, Fig8::YZ, Fig8::XZ}) {
    CHECK(pants_interior_length(c, fig8_word(f)) == doctest::Approx(pants_interior_length(c, f)).epsilon(1e-10));
  }
  CHECK(error_of([] { pants_interior_length(PantsCuffs::make(1, 1, 1), CurveWord::parse(SurfaceSig::make(0, 3), "aa")); }) ==
        ErrorCode::BoundaryClass);
}

TEST_CASE("cusped pants and the modular torus") {
  const auto s = sig(0, 3);
  const auto h = build_holonomy(reference_point(pants_type(s, "pants")));
  CHECK(curve_length(h, word(s, "aB")) == doctest::Approx(3.525494348078172).epsilon(1e-12));
  for (const char* cusp : {"a", "b", "ab"}) {
    CHECK(std::abs(std::abs(h.trace(word(s, cusp).letters())) - 2) < 1e-7);
    CHECK(error_of([&] { curve_length(h, word(s, cusp)); }) == ErrorCode::NotHyperbolic);
  }
  const auto t = sig(1, 1);
  const auto m = build_holonomy(modular_torus_point());
  for (const char* w : {"a", "b", "ab"}) CHECK(curve_length(m, word(t, w)) == doctest::Approx(1.9248473002384139).epsilon(1e-12));
  CHECK(std::abs(std::abs(m.trace(word(t, "abAB").letters())) - 2) < 1e-7);
}

TEST_CASE("holonomy invariants at random points") {
  std::mt19937_64 rng(17);
  for (const auto& s : {sig(1, 1), sig(0, 4), sig(2, 0)}) {
    for (const auto& P : enumerate_pants_types(s)) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto X = random_point(P, rng);
        const auto h = build_holonomy(X);
        for (std::size_t i = 0; i < P.curves.size(); ++i) {
          CHECK(std::abs(h.trace(P.curves[i].letters())) == doctest::Approx(2 * std::cosh(X.lengths[i] / 2)).epsilon(1e-9));
        }
        if (s.closed()) {
          const Mat2 r = h.image(surface_relator(s));
          const double sg = r.a > 0 ? 1 : -1;
          CHECK(std::abs(r.a - sg) < 1e-7);
          CHECK(std::abs(r.b) < 1e-7);
          CHECK(std::abs(r.c) < 1e-7);
          CHECK(std::abs(r.d - sg) < 1e-7);
        } else if (s == sig(1, 1)) {
          CHECK(std::abs(std::abs(h.trace(word(s, "abAB").letters())) - 2) < 1e-7);
        } else {
          for (const char* cusp : {"a", "b", "c", "abc"}) CHECK(std::abs(std::abs(h.trace(word(s, cusp).letters())) - 2) < 1e-7);
        }
        for (const auto& g : h.generators) CHECK(std::abs(g.det() - 1) < 1e-9);
      }
    }
  }
}

TEST_CASE("lengths are invariant under rotation and inversion") {
  const auto s = sig(2, 0);
  const auto h = build_holonomy(reference_point(pants_type(s, "theta")));
  for (const auto& w : enumerate_words(s, 4)) {
    const double l = curve_length(h, w);
    Word rot = w.letters();
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    CHECK(curve_length(h, CurveWord(s, rot)) == doctest::Approx(l).epsilon(1e-10));
    CHECK(curve_length(h, w.inverted()) == doctest::Approx(l).epsilon(1e-10));
  }
}

TEST_CASE("a full twist acts as the Dehn twist") {
  std::mt19937_64 rng(5);
  for (const auto& s : {sig(1, 1), sig(0, 4), sig(2, 0)}) {
    for (const auto& P : enumerate_pants_types(s)) {
      const auto X = random_point(P, rng);
      const auto pool = enumerate_words(s, 3);
      for (std::size_t i = 0; i < P.curves.size(); ++i) {
        auto Y = X;
        Y.twists[i] += X.lengths[i];
        const auto hx = build_holonomy(X);
        const auto hy = build_holonomy(Y);
        const auto images = dehn_twist_images(P, i);
        for (const auto& w : pool) {
          const auto tw = apply_substitution(images, w.letters());
          CHECK(std::abs(hy.trace(w.letters())) == doctest::Approx(std::abs(hx.trace(tw))).epsilon(1e-6));
        }
      }
    }
  }
}

TEST_CASE("input ranges") {
  const auto P = pants_type(sig(2, 0), "theta");
  CHECK(error_of([&] { FNPoint::make(P, {1, 1}, {0, 0}); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { FNPoint::make(P, {1, -1, 1}, {0, 0, 0}); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { build_holonomy(FNPoint::make(P, {1, 60, 1}, {0, 0, 0})); }).has_value());
  CHECK(error_of([&] { build_holonomy(FNPoint::make(P, {1, 1e-10, 1}, {0, 0, 0})); }) == ErrorCode::NumericDegeneracy);
  CHECK(error_of([] { PantsCuffs::make(-1, 0, 0); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { stretch_derivative(PantsCuffs::make(1, 1, 1), Fig8::XY, Axis::X, 1.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("collar width grows like log(1/l)") {
  for (int k = 1; k <= 6; ++k) CHECK(collar_width(std::pow(10.0, -k)) >= k * std::log(10.0) - 2);
  CHECK(collar_width(1.0) == doctest::Approx(std::asinh(1 / std::sinh(0.5))));
}

TEST_CASE("stretching a cuff lengthens every figure eight") {
  const auto c = PantsCuffs::make(1, 1, 1);
  const double dx = stretch_derivative(c, Fig8::XY, Axis::X);
  const double dz = stretch_derivative(c, Fig8::XY, Axis::Z);
  const double l = pants_interior_length(c, Fig8::XY);
  const double exact = 2 * std::sinh(0.5) * std::cosh(0.5) / std::sinh(l / 2);
  CHECK(dx == doctest::Approx(exact).epsilon(1e-5));
  CHECK(dz > 0);
  CHECK(dz < dx);
  CHECK(stretch_derivative(PantsCuffs::make(0, 2, 3), Fig8::XY, Axis::X) > 0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 5);
  for (int i = 0; i < 100; ++i) {
    const auto t = PantsCuffs::make(u(rng), u(rng), u(rng));
    for (Fig8 f : {Fig8::XY, Fig8::YZ, Fig8::XZ}) {
      CHECK(pants_interior_length(PantsCuffs::make(5, 5, 5), f) > pants_interior_length(t, f));
    }
  }
}

TEST_CASE("systole estimate is monotone in the budget") {
  const auto h = build_holonomy(reference_point(pants_type(sig(2, 0), "dumbbell")));
  double prev = systole_estimate(h, 2).length;
  for (int b = 3; b <= 5; ++b) {
    const double cur = systole_estimate(h, b).length;
    CHECK(cur <= prev);
    prev = cur;
  }
  CHECK(error_of([&] { systole_estimate(h, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("FN records round trip") {
  std::mt19937_64 rng(8);
  for (const auto& P : enumerate_pants_types(sig(2, 0))) {
    const auto X = random_point(P, rng);
    const auto Y = parse_fnpoint_record(fnpoint_record(X));
    CHECK(Y.lengths == X.lengths);
    CHECK(Y.twists == X.twists);
    CHECK(Y.decomposition.tag == P.tag);
  }
  CHECK(error_of([] { parse_fnpoint_record("surface=2,0\ntype=theta\nlength=x, twist=0\n"); }) == ErrorCode::ParseError);
}

}  // TEST_SUITE
