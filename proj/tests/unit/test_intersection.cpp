#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "curvelab/intersection.hpp"

using namespace curvelab;
using testing::error_of;
using testing::sig;
using testing::word;

TEST_SUITE("intersection") {

TEST_CASE("slope counts on the modular torus") {
  const auto s = sig(1, 1);
  const auto& h = reference_holonomy(s);
  std::vector<Slope> slopes;
  for (long p = -4; p <= 4; ++p) {
    for (long q = 0; q <= 4; ++q) {
      if (std::gcd(p, q) == 1 && (q != 0 || p == 1)) slopes.push_back(Slope::make(p, q));
    }
  }
  int compared = 0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    for (std::size_t j = i; j < slopes.size(); ++j) {
      IntersectionResult r;
      if (error_of([&] { r = certified_intersection(h, word_of_slope(slopes[i]), word_of_slope(slopes[j]), 4, 6); })) {
        continue;  // tangent lifts
      }
      if (!r.certified) continue;
      ++compared;
      CHECK_MESSAGE(r.count == slope_intersection(slopes[i], slopes[j]), slopes[i].str() << " " << slopes[j].str());
    }
  }
  CHECK(compared >= 300);
}

TEST_CASE("self-intersection") {
  const auto s = sig(1, 1);
  CHECK(is_simple_curve(word(s, "a")));
  CHECK(is_simple_curve(word(s, "aab")));
  CHECK_FALSE(is_simple_curve(word(s, "aabb")));
  CHECK(is_simple_curve(word(s, "aB")));
  const auto p = sig(0, 3);
  // figure eight crosses itself once
  const auto r = geodesic_intersection(reference_holonomy(p), word(p, "aB"), word(p, "aB"), 4);
  CHECK(r.count == 1);
}

TEST_CASE("exact slope test agrees with the self-intersection engine") {
  const auto s = sig(1, 1);
  int compared = 0;
  for (const auto& w : enumerate_words(s, 8)) {
    if (homology_class(w) == std::vector<long>{0, 0}) continue;  // peripheral or null-homologous
    IntersectionResult r;
    if (error_of([&] { r = certified_intersection(reference_holonomy(s), w, w, 4, 6); }) || !r.certified) continue;
    ++compared;
    const bool exact = !error_of([&] { slope_of_word(w); });
    CHECK_MESSAGE(exact == (r.count == 0), w.str());
  }
  CHECK(compared > 500);
}

TEST_CASE("genus-two pants curves are disjoint") {
  const auto s = sig(2, 0);
  for (const auto& P : enumerate_pants_types(s)) {
    const auto& h = reference_holonomy(s);
    for (std::size_t i = 0; i < P.curves.size(); ++i) {
      for (std::size_t j = i + 1; j < P.curves.size(); ++j) {
        const auto r = certified_intersection(h, P.curves[i], P.curves[j], 3, 5);
        CHECK(r.certified);
        CHECK(r.count == 0);
      }
    }
  }
  const auto& h = reference_holonomy(s);
  CHECK(certified_intersection(h, word(s, "a"), word(s, "b"), 3, 5).count == 1);
  CHECK(certified_intersection(h, word(s, "a"), word(s, "d"), 3, 5).count == 0);
  CHECK(certified_intersection(h, word(s, "b"), word(s, "abAB"), 3, 5).count == 0);
}

TEST_CASE("counts are symmetric and invariant under rotation and mapping classes") {
  const auto s = sig(1, 1);
  const auto& h = reference_holonomy(s);
  const auto x = word(s, "aab");
  const auto y = word(s, "abb");
  const long n = certified_intersection(h, x, y, 4, 6).count;
  CHECK(n == 3);
  CHECK(certified_intersection(h, y, x, 4, 6).count == n);
  CHECK(certified_intersection(h, word(s, "aba"), word(s, "bab"), 4, 6).count == n);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = testing::random_moves(s, 3, rng);
    const auto r = certified_intersection(h, apply_mapping_class(m, x), apply_mapping_class(m, y), 4, 6);
    CHECK(r.certified);
    CHECK_MESSAGE(r.count == n, m.str());
  }
}

TEST_CASE("parabolic classes meet nothing") {
  const auto s = sig(1, 1);
  const auto r = geodesic_intersection(reference_holonomy(s), word(s, "abAB"), word(s, "a"), 3);
  CHECK(r.count == 0);
  CHECK(r.certified);
}

TEST_CASE("multicurve against a decomposition") {
  const auto s = sig(2, 0);
  const auto P = pants_type(s, "theta");
  const auto m = Multicurve::make({word(s, "b"), word(s, "d")});
  const auto r = multicurve_pants_intersection(reference_holonomy(s), P, m, 3);
  CHECK(r.certified);
  CHECK(r.count >= 2);
  CHECK(error_of([&] {
          multicurve_pants_intersection(reference_holonomy(sig(1, 1)), P, m, 3);
        }) == ErrorCode::WrongSurface);
}

TEST_CASE("default radius") {
  CHECK(default_radius(sig(1, 1)) == 4);
  CHECK(default_radius(sig(2, 0)) == 3);
}

}  // TEST_SUITE
