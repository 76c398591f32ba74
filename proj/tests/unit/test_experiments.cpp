#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "curvelab/experiments.hpp"
#include "curvelab/serialize.hpp"

using namespace curvelab;
using testing::error_of;
using testing::sig;
using testing::word;

TEST_SUITE("experiments") {

TEST_CASE("grids and pinching") {
  const auto g = geometric_grid(4);
  CHECK(g == std::vector<double>{1, 0.5, 0.25, 0.125});
  const auto X = reference_point(pants_type(sig(2, 0), "theta"));
  const auto Y = pinch_family(X, {0, 2}, 0.1);
  CHECK(Y.lengths[0] == doctest::Approx(0.1 * X.lengths[0]));
  CHECK(Y.lengths[1] == X.lengths[1]);
  CHECK(Y.lengths[2] == doctest::Approx(0.1 * X.lengths[2]));
  CHECK(error_of([&] { pinch_family(X, {0}, 0); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { pinch_family(X, {5}, 0.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("a single slope stays short while its dual pinches") {
  const auto s = sig(1, 1);
  const auto m = Multicurve::make({word_of_slope(Slope::make(5, 7))});
  const auto series = boundedness_probe(s, m, enumerate_pants_types(s).front(), geometric_grid(8), 6);
  CHECK(series.classification == ProbeClass::Bounded);
  CHECK(series.i_min == 0);
  for (double v : series.min_lengths) CHECK(v <= 2 * series.min_lengths.front());
}

TEST_CASE("a filling pair carries a collar certificate") {
  const auto s = sig(1, 1);
  const auto m = Multicurve::make({word(s, "a"), word(s, "b")});
  const auto series = boundedness_probe(s, m, enumerate_pants_types(s).front(), geometric_grid(12), 6);
  CHECK(series.i_min == 1);
  CHECK(series.certified);
  for (std::size_t k = 0; k < series.t_values.size(); ++k) {
    CHECK(series.lower_bounds[k] <= series.min_lengths[k] + 1e-9);
    if (k > 0) CHECK(series.lower_bounds[k] > series.lower_bounds[k - 1]);
  }
  const auto csv = probe_csv(series, "h");
  CHECK(csv.rfind("# h\nt,min_length,lower_bound,i_min,certified\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 14);
}

TEST_CASE("thick samples") {
  const auto s = sig(1, 1);
  const auto a = thick_sample(s, 0.5, 12, 42);
  const auto b = thick_sample(s, 0.5, 12, 42);
  const auto c = thick_sample(s, 0.5, 12, 43);
  REQUIRE(a.points.size() == 12);
  bool differs = false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(fnpoint_record(a.points[i]) == fnpoint_record(b.points[i]));
    differs = differs || fnpoint_record(a.points[i]) != fnpoint_record(c.points[i]);
    CHECK(systole_estimate(build_holonomy(a.points[i]), 6).length >= 0.5);
  }
  CHECK(differs);
  CHECK(error_of([&] { thick_sample(s, 7.0, 3, 1); }) == ErrorCode::RejectionStalled);
  CHECK(error_of([&] { thick_sample(s, -1.0, 3, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Bers decomposition") {
  const auto b = bers_greedy(build_holonomy(modular_torus_point()), 6);
  CHECK(b.max_length == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-10));
  const auto s = sig(2, 0);
  const auto d = bers_greedy(build_holonomy(reference_point(pants_type(s, "dumbbell"))), 6);
  CHECK(d.decomposition.curves.size() == 3);
  CHECK(d.max_length <= 2.5 + 1e-9);
  CHECK(d.sum_length >= d.max_length);
}

TEST_CASE("homology bases") {
  const auto s = sig(2, 0);
  CHECK(symplectic_form({1, 0, 0, 0}, {0, 1, 0, 0}) == 1);
  CHECK(symplectic_form({0, 0, 1, 0}, {0, 0, 0, 1}) == 1);
  CHECK(symplectic_form({1, 0, 0, 0}, {0, 0, 0, 1}) == 0);
  const auto basis = homology_basis_search(build_holonomy(reference_point(pants_type(s, "theta"))), 6);
  REQUIRE(basis.curves.size() == 4);
  CHECK(verify_homology_basis(basis.curves).empty());
  CHECK_FALSE(verify_homology_basis({word(s, "a"), word(s, "b"), word(s, "a"), word(s, "b")}).empty());
  CHECK_FALSE(verify_homology_basis({word(s, "a"), word(s, "b"), word(s, "c"), word(s, "aD")}).empty());
}

TEST_CASE("empirical K is the largest orbit minimum") {
  const auto s = sig(1, 1);
  const auto sample = thick_sample(s, 0.5, 4, 1);
  const auto m = Multicurve::make({word(s, "a")});
  const double k = empirical_K(sample, m, 6);
  double worst = 0;
  for (const auto& X : sample.points) worst = std::max(worst, systole_estimate(build_holonomy(X), 8).length);
  CHECK(k == doctest::Approx(worst).epsilon(1e-9));
}

}  // TEST_SUITE
