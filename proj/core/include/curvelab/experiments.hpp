#pragma once
// Pinching probes, greedy Bers decompositions, homology basis searches and
// thick-part sampling.
#include <cstdint>
#include <string>
#include <vector>

#include "curvelab/hyperbolic.hpp"
#include "curvelab/search.hpp"
#include "curvelab/topology.hpp"

namespace curvelab {

/// Scales the lengths of the listed decomposition curves by t in (0,1].
FNPoint pinch_family(const FNPoint& X, const std::vector<std::size_t>& targets, double t);

/// 1, r, r^2, ... (steps values).
std::vector<double> geometric_grid(int steps, double ratio = 0.5);

enum class ProbeClass { Bounded, Diverging, Undetermined };
std::string to_string(ProbeClass c);

struct ProbeOptions {
  /// BOUNDED: every min length <= bounded_factor * first.
  double bounded_factor = 2.0;
  /// DIVERGING: last min length > diverging_factor * first, with certified
  /// lower bounds rising over the final three steps.
  double diverging_factor = 10.0;
  SearchOptions search;
};

struct ProbeSeries {
  std::vector<double> t_values;
  std::vector<double> min_lengths;
  std::vector<double> lower_bounds;
  /// Least intersection of the orbit of m with P, at the reference point.
  long i_min = 0;
  /// i_min is the orbit minimum, so lower_bounds are certificates.
  bool certified = false;
  ProbeClass classification = ProbeClass::Undetermined;
  /// Base point whose P-lengths are scaled by t.
  FNPoint base;
  /// Set when the grid was cut at the holonomy builder's length floor.
  std::string note;
};

/// Pinches every curve of P from reference_point(P) along t_grid. At each t
/// the value is orbit_min_length at the given depth; the lower bound is
/// 2 i_min collar_width(t l) (divided by the component count for Max).
ProbeSeries boundedness_probe(const SurfaceSig& sig, const Multicurve& m, const PantsDecomposition& P,
                              const std::vector<double>& t_grid, int depth, const ProbeOptions& options = {});

struct BersResult {
  PantsDecomposition decomposition;
  std::vector<double> lengths;
  double max_length = 0;
  double sum_length = 0;
};

/// Shortest simple curves first, each disjoint from those already taken,
/// until the decomposition is complete. Simplicity and disjointness are
/// certified at the reference point (they are topological); uncertified
/// candidates are skipped.
BersResult bers_greedy(const Holonomy& h, int word_budget);

struct HomologyBasis {
  /// alpha1, beta1, alpha2, beta2.
  std::vector<CurveWord> curves;
  std::vector<double> lengths;
  double max_length = 0;
};

/// Algebraic intersection of two homology classes on (2,0) for the relator
/// [a,b][c,d].
long symplectic_form(const std::vector<long>& x, const std::vector<long>& y);

/// Depth-first over simple nonseparating candidates ordered by length:
/// alpha1, then beta1 meeting it once, then alpha2 and beta2 disjoint from
/// both and meeting each other once. The first complete basis is returned.
HomologyBasis homology_basis_search(const Holonomy& h, int word_budget);

/// Checks the intersection pattern with certified counts and that the
/// homology classes form a symplectic basis. Empty string when valid.
std::string verify_homology_basis(const std::vector<CurveWord>& curves);

struct ThickSample {
  std::vector<FNPoint> points;
  double epsilon = 0;
  std::uint64_t seed = 0;
  long rejected = 0;
  int word_budget = 0;
};

/// Lengths log-uniform in [epsilon, 6], twists uniform in [0, l); a point is
/// kept when systole_estimate at word_budget is >= epsilon. Deterministic in
/// the seed (mt19937_64).
ThickSample thick_sample(const SurfaceSig& sig, double epsilon, int count, std::uint64_t seed, int word_budget = 6);

/// Max over the sample of orbit_min_length: a lower bound for the constant
/// K(epsilon, surface, type).
double empirical_K(const ThickSample& sample, const Multicurve& m, int depth, const SearchOptions& options = {});

}  // namespace curvelab
