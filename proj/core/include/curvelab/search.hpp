#pragma once
// Depth-bounded searches over mapping class group orbits, and the
// boundedness criterion assembled from them.
#include <optional>
#include <string>
#include <vector>

#include "curvelab/hyperbolic.hpp"
#include "curvelab/intersection.hpp"
#include "curvelab/topology.hpp"

namespace curvelab {

/// Key for a free homotopy class up to orientation: rounded log|trace| at a
/// fixed generic point of the surface plus the homology class up to sign.
/// Distinct words of one class (e.g. different Dehn-reduced forms) share it.
std::string curve_class_key(const CurveWord& c);

/// Worker count: CURVELAB_THREADS if set (>= 1), else hardware concurrency.
int worker_threads();

struct SearchOptions {
  /// Lift radius for intersection counts; 0 means default_radius(sig).
  int radius = 0;
  /// 0 means worker_threads().
  int threads = 0;
};

struct OrbitSearchReport {
  /// Minimal certified value found (an integer for intersection searches).
  double best_value = 0;
  MappingClassWord witness;
  /// Deepest BFS layer expanded.
  int depth_reached = 0;
  /// best_value is the minimum over the whole orbit.
  bool exhaustive = false;
  /// false when no visited state had a certified value; best_value is then
  /// the uncertified count at the identity.
  bool certified = true;
  /// States whose count could not be certified; kept for expansion only.
  int uncertified_states = 0;
  /// Distinct states visited.
  long states = 0;
};

/// Sum of intersections of the pants curves with the components of m,
/// raising the radius by one step when the first count is not certified.
IntersectionResult pants_intersection(const Holonomy& h, const PantsDecomposition& P, const Multicurve& m,
                                      int radius);

/// BFS from the identity over move sequences of length <= depth. On (1,1)
/// slope multicurves the search runs on slopes in exact arithmetic and is
/// exhaustive when it reaches the lattice minimum.
OrbitSearchReport orbit_min_intersection(const Holonomy& h, const PantsDecomposition& P, const Multicurve& m,
                                         int depth, const SearchOptions& options = {});

/// Least multicurve_length over the depth-ball of the orbit. Exhaustive on
/// (1,1) single slopes when the collar bound rules out every slope outside
/// the ball below the incumbent.
OrbitSearchReport orbit_min_length(const Holonomy& h, const Multicurve& m, int depth,
                                   const SearchOptions& options = {});

/// Exact min over primitive (c,d) of sum |c p_i + d q_i|: the least total
/// intersection of an image of the slopes with (1,0). Also returns a row.
struct SlopeLatticeMin {
  long value = 0;
  long c = 0;
  long d = 1;
};
SlopeLatticeMin slope_lattice_min(const std::vector<Slope>& slopes);

/// Lower bound on i(P, phi(m)) valid for every mapping class phi, from
/// homology: on (2,0) a simple separating component meets every
/// decomposition of nonseparating curves at least twice. 0 when nothing is
/// known.
long intersection_lower_bound(const PantsDecomposition& P, const Multicurve& m);

enum class Verdict { Bounded, Unbounded, Inconclusive };
std::string to_string(Verdict v);

struct PantsTypeResult {
  std::string tag;
  long min_intersection = 0;
  bool certified = true;
  bool exhaustive = false;
  MappingClassWord witness;
  /// Family member that achieved the minimum.
  std::size_t member = 0;
  int depth_reached = 0;
};

struct CriterionVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<PantsTypeResult> per_pants_type;
};

/// Runs orbit_min_intersection at the reference holonomy for every pants
/// type and every family member. BOUNDED needs a certified zero for each
/// type; UNBOUNDED needs one type with an exhaustive positive minimum over
/// all members.
CriterionVerdict criterion_check(const SurfaceSig& sig, const std::vector<Multicurve>& family, int depth,
                                 const SearchOptions& options = {});

}  // namespace curvelab
