#pragma once

#include "curvelab/hyperbolic.hpp"
#include "curvelab/topology.hpp"

namespace curvelab {

struct IntersectionResult {
  long count = 0;
  bool certified = false;
  int radius_used = 0;
};

/// |p1 q2 - q1 p2|.
long slope_intersection(const Slope& s1, const Slope& s2);

/// Counts crossings of the geodesics of a and b by linking of lifted axes.
/// Each cyclic rotation of a gets its own eigenframe; lifts of b are
/// W b' W^-1 for rotations b' of b and reduced W with |W| <= radius.
/// certified means the count with |W| <= radius - 1 was the same. When b is
/// conjugate to a (or its inverse) the self-intersection number is returned.
/// Long double first, __float128 when crossings are shallow or crowded.
/// Throws TANGENT_AXES when a lift is asymptotic to the axis of a to within
/// 1e-9 without coinciding with it.
IntersectionResult geodesic_intersection(const Holonomy& h, const CurveWord& a, const CurveWord& b, int radius);

/// Raises the radius from `radius` up to `max_radius` until certified.
IntersectionResult certified_intersection(const Holonomy& h, const CurveWord& a, const CurveWord& b, int radius,
                                          int max_radius);

IntersectionResult multicurve_pants_intersection(const Holonomy& h, const PantsDecomposition& P, const Multicurve& m,
                                                 int radius);

/// Self-intersection test at the reference point of the surface; throws
/// UNCERTIFIED if the count never settles.
bool is_simple_curve(const CurveWord& w);

/// Cached holonomy at reference_point(first pants type).
const Holonomy& reference_holonomy(const SurfaceSig& sig);

/// Default radius for a surface: 4 on rank 2, 3 on rank 3 and 4.
int default_radius(const SurfaceSig& sig);

}  // namespace curvelab
