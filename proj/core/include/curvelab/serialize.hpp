#pragma once
// Text forms of FN points and probe series.
#include <string>
#include <string_view>

#include "curvelab/experiments.hpp"
#include "curvelab/hyperbolic.hpp"

namespace curvelab {

/// printf %.17g; round-trips every finite double.
std::string format_real(double x);

/// surface=g,n / type=TAG / one "length=..., twist=..." line per curve.
std::string fnpoint_record(const FNPoint& X);

/// Inverse of fnpoint_record. Throws PARSE_ERROR naming the bad line.
FNPoint parse_fnpoint_record(std::string_view text);

/// Columns t,min_length,lower_bound,i_min,certified. `header` (if nonempty)
/// is written first as a '#' comment line.
std::string probe_csv(const ProbeSeries& s, std::string_view header);

}  // namespace curvelab
