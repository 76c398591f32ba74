#include "curvelab/serialize.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "curvelab/error.hpp"

namespace curvelab {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fnpoint_record(const FNPoint& X) {
  std::string out = "surface=" + X.sig().str() + "\ntype=" + X.decomposition.tag + "\n";
  for (std::size_t i = 0; i < X.lengths.size(); ++i) {
    out += "length=" + format_real(X.lengths[i]) + ", twist=" + format_real(X.twists[i]) + "\n";
  }
  return out;
}

namespace {

double parse_real(std::string_view s, const std::string& line) {
  const std::string tmp(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || errno == ERANGE) {
    fail(ErrorCode::ParseError, "bad number in line '" + line + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

FNPoint parse_fnpoint_record(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<SurfaceSig> sig;
  std::string tag;
  bool have_tag = false;
  std::vector<double> lengths, twists;
  while (std::getline(in, line)) {
    const std::string_view l = trim(line);
    if (l.empty()) continue;
    if (l.substr(0, 8) == "surface=") {
      sig = SurfaceSig::parse(l.substr(8));
    } else if (l.substr(0, 5) == "type=") {
      tag = std::string(l.substr(5));
      have_tag = true;
    } else if (l.substr(0, 7) == "length=") {
      const auto comma = l.find(',');
      if (comma == std::string_view::npos) fail(ErrorCode::ParseError, "missing twist in line '" + line + "'");
      const auto rest = trim(l.substr(comma + 1));
      if (rest.substr(0, 6) != "twist=") fail(ErrorCode::ParseError, "missing twist in line '" + line + "'");
      lengths.push_back(parse_real(trim(l.substr(7, comma - 7)), line));
      twists.push_back(parse_real(trim(rest.substr(6)), line));
    } else {
      fail(ErrorCode::ParseError, "unexpected line '" + line + "'");
    }
  }
  if (!sig || !have_tag) fail(ErrorCode::ParseError, "record needs surface= and type= lines");
  return FNPoint::make(pants_type(*sig, tag), lengths, twists);
}

std::string probe_csv(const ProbeSeries& s, std::string_view header) {
  std::string out;
  if (!header.empty()) out += "# " + std::string(header) + "\n";
  out += "t,min_length,lower_bound,i_min,certified\n";
  for (std::size_t k = 0; k < s.t_values.size(); ++k) {
    out += format_real(s.t_values[k]) + "," + format_real(s.min_lengths[k]) + "," + format_real(s.lower_bounds[k]) +
           "," + std::to_string(s.i_min) + "," + (s.certified ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace curvelab
