#pragma once
#include <optional>
#include <random>
#include <string>

#include "curvelab/error.hpp"
#include "curvelab/topology.hpp"

namespace testing {

inline curvelab::SurfaceSig sig(int g, int n) { return curvelab::SurfaceSig::make(g, n); }

inline curvelab::CurveWord word(const curvelab::SurfaceSig& s, const std::string& text) {
  return curvelab::CurveWord::parse(s, text);
}

// Code of the CurveLabError thrown by f, or nullopt.
template <class F>
std::optional<curvelab::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const curvelab::CurveLabError& e) {
    return e.code();
  }
  return std::nullopt;
}

inline curvelab::MappingClassWord random_moves(const curvelab::SurfaceSig& s, int len, std::mt19937_64& rng) {
  const int n = static_cast<int>(curvelab::move_table(s).size());
  auto m = curvelab::MappingClassWord::identity(s);
  for (int i = 0; i < len; ++i) {
    const int k = 1 + static_cast<int>(rng() % n);
    m.moves.push_back(rng() % 2 ? k : -k);
  }
  return m;
}

}  // namespace testing
