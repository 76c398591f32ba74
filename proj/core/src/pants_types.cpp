#include <mutex>
#include <set>

#include "curvelab/error.hpp"
#include "curvelab/topology.hpp"

namespace curvelab {

namespace {

PantsDecomposition make_type(SurfaceSig sig, std::string tag, std::vector<std::string_view> words, DualGraph graph) {
  PantsDecomposition p{sig, std::move(tag), {}, std::move(graph)};
  for (auto w : words) p.curves.push_back(CurveWord::parse(sig, w));
  return p;
}

std::vector<PantsDecomposition> table_for(SurfaceSig sig) {
  if (sig.genus() == 0 && sig.cusps() == 3) {
    return {make_type(sig, "pants", {}, DualGraph{1, {}, {3}})};
  }
  if (sig.genus() == 1) {
    return {make_type(sig, "torus", {"a"}, DualGraph{1, {{0, 0}}, {1}})};
  }
  if (sig.genus() == 0) {
    return {make_type(sig, "sphere", {"ab"}, DualGraph{2, {{0, 1}}, {2, 2}})};
  }
  // Cutting along a and c leaves a four-holed sphere with boundary a, bAB,
  // c, dCD; bABc and abAB are the two ways of splitting it into pants.
  return {
      make_type(sig, "theta", {"a", "c", "bABc"}, DualGraph{2, {{0, 1}, {0, 1}, {0, 1}}, {0, 0}}),
      make_type(sig, "dumbbell", {"a", "c", "abAB"}, DualGraph{2, {{0, 0}, {0, 1}, {1, 1}}, {0, 0}}),
  };
}

void verify_table(SurfaceSig sig, const std::vector<PantsDecomposition>& table) {
  std::set<std::string> keys;
  for (const auto& p : table) {
    if (static_cast<int>(p.curves.size()) != sig.complexity()) {
      fail(ErrorCode::InvalidArgument, "pants type " + p.tag + " has wrong curve count");
    }
    if (!p.graph.trivalent() || p.graph.vertices != -sig.euler() ||
        static_cast<int>(p.graph.edges.size()) != sig.complexity()) {
      fail(ErrorCode::InvalidArgument, "pants type " + p.tag + " has a malformed dual graph");
    }
    keys.insert(dual_graph_key(p.graph));
  }
  if (static_cast<int>(keys.size()) != static_cast<int>(table.size()) ||
      count_dual_graph_types(sig) != static_cast<int>(table.size())) {
    fail(ErrorCode::InvalidArgument, "pants type table for " + sig.str() + " disagrees with graph enumeration");
  }
}

}  // namespace

std::vector<PantsDecomposition> enumerate_pants_types(SurfaceSig sig) {
  static std::once_flag verified;
  std::call_once(verified, [] {
    for (auto [g, n] : {std::pair{0, 3}, std::pair{1, 1}, std::pair{0, 4}, std::pair{2, 0}}) {
      const SurfaceSig s = SurfaceSig::make(g, n);
      verify_table(s, table_for(s));
    }
  });
  return table_for(sig);
}

PantsDecomposition pants_type(SurfaceSig sig, std::string_view tag) {
  auto types = enumerate_pants_types(sig);
  if (tag.empty()) return types.front();
  for (auto& p : types) {
    if (p.tag == tag) return p;
  }
  fail(ErrorCode::WrongSurface, "surface " + sig.str() + " has no pants type '" + std::string(tag) + "'");
}

}  // namespace curvelab
