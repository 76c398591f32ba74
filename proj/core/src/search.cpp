#include "curvelab/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "curvelab/error.hpp"
#include "parallel.hpp"

namespace curvelab {

int worker_threads() {
  if (const char* env = std::getenv("CURVELAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min(n, 256L));
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

IntersectionResult pants_intersection(const Holonomy& h, const PantsDecomposition& P, const Multicurve& m,
                                      int radius) {
  IntersectionResult r = multicurve_pants_intersection(h, P, m, radius);
  if (!r.certified) {
    r = multicurve_pants_intersection(h, P, m, radius + 1);
    r.radius_used = radius + 1;
  }
  return r;
}

namespace {

struct Eval {
  double value = 0;
  bool certified = true;
};

// Generic point with no symmetries: equal traces there mean equal curves for
// all practical purposes, unlike the reference point where a and c agree.
const Holonomy& generic_holonomy(const SurfaceSig& sig) {
  static std::mutex mu;
  static std::map<std::string, Holonomy> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(sig.str());
  if (it != cache.end()) return it->second;
  auto make = [&] {
    if (sig == SurfaceSig::make(0, 3)) return pants_holonomy(PantsCuffs::make(1.13, 1.71, 1.29));
    auto P = pants_type(sig, "");
    const double ls[] = {1.13, 1.71, 1.29}, ts[] = {0.37, -0.23, 0.61};
    const std::size_t k = P.curves.size();
    return build_holonomy(FNPoint::make(std::move(P), {ls, ls + k}, {ts, ts + k}));
  };
  return cache.emplace(sig.str(), make()).first->second;
}

std::string class_key(const Holonomy& g, const CurveWord& c) {
  const double t = std::abs(g.trace(c.letters()));
  auto hom = homology_class(c);
  const auto nz = std::find_if(hom.begin(), hom.end(), [](long x) { return x != 0; });
  if (nz != hom.end() && *nz < 0) {
    for (auto& x : hom) x = -x;
  }
  std::string key = std::to_string(std::llround(std::log(t) * 1e8));
  for (long x : hom) key += ',' + std::to_string(x);
  return key;
}

std::string word_state_key(const Holonomy& g, const Multicurve& m) {
  std::vector<std::string> parts;
  for (const auto& c : m.components) parts.push_back(class_key(g, c));
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) key += p + ';';
  return key;
}

std::vector<int> move_order(const SurfaceSig& sig) {
  std::vector<int> moves;
  const int n = static_cast<int>(move_table(sig).size());
  for (int i = 1; i <= n; ++i) {
    moves.push_back(i);
    moves.push_back(-i);
  }
  return moves;
}

// Layered BFS over move sequences. Visit order fixes the tie-break: parents
// in layer order, moves in move_order, so the first minimum found has the
// lexicographically least sequence among the shortest ones.
template <class S, class KeyF, class StepF, class EvalF>
OrbitSearchReport run_bfs(const SurfaceSig& sig, S start, int depth, double floor_value, int threads, KeyF key,
                          StepF step, EvalF eval) {
  if (depth < 0) fail(ErrorCode::InvalidArgument, "search depth must be >= 0");
  struct Node {
    S state;
    MappingClassWord word;
  };
  OrbitSearchReport rep{0, MappingClassWord::identity(sig)};
  std::set<decltype(key(start))> visited{key(start)};
  std::vector<Node> layer{{std::move(start), MappingClassWord::identity(sig)}};
  std::optional<double> best;
  double identity_value = 0;
  const auto moves = move_order(sig);

  auto absorb = [&](const std::vector<Node>& nodes, bool first) {
    std::vector<Eval> values(nodes.size());
    detail::parallel_for(nodes.size(), threads, [&](std::size_t i) { values[i] = eval(nodes[i].state); });
    if (first) identity_value = values[0].value;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!values[i].certified) {
        ++rep.uncertified_states;
        continue;
      }
      if (!best || values[i].value < *best) {
        best = values[i].value;
        rep.witness = nodes[i].word;
      }
    }
  };

  absorb(layer, true);
  rep.states = 1;
  for (int d = 1; d <= depth; ++d) {
    if (best && *best <= floor_value) break;
    std::vector<Node> next;
    for (const auto& node : layer) {
      for (int mv : moves) {
        S s = step(node.state, mv);
        if (visited.insert(key(s)).second) next.push_back({std::move(s), node.word.then(mv)});
      }
    }
    if (next.empty()) {
      rep.exhaustive = true;
      break;
    }
    rep.depth_reached = d;
    rep.states += static_cast<long>(next.size());
    absorb(next, false);
    layer = std::move(next);
  }
  rep.certified = best.has_value();
  rep.best_value = best.value_or(identity_value);
  if (best && *best <= floor_value) rep.exhaustive = true;
  return rep;
}

std::optional<std::vector<Slope>> as_slopes(const Multicurve& m) {
  if (!(m.sig() == SurfaceSig::make(1, 1))) return std::nullopt;
  std::vector<Slope> out;
  for (const auto& c : m.components) {
    try {
      out.push_back(slope_of_word(c));
    } catch (const CurveLabError& e) {
      if (e.code() == ErrorCode::NotSimple || e.code() == ErrorCode::Uncertified) return std::nullopt;
      throw;
    }
  }
  return out;
}

std::vector<Slope> sorted_slopes(std::vector<Slope> s) {
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<Slope> step_slopes(const std::vector<Slope>& s, int mv) {
  const MappingClassWord w{SurfaceSig::make(1, 1), {mv}};
  std::vector<Slope> out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(apply_to_slope(w, x));
  return out;
}

long slope_cross(const Slope& a, const Slope& b) { return std::abs(a.p * b.q - a.q * b.p); }

// Re-derives the value from the witness applied to the words, so a caller
// repeating that computation gets the same double.
double replay_length(const Holonomy& h, const Multicurve& m, const MappingClassWord& w) {
  return multicurve_length(h, apply_mapping_class(w, m));
}

int radius_for(const SurfaceSig& sig, const SearchOptions& o) { return o.radius > 0 ? o.radius : default_radius(sig); }
int threads_for(const SearchOptions& o) { return o.threads > 0 ? o.threads : worker_threads(); }

}  // namespace

SlopeLatticeMin slope_lattice_min(const std::vector<Slope>& slopes) {
  if (slopes.empty()) fail(ErrorCode::InvalidArgument, "no slopes");
  auto f = [&](long c, long d) {
    long s = 0;
    for (const auto& x : slopes) s += std::abs(c * x.p + d * x.q);
    return s;
  };
  // widest pair bounds the search box
  long D = 0;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    for (std::size_t j = i + 1; j < slopes.size(); ++j) {
      const long det = slope_cross(slopes[i], slopes[j]);
      if (det > D) D = det, bi = i, bj = j;
    }
  }
  if (D == 0) return {0, slopes[0].q, -slopes[0].p};
  const Slope& u = slopes[bi];
  const Slope& v = slopes[bj];
  SlopeLatticeMin best{f(0, 1), 0, 1};
  if (f(1, 0) < best.value) best = {f(1, 0), 1, 0};
  // |c u.p + d u.q| and |c v.p + d v.q| are both <= best.value on any improvement
  const long cmax = best.value * (std::abs(u.q) + std::abs(v.q)) / D + 1;
  const long dmax = best.value * (std::abs(u.p) + std::abs(v.p)) / D + 1;
  for (long c = 0; c <= cmax; ++c) {
    for (long d = (c == 0 ? 1 : -dmax); d <= dmax; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const long val = f(c, d);
      if (val < best.value) best = {val, c, d};
    }
  }
  return best;
}

long intersection_lower_bound(const PantsDecomposition& P, const Multicurve& m) {
  if (!(P.sig == SurfaceSig::make(2, 0)) || !(m.sig() == P.sig)) return 0;
  for (const auto& c : P.curves) {
    const auto hom = homology_class(c);
    if (std::all_of(hom.begin(), hom.end(), [](long x) { return x == 0; })) return 0;
  }
  // A separating simple curve disjoint from P would sit in a pair of pants
  // and be parallel to a cuff, but every cuff is nonseparating. Separating
  // curves meet everything an even number of times.
  long bound = 0;
  for (const auto& c : m.components) {
    const auto hom = homology_class(c);
    if (!std::all_of(hom.begin(), hom.end(), [](long x) { return x == 0; })) continue;
    bool simple = false;
    try {
      simple = is_simple_curve(c);
    } catch (const CurveLabError&) {
      simple = false;
    }
    if (simple) bound += 2;
  }
  return bound;
}

OrbitSearchReport orbit_min_intersection(const Holonomy& h, const PantsDecomposition& P, const Multicurve& m,
                                         int depth, const SearchOptions& options) {
  if (!(P.sig == h.sig) || !(m.sig() == h.sig)) fail(ErrorCode::WrongSurface, "search inputs on different surfaces");
  const SurfaceSig sig = h.sig;
  const int threads = threads_for(options);

  if (auto slopes = as_slopes(m)) {
    std::vector<Slope> cuffs;
    for (const auto& c : P.curves) cuffs.push_back(slope_of_word(c));
    const long floor_value = slope_lattice_min(*slopes).value * static_cast<long>(cuffs.size() == 1 ? 1 : 0);
    auto rep = run_bfs(
        sig, sorted_slopes(*slopes), depth, static_cast<double>(floor_value), 1,
        [](const std::vector<Slope>& s) { return s; },
        [](const std::vector<Slope>& s, int mv) { return sorted_slopes(step_slopes(s, mv)); },
        [&](const std::vector<Slope>& s) {
          long total = 0;
          for (const auto& cuff : cuffs) {
            for (const auto& x : s) total += slope_cross(cuff, x);
          }
          return Eval{static_cast<double>(total), true};
        });
    return rep;
  }

  const int radius = radius_for(sig, options);
  const Holonomy& g = generic_holonomy(sig);
  const double floor_value = static_cast<double>(intersection_lower_bound(P, m));
  return run_bfs(
      sig, m, depth, floor_value, threads, [&](const Multicurve& s) { return word_state_key(g, s); },
      [&](const Multicurve& s, int mv) { return apply_mapping_class(MappingClassWord{sig, {mv}}, s); },
      [&](const Multicurve& s) {
        try {
          const auto r = pants_intersection(h, P, s, radius);
          return Eval{static_cast<double>(r.count), r.certified};
        } catch (const CurveLabError& e) {
          if (e.code() == ErrorCode::TangentAxes || e.code() == ErrorCode::Uncertified) return Eval{0, false};
          throw;
        }
      });
}

OrbitSearchReport orbit_min_length(const Holonomy& h, const Multicurve& m, int depth, const SearchOptions& options) {
  if (!(m.sig() == h.sig)) fail(ErrorCode::WrongSurface, "multicurve and holonomy on different surfaces");
  const SurfaceSig sig = h.sig;
  const int threads = threads_for(options);
  const double no_floor = -std::numeric_limits<double>::infinity();

  if (auto slopes = as_slopes(m)) {
    auto length_of = [&](const std::vector<Slope>& s) {
      double total = 0;
      for (const auto& x : s) {
        const double l = curve_length(h, word_of_slope(x));
        total = m.aggregator == Aggregator::Sum ? total + l : std::max(total, l);
      }
      return total;
    };
    auto rep = run_bfs(
        sig, sorted_slopes(*slopes), depth, no_floor, threads, [](const std::vector<Slope>& s) { return s; },
        [](const std::vector<Slope>& s, int mv) { return sorted_slopes(step_slopes(s, mv)); },
        [&](const std::vector<Slope>& s) { return Eval{length_of(s), true}; });
    rep.best_value = replay_length(h, m, rep.witness);

    // Single slope (possibly repeated): a slope (p,q) crosses the collars of
    // 1/0 and 0/1 |q| and |p| times, which bounds every better slope.
    const bool one_class = std::all_of(slopes->begin(), slopes->end(), [&](const Slope& s) { return s == slopes->front(); });
    if (!rep.exhaustive && one_class) {
      const double k = m.aggregator == Aggregator::Sum ? static_cast<double>(slopes->size()) : 1.0;
      const double per = rep.best_value / k;
      const double wa = collar_width(curve_length(h, word_of_slope(Slope::make(1, 0))));
      const double wb = collar_width(curve_length(h, word_of_slope(Slope::make(0, 1))));
      const double qmax = std::floor(per / (2 * wa)), pmax = std::floor(per / (2 * wb));
      if ((2 * pmax + 1) * (qmax + 1) <= 4e6) {
        bool beaten = false;
        for (long q = 0; q <= static_cast<long>(qmax) && !beaten; ++q) {
          for (long p = -static_cast<long>(pmax); p <= static_cast<long>(pmax) && !beaten; ++p) {
            if (std::gcd(p, q) != 1 || (q == 0 && p != 1)) continue;
            beaten = curve_length(h, word_of_slope(Slope::make(p, q))) < per * (1 - 1e-12);
          }
        }
        rep.exhaustive = !beaten;
      }
    }
    return rep;
  }

  const Holonomy& g = generic_holonomy(sig);
  auto rep = run_bfs(
      sig, m, depth, no_floor, threads, [&](const Multicurve& s) { return word_state_key(g, s); },
      [&](const Multicurve& s, int mv) { return apply_mapping_class(MappingClassWord{sig, {mv}}, s); },
      [&](const Multicurve& s) { return Eval{multicurve_length(h, s), true}; });
  rep.best_value = replay_length(h, m, rep.witness);
  return rep;
}

std::string curve_class_key(const CurveWord& c) { return class_key(generic_holonomy(c.sig()), c); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "BOUNDED";
    case Verdict::Unbounded: return "UNBOUNDED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

CriterionVerdict criterion_check(const SurfaceSig& sig, const std::vector<Multicurve>& family, int depth,
                                 const SearchOptions& options) {
  if (family.empty()) fail(ErrorCode::InvalidArgument, "criterion needs a nonempty family");
  for (const auto& m : family) {
    if (!(m.sig() == sig)) fail(ErrorCode::WrongSurface, "family member " + m.str() + " is on another surface");
  }
  const Holonomy& h = reference_holonomy(sig);
  CriterionVerdict out;
  bool all_zero = true, some_positive = false;
  for (const auto& P : enumerate_pants_types(sig)) {
    PantsTypeResult best{P.tag, 0, false, true, MappingClassWord::identity(sig), 0, 0};
    bool have = false;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto r = orbit_min_intersection(h, P, family[i], depth, options);
      const long v = std::lround(r.best_value);
      // an uncertified member leaves the minimum open
      best.exhaustive = best.exhaustive && r.exhaustive && r.certified;
      if (!have || (r.certified && (!best.certified || v < best.min_intersection))) {
        best.min_intersection = v;
        best.certified = r.certified;
        best.witness = r.witness;
        best.member = i;
        best.depth_reached = r.depth_reached;
        have = true;
      }
      if (r.certified && v == 0) break;
    }
    if (best.certified && best.min_intersection == 0) best.exhaustive = true;
    all_zero = all_zero && best.certified && best.min_intersection == 0;
    some_positive = some_positive || (best.certified && best.exhaustive && best.min_intersection > 0);
    out.per_pants_type.push_back(std::move(best));
  }
  out.verdict = all_zero ? Verdict::Bounded : some_positive ? Verdict::Unbounded : Verdict::Inconclusive;
  return out;
}

}  // namespace curvelab
