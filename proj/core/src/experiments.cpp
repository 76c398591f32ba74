#include "curvelab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "curvelab/error.hpp"
#include "curvelab/intersection.hpp"
#include "parallel.hpp"

namespace curvelab {

FNPoint pinch_family(const FNPoint& X, const std::vector<std::size_t>& targets, double t) {
  if (!(t > 0 && t <= 1)) fail(ErrorCode::InvalidArgument, "pinch parameter must lie in (0, 1]");
  FNPoint out = X;
  for (std::size_t i : targets) {
    if (i >= out.lengths.size()) fail(ErrorCode::InvalidArgument, "pinch target " + std::to_string(i) + " out of range");
    out.lengths[i] = t * X.lengths[i];
  }
  return out;
}

std::vector<double> geometric_grid(int steps, double ratio) {
  if (steps < 1 || !(ratio > 0 && ratio < 1)) fail(ErrorCode::InvalidArgument, "grid needs steps >= 1 and ratio in (0,1)");
  std::vector<double> grid;
  double t = 1;
  for (int i = 0; i < steps; ++i, t *= ratio) grid.push_back(t);
  return grid;
}

std::string to_string(ProbeClass c) {
  switch (c) {
    case ProbeClass::Bounded: return "BOUNDED";
    case ProbeClass::Diverging: return "DIVERGING";
    case ProbeClass::Undetermined: return "UNDETERMINED";
  }
  return "?";
}

namespace {

int threads_of(const SearchOptions& o) { return o.threads > 0 ? o.threads : worker_threads(); }

// 53 random bits to [0,1); unlike uniform_real_distribution this is the same
// on every standard library.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool is_zero(const std::vector<long>& v) {
  return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

bool primitive(const std::vector<long>& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, std::labs(x));
  return g == 1;
}

// Candidate words sorted by length at h (ties by word), with their lengths.
std::vector<std::pair<double, CurveWord>> by_length(const Holonomy& h, int word_budget) {
  std::vector<CurveWord> pool = h.known_curves;
  const auto words = enumerate_words(h.sig, word_budget);
  pool.insert(pool.end(), words.begin(), words.end());
  std::vector<std::pair<double, CurveWord>> out;
  for (auto& w : pool) {
    try {
      out.emplace_back(curve_length(h, w), std::move(w));
    } catch (const CurveLabError& e) {
      if (e.code() != ErrorCode::NotHyperbolic) throw;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return word_less(x.second.canonical(), y.second.canonical());
  });
  return out;
}

// Certified intersection at the reference point, or nullopt.
std::optional<long> topo_intersection(const CurveWord& a, const CurveWord& b) {
  const Holonomy& ref = reference_holonomy(a.sig());
  const int r = default_radius(a.sig());
  try {
    const auto res = certified_intersection(ref, a, b, r, r + 2);
    if (!res.certified) return std::nullopt;
    return res.count;
  } catch (const CurveLabError& e) {
    if (e.code() == ErrorCode::TangentAxes || e.code() == ErrorCode::Uncertified) return std::nullopt;
    throw;
  }
}

std::optional<bool> simple(const CurveWord& w) {
  try {
    return is_simple_curve(w);
  } catch (const CurveLabError& e) {
    if (e.code() == ErrorCode::TangentAxes || e.code() == ErrorCode::Uncertified) return std::nullopt;
    throw;
  }
}

}  // namespace

ProbeSeries boundedness_probe(const SurfaceSig& sig, const Multicurve& m, const PantsDecomposition& P,
                              const std::vector<double>& t_grid, int depth, const ProbeOptions& options) {
  if (!(P.sig == sig) || !(m.sig() == sig)) fail(ErrorCode::WrongSurface, "probe inputs on different surfaces");
  if (t_grid.size() < 4) fail(ErrorCode::InvalidArgument, "t grid needs at least 4 values");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0 && t_grid[i] <= 1) || (i > 0 && !(t_grid[i] < t_grid[i - 1]))) {
      fail(ErrorCode::InvalidArgument, "t grid must decrease inside (0, 1]");
    }
  }
  ProbeSeries out{{}, {}, {}, 0, false, ProbeClass::Undetermined, reference_point(P), {}};

  const auto imin = orbit_min_intersection(reference_holonomy(sig), P, m, depth, options.search);
  out.i_min = std::lround(imin.best_value);
  out.certified = imin.certified && imin.exhaustive;

  std::vector<std::size_t> targets(P.curves.size());
  std::iota(targets.begin(), targets.end(), 0);
  const double lmax = P.curves.empty() ? 0 : *std::max_element(out.base.lengths.begin(), out.base.lengths.end());
  const double per = m.aggregator == Aggregator::Max ? static_cast<double>(m.components.size()) : 1.0;

  struct Step {
    double value = 0;
    std::string error;
  };
  std::vector<Step> steps(t_grid.size());
  SearchOptions inner = options.search;
  inner.threads = 1;
  detail::parallel_for(t_grid.size(), threads_of(options.search), [&](std::size_t k) {
    try {
      const Holonomy h = build_holonomy(pinch_family(out.base, targets, t_grid[k]));
      steps[k].value = orbit_min_length(h, m, depth, inner).best_value;
    } catch (const CurveLabError& e) {
      if (e.code() != ErrorCode::NumericDegeneracy) throw;
      steps[k].error = e.what();
    }
  });

  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!steps[k].error.empty()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g", t_grid[k]);
      out.note = std::string("truncated at t = ") + buf + ": " + steps[k].error;
      break;
    }
    out.t_values.push_back(t_grid[k]);
    out.min_lengths.push_back(steps[k].value);
    const double w = lmax > 0 ? collar_width(t_grid[k] * lmax) : 0;
    out.lower_bounds.push_back(out.certified ? 2 * static_cast<double>(out.i_min) * w / per : 0);
  }

  const std::size_t n = out.min_lengths.size();
  if (n < 4) {
    if (out.note.empty()) out.note = "fewer than 4 grid points";
    return out;
  }
  const double first = out.min_lengths.front();
  const bool bounded = std::all_of(out.min_lengths.begin(), out.min_lengths.end(),
                                   [&](double v) { return v <= options.bounded_factor * first * (1 + 1e-12); });
  const auto& lb = out.lower_bounds;
  const bool rising = out.certified && lb[n - 3] < lb[n - 2] && lb[n - 2] < lb[n - 1];
  if (bounded) {
    out.classification = ProbeClass::Bounded;
  } else if (out.min_lengths.back() > options.diverging_factor * first && rising) {
    out.classification = ProbeClass::Diverging;
  }
  return out;
}

BersResult bers_greedy(const Holonomy& h, int word_budget) {
  const SurfaceSig sig = h.sig;
  const int need = sig.complexity();
  if (need < 1) fail(ErrorCode::InvalidArgument, "surface " + sig.str() + " has no decomposition curves");
  if (word_budget < 1) fail(ErrorCode::InvalidArgument, "word budget must be positive");

  std::vector<CurveWord> chosen;
  std::vector<double> lengths;
  std::set<std::string> seen;
  for (const auto& [len, w] : by_length(h, word_budget)) {
    if (!seen.insert(curve_class_key(w)).second) continue;
    if (simple(w) != std::optional<bool>(true)) continue;
    const bool disjoint = std::all_of(chosen.begin(), chosen.end(), [&](const CurveWord& c) {
      return topo_intersection(c, w) == std::optional<long>(0);
    });
    if (!disjoint) continue;
    chosen.push_back(w);
    lengths.push_back(len);
    if (static_cast<int>(chosen.size()) == need) break;
  }
  if (static_cast<int>(chosen.size()) < need) {
    fail(ErrorCode::SearchExhausted, "word budget " + std::to_string(word_budget) + " found only " +
                                         std::to_string(chosen.size()) + " of " + std::to_string(need) + " curves");
  }

  std::string tag = pants_type(sig, "").tag;
  if (sig == SurfaceSig::make(2, 0)) {
    const bool separating = std::any_of(chosen.begin(), chosen.end(), [](const CurveWord& c) { return is_zero(homology_class(c)); });
    tag = separating ? "dumbbell" : "theta";
  }
  BersResult out{pants_type(sig, tag), lengths, 0, 0};
  out.decomposition.curves = chosen;
  out.max_length = *std::max_element(lengths.begin(), lengths.end());
  out.sum_length = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  return out;
}

long symplectic_form(const std::vector<long>& x, const std::vector<long>& y) {
  if (x.size() != 4 || y.size() != 4) fail(ErrorCode::WrongSurface, "symplectic form is defined on 2,0");
  return x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
}

std::string verify_homology_basis(const std::vector<CurveWord>& curves) {
  if (curves.size() != 4) return "need 4 curves";
  for (const auto& c : curves) {
    if (!(c.sig() == SurfaceSig::make(2, 0))) return "curve '" + c.str() + "' is not on 2,0";
    if (simple(c) != std::optional<bool>(true)) return "curve '" + c.str() + "' is not certified simple";
  }
  const char* names[] = {"alpha1", "beta1", "alpha2", "beta2"};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const long want = (i / 2 == j / 2) ? 1 : 0;
      const auto got = topo_intersection(curves[i], curves[j]);
      if (!got) return std::string("i(") + names[i] + ", " + names[j] + ") not certified";
      if (*got != want) {
        return std::string("i(") + names[i] + ", " + names[j] + ") = " + std::to_string(*got) + ", want " +
               std::to_string(want);
      }
      const long alg = symplectic_form(homology_class(curves[i]), homology_class(curves[j]));
      if (std::labs(alg) != want) return std::string("algebraic intersection of ") + names[i] + ", " + names[j] + " is " + std::to_string(alg);
    }
  }
  return {};
}

HomologyBasis homology_basis_search(const Holonomy& h, int word_budget) {
  if (!(h.sig == SurfaceSig::make(2, 0))) fail(ErrorCode::WrongSurface, "homology basis search runs on 2,0");
  if (word_budget < 4) fail(ErrorCode::InvalidArgument, "homology basis search needs word budget >= 4");

  // simple nonseparating classes, shortest first
  constexpr std::size_t kCandidates = 48;
  std::vector<std::pair<double, CurveWord>> cand;
  std::set<std::string> seen;
  for (auto& [len, w] : by_length(h, word_budget)) {
    const auto hom = homology_class(w);
    if (is_zero(hom) || !primitive(hom)) continue;
    if (!seen.insert(curve_class_key(w)).second) continue;
    if (simple(w) != std::optional<bool>(true)) continue;
    cand.emplace_back(len, std::move(w));
    if (cand.size() == kCandidates) break;
  }

  std::map<std::pair<std::size_t, std::size_t>, std::optional<long>> memo;
  auto meet = [&](std::size_t i, std::size_t j) {
    const auto key = std::minmax(i, j);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, topo_intersection(cand[key.first].second, cand[key.second].second)).first;
    return it->second;
  };
  auto is = [&](std::size_t i, std::size_t j, long v) { return i != j && meet(i, j) == std::optional<long>(v); };
  auto form = [&](std::size_t i, std::size_t j) {
    return symplectic_form(homology_class(cand[i].second), homology_class(cand[j].second));
  };

  const std::size_t n = cand.size();
  for (std::size_t a1 = 0; a1 < n; ++a1) {
    for (std::size_t b1 = 0; b1 < n; ++b1) {
      if (!is(a1, b1, 1)) continue;
      for (std::size_t a2 = 0; a2 < n; ++a2) {
        if (!is(a1, a2, 0) || !is(b1, a2, 0) || form(a1, a2) != 0 || form(b1, a2) != 0) continue;
        for (std::size_t b2 = 0; b2 < n; ++b2) {
          if (!is(a2, b2, 1) || !is(a1, b2, 0) || !is(b1, b2, 0)) continue;
          if (form(a1, b2) != 0 || form(b1, b2) != 0 || std::labs(form(a2, b2)) != 1) continue;
          HomologyBasis out;
          for (std::size_t k : {a1, b1, a2, b2}) {
            out.curves.push_back(cand[k].second);
            out.lengths.push_back(cand[k].first);
          }
          // orient so that <alpha_i, beta_i> = +1
          if (form(a1, b1) < 0) out.curves[1] = out.curves[1].inverted();
          if (form(a2, b2) < 0) out.curves[3] = out.curves[3].inverted();
          out.max_length = *std::max_element(out.lengths.begin(), out.lengths.end());
          return out;
        }
      }
    }
  }
  fail(ErrorCode::SearchExhausted, "no canonical basis among " + std::to_string(n) + " simple nonseparating words of length <= " +
                                       std::to_string(word_budget));
}

ThickSample thick_sample(const SurfaceSig& sig, double epsilon, int count, std::uint64_t seed, int word_budget) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (count < 1) fail(ErrorCode::InvalidArgument, "sample count must be positive");
  const PantsDecomposition P = pants_type(sig, "");
  constexpr double kTop = 6.0;
  constexpr long kWindow = 10000;
  ThickSample out{{}, epsilon, seed, 0, word_budget};
  std::mt19937_64 rng(seed);
  const int threads = worker_threads();
  long draws = 0;

  auto stalled = [&] { return draws >= kWindow && static_cast<double>(out.points.size()) < 0.01 * static_cast<double>(draws); };
  while (static_cast<int>(out.points.size()) < count) {
    if (epsilon >= kTop) {
      // the length window [epsilon, 6] is empty: every draw is rejected
      out.rejected += kWindow;
      fail(ErrorCode::RejectionStalled, "epsilon " + std::to_string(epsilon) + " leaves no admissible lengths in [epsilon, 6]");
    }
    // draw a batch in sequence, test in parallel, accept in order
    std::vector<FNPoint> batch;
    for (int b = 0; b < std::max(threads, 1) * 2; ++b) {
      std::vector<double> ls, ts;
      for (std::size_t i = 0; i < P.curves.size(); ++i) {
        const double l = epsilon * std::exp(unit(rng) * std::log(kTop / epsilon));
        ls.push_back(l);
        ts.push_back(unit(rng) * l);
      }
      batch.push_back(FNPoint::make(P, ls, ts));
    }
    std::vector<char> ok(batch.size(), 0);
    detail::parallel_for(batch.size(), threads, [&](std::size_t i) {
      ok[i] = systole_estimate(build_holonomy(batch[i]), word_budget).length >= epsilon;
    });
    for (std::size_t i = 0; i < batch.size() && static_cast<int>(out.points.size()) < count; ++i) {
      ++draws;
      if (ok[i]) {
        out.points.push_back(std::move(batch[i]));
      } else {
        ++out.rejected;
      }
      if (stalled()) {
        fail(ErrorCode::RejectionStalled, "acceptance below 1% after " + std::to_string(draws) + " draws");
      }
    }
  }
  return out;
}

double empirical_K(const ThickSample& sample, const Multicurve& m, int depth, const SearchOptions& options) {
  if (sample.points.empty()) fail(ErrorCode::InvalidArgument, "empirical K needs a nonempty sample");
  std::vector<double> values(sample.points.size());
  SearchOptions inner = options;
  inner.threads = 1;
  detail::parallel_for(values.size(), threads_of(options), [&](std::size_t i) {
    values[i] = orbit_min_length(build_holonomy(sample.points[i]), m, depth, inner).best_value;
  });
  return *std::max_element(values.begin(), values.end());
}

}  // namespace curvelab
