// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "curvelab/error.hpp"
#include "curvelab/experiments.hpp"
#include "curvelab/hyperbolic.hpp"
#include "curvelab/intersection.hpp"
#include "curvelab/search.hpp"
#include "curvelab/topology.hpp"

using namespace curvelab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// --- 1
Outcome closed_forms() {
  const auto p = SurfaceSig::make(0, 3);
  const double fig8 = curve_length(build_holonomy(reference_point(pants_type(p, "pants"))), CurveWord::parse(p, "aB"));
  double err = std::abs(fig8 - 2 * std::acosh(3.0));
  const auto t = SurfaceSig::make(1, 1);
  const auto h = build_holonomy(modular_torus_point());
  for (const char* w : {"a", "b", "ab"}) {
    err = std::max(err, std::abs(curve_length(h, CurveWord::parse(t, w)) - 2 * std::acosh(1.5)));
  }
  return {err < 1e-8, "figure eight " + fmt("%.10f", fig8) + ", max error " + fmt("%.2e", err)};
}

// --- 2
Outcome trace_identity() {
  std::mt19937_64 rng(2);
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    auto draw = [&] {
      for (;;) {
        const double a = 4 * unit(rng) - 2, b = 4 * unit(rng) - 2, c = 4 * unit(rng) - 2, d = 4 * unit(rng) - 2;
        if (a * d - b * c > 0.1) return Mat2::unimodular(a, b, c, d);
      }
    };
    const Mat2 A = draw(), B = draw();
    const Mat2 Binv{B.d, -B.b, -B.c, B.a};
    worst = std::max(worst, std::abs((A * Binv).trace() - (A.trace() * B.trace() - (A * B).trace())));
  }
  return {worst < 1e-9, "500 pairs, max error " + fmt("%.2e", worst)};
}

// --- 3
// d/du of 2 acosh(2 cosh(u/2) cosh(v/2) + cosh(w/2)) and its w derivative
double fig8_derivative(const PantsCuffs& c, Fig8 f, Axis axis) {
  double u = c.x, v = c.y, w = c.z;
  if (f == Fig8::YZ) u = c.y, v = c.z, w = c.x;
  if (f == Fig8::XZ) u = c.x, v = c.z, w = c.y;
  const double C = 2 * std::cosh(u / 2) * std::cosh(v / 2) + std::cosh(w / 2);
  const double root = std::sqrt(C * C - 1);
  const auto pick = [&](Axis a) {
    switch (a) {
      case Axis::X: return c.x;
      case Axis::Y: return c.y;
      default: return c.z;
    }
  };
  const double val = pick(axis);
  // which closed-form slot the axis occupies
  const bool in_u = (f != Fig8::YZ && axis == Axis::X) || (f == Fig8::YZ && axis == Axis::Y);
  const bool in_v = (f == Fig8::XY && axis == Axis::Y) || (f != Fig8::XY && axis == Axis::Z);
  if (in_u) return 2 * std::sinh(val / 2) * std::cosh(v / 2) / root;
  if (in_v) return 2 * std::cosh(u / 2) * std::sinh(val / 2) / root;
  return std::sinh(val / 2) / root;
}

Outcome monotonicity() {
  int positive = 0, total = 0, compared = 0;
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int k = 0; k < 10; ++k) {
        const auto c = PantsCuffs::make(6.0 * i / 9, 6.0 * j / 9, 6.0 * k / 9);
        for (Fig8 f : {Fig8::XY, Fig8::YZ, Fig8::XZ}) {
          for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
            const double d = stretch_derivative(c, f, a);
            ++total;
            if (d > 0) ++positive;
            const double v = a == Axis::X ? c.x : a == Axis::Y ? c.y : c.z;
            if (v == 0) continue;  // one-sided; the exact derivative is 0 there
            ++compared;
            const double exact = fig8_derivative(c, f, a);
            worst = std::max(worst, std::abs(d - exact) / std::abs(exact));
          }
        }
      }
    }
  }
  return {positive == total && worst < 1e-5,
          std::to_string(positive) + "/" + std::to_string(total) + " positive, max relative error " +
              fmt("%.2e", worst) + " over " + std::to_string(compared) + " interior points"};
}

// --- 4
Outcome corner_dominates() {
  std::mt19937_64 rng(4);
  const double L = 5;
  const auto corner = PantsCuffs::make(L, L, L);
  int ok = 0, total = 0;
  double gap = 1e300;
  for (int i = 0; i <= 100; ++i) {
    // the last triple is the corner itself
    const auto t = i < 100 ? PantsCuffs::make(L * unit(rng), L * unit(rng), L * unit(rng)) : corner;
    const bool is_corner = i == 100;
    for (Fig8 f : {Fig8::XY, Fig8::YZ, Fig8::XZ}) {
      const double diff = pants_interior_length(corner, f) - pants_interior_length(t, f);
      ++total;
      if (is_corner ? std::abs(diff) <= 1e-9 : diff > 1e-9) ++ok;
      if (!is_corner) gap = std::min(gap, diff);
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + ", smallest margin " + fmt("%.3g", gap)};
}

// --- 5
Outcome oracle_equivalence() {
  const auto sig = SurfaceSig::make(1, 1);
  const auto P = enumerate_pants_types(sig).front();
  std::vector<Slope> slopes;
  for (long p = -8; p <= 8; ++p) {
    for (long q = 0; q <= 8; ++q) {
      if (std::gcd(p, q) == 1 && (q != 0 || p == 1)) slopes.push_back(Slope::make(p, q));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    for (std::size_t j = i + 1; j < slopes.size(); ++j) pairs.emplace_back(i, j);
  }
  std::mt19937_64 rng(5);
  long compared = 0, wrong = 0, tangent = 0, uncertified = 0;
  std::string points;
  for (int k = 0; k < 3; ++k) {
    const double l = 0.5 * std::exp(unit(rng) * std::log(6.0));
    const double tw = unit(rng) * l;
    points += (k ? ", " : "") + fmt("(%.3f", l) + fmt(", %.3f)", tw);
    const auto h = build_holonomy(FNPoint::make(P, {l}, {tw}));
    std::atomic<std::size_t> next{0};
    std::atomic<long> c{0}, w{0}, tg{0}, un{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < worker_threads(); ++t) {
      pool.emplace_back([&] {
        for (std::size_t n; (n = next++) < pairs.size();) {
          const auto& [i, j] = pairs[n];
          try {
            const auto r = certified_intersection(h, word_of_slope(slopes[i]), word_of_slope(slopes[j]), 4, 6);
            if (!r.certified) {
              ++un;
              continue;
            }
            ++c;
            if (r.count != slope_intersection(slopes[i], slopes[j])) ++w;
          } catch (const CurveLabError& e) {
            if (e.code() != ErrorCode::TangentAxes) throw;
            ++tg;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    compared += c, wrong += w, tangent += tg, uncertified += un;
  }
  return {wrong == 0 && compared > 0,
          std::to_string(compared) + " certified pairs, " + std::to_string(wrong) + " mismatches, " +
              std::to_string(tangent) + " tangent and " + std::to_string(uncertified) + " uncertified skipped; points " +
              points};
}

Multicurve slopes_of(std::initializer_list<std::pair<long, long>> pq) {
  std::vector<CurveWord> c;
  for (const auto& [p, q] : pq) c.push_back(word_of_slope(Slope::make(p, q)));
  return Multicurve::make(c);
}

// --- 6
Outcome bounded_side() {
  const auto sig = SurfaceSig::make(1, 1);
  const auto m = slopes_of({{5, 7}});
  const auto v = criterion_check(sig, {m}, 6);
  const auto s = boundedness_probe(sig, m, enumerate_pants_types(sig).front(), geometric_grid(8), 6);
  double ratio = 0;
  for (double x : s.min_lengths) ratio = std::max(ratio, x / s.min_lengths.front());
  return {v.verdict == Verdict::Bounded && s.classification == ProbeClass::Bounded && ratio <= 2,
          "verdict " + to_string(v.verdict) + ", probe " + to_string(s.classification) + ", max/initial " +
              fmt("%.4f", ratio)};
}

// --- 7
Outcome unbounded_side() {
  const auto sig = SurfaceSig::make(1, 1);
  const auto m = slopes_of({{1, 0}, {0, 1}});
  const auto v = criterion_check(sig, {m}, 6);
  const bool exhaustive = v.per_pants_type.size() == 1 && v.per_pants_type[0].exhaustive;
  const auto s = boundedness_probe(sig, m, enumerate_pants_types(sig).front(), geometric_grid(40), 6);
  const double l = s.base.lengths[0];
  bool collar = true;
  for (std::size_t k = 0; k < s.t_values.size(); ++k) {
    collar = collar && s.min_lengths[k] >= 2 * std::asinh(1 / std::sinh(s.t_values[k] * l / 2));
  }
  const double ratio = s.min_lengths.back() / s.min_lengths.front();
  return {v.verdict == Verdict::Unbounded && exhaustive && collar && ratio > 10,
          "verdict " + to_string(v.verdict) + (exhaustive ? " (exhaustive)" : " (not exhaustive)") + ", collar " +
              (collar ? "holds" : "violated") + " at " + std::to_string(s.t_values.size()) + " steps, last/first " +
              fmt("%.3f", ratio) + ", t down to " + fmt("%.3g", s.t_values.back())};
}

// --- 8
Outcome separating_preset() {
  const auto sig = SurfaceSig::make(2, 0);
  const auto m = Multicurve::make({CurveWord::parse(sig, "abAB")});
  const auto v = criterion_check(sig, {m}, 3);
  bool flagged = false;
  long theta_min = -1;
  for (const auto& r : v.per_pants_type) {
    if (r.tag == "theta") {
      flagged = r.exhaustive && r.certified;
      theta_min = r.min_intersection;
    }
  }
  const auto s = boundedness_probe(sig, m, pants_type(sig, "theta"), geometric_grid(30), 3);
  const double ratio = s.min_lengths.back() / s.min_lengths.front();
  return {v.verdict == Verdict::Unbounded && flagged && s.classification == ProbeClass::Diverging,
          "verdict " + to_string(v.verdict) + ", theta minimum " + std::to_string(theta_min) +
              (flagged ? " (exhaustive by homology)" : " (not exhaustive)") + ", probe " +
              to_string(s.classification) + " last/first " + fmt("%.3f", ratio) + " at t = " +
              fmt("%.3g", s.t_values.back())};
}

const ThickSample& genus_two_sample() {
  static const ThickSample s = thick_sample(SurfaceSig::make(2, 0), 0.5, 20, 1);
  return s;
}

// --- 9
Outcome buser_sepala() {
  const double bound = (2 - 1) * (45 + 6 * std::asinh(1 / 0.5));
  const auto& sample = genus_two_sample();
  int ok = 0;
  double worst = 0;
  for (const auto& X : sample.points) {
    const auto b = homology_basis_search(build_holonomy(X), 6);
    if (verify_homology_basis(b.curves).empty() && b.max_length <= bound) ++ok;
    worst = std::max(worst, b.max_length);
  }
  return {ok == static_cast<int>(sample.points.size()) && ok == 20,
          std::to_string(ok) + "/20 verified bases, longest curve " + fmt("%.4f", worst) + " <= " +
              fmt("%.3f", bound)};
}

// --- 10
Outcome bers() {
  const auto& sample = genus_two_sample();
  const auto sig = SurfaceSig::make(2, 0);
  const auto& ref = reference_holonomy(sig);
  int ok = 0;
  double worst = 0;
  std::string maxima;
  for (const auto& X : sample.points) {
    const auto b = bers_greedy(build_holonomy(X), 6);
    const auto& c = b.decomposition.curves;
    bool good = c.size() == 3 && std::isfinite(b.max_length);
    for (std::size_t i = 0; good && i < c.size(); ++i) {
      good = is_simple_curve(c[i]);
      for (std::size_t j = i + 1; good && j < c.size(); ++j) {
        const auto r = certified_intersection(ref, c[i], c[j], 3, 5);
        good = r.certified && r.count == 0;
      }
    }
    if (good) ++ok;
    worst = std::max(worst, b.max_length);
    maxima += (maxima.empty() ? "" : " ") + fmt("%.2f", b.max_length);
  }
  return {ok == 20, std::to_string(ok) + "/20 complete, largest cuff " + fmt("%.4f", worst) + "; maxima " + maxima};
}

// --- 11
std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(CURVELAB_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  const std::vector<std::string> cmds = {
      "length --surface 0,3 --word aB",
      "systole --surface 2,0 --budget 5",
      "intersect --surface 2,0 --word abC --word bd",
      "orbit-min --surface 1,1 --multicurve 5/7",
      "criterion --surface 1,1 --family \"1/0,0/1;2/3\"",
      "pinch-probe --surface 1,1 --multicurve 1/0,0/1 --t-steps 12 --format csv",
      "bers --surface 2,0 --lengths 1.1,0.7,2.3 --twists 0.2,-0.4,0.9",
      "homology-basis --surface 2,0 --pants-type dumbbell",
      "thick-sample --surface 2,0 --count 3 --seed 7",
      "empirical-k --surface 1,1 --multicurve 2/3 --count 5 --seed 3",
      "selftest",
  };
  int same = 0;
  std::string bad;
  for (const auto& c : cmds) {
    const auto a = run_cli(c);
    const auto b = run_cli(c);
    // 3 is an honest UNDETERMINED/INCONCLUSIVE outcome, still a full document
    if (a == b && (a.first == 0 || a.first == 3) && !a.second.empty()) {
      ++same;
    } else {
      bad += " [" + c + ": exit " + std::to_string(a.first) + "/" + std::to_string(b.first) + "]";
    }
  }
  return {same == static_cast<int>(cmds.size()),
          std::to_string(same) + "/" + std::to_string(cmds.size()) + " subcommands identical" + bad};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed-form lengths", closed_forms},
      {"trace identity", trace_identity},
      {"figure-eight monotonicity", monotonicity},
      {"corner dominates", corner_dominates},
      {"slope intersection oracle", oracle_equivalence},
      {"single slope is bounded", bounded_side},
      {"crossing pair is unbounded", unbounded_side},
      {"separating curve on genus two", separating_preset},
      {"short homology basis", buser_sepala},
      {"greedy Bers decomposition", bers},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
