#include "curvelab/intersection.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <type_traits>
#include <mutex>

#include "curvelab/error.hpp"

namespace curvelab {

long slope_intersection(const Slope& s1, const Slope& s2) { return std::labs(s1.p * s2.q - s1.q * s2.p); }

namespace {

using quad = __float128;

// math shims so the engine can run in long double or quad precision
inline long double m_log(long double x) { return std::log(x); }
inline long double m_sqrt(long double x) { return std::sqrt(x); }
inline long double m_abs(long double x) { return std::fabs(x); }
inline long double m_fmod(long double x, long double y) { return std::fmod(x, y); }
inline long double m_hypot(long double x, long double y) { return std::hypot(x, y); }
inline long double m_exp(long double x) { return std::exp(x); }
inline long double m_sinh(long double x) { return std::sinh(x); }
inline long double m_cosh(long double x) { return std::cosh(x); }
inline quad m_log(quad x) { return logq(x); }
inline quad m_exp(quad x) { return expq(x); }
inline quad m_sinh(quad x) { return sinhq(x); }
inline quad m_cosh(quad x) { return coshq(x); }
inline quad m_sqrt(quad x) { return sqrtq(x); }
inline quad m_abs(quad x) { return fabsq(x); }
inline quad m_fmod(quad x, quad y) { return fmodq(x, y); }
inline quad m_hypot(quad x, quad y) { return hypotq(x, y); }

template <class R>
struct V2 {
  R x, y;
};

template <class R>
struct M2 {
  R a = 1, b = 0, c = 0, d = 1;
  M2 inv() const { return {d, -b, -c, a}; }
  R tr() const { return a + d; }
  friend M2 operator*(const M2& p, const M2& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
  }
  V2<R> operator()(const V2<R>& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
};

template <class R>
V2<R> unit(const V2<R>& v) {
  const R n = m_hypot(v.x, v.y);
  return {v.x / n, v.y / n};
}

// Eigenvector for eigenvalue lambda (other eigenvalue mu), from whichever row
// is better conditioned. lambda - a equals d - mu; the form with the smaller
// operands avoids cancellation for nearly triangular matrices.
template <class R>
V2<R> eigvec(const M2<R>& m, R lambda, R mu) {
  const R la = m_abs(m.a) > m_abs(m.d) ? m.d - mu : lambda - m.a;
  const R ld = m_abs(m.d) > m_abs(m.a) ? m.a - mu : lambda - m.d;
  const V2<R> r1{m.b, la};
  const V2<R> r2{ld, m.c};
  return unit((r1.x * r1.x + r1.y * r1.y >= r2.x * r2.x + r2.y * r2.y) ? r1 : r2);
}

template <class R>
struct Axis {
  V2<R> attracting, repelling;
  R lambda;  // |eigenvalue| > 1
};

template <class R>
Axis<R> axis_of(const M2<R>& m) {
  const R t = m_abs(m.tr());
  const R sign = m.tr() < 0 ? -1 : 1;
  const R lambda = (t + m_sqrt((t - 2) * (t + 2))) / 2;
  return {eigvec(m, sign * lambda, sign / lambda), eigvec(m, sign / lambda, sign * lambda), lambda};
}

// columns: attracting -> infinity, repelling -> 0; orientation preserving
template <class R>
M2<R> frame_of(const Axis<R>& ax) {
  M2<R> f{ax.attracting.x, ax.repelling.x, ax.attracting.y, ax.repelling.y};
  if (f.a * f.d - f.b * f.c < 0) {
    f.b = -f.b;
    f.d = -f.d;
  }
  return f;
}

template <class R>
M2<R> inverse(const M2<R>& m) {
  const R det = m.a * m.d - m.b * m.c;
  return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

struct Crossing {
  // position along the axis of a (mod its length) and the log-ratio of the
  // endpoint distances, which fixes the crossing angle
  long double pos, slant;
  int wlen;
};

constexpr long double kCoincide = 1e-7L;
// Rounding error in position and slant grows like exp(|slant| / 2) for
// fragile crossings, so the merge window widens with it.
constexpr long double kMaxMerge = 1e-2L;
long double merge_tolerance(long double base, long double slant) {
  return std::min(kMaxMerge, base * std::max(1.0L, std::exp((std::fabs(slant) - 10) / 2)));
}
// merge window for long double and for quad
constexpr long double kMergeLong = 1e-6L;
constexpr long double kMergeQuad = 1e-14L;
// distinct keys closer than this many merge windows send the count to quad
constexpr long double kCrowding = 100;
// Endpoint separation, on the unit circle of the frame centred on the lift,
// below which linking is ambiguous.
constexpr long double kTangent = 1e-9L;
// Crossings this fragile (|slant| above the bound, i.e. angle within about
// 1e-6 of 0 or pi) are recomputed in quad precision.
constexpr long double kShallowSlant = 27.6L;

template <class R>
class Engine {
 public:
  Engine(const Holonomy& h, const CurveWord& a, const CurveWord& b) : a_(a), b_(b) {
    if (h.torus_closed_form) {
      // rebuilt at working precision; rounded generators move the cusp
      const R l = (*h.torus_closed_form)[0], tau = (*h.torus_closed_form)[1];
      const R p = m_cosh(l / 2) / m_sinh(l / 2), q = 1 / m_sinh(l / 2);
      const R et = m_exp(tau / 2);
      gens_.push_back({m_exp(l / 2), 0, 0, 1 / m_exp(l / 2)});
      gens_.push_back({p * et, q / et, q * et, p / et});
    } else if (h.precise.size() == h.generators.size()) {
      for (const auto& g : h.precise) gens_.push_back({R(g[0]), R(g[1]), R(g[2]), R(g[3])});
    } else {
      for (const auto& g : h.generators) gens_.push_back({R(g.a), R(g.b), R(g.c), R(g.d)});
    }
    for (const auto& g : gens_) invs_.push_back(g.inv());
    const M2<R> A = word(a.letters());
    const M2<R> B = word(b.letters());
    parabolic_ = m_abs(A.tr()) < 2 + R(1e-6L) || m_abs(B.tr()) < 2 + R(1e-6L);
    if (parabolic_) return;
    // Free groups: conjugacy is equality of cyclic words. On (2,0) equal
    // traces are taken as the sign of a common class.
    if (a.canonical() == b.canonical()) {
      may_coincide_ = true;
    } else if (h.sig.closed()) {
      may_coincide_ = m_abs(m_abs(A.tr()) - m_abs(B.tr())) < R(1e-9L) * m_abs(A.tr());
    }
    const Axis<R> ax = axis_of(A);
    ell_ = 2 * m_log(ax.lambda);
    if (ell_ < R(1e-5L)) fail(ErrorCode::NumericDegeneracy, "axis of '" + a.str() + "' too short for linking counts");
    // Conjugating by a prefix P is the same as moving to the cyclic rotation
    // P^-1 a P. Each rotation gets its own eigenframe, computed from the
    // rotated word, plus the offset along the axis of a that P induces;
    // pushing endpoints through long prefixes instead loses most digits.
    const M2<R> base = frame_of(ax);
    const M2<R> base_inv = inverse(base);
    const Word& la = a.letters();
    M2<R> p;
    for (std::size_t i = 0; i < la.size(); ++i) {
      Word rot(la.begin() + static_cast<std::ptrdiff_t>(i), la.end());
      rot.insert(rot.end(), la.begin(), la.begin() + static_cast<std::ptrdiff_t>(i));
      const M2<R> f = frame_of(axis_of(word(rot)));
      const M2<R> d = base_inv * p * f;  // diagonal up to rounding
      left_.push_back(inverse(f));
      offset_.push_back(m_log(m_abs(d.a)) - m_log(m_abs(d.d)));
      p = p * step(la[i]);
    }
    const Word& lb = b.letters();
    for (std::size_t j = 0; j < lb.size(); ++j) {
      Word rot(lb.begin() + static_cast<std::ptrdiff_t>(j), lb.end());
      rot.insert(rot.end(), lb.begin(), lb.begin() + static_cast<std::ptrdiff_t>(j));
      const Axis<R> bx = axis_of(word(rot));
      right_.push_back({bx.attracting, bx.repelling});
    }
  }

  bool parabolic() const { return parabolic_; }
  bool same_class() const { return same_class_; }

  void run(int radius) {
    Word w;
    visit(w, M2<R>{}, radius);
  }

  // Deduplicated crossings, each with the shortest W that produced it.
  std::vector<Crossing> unique() const {
    std::vector<Crossing> raw = raw_;
    std::sort(raw.begin(), raw.end(), [](const Crossing& x, const Crossing& y) { return x.pos < y.pos; });
    std::vector<Crossing> out;
    std::size_t window = 0;
    for (const auto& c : raw) {
      while (window < out.size() && c.pos - out[window].pos > kMaxMerge) ++window;
      bool merged = false;
      for (std::size_t i = window; i < out.size(); ++i) {
        const long double tol = merge_tolerance(merge_, c.slant);
        if (c.pos - out[i].pos < tol && std::fabs(out[i].slant - c.slant) < tol) {
          out[i].wlen = std::min(out[i].wlen, c.wlen);
          merged = true;
          break;
        }
      }
      if (!merged) out.push_back(c);
    }
    // wrap-around at pos = 0 ~ ell
    const long double ell = static_cast<long double>(ell_);
    for (std::size_t i = 0; i < out.size() && out[i].pos < kMaxMerge; ++i) {
      for (std::size_t j = out.size(); j-- > i + 1;) {
        const long double tol = merge_tolerance(merge_, out[i].slant);
        if (ell - out[j].pos + out[i].pos < tol && std::fabs(out[j].slant - out[i].slant) < tol) {
          out[i].wlen = std::min(out[i].wlen, out[j].wlen);
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
        }
      }
    }
    return out;
  }

 private:
  const M2<R>& step(Letter l) const { return l > 0 ? gens_[l - 1] : invs_[-l - 1]; }

  M2<R> word(std::span<const Letter> w) const {
    M2<R> m;
    for (Letter l : w) m = m * step(l);
    return m;
  }

  void visit(Word& w, const M2<R>& m, int radius) {
    process(m, static_cast<int>(w.size()));
    if (static_cast<int>(w.size()) == radius) return;
    const int rank = static_cast<int>(gens_.size());
    for (int g = 1; g <= rank; ++g) {
      for (Letter l : {Letter(g), Letter(-g)}) {
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
        visit(w, m * step(l), radius);
        w.pop_back();
      }
    }
  }

  // Lift W b_j W^-1 seen from the frame of a_i, flowed along the axis so
  // that the image of the basepoint sits at height 1.
  void process(const M2<R>& wm, int wlen) {
    for (std::size_t i = 0; i < left_.size(); ++i) {
      const M2<R> n = left_[i] * wm;
      const R height = m_hypot(n.a, n.b) / m_hypot(n.c, n.d);
      const R s = m_sqrt(height);
      const M2<R> local{n.a / s, n.b / s, n.c * s, n.d * s};
      const R shift = m_log(height) + offset_[i];
      for (const auto& [f1, f2] : right_) lift(local(f1), local(f2), wlen, shift);
    }
  }

  static R near_zero(const V2<R>& v) { return m_abs(v.x) / m_hypot(v.x, v.y); }
  static R near_inf(const V2<R>& v) { return m_abs(v.y) / m_hypot(v.x, v.y); }

  void lift(const V2<R>& e1, const V2<R>& e2, int wlen, R shift) {
    // same geodesic up to accumulated rounding
    if (may_coincide_ && ((near_zero(e1) < R(kCoincide) && near_inf(e2) < R(kCoincide)) ||
                          (near_inf(e1) < R(kCoincide) && near_zero(e2) < R(kCoincide)))) {
      same_class_ = true;
      return;
    }
    if (e1.x == 0 || e1.y == 0 || e2.x == 0 || e2.y == 0) {
      fail(ErrorCode::TangentAxes, "lift of '" + b_.str() + "' shares an endpoint with the axis of '" + a_.str() + "'");
    }
    const R l1 = m_log(m_abs(e1.x)) - m_log(m_abs(e1.y));
    const R l2 = m_log(m_abs(e2.x)) - m_log(m_abs(e2.y));
    // in the frame centred at the geometric mean of the two endpoints, one of
    // them is within kTangent of 0 or infinity
    if (m_abs(l1 - l2) > R(-2 * std::log(kTangent))) {
      fail(ErrorCode::TangentAxes, "lift of '" + b_.str() + "' nearly asymptotic to the axis of '" + a_.str() + "'");
    }
    const bool neg1 = (e1.x < 0) != (e1.y < 0);
    const bool neg2 = (e2.x < 0) != (e2.y < 0);
    if (neg1 == neg2) return;
    const R lu = neg1 ? l1 : l2;
    const R lv = neg1 ? l2 : l1;
    R pos = m_fmod((lu + lv) / 2 + shift, ell_);
    if (pos < 0) pos += ell_;
    raw_.push_back({static_cast<long double>(pos), static_cast<long double>(lu - lv), wlen});
  }

  const CurveWord& a_;
  const CurveWord& b_;
  std::vector<M2<R>> gens_, invs_;
  std::vector<M2<R>> left_;
  std::vector<R> offset_;
  std::vector<std::pair<V2<R>, V2<R>>> right_;
  std::vector<Crossing> raw_;
  R ell_ = 0;
  bool parabolic_ = false;
  long double merge_ = std::is_same_v<R, quad> ? kMergeQuad : kMergeLong;
  bool may_coincide_ = false;
  bool same_class_ = false;
};

struct Outcome {
  IntersectionResult result;
  bool fragile = false;
};

template <class R>
Outcome count_with(const Holonomy& h, const CurveWord& a, const CurveWord& b, int radius) {
  Engine<R> engine(h, a, b);
  if (engine.parabolic()) return {{0, true, radius}, false};
  engine.run(radius);
  const auto keys = engine.unique();
  long count = 0, previous = 0;
  bool fragile = false;
  for (const auto& k : keys) {
    if (k.wlen <= radius) ++count;
    if (k.wlen <= radius - 1) ++previous;
    if (std::fabs(k.slant) > kShallowSlant) fragile = true;
  }
  // keys sorted by position; neighbours in both coordinates are suspect
  const long double base = std::is_same_v<R, quad> ? kMergeQuad : kMergeLong;
  for (std::size_t i = 0; i < keys.size() && !fragile; ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      const long double tol = kCrowding * merge_tolerance(base, keys[i].slant);
      if (keys[j].pos - keys[i].pos > tol) break;
      if (std::fabs(keys[j].slant - keys[i].slant) < tol) fragile = true;
    }
  }
  if (engine.same_class() || a.canonical() == b.canonical()) {
    count /= 2;
    previous /= 2;
  }
  return {{count, count == previous, radius}, fragile};
}

}  // namespace

IntersectionResult geodesic_intersection(const Holonomy& h, const CurveWord& a, const CurveWord& b, int radius) {
  if (!(a.sig() == h.sig) || !(b.sig() == h.sig)) fail(ErrorCode::WrongSurface, "curves and holonomy on different surfaces");
  if (radius < 2) fail(ErrorCode::InvalidArgument, "intersection radius must be >= 2");
  try {
    const Outcome fast = count_with<long double>(h, a, b, radius);
    if (!fast.fragile) return fast.result;
  } catch (const CurveLabError& e) {
    if (e.code() != ErrorCode::TangentAxes) throw;
  }
  return count_with<quad>(h, a, b, radius).result;
}

IntersectionResult certified_intersection(const Holonomy& h, const CurveWord& a, const CurveWord& b, int radius,
                                          int max_radius) {
  IntersectionResult r;
  for (int k = radius; k <= std::max(radius, max_radius); ++k) {
    r = geodesic_intersection(h, a, b, k);
    if (r.certified) break;
  }
  return r;
}

IntersectionResult multicurve_pants_intersection(const Holonomy& h, const PantsDecomposition& P, const Multicurve& m,
                                                 int radius) {
  if (!(P.sig == h.sig) || !(m.sig() == h.sig)) fail(ErrorCode::WrongSurface, "pants decomposition on another surface");
  IntersectionResult total{0, true, radius};
  for (const auto& pc : P.curves) {
    for (std::size_t i = 0; i < m.components.size(); ++i) {
      try {
        const auto r = geodesic_intersection(h, pc, m.components[i], radius);
        total.count += r.count;
        total.certified = total.certified && r.certified;
      } catch (const CurveLabError& e) {
        throw CurveLabError(e.code(), "pair (" + pc.str() + ", component " + std::to_string(i) + " '" +
                                          m.components[i].str() + "'): " + e.what());
      }
    }
  }
  return total;
}

const Holonomy& reference_holonomy(const SurfaceSig& sig) {
  static std::mutex mu;
  static std::map<std::string, Holonomy> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(sig.str());
  if (it == cache.end()) {
    it = cache.emplace(sig.str(), build_holonomy(reference_point(pants_type(sig, "")))).first;
  }
  return it->second;
}

int default_radius(const SurfaceSig& sig) { return sig.rank() <= 2 ? 4 : 3; }

bool is_simple_curve(const CurveWord& w) {
  const Holonomy& h = reference_holonomy(w.sig());
  const int r = default_radius(w.sig());
  const auto res = certified_intersection(h, w, w, r, r + 3);
  if (!res.certified) fail(ErrorCode::Uncertified, "self-intersection of '" + w.str() + "' did not settle");
  return res.count == 0;
}

}  // namespace curvelab
