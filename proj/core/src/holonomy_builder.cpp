// Fenchel-Nielsen coordinates to holonomy.
//
// The punctured torus has a closed form. The other surfaces are glued from
// pants groups: amalgamation along a decomposition curve is a conjugation
// that matches the two boundary elements, HNN gluing solves for the stable
// letter, and twisting composes with the one-parameter subgroup along the
// glued curve. Gluing is carried out in __float128 and rounded at the end.

#include <quadmath.h>

#include <cmath>
#include <cstdio>

#include "curvelab/error.hpp"
#include "curvelab/hyperbolic.hpp"

namespace curvelab {

namespace {

// Gluing runs in __float128: generator entries grow like 1/l^2 as curves are
// pinched, and long double loses the short traces below l ~ 1e-4.
using real = __float128;

namespace qm {
inline real exp(real x) { return expq(x); }
inline real cosh(real x) { return coshq(x); }
inline real sinh(real x) { return sinhq(x); }
inline real tanh(real x) { return tanhq(x); }
inline real sqrt(real x) { return sqrtq(x); }
inline real log(real x) { return logq(x); }
inline real fabs(real x) { return fabsq(x); }
}  // namespace qm

struct M2 {
  real a = 1, b = 0, c = 0, d = 1;

  M2 inv() const { return {d, -b, -c, a}; }
  real tr() const { return a + d; }
  friend M2 operator*(const M2& x, const M2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

M2 unimodular(real a, real b, real c, real d) {
  const real det = a * d - b * c;
  if (!(det > 0)) fail(ErrorCode::NumericDegeneracy, "non-positive determinant while gluing");
  const real s = qm::sqrt(det);
  return {a / s, b / s, c / s, d / s};
}

M2 conj(const M2& g, const M2& x) { return g * x * g.inv(); }

/// Pants group with boundary lengths l1, l2 and l3 for X, Y and XY; all traces
/// are negative.
std::pair<M2, M2> pants_pair(real l1, real l2, real l3) {
  const real t1 = -2 * qm::cosh(l1 / 2);
  const real t2 = -2 * qm::cosh(l2 / 2);
  const real s = -qm::exp(-l3 / 2);
  return {M2{t1, -1, 1, 0}, M2{0, s, -1 / s, t2}};
}

/// Eigenvector frame of a hyperbolic M with translation length l: the first
/// column is the expanding direction.
M2 eigenframe(const M2& m, real l) {
  const real sign = m.tr() < 0 ? -1 : 1;
  auto eigvec = [&](real lambda) {
    const real x1 = m.b, y1 = lambda - m.a;
    const real x2 = lambda - m.d, y2 = m.c;
    if (x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2) return std::pair{x1, y1};
    return std::pair{x2, y2};
  };
  const auto [p1, q1] = eigvec(sign * qm::exp(l / 2));
  const auto [p2, q2] = eigvec(sign * qm::exp(-l / 2));
  real det = p1 * q2 - p2 * q1;
  M2 v{p1, p2, q1, q2};
  if (det < 0) {
    v.b = -v.b;
    v.d = -v.d;
    det = -det;
  }
  return unimodular(v.a, v.b, v.c, v.d);
}

/// g with g P g^-1 = Q for hyperbolic P, Q of equal trace and length l.
M2 conjugator(const M2& p, const M2& q, real l) { return eigenframe(q, l) * eigenframe(p, l).inv(); }

/// One-parameter subgroup along M: flow(l) = +-M.
M2 flow(const M2& m, real l, real tau) {
  const M2 v = eigenframe(m, l);
  return v * M2{qm::exp(tau / 2), 0, 0, qm::exp(-tau / 2)} * v.inv();
}

/// Extremum of f(tau) = alpha e^(k tau) + beta e^(-k tau) + kappa sampled at
/// tau = 0 and +-1; returns 0 when f has no interior extremum.
real symmetric_point(const auto& f, real k) {
  const real f0 = f(0.0L), fp = f(1.0L), fm = f(-1.0L);
  const real ek = qm::exp(k);
  // fp - fm = (alpha - beta)(e^k - e^-k); fp + fm - 2 f0 = (alpha + beta)(e^k + e^-k - 2)
  const real diff = (fp - fm) / (ek - 1 / ek);
  const real sum = (fp + fm - 2 * f0) / (ek + 1 / ek - 2);
  const real alpha = (sum + diff) / 2;
  const real beta = (sum - diff) / 2;
  if (!(alpha * beta > 0)) return 0;
  return qm::log(beta / alpha) / (2 * k);
}

struct Torus {
  M2 x, y;             // the two free generators
  M2 boundary;         // [x, y]
  M2 half_boundary;    // x^-1 conjugated by y, the second copy of x
};

/// One-holed torus with interior curve length l, boundary length lb and twist
/// tau along x; y is chosen so that |tr y| is extremal at tau = 0.
Torus glue_torus(real l, real lb, real tau) {
  auto [x, xp] = pants_pair(l, l, lb);  // x * xp = [x, y]
  const M2 y0 = conjugator(x.inv(), xp, l);
  const real shift = symmetric_point([&](real t) { return qm::fabs((y0 * flow(x, l, t)).tr()); }, 0.5L);
  const M2 y = y0 * flow(x, l, shift + tau);
  return Torus{x, y, x * xp, xp};
}

void check_lengths(const FNPoint& X, real min_length) {
  for (double l : X.lengths) {
    if (!(l >= min_length) || !(l <= kMaxCuffLength) || !std::isfinite(l)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "decomposition length %.6g outside the holonomy builder range [%.3g, %.3g]", l,
                    static_cast<double>(min_length), kMaxCuffLength);
      fail(ErrorCode::NumericDegeneracy, buf);
    }
  }
}

// sum of 2 cosh d(z, g z) over generators, for z = x + i e^s
real spread(const std::vector<M2>& gens, real x, real s) {
  const real y = qm::exp(s);
  const M2 m{qm::sqrt(y), x / qm::sqrt(y), 0, 1 / qm::sqrt(y)};
  real total = 0;
  for (const auto& g : gens) {
    const M2 k = m.inv() * g * m;
    total += k.a * k.a + k.b * k.b + k.c * k.c + k.d * k.d;
  }
  return total;
}

// Moves the basepoint to (roughly) minimise the generator displacement, so
// the double matrices are well conditioned. Gradient descent on log(spread)
// in a unit frame at the current point (dx = y du, ds = dv); plain
// coordinate steps crawl along the valley once the surface is pinched.
std::vector<M2> balanced(const std::vector<M2>& gens) {
  real x = 0, s = 0;
  auto F = [&](real u, real v) { return qm::log(spread(gens, x + qm::exp(s) * u, s + v)); };
  real f = F(0, 0);
  const real h = 1e-6L;
  for (int it = 0; it < 400; ++it) {
    const real gu = (F(h, 0) - F(-h, 0)) / (2 * h);
    const real gv = (F(0, h) - F(0, -h)) / (2 * h);
    const real g2 = gu * gu + gv * gv;
    if (g2 < 1e-20L) break;
    real step = 1;
    bool moved = false;
    while (step > 1e-12L) {
      const real fn = F(-step * gu, -step * gv);
      if (fn < f - 1e-4L * step * g2) {
        x += qm::exp(s) * (-step * gu);
        s += -step * gv;
        f = fn;
        moved = true;
        break;
      }
      step /= 2;
    }
    if (!moved) break;
  }
  const real y = qm::exp(s);
  const M2 m{qm::sqrt(y), x / qm::sqrt(y), 0, 1 / qm::sqrt(y)};
  std::vector<M2> out;
  for (const auto& g : gens) out.push_back(m.inv() * g * m);
  return out;
}

Holonomy finish(const FNPoint& X, const std::vector<M2>& gens) {
  Holonomy h{X.sig(), {}, X.decomposition.curves, X.lengths, {}, std::nullopt};
  for (const auto& g : balanced(gens)) {
    const real s = qm::sqrt(g.a * g.d - g.b * g.c);
    h.precise.push_back({g.a / s, g.b / s, g.c / s, g.d / s});
    // det is 1 in quad; recomputing it in double cancels once entries pass 1e8
    h.generators.push_back(Mat2{static_cast<double>(g.a / s), static_cast<double>(g.b / s),
                                static_cast<double>(g.c / s), static_cast<double>(g.d / s)});
  }
  return h;
}

Holonomy build_torus(const FNPoint& X) {
  check_lengths(X, kMinTorusLength);
  const real l = X.lengths[0];
  const real tau = X.twists[0];
  const real p = 1 / qm::tanh(l / 2);
  const real q = 1 / qm::sinh(l / 2);
  const M2 a{qm::exp(l / 2), 0, 0, qm::exp(-l / 2)};
  const M2 b = M2{p, q, q, p} * M2{qm::exp(tau / 2), 0, 0, qm::exp(-tau / 2)};
  Holonomy h{X.sig(), {}, X.decomposition.curves, X.lengths, {}, std::array<double, 2>{X.lengths[0], X.twists[0]}};
  for (const M2& g : {a, b}) {
    // det(b) = p^2 - q^2 = 1 exactly in real arithmetic; no rescaling
    h.precise.push_back({g.a, g.b, g.c, g.d});
    h.generators.push_back(Mat2{static_cast<double>(g.a), static_cast<double>(g.b), static_cast<double>(g.c),
                                static_cast<double>(g.d)});
  }
  return h;
}

Holonomy build_pants(const FNPoint& X) {
  auto [a, b] = pants_pair(0, 0, 0);
  return finish(X, {a, b});
}

Holonomy build_sphere(const FNPoint& X) {
  check_lengths(X, kMinGluedLength);
  const real l = X.lengths[0];
  const real tau = X.twists[0];
  auto [a, b] = pants_pair(0, 0, l);
  auto [m2, c2] = pants_pair(l, 0, 0);
  const M2 m = a * b;
  const M2 c0 = conj(conjugator(m2, m, l), c2);
  const real shift = symmetric_point(
      [&](real t) { return (b * conj(flow(m, l, t), c0)).tr(); }, 1.0L);
  const M2 c = conj(flow(m, l, shift + tau), c0);
  return finish(X, {a, b, c});
}

Holonomy build_dumbbell(const FNPoint& X) {
  check_lengths(X, kMinGluedLength);
  const real la = X.lengths[0], lc = X.lengths[1], ls = X.lengths[2];
  const Torus t1 = glue_torus(la, ls, X.twists[0]);
  const Torus t2 = glue_torus(lc, ls, X.twists[1]);
  const M2 s = t1.boundary;
  const M2 g = conjugator(t2.boundary, s.inv(), ls);
  const M2 c0 = conj(g, t2.x), d0 = conj(g, t2.y);
  // origin from the untwisted handles, so each twist moves one gluing only
  const M2 y1 = glue_torus(la, ls, 0).y;
  const Torus u2 = glue_torus(lc, ls, 0);
  const M2 y2 = conj(conjugator(u2.boundary, s.inv(), ls), u2.y);
  const real shift = symmetric_point(
      [&](real t) {
        const M2 f = flow(s, ls, t);
        return (y1 * conj(f, y2)).tr();
      },
      1.0L);
  const M2 f = flow(s, ls, shift + X.twists[2]);
  return finish(X, {t1.x, t1.y, conj(f, c0), conj(f, d0)});
}

Holonomy build_theta(const FNPoint& X) {
  check_lengths(X, kMinGluedLength);
  const real la = X.lengths[0], lc = X.lengths[1], le = X.lengths[2];
  // Left pants: (bAB, c) with product e = bABc. Right pants: (dCD, a) with
  // product e^-1.
  auto [ap, c] = pants_pair(la, lc, le);
  const M2 e = ap * c;
  auto [cp2, a2] = pants_pair(lc, la, le);
  const M2 g = conjugator(cp2 * a2, e.inv(), le);
  M2 a = conj(g, a2);
  M2 cp = conj(g, cp2);

  const M2 b0 = conjugator(a.inv(), ap, la);
  const real sb = symmetric_point([&](real t) { return qm::fabs((b0 * flow(a, la, t)).tr()); }, 0.5L);
  M2 b = b0 * flow(a, la, sb + X.twists[0]);
  const M2 b_untwisted = b0 * flow(a, la, sb);
  const M2 d0 = conjugator(c.inv(), cp, lc);
  const real sd = symmetric_point([&](real t) { return qm::fabs((d0 * flow(c, lc, t)).tr()); }, 0.5L);
  M2 d = d0 * flow(c, lc, sd + X.twists[1]);

  // twist origin on e: b shortest
  const real se =
      symmetric_point([&](real t) { return qm::fabs((b_untwisted * flow(e, le, t).inv()).tr()); }, 0.5L);
  const M2 h = flow(e, le, se + X.twists[2]);
  a = conj(h, a);
  b = b * h.inv();
  d = h * d;
  return finish(X, {a, b, c, d});
}

}  // namespace

Holonomy build_holonomy(const FNPoint& X) {
  const SurfaceSig& sig = X.sig();
  if (sig.genus() == 0 && sig.cusps() == 3) return build_pants(X);
  if (sig.genus() == 1) return build_torus(X);
  if (sig.genus() == 0) return build_sphere(X);
  if (X.decomposition.tag == "theta") return build_theta(X);
  return build_dumbbell(X);
}

std::vector<Word> dehn_twist_images(const PantsDecomposition& P, std::size_t i) {
  const SurfaceSig& sig = P.sig;
  std::vector<Word> images;
  for (int g = 1; g <= sig.rank(); ++g) images.push_back(Word{g});
  auto set = [&](int g, std::string_view w) {
    Word out;
    for (char ch : w) out.push_back(parse_letter(ch));
    images[static_cast<std::size_t>(g - 1)] = out;
  };
  if (i >= P.curves.size()) fail(ErrorCode::InvalidArgument, "decomposition curve index out of range");
  if (sig.genus() == 1) {
    set(2, "ba");
  } else if (sig.genus() == 0) {
    set(3, "abcBA");
  } else if (i == 0) {
    set(2, "ba");
  } else if (i == 1) {
    set(4, "dc");
  } else if (P.tag == "theta") {
    set(1, "bABcaCbaB");
    set(2, "bCbaB");
    set(4, "bABcd");
  } else {
    set(3, "abABcbaBA");
    set(4, "abABdbaBA");
  }
  return images;
}

Word apply_substitution(std::span<const Word> images, std::span<const Letter> w) {
  Word out;
  for (Letter l : w) {
    const Word& img = images[static_cast<std::size_t>(std::abs(l) - 1)];
    if (l > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      const Word inv = inverse(img);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

FNPoint modular_torus_point() {
  const double l = 2 * std::acosh(1.5);
  return FNPoint::make(pants_type(SurfaceSig::make(1, 1), "torus"), {l}, {-l / 2});
}

FNPoint reference_point(const PantsDecomposition& P) {
  if (P.sig.genus() == 1) return modular_torus_point();
  // 2.5 keeps the generator matrices smallest on (2,0)
  return FNPoint::make(P, std::vector<double>(P.curves.size(), 2.5), std::vector<double>(P.curves.size(), 0.0));
}

}  // namespace curvelab
