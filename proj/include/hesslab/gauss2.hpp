#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hesslab/hessenberg.hpp"

namespace hesslab {

using Period = std::vector<Integer>;

inline bool periods_equal(const Period& p, const Period& q) {
  if (p.size() != q.size()) return false;
  if (p.empty()) return true;
  for (std::size_t s = 0; s < p.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i) ok = p[i] == q[(i + s) % q.size()];
    if (ok) return true;
  }
  return false;
}

// "(2,1,1,3)"
inline std::string period_to_string(const Period& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i].get_str();
  }
  return s + ")";
}

/// Integer length of the segment PQ.
inline Integer il(const IntVector& p, const IntVector& q) {
  IntVector d = q - p;
  if (d.is_zero()) throw PreconditionError("degenerate segment");
  return d.content();
}

/// Integer angle PQR.
inline Integer ia(const IntVector& p, const IntVector& q, const IntVector& r) {
  IntVector a = q - p, b = r - q;
  Integer d = abs(a[0] * b[1] - a[1] * b[0]);
  if (d == 0) throw PreconditionError("collinear points have no integer angle");
  return d / (il(p, q) * il(q, r));
}

namespace detail {

/// sign(p + q sqrt(D)), D > 0 not a square
inline int surd_sign(const Rational& p, const Rational& q, const Integer& disc) {
  int sp = sgn(p), sq = sgn(q);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  return sp * sgn(p * p - q * q * Rational(disc));
}

struct Surd {
  Rational p, q;
  friend Surd operator-(const Surd& a, const Surd& b) { return {a.p - b.p, a.q - b.q}; }
};

}  // namespace detail

struct Sail2 {
  IntMatrix op;
  IntMatrix generator;  // sign(trace) * M, expands the first eigen-coordinate
  int s1 = 1, s2 = 1;   // cone X s1 > 0, Y s2 > 0
  std::vector<IntVector> fundamental;  // one period of vertices, increasing X
};

/// One 2D sail: the boundary of the convex hull of the integer points in the open cone (s1, s2).
inline Sail2 compute_sail2(const IntMatrix& m, int s1 = 1, int s2 = 1, long box = 1000000) {
  if (m.dim() != 2) throw PreconditionError("sail2 needs a 2x2 matrix");
  if (det(m) != 1) throw PreconditionError("matrix determinant must be 1");
  const Integer t = m.trace();
  if (abs(t) <= 2) throw PreconditionError("matrix does not have a real spectrum with distinct eigenvalues");
  Sail2 s;
  s.op = m;
  s.s1 = s1;
  s.s2 = s2;
  const IntMatrix g = (t > 0) ? m : -m;
  s.generator = g;
  const IntMatrix ginv = inverse_unimodular(g);
  const Integer T = abs(t), disc = T * T - 4, b = g(0, 1), d = g(1, 1);
  // l_mu(v) = (mu - d) v1 + b v2, mu = (T + sqrt D)/2
  const Rational half_td = Rational(Integer(T - 2 * d)) / 2;
  auto P = [&](const IntVector& v) -> Rational { return half_td * Rational(v[0]) + Rational(Integer(b * v[1])); };
  auto Q = [&](const IntVector& v) -> Rational { return Rational(v[0]) / 2; };
  auto X = [&](const IntVector& v) { return detail::Surd{Rational(s1) * P(v), Rational(s1) * Q(v)}; };
  auto Y = [&](const IntVector& v) { return detail::Surd{Rational(s2) * P(v), Rational(-s2) * Q(v)}; };
  auto sign = [&](const detail::Surd& a) { return detail::surd_sign(a.p, a.q, disc); };
  auto in_cone = [&](const IntVector& v) { return sign(X(v)) > 0 && sign(Y(v)) > 0; };

  // anchor: cone point of minimal |XY| in the first box that contains any
  IntVector p0;
  Rational best = -1;
  for (long r = 1; best < 0; ++r) {
    if (r > box) throw InconclusiveError("no lattice point found in the cone within the box cap");
    for (long x = -r; x <= r; ++x)
      for (long y = -r; y <= r; ++y) {
        IntVector v{x, y};
        if (v.is_zero() || !in_cone(v)) continue;
        Rational pp = P(v), qq = Q(v);
        Rational xy = abs(pp * pp - qq * qq * Rational(disc));
        if (best < 0 || xy < best) {
          best = xy;
          p0 = v;
        }
      }
  }
  const IntVector p1 = g * p0;
  const detail::Surd x0 = X(p0), x1 = X(p1), y0 = Y(p0);

  // numeric parallelogram x0 <= X < x1, 0 < Y <= y0
  const long double sd = std::sqrt(static_cast<long double>(disc.get_d()));
  const long double mu = (static_cast<long double>(T.get_d()) + sd) / 2, nu = (static_cast<long double>(T.get_d()) - sd) / 2;
  const long double al = mu - static_cast<long double>(d.get_d()), be = nu - static_cast<long double>(d.get_d());
  const long double bb = static_cast<long double>(b.get_d());
  auto num = [&](const detail::Surd& a) { return static_cast<long double>(a.p.get_d()) + static_cast<long double>(a.q.get_d()) * sd; };
  const long double xl = num(x0) * s1, xh = num(x1) * s1, yh = num(y0) * s2;  // raw l_mu, l_nu ranges (signed)
  long double v2lo = 1e300L, v2hi = -1e300L;
  for (long double xx : {xl, xh})
    for (long double yy : {0.0L, yh}) {
      long double v1 = (xx - yy) / (al - be);
      long double v2 = (xx - al * v1) / bb;
      v2lo = std::min(v2lo, v2);
      v2hi = std::max(v2hi, v2);
    }
  std::vector<IntVector> cyl;
  const long lo2 = static_cast<long>(std::floor(v2lo)) - 1, hi2 = static_cast<long>(std::ceil(v2hi)) + 1;
  if (std::labs(lo2) > box || std::labs(hi2) > box) throw InconclusiveError("sail2 enumeration exceeded the box cap");
  for (long v2 = lo2; v2 <= hi2; ++v2) {
    // al v1 + bb v2 between xl and xh, be v1 + bb v2 between 0 and yh
    long double a1 = (xl - bb * v2) / al, a2 = (xh - bb * v2) / al;
    long double c1 = (0 - bb * v2) / be, c2 = (yh - bb * v2) / be;
    long double lo = std::max(std::min(a1, a2), std::min(c1, c2)), hi = std::min(std::max(a1, a2), std::max(c1, c2));
    if (lo > hi + 2) continue;
    for (long v1 = static_cast<long>(std::floor(lo)) - 1; v1 <= static_cast<long>(std::ceil(hi)) + 1; ++v1) {
      IntVector v{v1, v2};
      if (sign(X(v) - x0) < 0 || sign(X(v) - x1) >= 0) continue;
      if (sign(Y(v)) <= 0 || sign(Y(v) - y0) > 0) continue;
      cyl.push_back(v);
    }
  }
  std::vector<IntVector> all;
  for (const auto& v : cyl) {
    all.push_back(ginv * v);
    all.push_back(v);
    all.push_back(g * v);
  }
  std::sort(all.begin(), all.end(), [&](const IntVector& a, const IntVector& c) { return sign(X(a) - X(c)) < 0; });
  std::vector<IntVector> stair;
  for (const auto& v : all)
    if (stair.empty() || sign(Y(v) - Y(stair.back())) < 0) stair.push_back(v);
  const int orient = s1 * s2 * sgn(b);
  auto turn = [&](const IntVector& a, const IntVector& c, const IntVector& e) {
    IntVector u = c - a, w = e - c;
    return orient * sgn(Integer(u[0] * w[1] - u[1] * w[0]));
  };
  std::vector<IntVector> hull;
  for (const auto& v : stair) {
    while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), v) <= 0) hull.pop_back();
    hull.push_back(v);
  }
  for (const auto& v : hull)
    if (sign(X(v) - x0) >= 0 && sign(X(v) - x1) < 0) s.fundamental.push_back(v);
  if (s.fundamental.empty()) throw Error("sail2 found no fundamental vertices");
  return s;
}

/// Characteristic sequence of one period of a 2D sail.
inline Period sail_period(const Sail2& s) {
  const std::size_t k = s.fundamental.size();
  std::vector<IntVector> ext = s.fundamental;
  while (ext.size() < k + 2) ext.push_back(s.generator * ext[ext.size() - k]);
  Period p;
  for (std::size_t i = 0; i < k; ++i) {
    p.push_back(il(ext[i], ext[i + 1]));
    p.push_back(ia(ext[i], ext[i + 1], ext[i + 2]));
  }
  return p;
}

inline Period sail_period(const IntMatrix& m) { return sail_period(compute_sail2(m)); }

struct ComplexSpectrum {
  IntMatrix representative;
};
struct MultipleEigen {
  int epsilon;
  Integer k;
};
struct RealSpectrum {
  Period period;
};
using Sl2Class = std::variant<ComplexSpectrum, MultipleEigen, RealSpectrum>;

inline Sl2Class classify_sl2(const IntMatrix& m) {
  if (m.dim() != 2) throw PreconditionError("classify_sl2 needs a 2x2 matrix");
  if (det(m) != 1) throw PreconditionError("matrix determinant must be 1");
  const Integer t = m.trace();
  if (t == 1) return ComplexSpectrum{IntMatrix{{1, 1}, {-1, 0}}};
  if (t == 0) return ComplexSpectrum{IntMatrix{{0, 1}, {-1, 0}}};
  if (t == -1) return ComplexSpectrum{IntMatrix{{0, 1}, {-1, -1}}};
  if (t == 2 || t == -2) {
    const int eps = t > 0 ? 1 : -1;
    IntMatrix nil = m - Integer(eps) * IntMatrix::identity(2);
    if (nil == IntMatrix(2)) return MultipleEigen{eps, 0};
    IntVector v = (nil(0, 0) != 0 || nil(0, 1) != 0) ? IntVector{std::vector<Integer>{-nil(0, 1), nil(0, 0)}}
                                                     : IntVector{std::vector<Integer>{-nil(1, 1), nil(1, 0)}};
    Integer g = v.content();
    v[0] /= g;
    v[1] /= g;
    // w with v1 w2 - v2 w1 = 1
    Integer s, r, gg;
    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), v[0].get_mpz_t(), v[1].get_mpz_t());
    IntVector w{std::vector<Integer>{-r, s}};
    IntMatrix u = IntMatrix::from_columns({v, w});
    IntMatrix c = inverse_unimodular(u) * m * u;
    return MultipleEigen{eps, c(0, 1)};
  }
  return RealSpectrum{sail_period(m)};
}

/// Searches X in SL(2,Z) with X^-1 M X = N using perfect forms seeded at sail vertices.
inline std::optional<IntMatrix> find_conjugator_2d(const IntMatrix& m, const IntMatrix& n) {
  if (char_poly(m) != char_poly(n)) return std::nullopt;
  auto sn = compute_sail2(n, 1, 1);
  PerfectForm pn = reduce_to_perfect(n, sn.fundamental.front());
  const IntMatrix un_inv = inverse_unimodular(pn.conjugator);
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      auto sm = compute_sail2(m, s1, s2);
      for (const auto& v : sm.fundamental) {
        PerfectForm pm = reduce_to_perfect(m, v);
        if (pm.perfect != pn.perfect) continue;
        IntMatrix x = pm.conjugator * un_inv;
        if (det(x) == 1) return x;
      }
    }
  return std::nullopt;
}

}  // namespace hesslab
