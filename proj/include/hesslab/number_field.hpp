#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hesslab/poly.hpp"

namespace hesslab {

/// Element c0 + c1 r + ... + c_{d-1} r^{d-1} of Q(r).
struct FieldElem {
  std::vector<Rational> c;

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }
  friend FieldElem operator+(FieldElem a, const FieldElem& b) {
    for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] += b.c[i];
    return a;
  }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) {
    for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend FieldElem operator-(FieldElem a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend FieldElem operator*(const Rational& k, FieldElem a) {
    for (auto& x : a.c) x *= k;
    return a;
  }
  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.c == b.c; }
};

struct RatInterval {
  Rational lo, hi;
};

/// Q(r) for a real root r of an irreducible monic integer polynomial, with
/// a refinable isolating interval. Signs are decided exactly; refinement past
/// the precision cap raises InconclusiveError.
class RealField {
 public:
  /// p must be irreducible with exactly one root in (lo, hi] and p(lo), p(hi) of opposite signs.
  RealField(IntPoly p, Rational lo, Rational hi, unsigned cap_bits)
      : p_(std::move(p)), d_(static_cast<std::size_t>(p_.degree())), lo_(std::move(lo)), hi_(std::move(hi)), cap_bits_(cap_bits) {
    if (!p_.is_monic() || p_.degree() < 1) throw PreconditionError("field polynomial must be monic");
    sign_lo_ = sgn(p_.eval(lo_));
    if (sign_lo_ == 0 || sign_lo_ == sgn(p_.eval(hi_)))
      throw PreconditionError("interval does not isolate a sign change");
    refine_to(64);
  }

  /// Field of the unique real root of p (p irreducible with one real root, odd degree).
  static std::shared_ptr<RealField> unique_real_root(const IntPoly& p, unsigned cap_bits) {
    if (count_real_roots(p) != 1) throw PreconditionError("polynomial does not have exactly one real root");
    Integer bound = 1;
    for (int k = 0; k < p.degree(); ++k) bound = std::max(bound, Integer(abs(p.coeff(static_cast<std::size_t>(k))) + 1));
    return std::make_shared<RealField>(p, Rational(-bound), Rational(bound), cap_bits);
  }

  std::size_t degree() const { return d_; }
  const IntPoly& minpoly() const { return p_; }
  unsigned cap_bits() const { return cap_bits_; }

  FieldElem zero() const { return FieldElem{std::vector<Rational>(d_, Rational(0))}; }
  FieldElem from_rational(const Rational& a) const {
    FieldElem e = zero();
    e.c[0] = a;
    return e;
  }
  FieldElem generator() const {
    FieldElem e = zero();
    if (d_ == 1) e.c[0] = -Rational(p_.coeff(0));
    else e.c[1] = 1;
    return e;
  }
  /// q(r) for an integer polynomial q.
  FieldElem from_poly(const IntPoly& q) const {
    std::vector<Rational> c;
    for (const auto& x : q.coeffs()) c.emplace_back(x);
    return reduce(std::move(c));
  }

  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    std::vector<Rational> c(2 * d_ - 1, Rational(0));
    for (std::size_t i = 0; i < d_; ++i) {
      if (a.c[i] == 0) continue;
      for (std::size_t j = 0; j < d_; ++j) c[i + j] += a.c[i] * b.c[j];
    }
    return reduce(std::move(c));
  }

  FieldElem inv(const FieldElem& a) const {
    if (a.is_zero()) throw PreconditionError("inverse of zero");
    // solve (multiplication-by-a matrix) x = e0
    std::vector<std::vector<Rational>> m(d_, std::vector<Rational>(d_ + 1, Rational(0)));
    FieldElem col = a;
    for (std::size_t j = 0; j < d_; ++j) {
      for (std::size_t i = 0; i < d_; ++i) m[i][j] = col.c[i];
      col = mul(col, generator());
    }
    m[0][d_] = 1;
    for (std::size_t c = 0; c < d_; ++c) {
      std::size_t p = c;
      while (m[p][c] == 0) ++p;
      std::swap(m[c], m[p]);
      for (std::size_t r = 0; r < d_; ++r) {
        if (r == c || m[r][c] == 0) continue;
        Rational f = m[r][c] / m[c][c];
        for (std::size_t k = c; k <= d_; ++k) m[r][k] -= f * m[c][k];
      }
    }
    FieldElem x = zero();
    for (std::size_t i = 0; i < d_; ++i) x.c[i] = m[i][d_] / m[i][i];
    return x;
  }

  FieldElem div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }

  /// Exact sign of a.
  int sign(const FieldElem& a) const {
    if (a.is_zero()) return 0;
    std::lock_guard<std::mutex> lock(mu_);
    while (true) {
      RatInterval e = enclose_locked(a);
      if (e.lo > 0) return 1;
      if (e.hi < 0) return -1;
      bisect_locked();
    }
  }
  int compare(const FieldElem& a, const FieldElem& b) const { return sign(a - b); }

  RatInterval enclosure(const FieldElem& a) const {
    std::lock_guard<std::mutex> lock(mu_);
    return enclose_locked(a);
  }

  long double approx(const FieldElem& a) const {
    RatInterval e = enclosure(a);
    Rational mid = (e.lo + e.hi) / 2;
    return static_cast<long double>(mid.get_d());
  }

  RatInterval root_interval() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {lo_, hi_};
  }

  /// Refines until the root interval is narrower than 2^-bits.
  void refine_to(unsigned bits) const {
    std::lock_guard<std::mutex> lock(mu_);
    Rational w = 1;
    mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), bits);
    while (hi_ - lo_ > w) bisect_locked();
  }

 private:
  FieldElem reduce(std::vector<Rational> c) const {
    for (std::size_t k = c.size(); k-- > d_;) {
      if (c[k] == 0) continue;
      Rational f = c[k];
      for (std::size_t i = 0; i <= d_; ++i) c[k - d_ + i] -= f * Rational(p_.coeff(i));
    }
    c.resize(d_, Rational(0));
    return FieldElem{std::move(c)};
  }

  RatInterval enclose_locked(const FieldElem& a) const {
    if (lo_ == hi_) {
      Rational v = 0;
      for (std::size_t k = d_; k-- > 0;) v = v * lo_ + a.c[k];
      return {v, v};
    }
    Rational alo = 0, ahi = 0;
    for (std::size_t k = d_; k-- > 0;) {
      Rational p1 = alo * lo_, p2 = alo * hi_, p3 = ahi * lo_, p4 = ahi * hi_;
      alo = std::min({p1, p2, p3, p4}) + a.c[k];
      ahi = std::max({p1, p2, p3, p4}) + a.c[k];
    }
    return {alo, ahi};
  }

  void bisect_locked() const {
    Rational w = hi_ - lo_;
    Rational cap = 1;
    mpq_div_2exp(cap.get_mpq_t(), cap.get_mpq_t(), cap_bits_);
    if (w < cap) throw InconclusiveError("precision cap of " + std::to_string(cap_bits_) + " bits exceeded");
    Rational mid = (lo_ + hi_) / 2;
    int s = sgn(p_.eval(mid));
    if (s == 0) {
      lo_ = hi_ = mid;
    } else if (s == sign_lo_) {
      lo_ = mid;
    } else {
      hi_ = mid;
    }
  }

  IntPoly p_;
  std::size_t d_;
  mutable Rational lo_, hi_;
  int sign_lo_ = 0;
  unsigned cap_bits_;
  mutable std::mutex mu_;
};

/// sign(a*sqrt(s) + b*sqrt(t)) for s, t >= 0 in the field.
inline int sign_sqrt2(const RealField& f, const FieldElem& a, const FieldElem& s, const FieldElem& b,
                      const FieldElem& t) {
  int s1 = f.sign(s) > 0 ? f.sign(a) : 0;
  int s2 = f.sign(t) > 0 ? f.sign(b) : 0;
  if (s1 == 0) return s2;
  if (s2 == 0 || s1 == s2) return s1;
  return s1 * f.sign(f.mul(f.mul(a, a), s) - f.mul(f.mul(b, b), t));
}

/// sign(a*sqrt(s) + b*sqrt(t) + c*sqrt(u)) for s, t, u >= 0 in the field.
inline int sign_sqrt3(const RealField& f, const FieldElem& a, const FieldElem& s, const FieldElem& b,
                      const FieldElem& t, const FieldElem& c, const FieldElem& u) {
  int sa = f.sign(s) > 0 ? f.sign(a) : 0;
  int sb = f.sign(t) > 0 ? f.sign(b) : 0;
  int sc = f.sign(u) > 0 ? f.sign(c) : 0;
  if (sa == 0) return sign_sqrt2(f, b, t, c, u);
  if (sb == 0) return sign_sqrt2(f, a, s, c, u);
  if (sc == 0) return sign_sqrt2(f, a, s, b, t);
  if (sa == sb && sb == sc) return sa;
  // rotate so that the first term carries the lone sign
  const FieldElem *x = &a, *xs = &s, *y = &b, *ys = &t, *z = &c, *zs = &u;
  int lone = sa;
  if (sa == sb) {
    std::swap(x, z);
    std::swap(xs, zs);
    lone = sc;
  } else if (sa == sc) {
    std::swap(x, y);
    std::swap(xs, ys);
    lone = sb;
  }
  // |x| vs |y + z|: compare x^2 xs with y^2 ys + z^2 zs + 2 y z sqrt(ys zs)
  FieldElem lhs = f.mul(f.mul(*x, *x), *xs) - f.mul(f.mul(*y, *y), *ys) - f.mul(f.mul(*z, *z), *zs);
  FieldElem coef = Rational(-2) * f.mul(*y, *z);
  return lone * sign_sqrt2(f, lhs, f.from_rational(1), coef, f.mul(*ys, *zs));
}

}  // namespace hesslab
