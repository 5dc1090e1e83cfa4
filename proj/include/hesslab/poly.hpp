#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hesslab/int_matrix.hpp"

namespace hesslab {

/// Integer polynomial, coefficients stored low degree first.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> c) : c_(std::move(c)) { trim(); }
  IntPoly(std::initializer_list<long> c) {
    for (long x : c) c_.emplace_back(x);
    trim();
  }
  static IntPoly constant(const Integer& a) { return IntPoly(std::vector<Integer>{a}); }
  static IntPoly monomial(std::size_t k, const Integer& a = 1) {
    std::vector<Integer> c(k + 1, Integer(0));
    c[k] = a;
    return IntPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Integer coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Integer(0); }
  const std::vector<Integer>& coeffs() const { return c_; }
  Integer leading() const { return c_.empty() ? Integer(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Integer eval(const Integer& x) const {
    Integer r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  Rational eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Rational(*it);
    return r;
  }

  IntPoly derivative() const {
    std::vector<Integer> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<unsigned long>(k));
    return IntPoly(std::move(d));
  }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (Integer(-1) * b); }
  friend IntPoly operator*(const Integer& k, IntPoly a) {
    for (auto& x : a.c_) x *= k;
    a.trim();
    return a;
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
  }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }
  friend bool operator<(const IntPoly& a, const IntPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

  /// Division by a monic polynomial; returns (quotient, remainder).
  std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& d) const {
    if (!d.is_monic()) throw PreconditionError("divisor must be monic");
    std::vector<Integer> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {IntPoly(), *this};
    std::vector<Integer> q(static_cast<std::size_t>(degree() - dd + 1), Integer(0));
    for (int k = degree(); k >= dd; --k) {
      Integer lc = r[static_cast<std::size_t>(k)];
      q[static_cast<std::size_t>(k - dd)] = lc;
      if (lc == 0) continue;
      for (int i = 0; i <= dd; ++i) r[static_cast<std::size_t>(k - dd + i)] -= lc * d.c_[static_cast<std::size_t>(i)];
    }
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
  }

  // "t^3-3t^2-t-1"
  std::string to_string(char var = 't') const {
    if (c_.empty()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      const Integer& a = c_[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      Integer mag = abs(a);
      if (a < 0) s += "-";
      else if (!s.empty()) s += "+";
      if (k == 0 || mag != 1) s += mag.get_str();
      if (k >= 1) s += var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Integer> c_;
};

namespace detail {

inline IntPoly det_poly(std::vector<std::vector<IntPoly>> a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  IntPoly sum;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<IntPoly>> minor(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) minor[r - 1].push_back(a[r][c]);
    IntPoly term = a[0][j] * det_poly(std::move(minor));
    sum = (j % 2) ? sum - term : sum + term;
  }
  return sum;
}

}  // namespace detail

/// det(tI - M) by cofactor expansion over Z[t].
inline IntPoly char_poly(const IntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::vector<IntPoly>> a(n, std::vector<IntPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = IntPoly::constant(-m(i, j));
      if (i == j) a[i][j] = a[i][j] + IntPoly::monomial(1);
    }
  return detail::det_poly(std::move(a));
}

/// Sylvester resultant.
inline Integer resultant(const IntPoly& p, const IntPoly& q) {
  const int dp = p.degree(), dq = q.degree();
  if (dp < 0 || dq < 0) return 0;
  const std::size_t n = static_cast<std::size_t>(dp + dq);
  if (n == 0) return 1;
  IntMatrix s(n);
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + k)) = p.coeff(static_cast<std::size_t>(dp - k));
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k)
      s(static_cast<std::size_t>(dq + r), static_cast<std::size_t>(r + k)) = q.coeff(static_cast<std::size_t>(dq - k));
  return det(s);
}

inline Integer discriminant(const IntPoly& p) {
  const int d = p.degree();
  if (d < 2 || d > 4) throw PreconditionError("discriminant needs degree 2..4, got " + std::to_string(d));
  Integer r = resultant(p, p.derivative());
  Integer q;
  mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
  return ((d * (d - 1) / 2) % 2) ? Integer(-q) : q;
}

/// Positive divisors of |a| (a != 0), ascending.
inline std::vector<Integer> divisors(const Integer& a) {
  Integer m = abs(a);
  std::vector<Integer> lo, hi;
  for (Integer d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      lo.push_back(d);
      if (d * d != m) hi.push_back(m / d);
    }
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

inline bool is_square(const Integer& a) { return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0; }

/// Factorization over Q of a monic integer polynomial of degree <= 4 into
/// monic irreducible integer factors (with multiplicity), sorted by degree then coefficients.
inline std::vector<IntPoly> factor_small(const IntPoly& p) {
  if (!p.is_monic()) throw PreconditionError("factor_small needs a monic polynomial");
  if (p.degree() > 4) throw PreconditionError("factor_small supports degree <= 4");
  std::vector<IntPoly> out;
  IntPoly rest = p;
  // integer roots
  bool found = true;
  while (found && rest.degree() >= 1) {
    found = false;
    std::vector<Integer> cands;
    if (rest.coeff(0) == 0) cands.push_back(0);
    else
      for (const auto& d : divisors(rest.coeff(0))) {
        cands.push_back(d);
        cands.push_back(-d);
      }
    for (const auto& r : cands) {
      if (rest.eval(r) == 0) {
        IntPoly lin{0, 1};
        lin = lin - IntPoly::constant(r);
        out.push_back(lin);
        rest = rest.divmod_monic(lin).first;
        found = true;
        break;
      }
    }
  }
  if (rest.degree() == 4) {
    const Integer c0 = rest.coeff(0), c1 = rest.coeff(1), c2 = rest.coeff(2), c3 = rest.coeff(3);
    bool split = false;
    for (const auto& d : divisors(c0)) {
      for (int s : {1, -1}) {
        Integer c = s * d, cc = c0 / c;
        // (t^2+at+c)(t^2+bt+cc): a+b=c3, ab+c+cc=c2, a*cc+b*c=c1
        std::vector<std::pair<Integer, Integer>> ab;
        if (cc != c) {
          Integer num = c1 - c3 * c, den = cc - c;
          if (num % den == 0) {
            Integer a = num / den;
            ab.emplace_back(a, c3 - a);
          }
        } else if (c1 == c3 * c) {
          Integer disc = c3 * c3 - 4 * (c2 - 2 * c);
          if (is_square(disc)) {
            Integer sq = sqrt(disc);
            if ((c3 + sq) % 2 == 0) ab.emplace_back((c3 + sq) / 2, (c3 - sq) / 2);
          }
        }
        for (const auto& [a, b] : ab) {
          if (a * b + c + cc == c2 && a + b == c3 && a * cc + b * c == c1) {
            out.push_back(IntPoly(std::vector<Integer>{c, a, 1}));
            out.push_back(IntPoly(std::vector<Integer>{cc, b, 1}));
            split = true;
            break;
          }
        }
        if (split) break;
      }
      if (split) break;
    }
    if (!split) out.push_back(rest);
  } else if (rest.degree() >= 1) {
    // degree 2 or 3 without an integer root is irreducible
    out.push_back(rest);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_irreducible(const IntPoly& p) {
  auto f = factor_small(p);
  return f.size() == 1 && f[0].degree() == p.degree();
}

/// Rational polynomial, low degree first.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  explicit RatPoly(const IntPoly& p) {
    for (const auto& x : p.coeffs()) c_.emplace_back(x);
  }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  RatPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<unsigned long>(k));
    return RatPoly(std::move(d));
  }
  friend RatPoly operator-(const RatPoly& a) {
    RatPoly r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return RatPoly(std::move(c));
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(c));
  }
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const {
    if (d.is_zero()) throw PreconditionError("division by zero polynomial");
    std::vector<Rational> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {RatPoly(), *this};
    std::vector<Rational> q(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
    for (int k = degree(); k >= dd; --k) {
      Rational f = r[static_cast<std::size_t>(k)] / d.leading();
      q[static_cast<std::size_t>(k - dd)] = f;
      for (int i = 0; i <= dd; ++i) r[static_cast<std::size_t>(k - dd + i)] -= f * d.c_[static_cast<std::size_t>(i)];
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
  }
  RatPoly monic() const {
    RatPoly r = *this;
    if (r.is_zero()) return r;
    Rational l = r.leading();
    for (auto& x : r.c_) x /= l;
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Sturm chain of the square-free part of p.
inline std::vector<RatPoly> sturm_chain(const IntPoly& p) {
  RatPoly f(p);
  RatPoly g = gcd(f, f.derivative());
  if (g.degree() > 0) f = f.divmod(g).first;
  std::vector<RatPoly> chain{f, f.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    RatPoly r = -chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(r);
  }
  return chain;
}

namespace detail {

inline int sign_changes(const std::vector<int>& s) {
  int prev = 0, n = 0;
  for (int x : s) {
    if (x == 0) continue;
    if (prev != 0 && x != prev) ++n;
    prev = x;
  }
  return n;
}

}  // namespace detail

/// Number of distinct real roots of p.
inline int count_real_roots(const IntPoly& p) {
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p);
  std::vector<int> at_pos, at_neg;
  for (const auto& q : chain) {
    int s = sgn(q.leading());
    at_pos.push_back(s);
    at_neg.push_back((q.degree() % 2) ? -s : s);
  }
  return detail::sign_changes(at_neg) - detail::sign_changes(at_pos);
}

/// Number of distinct real roots of p in the half-open interval (a, b].
inline int count_real_roots(const IntPoly& p, const Rational& a, const Rational& b) {
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p);
  std::vector<int> sa, sb;
  for (const auto& q : chain) {
    sa.push_back(sgn(q.eval(a)));
    sb.push_back(sgn(q.eval(b)));
  }
  return detail::sign_changes(sa) - detail::sign_changes(sb);
}

}  // namespace hesslab
