#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hesslab/errors.hpp"

namespace hesslab {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sgn(const Integer& a) { return ::sgn(a); }
inline int sgn(const Rational& a) { return ::sgn(a); }

class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : c_(n, Integer(0)) {}
  IntVector(std::initializer_list<long> xs) {
    for (long x : xs) c_.emplace_back(x);
  }
  explicit IntVector(std::vector<Integer> xs) : c_(std::move(xs)) {}

  static IntVector unit(std::size_t n, std::size_t i) {
    IntVector v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const { return c_.size(); }
  Integer& operator[](std::size_t i) { return c_[i]; }
  const Integer& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Integer>& coords() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x == 0; });
  }

  Integer content() const {
    Integer g = 0;
    for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
  }

  bool is_primitive() const { return content() == 1; }

  IntVector operator-() const {
    IntVector r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  IntVector& operator+=(const IntVector& o) {
    for (std::size_t i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  IntVector& operator-=(const IntVector& o) {
    for (std::size_t i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const Integer& k, IntVector a) {
    for (auto& x : a.c_) x *= k;
    return a;
  }

  friend bool operator==(const IntVector& a, const IntVector& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntVector& a, const IntVector& b) { return !(a == b); }
  friend bool operator<(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  // "(1,0,-2)"
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) s += ",";
      s += c_[i].get_str();
    }
    return s + ")";
  }

 private:
  std::vector<Integer> c_;
};

inline Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : n_(rows.size()) {
    for (const auto& r : rows) {
      if (r.size() != n_) throw PreconditionError("matrix must be square");
      for (long x : r) a_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols) {
    IntMatrix m(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
  }

  std::size_t dim() const { return n_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  IntVector column(std::size_t j) const {
    IntVector v(n_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  IntVector row(std::size_t i) const {
    IntVector v(n_);
    for (std::size_t j = 0; j < n_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, const IntVector& v) {
    for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = v[i];
  }

  IntMatrix transpose() const {
    IntMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Integer trace() const {
    Integer s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    IntVector r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend IntMatrix operator*(const Integer& k, IntMatrix a) {
    for (auto& x : a.a_) x *= k;
    return a;
  }
  IntMatrix operator-() const { return Integer(-1) * (*this); }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }
  friend bool operator<(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return std::lexicographical_compare(a.a_.begin(), a.a_.end(), b.a_.begin(), b.a_.end());
  }

  IntMatrix pow(unsigned k) const {
    IntMatrix r = identity(n_), b = *this;
    while (k) {
      if (k & 1u) r = r * b;
      b = b * b;
      k >>= 1;
    }
    return r;
  }

  // "0 1 2; 1 0 0; 0 3 5"
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < n_; ++j) {
        if (j) s += " ";
        s += (*this)(i, j).get_str();
      }
    }
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Integer> a_;
};

/// Bareiss fraction-free elimination.
inline Integer det(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline bool is_sl(const IntMatrix& m) { return det(m) == 1; }

inline IntMatrix adjugate(const IntMatrix& m) {
  const std::size_t n = m.dim();
  IntMatrix adj(n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Integer d = det(minor);
      adj(j, i) = ((i + j) % 2) ? Integer(-d) : d;
    }
  return adj;
}

/// Inverse of a matrix with determinant +-1.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  Integer d = det(m);
  if (d != 1 && d != -1) throw PreconditionError("matrix is not unimodular (det " + d.get_str() + ")");
  return d * adjugate(m);
}

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// Reads an optionally signed decimal integer at s[i].
inline Integer read_integer(std::string_view s, std::size_t& i) {
  std::size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t digits = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == digits) {
    if (start >= s.size()) throw ParseError("expected integer, found end of input", start);
    throw ParseError(std::string("expected integer, found '") + s[start] + "'", start);
  }
  std::string txt(s.substr(start, i - start));
  if (txt[0] == '+') txt.erase(0, 1);
  return Integer(txt);
}

}  // namespace detail

/// Parses "a b c; d e f; g h i". Commas are accepted as entry separators.
inline IntMatrix parse_matrix(std::string_view s) {
  std::vector<std::vector<Integer>> rows(1);
  std::vector<std::size_t> row_start{0};
  std::size_t i = 0;
  detail::skip_ws(s, i);
  while (i < s.size()) {
    if (s[i] == ';') {
      if (rows.back().empty()) throw ParseError("empty row", i);
      rows.emplace_back();
      row_start.push_back(i);
      ++i;
    } else if (s[i] == ',') {
      ++i;
    } else {
      rows.back().push_back(detail::read_integer(s, i));
      if (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ';' && s[i] != ',')
        throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
    }
    detail::skip_ws(s, i);
  }
  if (rows.back().empty()) throw ParseError("empty row", s.size());
  const std::size_t n = rows.size();
  if (n < 2 || n > 4) throw ParseError("matrix dimension must be 2..4, got " + std::to_string(n), 0);
  IntMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n)
      throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                           " entries, expected " + std::to_string(n),
                       row_start[r]);
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

/// Parses "1,0,-1" (whitespace or commas, optional parentheses).
inline IntVector parse_vector(std::string_view s) {
  std::vector<Integer> xs;
  std::size_t i = 0;
  detail::skip_ws(s, i);
  bool paren = i < s.size() && s[i] == '(';
  if (paren) ++i;
  while (true) {
    detail::skip_ws(s, i);
    if (i >= s.size()) break;
    if (paren && s[i] == ')') {
      ++i;
      detail::skip_ws(s, i);
      if (i < s.size()) throw ParseError("trailing characters", i);
      paren = false;
      break;
    }
    xs.push_back(detail::read_integer(s, i));
    detail::skip_ws(s, i);
    if (i < s.size() && s[i] == ',') ++i;
  }
  if (paren) throw ParseError("missing ')'", s.size());
  if (xs.empty()) throw ParseError("empty vector", 0);
  return IntVector(std::move(xs));
}

}  // namespace hesslab
