#pragma once

// Reference implementations used only by the tests. Each one takes a route
// independent of the library code it checks.

#include <algorithm>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "hesslab/hesslab.hpp"

namespace oracle {

using hesslab::Integer;
using hesslab::IntMatrix;
using hesslab::IntPoly;
using hesslab::IntVector;
using hesslab::Rational;

// Leibniz expansion over all permutations.
inline Integer det_leibniz(const IntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    Integer t = 1;
    for (std::size_t i = 0; i < n; ++i) t *= m(i, p[i]);
    total += (inv % 2) ? Integer(-t) : t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Faddeev-LeVerrier: det(tI - M) with coefficients low-first.
inline std::vector<Integer> char_poly_fl(const IntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<Rational>> mk(n, std::vector<Rational>(n)), a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I, M_0 = 0
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * mk[l][j];
        if (i == j) s += c[n - k + 1];
        next[i][j] = s;
      }
    mk = next;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * mk[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  std::vector<Integer> out;
  for (const auto& x : c) out.push_back(x.get_num());
  return out;
}

// Closed-form discriminants of monic cubics and quartics.
inline Integer disc_closed_form(const IntPoly& p) {
  if (p.degree() == 3) {
    Integer b = p.coeff(2), c = p.coeff(1), d = p.coeff(0);
    return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
  }
  Integer a = p.coeff(4), b = p.coeff(3), c = p.coeff(2), d = p.coeff(1), e = p.coeff(0);
  return 256 * a * a * a * e * e * e - 192 * a * a * b * d * e * e - 128 * a * a * c * c * e * e +
         144 * a * a * c * d * d * e - 27 * a * a * d * d * d * d + 144 * a * b * b * c * e * e -
         6 * a * b * b * d * d * e - 80 * a * b * c * c * d * e + 18 * a * b * c * d * d * d + 16 * a * c * c * c * c * e -
         4 * a * c * c * c * d * d - 27 * b * b * b * b * e * e + 18 * b * b * b * c * d * e - 4 * b * b * b * d * d * d -
         4 * b * b * c * c * c * e + b * b * c * c * d * d;
}

// |det[v, Mv, ..., M^{n-1} v]| by repeated products and Leibniz.
inline Integer md(const IntMatrix& m, const IntVector& v) {
  std::vector<IntVector> cols{v};
  for (std::size_t k = 1; k < m.dim(); ++k) cols.push_back(m * cols.back());
  return abs(det_leibniz(IntMatrix::from_columns(cols)));
}

// Plain triple loop over the whole box, all primitive vectors.
inline Integer md_min_brute(const IntMatrix& m, long b) {
  Integer best = -1;
  const std::size_t n = m.dim();
  std::vector<long> c(n, -b);
  while (true) {
    long g = 0;
    for (long x : c) g = std::gcd(g, x);
    if (g == 1) {
      IntVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = c[i];
      Integer d = md(m, v);
      if (best < 0 || d < best) best = d;
    }
    std::size_t i = 0;
    while (i < n && c[i] == b) c[i++] = -b;
    if (i == n) break;
    ++c[i];
  }
  return best;
}

// Numeric roots by Durand-Kerner; counts roots with negligible imaginary part.
inline int real_root_count_numeric(const IntPoly& p) {
  const int n = p.degree();
  using C = std::complex<long double>;
  std::vector<long double> a;
  for (int k = 0; k <= n; ++k) a.push_back(static_cast<long double>(p.coeff(static_cast<std::size_t>(k)).get_d()));
  std::vector<C> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::pow(C(0.4L, 0.9L), k);
  auto eval = [&](C x) {
    C r = 0;
    for (int k = n; k >= 0; --k) r = r * x + a[static_cast<std::size_t>(k)];
    return r;
  };
  for (int it = 0; it < 2000; ++it)
    for (int i = 0; i < n; ++i) {
      C d = a[static_cast<std::size_t>(n)];
      for (int j = 0; j < n; ++j)
        if (j != i) d *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      z[static_cast<std::size_t>(i)] -= eval(z[static_cast<std::size_t>(i)]) / d;
    }
  int cnt = 0;
  for (const auto& x : z)
    if (std::fabs(x.imag()) < 1e-6L * (1 + std::abs(x))) ++cnt;
  return cnt;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

// Product of random elementary transvections and a sign swap: uniformly varied SL(n,Z) elements.
inline IntMatrix random_sl(std::mt19937_64& rng, std::size_t n, int steps = 6, long mag = 2) {
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> k(-mag, mag);
  IntMatrix u = IntMatrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(n);
    e(i, j) = k(rng);
    u = u * e;
  }
  return u;
}

inline IntMatrix random_hessenberg(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi), pos(1, hi);
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i > j + 1) continue;
      m(i, j) = (i == j + 1) ? pos(rng) : d(rng);
    }
  return m;
}

}  // namespace oracle
