#pragma once

#include <array>
#include <string>
#include <vector>

#include "hesslab/hessenberg.hpp"

namespace hesslab {

/// |det[v, Mv, ..., M^{n-1}v]|
inline Integer md_characteristic(const IntMatrix& m, const IntVector& v) {
  if (v.size() != m.dim()) throw PreconditionError("vector dimension mismatch");
  if (v.is_zero()) throw PreconditionError("zero vector");
  return abs(det(krylov_matrix(m, v)));
}

/// Signed cubic det[v, Mv, M^2 v] in the monomials
/// x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
struct MDForm3 {
  std::array<Integer, 10> coeffs;

  static constexpr std::array<std::array<int, 3>, 10> exponents{{
      {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
      {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
  }};

  Integer evaluate(const IntVector& v) const {
    Integer s = 0;
    for (std::size_t k = 0; k < 10; ++k) {
      Integer t = coeffs[k];
      for (int i = 0; i < 3; ++i)
        for (int e = 0; e < exponents[k][static_cast<std::size_t>(i)]; ++e) t *= v[static_cast<std::size_t>(i)];
      s += t;
    }
    return s;
  }

  // "-2x^3-6x^2y+..."
  std::string to_string() const {
    static const char* names[10] = {"x^3", "x^2y", "x^2z", "xy^2", "xyz", "xz^2", "y^3", "y^2z", "yz^2", "z^3"};
    std::string s;
    for (std::size_t k = 0; k < 10; ++k) {
      if (coeffs[k] == 0) continue;
      Integer mag = abs(coeffs[k]);
      if (coeffs[k] < 0) s += "-";
      else if (!s.empty()) s += "+";
      if (mag != 1) s += mag.get_str();
      s += names[k];
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const MDForm3& a, const MDForm3& b) { return a.coeffs == b.coeffs; }
};

inline MDForm3 md_form3(const IntMatrix& m) {
  if (m.dim() != 3) throw PreconditionError("md_form3 needs a 3x3 matrix");
  static const std::array<std::array<long, 3>, 10> pts{{
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {2, 1, 0},
      {1, 0, 1}, {2, 0, 1}, {0, 1, 1}, {0, 2, 1}, {1, 1, 1},
  }};
  // augmented system [monomials | value] over Q
  std::vector<std::vector<Rational>> a(10, std::vector<Rational>(11));
  for (std::size_t r = 0; r < 10; ++r) {
    IntVector v{pts[r][0], pts[r][1], pts[r][2]};
    for (std::size_t k = 0; k < 10; ++k) {
      Rational t = 1;
      for (std::size_t i = 0; i < 3; ++i)
        for (int e = 0; e < MDForm3::exponents[k][i]; ++e) t *= pts[r][i];
      a[r][k] = t;
    }
    a[r][10] = det(krylov_matrix(m, v));
  }
  for (std::size_t c = 0; c < 10; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[c], a[p]);
    for (std::size_t r = 0; r < 10; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < 11; ++k) a[r][k] -= f * a[c][k];
    }
  }
  MDForm3 f;
  for (std::size_t k = 0; k < 10; ++k) {
    Rational x = a[k][10] / a[k][k];
    if (x.get_den() != 1) throw Error("non-integral form coefficient");
    f.coeffs[k] = x.get_num();
  }
  return f;
}

inline bool parity_all_even(const MDForm3& f) {
  for (const auto& c : f.coeffs)
    if (c % 2 != 0) return false;
  return true;
}

}  // namespace hesslab
