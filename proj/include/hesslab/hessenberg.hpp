#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hesslab/int_matrix.hpp"
#include "hesslab/lattice.hpp"
#include "hesslab/poly.hpp"

namespace hesslab {

/// First n-1 columns of a Hessenberg matrix; column j (0-based) holds rows 0..j+1.
struct HessType {
  std::size_t n = 0;
  std::vector<std::vector<Integer>> columns;

  HessType() = default;
  explicit HessType(std::vector<std::vector<Integer>> cols) : n(cols.size() + 1), columns(std::move(cols)) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != j + 2)
        throw PreconditionError("type column " + std::to_string(j + 1) + " must have " + std::to_string(j + 2) +
                                " entries");
      if (columns[j].back() <= 0) throw PreconditionError("type subdiagonal entries must be positive");
    }
  }

  const Integer& sub(std::size_t j) const { return columns[j].back(); }

  Integer complexity() const {
    Integer c = 1;
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t e = 0; e < n - 1 - j; ++e) c *= sub(j);
    return c;
  }

  bool is_perfect() const {
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i = 0; i + 1 < columns[j].size(); ++i)
        if (columns[j][i] < 0 || columns[j][i] >= sub(j)) return false;
    return true;
  }

  /// Column j zero-padded to length n.
  IntVector padded(std::size_t j) const {
    IntVector v(n);
    for (std::size_t i = 0; i < columns[j].size(); ++i) v[i] = columns[j][i];
    return v;
  }

  IntMatrix with_last_column(const IntVector& v) const {
    IntMatrix m(n);
    for (std::size_t j = 0; j + 1 < n; ++j) m.set_column(j, padded(j));
    m.set_column(n - 1, v);
    return m;
  }

  // "<0,1|1,0,2>"
  std::string to_string() const {
    std::string s = "<";
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) s += "|";
      for (std::size_t i = 0; i < columns[j].size(); ++i) {
        if (i) s += ",";
        s += columns[j][i].get_str();
      }
    }
    return s + ">";
  }

  friend bool operator==(const HessType& a, const HessType& b) { return a.columns == b.columns; }
};

inline HessType parse_hess_type(std::string_view s) {
  std::size_t i = 0;
  detail::skip_ws(s, i);
  auto eat = [&](std::string_view tok) {
    if (s.substr(i, tok.size()) == tok) {
      i += tok.size();
      return true;
    }
    return false;
  };
  if (!eat("<") && !eat("⟨")) throw ParseError("expected '<'", i);
  std::vector<std::vector<Integer>> cols(1);
  while (true) {
    detail::skip_ws(s, i);
    cols.back().push_back(detail::read_integer(s, i));
    detail::skip_ws(s, i);
    if (eat(",")) continue;
    if (eat("|")) {
      cols.emplace_back();
      continue;
    }
    if (eat(">") || eat("⟩")) break;
    if (i >= s.size()) throw ParseError("expected '>'", i);
    throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
  }
  detail::skip_ws(s, i);
  if (i != s.size()) throw ParseError("trailing characters", i);
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j].size() != j + 2)
      throw ParseError("type column " + std::to_string(j + 1) + " must have " + std::to_string(j + 2) + " entries", 0);
  return HessType(std::move(cols));
}

inline bool is_hessenberg(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j + 1 < i; ++j)
      if (m(i, j) != 0) return false;
  return true;
}

inline Integer hessenberg_complexity(const IntMatrix& m) {
  if (!is_hessenberg(m)) throw PreconditionError("matrix does not have Hessenberg zero pattern");
  const std::size_t n = m.dim();
  Integer c = 1;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    Integer a = abs(m(j + 1, j));
    for (std::size_t e = 0; e < n - 1 - j; ++e) c *= a;
  }
  return c;
}

/// Hessenberg pattern plus 0 <= a_ij < a_{j+1,j} on the first n-1 columns.
inline bool is_perfect(const IntMatrix& m) {
  if (!is_hessenberg(m)) return false;
  for (std::size_t j = 0; j + 1 < m.dim(); ++j) {
    const Integer& s = m(j + 1, j);
    if (s <= 0) return false;
    for (std::size_t i = 0; i <= j; ++i)
      if (m(i, j) < 0 || m(i, j) >= s) return false;
  }
  return true;
}

inline HessType hess_type_of(const IntMatrix& m) {
  if (!is_hessenberg(m)) throw PreconditionError("matrix does not have Hessenberg zero pattern");
  std::vector<std::vector<Integer>> cols;
  for (std::size_t j = 0; j + 1 < m.dim(); ++j) {
    cols.emplace_back();
    for (std::size_t i = 0; i <= j + 1; ++i) cols.back().push_back(m(i, j));
  }
  return HessType(std::move(cols));
}

inline IntMatrix krylov_matrix(const IntMatrix& m, const IntVector& v) {
  std::vector<IntVector> cols{v};
  for (std::size_t k = 1; k < m.dim(); ++k) cols.push_back(m * cols.back());
  return IntMatrix::from_columns(cols);
}

struct PerfectForm {
  IntMatrix perfect;
  IntMatrix conjugator;  // conjugator^-1 * M * conjugator == perfect
};

/// Unique perfect Hessenberg matrix of the operator M in a basis whose first vector is seed.
inline PerfectForm reduce_to_perfect(const IntMatrix& m, const IntVector& seed) {
  const std::size_t n = m.dim();
  if (seed.size() != n) throw PreconditionError("seed dimension mismatch");
  if (seed.is_zero()) throw PreconditionError("zero vector");
  if (!seed.is_primitive()) throw PreconditionError("seed vector is not primitive");
  if (!is_sl(m)) throw PreconditionError("matrix is not in SL(n,Z)");
  if (!is_irreducible(char_poly(m))) throw DegenerateFlagError("characteristic polynomial is reducible");
  IntMatrix w = krylov_matrix(m, seed);
  if (det(w) == 0) throw DegenerateFlagError("Krylov flag of the seed is degenerate");

  // integer row reduction L*W = T (upper triangular), basis U = L^-1
  IntGrid aug(n, std::vector<Integer>(2 * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      aug[i][j] = w(i, j);
      aug[i][n + j] = (i == j) ? 1 : 0;
    }
  for (std::size_t c = 0; c < n; ++c) {
    while (true) {
      std::size_t p = n;
      for (std::size_t r = c; r < n; ++r)
        if (aug[r][c] != 0 && (p == n || abs(aug[r][c]) < abs(aug[p][c]))) p = r;
      std::swap(aug[c], aug[p]);
      bool done = true;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (aug[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), aug[r][c].get_mpz_t(), aug[c][c].get_mpz_t());
        for (std::size_t k = c; k < 2 * n; ++k) aug[r][k] -= q * aug[c][k];
        if (aug[r][c] != 0) done = false;
      }
      if (done) break;
    }
  }
  IntMatrix l(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) l(i, j) = aug[i][n + j];
  IntMatrix basis = inverse_unimodular(l);
  if (aug[0][0] < 0) basis.set_column(0, -basis.column(0));

  for (std::size_t k = 0; k + 1 < n; ++k) {
    IntMatrix h = inverse_unimodular(basis) * m * basis;
    if (h(k + 1, k) < 0) {
      basis.set_column(k + 1, -basis.column(k + 1));
      h = inverse_unimodular(basis) * m * basis;
    }
    const Integer a = h(k + 1, k);
    IntVector next = basis.column(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      Integer c;
      mpz_fdiv_q(c.get_mpz_t(), h(i, k).get_mpz_t(), a.get_mpz_t());
      if (c != 0) next += c * basis.column(i);
    }
    basis.set_column(k + 1, next);
  }
  return {inverse_unimodular(basis) * m * basis, basis};
}

struct FamilyPoint {
  HessType type;
  IntVector anchor;
  std::vector<Integer> params;
};

inline IntMatrix family_member(const FamilyPoint& fp) {
  const HessType& t = fp.type;
  if (fp.anchor.size() != t.n) throw PreconditionError("anchor dimension mismatch");
  if (fp.params.size() != t.n - 1) throw PreconditionError("family needs " + std::to_string(t.n - 1) + " parameters");
  if (det(t.with_last_column(fp.anchor)) != 1) throw PreconditionError("invalid anchor: base matrix is not in SL(n,Z)");
  IntVector last = fp.anchor;
  for (std::size_t k = 0; k + 1 < t.n; ++k) last += fp.params[k] * t.padded(k);
  return t.with_last_column(last);
}

/// Last column of the Hessenberg matrix of type t with characteristic polynomial p, if integral.
inline std::optional<IntVector> last_column_from(const HessType& t, const IntPoly& p) {
  const std::size_t n = t.n;
  if (p.degree() != static_cast<int>(n) || !p.is_monic()) return std::nullopt;
  const IntPoly p0 = char_poly(t.with_last_column(IntVector(n)));
  std::vector<IntPoly> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = char_poly(t.with_last_column(IntVector::unit(n, i))) - p0;
  IntPoly residual = p - p0;
  IntVector x(n);
  for (std::size_t k = n; k-- > 0;) {
    const Integer lead = q[k].coeff(k);
    if (lead == 0 || q[k].degree() > static_cast<int>(k)) throw Error("unexpected char poly structure");
    const Integer r = residual.coeff(k);
    if (r % lead != 0) return std::nullopt;
    x[k] = r / lead;
    residual = residual - x[k] * q[k];
  }
  if (!residual.is_zero()) return std::nullopt;
  return x;
}

/// Both conditions for the Hessenberg matrices of type t with last column anchor to lie in SL(n,Z).
inline bool validate_type(const HessType& t, const IntVector& anchor) {
  std::vector<IntVector> verts;
  for (std::size_t j = 0; j + 1 < t.n; ++j) verts.push_back(t.padded(j));
  try {
    if (integer_volume(verts) != 1) return false;
    if (integer_distance(anchor, verts) != 1) return false;
  } catch (const PreconditionError&) {
    return false;
  }
  return true;
}

}  // namespace hesslab
