#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "hesslab/hessenberg.hpp"
#include "hesslab/mdchar.hpp"
#include "hesslab/number_field.hpp"

namespace hesslab {

struct SailOptions {
  unsigned precision_bits = 4096;
  long box = 100000;                   // hard cap on preimage coordinates
  std::size_t max_candidates = 400000;  // hard cap on enumerated lattice points
};

using FieldVec3 = std::array<FieldElem, 3>;

struct EigenData3 {
  IntMatrix op;
  std::shared_ptr<const RealField> field;
  FieldElem r;
  FieldVec3 g1;                    // M g1 = r g1
  FieldVec3 u1;                    // u1 M = r u1, u1[0] > 0
  std::array<FieldVec3, 2> plane;  // Q(r)-basis of the complementary invariant plane

  FieldElem x_of(const IntVector& v) const {
    FieldElem s = field->zero();
    for (std::size_t i = 0; i < 3; ++i) s = s + Rational(v[i]) * u1[i];
    return s;
  }
};

namespace detail {

// adj(tI - M) entries as integer polynomials in t
inline std::array<std::array<IntPoly, 3>, 3> adj_poly3(const IntMatrix& m) {
  std::array<std::array<IntPoly, 3>, 3> a;
  auto e = [&](std::size_t i, std::size_t j) {
    IntPoly p = IntPoly::constant(-m(i, j));
    return i == j ? p + IntPoly::monomial(1) : p;
  };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      // cofactor of entry (j,i) with cyclic index trick gives the signed minor directly
      a[i][j] = e(r0, c0) * e(r1, c1) - e(r0, c1) * e(r1, c0);
    }
  return a;
}

}  // namespace detail

inline EigenData3 eigen_data(const IntMatrix& m, unsigned precision_bits = 4096) {
  if (m.dim() != 3) throw PreconditionError("eigen_data needs a 3x3 matrix");
  IntPoly p = char_poly(m);
  if (!is_irreducible(p)) throw PreconditionError("characteristic polynomial is reducible");
  if (discriminant(p) >= 0) throw PreconditionError("matrix has real spectrum (RS); sails need NRS input");
  EigenData3 e;
  e.op = m;
  auto field = RealField::unique_real_root(p, precision_bits);
  e.field = field;
  e.r = field->generator();
  auto adj = detail::adj_poly3(m);
  // some column / row of adj(rI - M) is nonzero
  bool got_col = false, got_row = false;
  for (std::size_t j = 0; j < 3 && !got_col; ++j) {
    FieldVec3 c{field->from_poly(adj[0][j]), field->from_poly(adj[1][j]), field->from_poly(adj[2][j])};
    if (!(c[0].is_zero() && c[1].is_zero() && c[2].is_zero())) {
      e.g1 = c;
      got_col = true;
    }
  }
  for (std::size_t i = 0; i < 3 && !got_row; ++i) {
    FieldVec3 w{field->from_poly(adj[i][0]), field->from_poly(adj[i][1]), field->from_poly(adj[i][2])};
    if (!(w[0].is_zero() && w[1].is_zero() && w[2].is_zero())) {
      e.u1 = w;
      got_row = true;
    }
  }
  if (!got_col || !got_row) throw Error("eigenvector computation failed");
  if (field->sign(e.u1[0]) < 0)
    for (auto& x : e.u1) x = -x;
  // columns of M - rI
  std::array<FieldVec3, 3> cols;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) {
      cols[j][i] = field->from_rational(Rational(m(i, j)));
      if (i == j) cols[j][i] = cols[j][i] - e.r;
    }
  auto independent = [&](const FieldVec3& a, const FieldVec3& b) {
    for (std::size_t i = 0; i < 3; ++i) {
      std::size_t k = (i + 1) % 3;
      if (!(field->mul(a[i], b[k]) - field->mul(a[k], b[i])).is_zero()) return true;
    }
    return false;
  };
  if (independent(cols[0], cols[1])) e.plane = {cols[0], cols[1]};
  else if (independent(cols[0], cols[2])) e.plane = {cols[0], cols[2]};
  else e.plane = {cols[1], cols[2]};
  return e;
}

/// Point of the quotient plane: x along g1, y_sq proportional to the squared torus radius.
struct PiPoint {
  IntVector preimage;
  FieldElem x;
  FieldElem y_sq;
  Integer md;  // |det[v, Mv, M^2 v]|
};

inline PiPoint project_pi(const EigenData3& e, const IntVector& v) {
  PiPoint p;
  p.preimage = v;
  p.x = e.x_of(v);
  if (v.is_zero()) {
    p.y_sq = e.field->zero();
    p.md = 0;
    return p;
  }
  p.md = abs(det(krylov_matrix(e.op, v)));
  FieldElem ax = e.field->sign(p.x) < 0 ? -p.x : p.x;
  p.y_sq = e.field->div(e.field->from_rational(Rational(p.md)), ax);
  return p;
}

/// M if its real eigenvalue is positive, otherwise M^2.
inline IntMatrix dirichlet_generator(const IntMatrix& m, const EigenData3& e) {
  return e.field->sign(e.r) > 0 ? m : m * m;
}
inline IntMatrix dirichlet_generator(const IntMatrix& m) { return dirichlet_generator(m, eigen_data(m)); }

struct SailData {
  IntMatrix op;
  IntMatrix generator;  // expands x by lambda > 1
  int side = 1;         // +1: x > 0, -1: x < 0
  std::shared_ptr<const EigenData3> eigen;
  FieldElem lambda;
  std::vector<PiPoint> vertices;         // three periods, increasing |x|
  std::vector<std::size_t> fundamental;  // indices with |x| in [x0, lambda x0)
  IntVector anchor;

  std::vector<PiPoint> fundamental_vertices() const {
    std::vector<PiPoint> out;
    for (auto i : fundamental) out.push_back(vertices[i]);
    return out;
  }
};

namespace detail {

using cld = std::complex<long double>;

// integer points v with (v-c)^T A (v-c) <= bound
inline void fincke_pohst3(const std::array<std::array<long double, 3>, 3>& a, const std::array<long double, 3>& c,
                          long double bound, std::size_t cap, long box, std::vector<IntVector>& out) {
  std::array<std::array<long double, 3>, 3> q = a;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      q[j][i] = q[i][j];
      q[i][j] = q[i][j] / q[i][i];
    }
    for (std::size_t k = i + 1; k < 3; ++k)
      for (std::size_t l = k; l < 3; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  for (std::size_t i = 0; i < 3; ++i)
    if (!(q[i][i] > 0)) throw InconclusiveError("ill-conditioned enumeration ellipsoid");
  std::array<long double, 3> z{};
  std::array<long, 3> v{};
  auto rec = [&](auto&& self, int i, long double rem) -> void {
    const std::size_t ui = static_cast<std::size_t>(i);
    long double center = 0;
    for (std::size_t j = ui + 1; j < 3; ++j) center -= q[ui][j] * z[j];
    long double rad = std::sqrt(std::max<long double>(rem, 0) / q[ui][ui]);
    long double lo = std::ceil(c[ui] + center - rad - 1e-9L), hi = std::floor(c[ui] + center + rad + 1e-9L);
    if (std::fabs(lo) > static_cast<long double>(box) || std::fabs(hi) > static_cast<long double>(box))
      throw InconclusiveError("sail enumeration exceeded the coordinate box cap " + std::to_string(box));
    for (long x = static_cast<long>(lo); x <= static_cast<long>(hi); ++x) {
      v[ui] = x;
      z[ui] = static_cast<long double>(x) - c[ui];
      long double d = z[ui] - center;
      long double r2 = rem - q[ui][ui] * d * d;
      if (i == 0) {
        out.push_back(IntVector{v[0], v[1], v[2]});
        if (out.size() > cap) throw InconclusiveError("sail enumeration exceeded the candidate cap");
      } else {
        self(self, i - 1, r2);
      }
    }
  };
  rec(rec, 2, bound);
}

}  // namespace detail

inline SailData compute_sail(const IntMatrix& m, const SailOptions& opt = {}, int side = 1) {
  auto eig = std::make_shared<EigenData3>(eigen_data(m, opt.precision_bits));
  const RealField& f = *eig->field;
  SailData s;
  s.op = m;
  s.side = side;
  s.eigen = eig;
  IntMatrix g = dirichlet_generator(m, *eig);
  FieldElem lambda = f.sign(eig->r) > 0 ? eig->r : f.mul(eig->r, eig->r);
  if (f.compare(lambda, f.from_rational(1)) < 0) {
    g = inverse_unimodular(g);
    lambda = f.inv(lambda);
  }
  const IntMatrix ginv = inverse_unimodular(g);
  s.generator = g;
  s.lambda = lambda;

  auto coord = [&](const PiPoint& p) { return side > 0 ? p.x : -p.x; };

  // anchor: minimal |D| over a small box, unit vectors first
  std::vector<IntVector> probe{IntVector{1, 0, 0}, IntVector{0, 1, 0}, IntVector{0, 0, 1}};
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c) probe.push_back(IntVector{a, b, c});
  IntVector p0;
  Integer best = -1;
  for (const auto& v : probe) {
    if (v.is_zero() || !v.is_primitive()) continue;
    Integer d = abs(det(krylov_matrix(m, v)));
    if (best < 0 || d < best) {
      best = d;
      p0 = v;
    }
  }
  if (f.sign(eig->x_of(p0)) * side < 0) p0 = -p0;
  s.anchor = p0;
  const PiPoint a0 = project_pi(*eig, p0);
  const FieldElem x0 = coord(a0);
  const FieldElem x1 = f.mul(lambda, x0);

  // numeric ellipsoid around the cylinder x0 <= X < lambda x0, y_sq <= y_sq(p0)
  using detail::cld;
  const long double rr = f.approx(eig->r);
  std::array<long double, 3> un{}, gn{};
  for (std::size_t i = 0; i < 3; ++i) {
    un[i] = side * f.approx(eig->u1[i]);
    gn[i] = f.approx(eig->g1[i]);
  }
  // complex eigenvalue from the quotient quadratic t^2 + q1 t + q0
  IntPoly cp = char_poly(m);
  const long double c2 = static_cast<long double>(cp.coeff(2).get_d()), c1 = static_cast<long double>(cp.coeff(1).get_d());
  const long double q1 = c2 + rr, q0 = c1 + rr * q1;
  const cld mu(-q1 / 2, std::sqrt(std::max<long double>(4 * q0 - q1 * q1, 0)) / 2);
  std::array<std::array<cld, 3>, 3> b;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      b[i][j] = (i == j ? mu : cld(0)) - cld(static_cast<long double>(m(i, j).get_d()));
  std::array<cld, 3> w{};
  long double wbest = -1;
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3;
    std::array<cld, 3> row;
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t c0 = (j + 1) % 3, cc1 = (j + 2) % 3;
      row[j] = b[c0][r0] * b[cc1][r1] - b[c0][r1] * b[cc1][r0];
    }
    long double nr = std::norm(row[0]) + std::norm(row[1]) + std::norm(row[2]);
    if (nr > wbest) {
      wbest = nr;
      w = row;
    }
  }
  auto wdot = [&](const IntVector& v) {
    cld t = 0;
    for (std::size_t i = 0; i < 3; ++i) t += w[i] * static_cast<long double>(v[i].get_d());
    return t;
  };
  const long double w0 = std::norm(wdot(p0));
  const long double xlo = f.approx(x0), xhi = f.approx(x1);
  const long double xc = (xlo + xhi) / 2, h = (xhi - xlo) / 2;
  std::array<std::array<long double, 3>, 3> qa{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      qa[i][j] = un[i] * un[j] / (h * h) + (w[i].real() * w[j].real() + w[i].imag() * w[j].imag()) / w0;
  long double ug = 0;
  for (std::size_t i = 0; i < 3; ++i) ug += un[i] * gn[i];
  std::array<long double, 3> center{};
  for (std::size_t i = 0; i < 3; ++i) center[i] = xc * gn[i] / ug;
  std::vector<IntVector> raw;
  detail::fincke_pohst3(qa, center, 2.5L, opt.max_candidates, opt.box, raw);

  // exact filter
  std::vector<PiPoint> cyl;
  for (const auto& v : raw) {
    if (v.is_zero()) continue;
    PiPoint p = project_pi(*eig, v);
    FieldElem xv = coord(p);
    if (f.compare(xv, x0) < 0 || f.compare(xv, x1) >= 0) continue;
    FieldElem lhs = Rational(a0.md) * xv - Rational(p.md) * x0;
    if (f.sign(lhs) < 0) continue;
    cyl.push_back(std::move(p));
  }
  std::vector<PiPoint> all;
  for (const auto& p : cyl) {
    all.push_back(project_pi(*eig, ginv * p.preimage));
    all.push_back(p);
    all.push_back(project_pi(*eig, g * p.preimage));
  }
  std::sort(all.begin(), all.end(), [&](const PiPoint& a, const PiPoint& b) { return f.compare(coord(a), coord(b)) < 0; });
  // staircase: strictly decreasing y
  std::vector<PiPoint> stair;
  for (auto& p : all)
    if (stair.empty() || f.compare(p.y_sq, stair.back().y_sq) < 0) stair.push_back(std::move(p));
  // lower convex chain with y = sqrt(y_sq)
  auto turn = [&](const PiPoint& a, const PiPoint& b, const PiPoint& c) {
    FieldElem xa = coord(a), xb = coord(b), xc2 = coord(c);
    return sign_sqrt3(f, xc2 - xb, a.y_sq, xa - xc2, b.y_sq, xb - xa, c.y_sq);
  };
  std::vector<PiPoint> hull;
  for (auto& p : stair) {
    while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(std::move(p));
  }
  std::vector<PiPoint> fd;
  for (auto& p : hull) {
    FieldElem xv = coord(p);
    if (f.compare(xv, x0) >= 0 && f.compare(xv, x1) < 0) fd.push_back(std::move(p));
  }
  // neighbouring periods are images of the certified middle one
  for (const auto& p : fd) s.vertices.push_back(project_pi(*eig, ginv * p.preimage));
  for (const auto& p : fd) {
    s.fundamental.push_back(s.vertices.size());
    s.vertices.push_back(p);
  }
  for (const auto& p : fd) s.vertices.push_back(project_pi(*eig, g * p.preimage));
  if (s.fundamental.empty()) throw Error("sail computation found no fundamental vertices");
  return s;
}

/// X commutes with M, det X = 1 and every real eigenvalue of X is positive.
inline bool verify_dirichlet_element(const IntMatrix& m, const IntMatrix& x) {
  if (m.dim() != x.dim()) return false;
  if (x * m != m * x) return false;
  if (det(x) != 1) return false;
  IntPoly p = char_poly(x);
  Integer bound = 1;
  for (int k = 0; k < p.degree(); ++k) bound = std::max(bound, Integer(abs(p.coeff(static_cast<std::size_t>(k))) + 1));
  return count_real_roots(p, Rational(-bound), Rational(0)) == 0;
}

}  // namespace hesslab
