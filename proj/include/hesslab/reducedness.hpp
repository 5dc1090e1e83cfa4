#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "hesslab/hessenberg.hpp"
#include "hesslab/mdchar.hpp"
#include "hesslab/sail3.hpp"

namespace hesslab {

struct BoundedMinimum {
  Integer value;
  std::vector<IntVector> witnesses;  // canonical sign: lexicographically larger of +-v
};

namespace detail {

inline bool canonical_sign(const IntVector& v) { return !(v < -v); }

// odometer over the half box of canonical vectors with first coordinate in [lo, hi]
template <class F>
void for_each_box_vector(std::size_t n, long bound, long lo, long hi, F&& f) {
  std::vector<long> c(n, -bound);
  for (long x0 = lo; x0 <= hi; ++x0) {
    c[0] = x0;
    for (std::size_t i = 1; i < n; ++i) c[i] = -bound;
    while (true) {
      f(c);
      std::size_t i = n - 1;
      while (i >= 1 && c[i] == bound) c[i--] = -bound;
      if (i == 0) break;
      ++c[i];
    }
  }
}

inline long gcd_l(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// determinant of the leading n x n block of a row-major matrix with row stride `stride`
inline __int128 det128(const __int128* a, std::size_t n, std::size_t stride) {
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[stride + 1] - a[1] * a[stride];
  __int128 sum = 0;
  std::vector<__int128> minor((n - 1) * (n - 1));
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j] == 0) continue;
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor[(r - 1) * (n - 1) + cc++] = a[r * stride + c];
    __int128 t = a[j] * det128(minor.data(), n - 1, n - 1);
    sum += (j % 2) ? -t : t;
  }
  return sum;
}

inline Integer from128(__int128 d) {
  bool neg = d < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-d) : static_cast<unsigned __int128>(d);
  Integer v(static_cast<unsigned long>(u >> 64));
  v <<= 64;
  v += Integer(static_cast<unsigned long>(u));
  return neg ? Integer(-v) : v;
}

}  // namespace detail

/// Exact minimum of md over primitive v with |v|_inf <= B.
inline BoundedMinimum minimize_md_bounded(const IntMatrix& m, long bound, unsigned jobs = 1) {
  if (bound < 1) throw PreconditionError("search bound must be >= 1");
  const std::size_t n = m.dim();
  // machine-integer fast path when |det| provably fits in __int128
  long double mx = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mx = std::max<long double>(mx, std::fabs(static_cast<long double>(m(i, j).get_d())));
  long double logb = 0, b = static_cast<long double>(bound);
  for (std::size_t k = 0; k < n; ++k) {
    logb += std::log2(b) + 2;
    b *= static_cast<long double>(n) * mx;
  }
  const bool fast = logb + 5 < 120;
  std::vector<std::vector<__int128>> mi(n, std::vector<__int128>(n));
  if (fast)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mi[i][j] = m(i, j).get_si();

  auto slab = [&](long lo, long hi, BoundedMinimum& out) {
    out.value = -1;
    std::vector<__int128> k(n * n);
    detail::for_each_box_vector(n, bound, lo, hi, [&](const std::vector<long>& c) {
      long g = 0;
      for (long x : c) g = detail::gcd_l(g, x);
      if (g != 1) return;
      IntVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = c[i];
      if (!detail::canonical_sign(v)) return;
      Integer val;
      if (fast) {
        for (std::size_t i = 0; i < n; ++i) k[i * n] = c[i];
        for (std::size_t col = 1; col < n; ++col)
          for (std::size_t i = 0; i < n; ++i) {
            __int128 s = 0;
            for (std::size_t j = 0; j < n; ++j) s += mi[i][j] * k[j * n + col - 1];
            k[i * n + col] = s;
          }
        __int128 d = detail::det128(k.data(), n, n);
        if (d < 0) d = -d;
        val = detail::from128(d);
      } else {
        val = md_characteristic(m, v);
      }
      if (out.value < 0 || val < out.value) {
        out.value = val;
        out.witnesses.clear();
      }
      if (val == out.value) out.witnesses.push_back(v);
    });
  };

  BoundedMinimum res;
  jobs = std::max(1u, jobs);
  std::vector<BoundedMinimum> parts(jobs);
  std::vector<std::pair<long, long>> ranges;
  const long total = bound + 1;  // canonical vectors have first coordinate >= 0
  for (unsigned j = 0; j < jobs; ++j) {
    long lo = total * j / jobs, hi = total * (j + 1) / jobs - 1;
    ranges.emplace_back(lo, hi);
  }
  if (jobs == 1) {
    slab(0, bound, parts[0]);
  } else {
    std::vector<std::thread> ts;
    for (unsigned j = 0; j < jobs; ++j)
      if (ranges[j].first <= ranges[j].second) ts.emplace_back([&, j] { slab(ranges[j].first, ranges[j].second, parts[j]); });
    for (auto& t : ts) t.join();
  }
  res.value = -1;
  for (unsigned j = 0; j < jobs; ++j) {
    auto& p = parts[j];
    if (ranges[j].first > ranges[j].second || p.value < 0) continue;
    if (res.value < 0 || p.value < res.value) {
      res.value = p.value;
      res.witnesses.clear();
    }
    if (p.value == res.value) res.witnesses.insert(res.witnesses.end(), p.witnesses.begin(), p.witnesses.end());
  }
  std::sort(res.witnesses.begin(), res.witnesses.end());
  return res;
}

enum class VerdictStatus { Reduced, Nonreduced, Inconclusive };
enum class CertificateKind { None, SailCertified, BoundChecked };

struct ReducedVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  CertificateKind certificate = CertificateKind::None;
  Integer bound = 0;  // for BoundChecked
  std::optional<IntVector> witness;
  Integer witness_value = 0;
  Integer complexity = 0;
  Integer min_value = 0;
  std::string reason;
};

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Reduced: return "Reduced";
    case VerdictStatus::Nonreduced: return "Nonreduced";
    default: return "Inconclusive";
  }
}
inline std::string to_string(CertificateKind c) {
  switch (c) {
    case CertificateKind::SailCertified: return "SailCertified";
    case CertificateKind::BoundChecked: return "BoundChecked";
    default: return "None";
  }
}

struct BoundedStrategy {
  long bound = 50;
  unsigned jobs = 1;
};
struct SailStrategy {
  SailOptions options;
};
using Strategy = std::variant<BoundedStrategy, SailStrategy>;

inline ReducedVerdict is_reduced(const IntMatrix& m, const Strategy& strategy) {
  if (!is_perfect(m)) throw PreconditionError("matrix is not a perfect Hessenberg matrix");
  if (!is_sl(m)) throw PreconditionError("matrix is not in SL(n,Z)");
  if (!is_irreducible(char_poly(m))) throw PreconditionError("characteristic polynomial is reducible");
  ReducedVerdict v;
  v.complexity = hessenberg_complexity(m);
  if (const auto* b = std::get_if<BoundedStrategy>(&strategy)) {
    auto r = minimize_md_bounded(m, b->bound, b->jobs);
    v.min_value = r.value;
    if (r.value < v.complexity) {
      v.status = VerdictStatus::Nonreduced;
      v.witness = r.witnesses.front();
      v.witness_value = r.value;
    } else {
      v.status = VerdictStatus::Reduced;
      v.certificate = CertificateKind::BoundChecked;
      v.bound = b->bound;
    }
    return v;
  }
  const auto& s = std::get<SailStrategy>(strategy);
  if (m.dim() != 3) throw PreconditionError("sail strategy supports 3x3 matrices only");
  if (discriminant(char_poly(m)) > 0) throw PreconditionError("sail strategy is unsupported for real spectrum (RS) input");
  try {
    SailData sail = compute_sail(m, s.options);
    const PiPoint* best = nullptr;
    for (auto i : sail.fundamental)
      if (!best || sail.vertices[i].md < best->md) best = &sail.vertices[i];
    v.min_value = best->md;
    if (best->md < v.complexity) {
      v.status = VerdictStatus::Nonreduced;
      IntVector w = best->preimage;
      v.witness = detail::canonical_sign(w) ? w : -w;
      v.witness_value = best->md;
    } else {
      v.status = VerdictStatus::Reduced;
      v.certificate = CertificateKind::SailCertified;
    }
  } catch (const InconclusiveError& e) {
    v.status = VerdictStatus::Inconclusive;
    v.reason = e.what();
  }
  return v;
}

struct Fingerprint {
  std::vector<IntMatrix> matrices;  // sorted, distinct
  Integer min_value;
};

/// Perfect forms from the MD-minimal fundamental vertices of both sails.
inline Fingerprint fingerprint(const IntMatrix& m, const SailOptions& opt = {}) {
  if (m.dim() != 3) throw PreconditionError("fingerprint needs a 3x3 matrix");
  std::vector<PiPoint> fd;
  for (int side : {1, -1}) {
    auto s = compute_sail(m, opt, side);
    auto f = s.fundamental_vertices();
    fd.insert(fd.end(), f.begin(), f.end());
  }
  Fingerprint fp;
  fp.min_value = fd.front().md;
  for (const auto& p : fd) fp.min_value = std::min(fp.min_value, p.md);
  for (const auto& p : fd)
    if (p.md == fp.min_value) fp.matrices.push_back(reduce_to_perfect(m, p.preimage).perfect);
  std::sort(fp.matrices.begin(), fp.matrices.end());
  fp.matrices.erase(std::unique(fp.matrices.begin(), fp.matrices.end()), fp.matrices.end());
  return fp;
}

}  // namespace hesslab
