#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hesslab/int_matrix.hpp"

namespace hesslab {

using IntGrid = std::vector<std::vector<Integer>>;

/// Nonzero invariant factors d1 | d2 | ... of a rectangular integer matrix.
inline std::vector<Integer> smith_invariants(IntGrid a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Integer> d;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero |entry| in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& r : a) std::swap(r[t], r[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& r : a) std::swap(r[t], r[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility of the remaining block by the pivot
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t c = t; c < cols; ++c) a[t][c] += a[i][c];
            clean = false;
            break;
          }
    }
    d.push_back(abs(a[t][t]));
    ++t;
  }
  return d;
}

namespace detail {

inline IntGrid columns_to_grid(const std::vector<IntVector>& vs) {
  if (vs.empty()) throw PreconditionError("empty vector list");
  const std::size_t n = vs[0].size();
  IntGrid g(n, std::vector<Integer>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (vs[j].size() != n) throw PreconditionError("vectors of different dimension");
    for (std::size_t i = 0; i < n; ++i) g[i][j] = vs[j][i];
  }
  return g;
}

}  // namespace detail

/// Index of the lattice spanned by vs in the integer points of its real span.
inline Integer integer_volume(const std::vector<IntVector>& vs) {
  auto d = smith_invariants(detail::columns_to_grid(vs));
  if (d.size() != vs.size()) throw PreconditionError("vectors are linearly dependent");
  Integer p = 1;
  for (const auto& x : d) p *= x;
  return p;
}

/// Integer distance from v to the plane spanned by basis.
inline Integer integer_distance(const IntVector& v, const std::vector<IntVector>& basis) {
  std::vector<IntVector> all = basis;
  all.push_back(v);
  auto d_all = smith_invariants(detail::columns_to_grid(all));
  if (d_all.size() != all.size()) {
    if (smith_invariants(detail::columns_to_grid(basis)).size() != basis.size())
      throw PreconditionError("basis vectors are linearly dependent");
    throw PreconditionError("vector lies in the span of the basis");
  }
  Integer va = 1;
  for (const auto& x : d_all) va *= x;
  return va / integer_volume(basis);
}

}  // namespace hesslab
