#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hesslab/reducedness.hpp"

namespace hesslab {

inline Integer discriminant_at(const FamilyPoint& fp) {
  if (fp.type.n != 3) throw PreconditionError("discriminant_at needs a 3x3 family");
  return discriminant(char_poly(family_member(fp)));
}

/// Coefficients of the two parabolas bounding the NRS region of a 3x3 family.
/// p1 = alpha1 n^2 + beta1 n + gamma1 - m, p2 = n/a21 - alpha2 u^2 - beta2 u - gamma2, u = (a21 m - a11 n)/a21.
struct ParabolaParams {
  Rational alpha1, beta1, gamma1, alpha2, beta2, gamma2;
  Rational a11, a21;

  Rational p1(const Rational& m, const Rational& n) const { return alpha1 * n * n + beta1 * n + gamma1 - m; }
  Rational p2(const Rational& m, const Rational& n) const {
    Rational u = (a21 * m - a11 * n) / a21;
    return n / a21 - alpha2 * u * u - beta2 * u - gamma2;
  }
};

inline ParabolaParams parabola_params(const HessType& t, const IntVector& anchor) {
  if (t.n != 3) throw PreconditionError("parabola_params needs a 3x3 family");
  const IntMatrix h = family_member({t, anchor, {0, 0}});
  auto a = [&](std::size_t i, std::size_t j) -> Rational { return Rational(h(i - 1, j - 1)); };
  const Rational b1 = Rational(h.trace());
  const Rational b2 = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1) + a(1, 1) * a(3, 3) - a(1, 3) * a(3, 1) +
                      a(2, 2) * a(3, 3) - a(2, 3) * a(3, 2);
  const Rational b3 = Rational(det(h));
  ParabolaParams p;
  p.a11 = a(1, 1);
  p.a21 = a(2, 1);
  p.alpha1 = -a(3, 2) / (4 * a(2, 1));
  p.beta1 = (a(1, 1) - a(2, 2) - a(3, 3)) / (2 * a(2, 1));
  p.gamma1 = (4 * b2 - b1 * b1) / (4 * a(2, 1) * a(3, 2));
  p.alpha2 = a(3, 2) * a(2, 1) / (4 * b3);
  p.beta2 = -b2 / (2 * b3);
  p.gamma2 = (b2 * b2 - 4 * b1 * b3) / (4 * a(2, 1) * a(3, 2) * b3);
  return p;
}

/// (p1 - eps)(p2 - eps) < 0
inline bool lambda_membership(const ParabolaParams& pp, const Rational& eps, const Rational& m, const Rational& n) {
  return sgn(pp.p1(m, n) - eps) * sgn(pp.p2(m, n) - eps) < 0;
}

/// Parameters of the <0,1|0,0,1>, (1,0,0) member rationally conjugate to fp.
inline std::array<Integer, 2> normalize_to_frobenius(const FamilyPoint& fp) {
  if (fp.type.n != 3) throw PreconditionError("normalize_to_frobenius needs a 3x3 family");
  const IntMatrix h = family_member({fp.type, fp.anchor, {0, 0}});
  auto a = [&](std::size_t i, std::size_t j) -> const Integer& { return h(i - 1, j - 1); };
  const Integer& m = fp.params[0];
  const Integer& n = fp.params[1];
  Integer mt = a(2, 3) * a(3, 2) - a(1, 1) * a(3, 3) + a(1, 2) * a(2, 1) - a(2, 2) * a(3, 3) - a(1, 1) * a(2, 2) +
               a(2, 1) * a(3, 2) * m - a(1, 1) * a(3, 2) * n;
  Integer nt = a(1, 1) + a(2, 2) + a(3, 3) + a(3, 2) * n;
  return {mt, nt};
}

/// The rational conjugator of normalize_to_frobenius.
inline IntMatrix frobenius_conjugator(const FamilyPoint& fp) {
  const IntMatrix h = family_member({fp.type, fp.anchor, {0, 0}});
  const Integer &a11 = h(0, 0), &a12 = h(0, 1), &a21 = h(1, 0), &a22 = h(1, 1), &a32 = h(2, 1);
  IntMatrix x(3);
  x(0, 0) = 1;
  x(0, 1) = a11;
  x(0, 2) = a11 * a11 + a12 * a21;
  x(1, 1) = a21;
  x(1, 2) = a11 * a21 + a21 * a22;
  x(2, 2) = a21 * a32;
  return x;
}

enum class CellClass { ReduciblePoly, RS, NRS_Reduced, NRS_Nonreduced, NRS_Unknown, Spectrum4 };
enum class Spectrum4Kind { None, FourReal, TwoRealTwoComplex, FourComplex };

inline std::string to_string(CellClass c) {
  switch (c) {
    case CellClass::ReduciblePoly: return "ReduciblePoly";
    case CellClass::RS: return "RS";
    case CellClass::NRS_Reduced: return "NRS_Reduced";
    case CellClass::NRS_Nonreduced: return "NRS_Nonreduced";
    case CellClass::NRS_Unknown: return "NRS_Unknown";
    default: return "Spectrum4";
  }
}
inline std::string to_string(Spectrum4Kind k) {
  switch (k) {
    case Spectrum4Kind::FourReal: return "FourReal";
    case Spectrum4Kind::TwoRealTwoComplex: return "TwoRealTwoComplex";
    case Spectrum4Kind::FourComplex: return "FourComplex";
    default: return "None";
  }
}

struct GridCell {
  std::vector<Integer> params;
  CellClass cls = CellClass::ReduciblePoly;
  Spectrum4Kind kind = Spectrum4Kind::None;
  Integer discriminant = 0;
  std::optional<ReducedVerdict> verdict;
  bool fallback = false;  // verdict came from the bounded fallback
};

struct GridRange {
  long lo0 = -20, hi0 = 20, lo1 = -20, hi1 = 20;
};

struct GridSummary {
  std::size_t reducible = 0, rs = 0, reduced = 0, nonreduced = 0, unknown = 0;
  std::size_t four_real = 0, two_two = 0, four_complex = 0;
};

inline GridSummary summarize(const std::vector<GridCell>& cells) {
  GridSummary s;
  for (const auto& c : cells) {
    switch (c.cls) {
      case CellClass::ReduciblePoly: ++s.reducible; break;
      case CellClass::RS: ++s.rs; break;
      case CellClass::NRS_Reduced: ++s.reduced; break;
      case CellClass::NRS_Nonreduced: ++s.nonreduced; break;
      case CellClass::NRS_Unknown: ++s.unknown; break;
      case CellClass::Spectrum4:
        if (c.kind == Spectrum4Kind::FourReal) ++s.four_real;
        else if (c.kind == Spectrum4Kind::TwoRealTwoComplex) ++s.two_two;
        else ++s.four_complex;
        break;
    }
  }
  return s;
}

namespace detail {

// runs f(i) for i in [0, count) on `jobs` threads; results are index-addressed so order is fixed
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& f) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> ts;
  std::exception_ptr err;
  std::mutex err_mu;
  for (unsigned j = 0; j < jobs; ++j)
    ts.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : ts) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace detail

struct GridOptions {
  Strategy strategy = SailStrategy{};
  long fallback_bound = 1000;  // bounded search used when the sail is inconclusive
  unsigned jobs = 1;
};

/// Classifies one 3x3 family member.
inline GridCell classify_cell(const FamilyPoint& fp, const GridOptions& opt) {
  GridCell c;
  c.params = fp.params;
  const IntMatrix m = family_member(fp);
  const IntPoly p = char_poly(m);
  c.discriminant = discriminant(p);
  if (!is_irreducible(p)) {
    c.cls = CellClass::ReduciblePoly;
    return c;
  }
  if (c.discriminant > 0) {
    c.cls = CellClass::RS;
    return c;
  }
  ReducedVerdict v = is_reduced(m, opt.strategy);
  if (v.status == VerdictStatus::Inconclusive && std::holds_alternative<SailStrategy>(opt.strategy) &&
      opt.fallback_bound > 0) {
    v = is_reduced(m, BoundedStrategy{opt.fallback_bound, 1});
    c.fallback = true;
  }
  c.cls = v.status == VerdictStatus::Reduced      ? CellClass::NRS_Reduced
          : v.status == VerdictStatus::Nonreduced ? CellClass::NRS_Nonreduced
                                                  : CellClass::NRS_Unknown;
  c.verdict = std::move(v);
  return c;
}

/// Cells ordered by m (outer) then n.
inline std::vector<GridCell> classify_grid(const HessType& t, const IntVector& anchor, const GridRange& r,
                                           const GridOptions& opt = {}) {
  if (t.n != 3) throw PreconditionError("classify_grid needs a 3x3 family");
  if (!t.is_perfect()) throw PreconditionError("family type is not perfect");
  if (!validate_type(t, anchor)) throw PreconditionError("invalid family: type and anchor fail the lattice conditions");
  family_member({t, anchor, {0, 0}});
  if (r.lo0 > r.hi0 || r.lo1 > r.hi1) throw PreconditionError("empty range");
  const std::size_t w = static_cast<std::size_t>(r.hi1 - r.lo1 + 1);
  const std::size_t count = static_cast<std::size_t>(r.hi0 - r.lo0 + 1) * w;
  std::vector<GridCell> cells(count);
  detail::parallel_for(count, opt.jobs, [&](std::size_t i) {
    long m = r.lo0 + static_cast<long>(i / w), n = r.lo1 + static_cast<long>(i % w);
    cells[i] = classify_cell({t, anchor, {m, n}}, opt);
  });
  return cells;
}

struct RayPoint {
  long t;
  std::vector<Integer> params;
  bool nrs = false;
  std::optional<ReducedVerdict> verdict;
};

struct RayScan {
  std::vector<RayPoint> points;
  bool all_nrs = true;
  std::optional<long> last_nonreduced;
  std::size_t nonreduced = 0;
};

/// Walks H(m - t, n) (direction 0) or H(m + a11 t, n + a21 t) (direction 1) for t = 0..t_max.
inline RayScan ray_scan(const HessType& type, const IntVector& anchor, long m, long n, int direction, long t_max,
                        const Strategy& strategy = SailStrategy{}) {
  if (type.n != 3) throw PreconditionError("ray_scan needs a 3x3 family");
  if (direction != 0 && direction != 1) throw PreconditionError("direction must be 0 for (-1,0) or 1 for (a11,a21)");
  const Integer a11 = type.columns[0][0], a21 = type.columns[0][1];
  RayScan out;
  for (long t = 0; t <= t_max; ++t) {
    RayPoint pt;
    pt.t = t;
    pt.params = direction == 0 ? std::vector<Integer>{Integer(m - t), Integer(n)}
                               : std::vector<Integer>{Integer(m + a11 * t), Integer(n + a21 * t)};
    const IntMatrix h = family_member({type, anchor, pt.params});
    const IntPoly p = char_poly(h);
    pt.nrs = is_irreducible(p) && discriminant(p) < 0;
    if (!pt.nrs) {
      out.all_nrs = false;
    } else {
      pt.verdict = is_reduced(h, strategy);
      if (pt.verdict->status == VerdictStatus::Nonreduced) {
        ++out.nonreduced;
        out.last_nonreduced = t;
      }
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

/// The 4D family <0,1|0,0,1|1,3,1,4>; the default anchor gives the displayed matrix.
inline HessType family4_type() { return parse_hess_type("<0,1|0,0,1|1,3,1,4>"); }
inline IntVector family4_anchor() { return IntVector{0, 1, 0, 1}; }

/// t^4 + (-4n-2) t^3 + (-4m-2) t^2 + (2-4l) t + 1
inline IntPoly printed_quartic(const Integer& l, const Integer& m, const Integer& n) {
  return IntPoly(std::vector<Integer>{Integer(1), Integer(2 - 4 * l), Integer(-4 * m - 2), Integer(-4 * n - 2),
                                      Integer(1)});
}

/// Reducibility of the quartic as stated: root planes n+m+l=0, n-m-l=0, and the two quadratic-pair systems.
inline bool printed_reducible(const Integer& l, const Integer& m, const Integer& n) {
  if (n + m + l == 0 || n - m - l == 0) return true;
  // (-b-4l+2) b + 2 = -4m-2 on l-n-1 = 0, i.e. b^2 + (4l-2) b - 4m - 4 = 0
  auto has_int_root = [](const Integer& p, const Integer& q) {
    Integer d = p * p - 4 * q;
    if (!is_square(d)) return false;
    Integer s = sqrt(d);
    return (s - p) % 2 == 0;
  };
  if (l - n - 1 == 0 && has_int_root(4 * l - 2, -4 * m - 4)) return true;
  // (-b+4l-2) b - 2 = -4m-2 on l+n = 0, i.e. b^2 - (4l-2) b - 4m = 0
  if (l + n == 0 && has_int_root(-(4 * l - 2), -4 * m)) return true;
  return false;
}

inline Spectrum4Kind spectrum4_kind(const IntPoly& p) {
  switch (count_real_roots(p)) {
    case 4: return Spectrum4Kind::FourReal;
    case 2: return Spectrum4Kind::TwoRealTwoComplex;
    case 0: return Spectrum4Kind::FourComplex;
    default: throw Error("quartic with repeated roots has no spectrum kind");
  }
}

struct Range3 {
  long lo = -15, hi = 15;
};

/// Cells ordered by l, then m, then n.
inline std::vector<GridCell> classify_family_4d(const Range3& r, const IntVector& anchor = family4_anchor(),
                                                unsigned jobs = 1) {
  const HessType t = family4_type();
  if (r.lo > r.hi) throw PreconditionError("empty range");
  const std::size_t w = static_cast<std::size_t>(r.hi - r.lo + 1);
  std::vector<GridCell> cells(w * w * w);
  detail::parallel_for(cells.size(), jobs, [&](std::size_t i) {
    GridCell c;
    c.params = {Integer(r.lo + static_cast<long>(i / (w * w))), Integer(r.lo + static_cast<long>(i / w % w)),
                Integer(r.lo + static_cast<long>(i % w))};
    const IntPoly p = char_poly(family_member({t, anchor, c.params}));
    c.discriminant = discriminant(p);
    if (!is_irreducible(p)) {
      c.cls = CellClass::ReduciblePoly;
    } else {
      c.cls = CellClass::Spectrum4;
      c.kind = spectrum4_kind(p);
    }
    cells[i] = std::move(c);
  });
  return cells;
}

/// Gray levels per class.
struct Palette {
  int reducible = 0, rs = 200, nonreduced = 100, reduced = 255, unknown = 150;
  int four_real = 255, two_two = 100, four_complex = 200;

  int level(const GridCell& c) const {
    switch (c.cls) {
      case CellClass::ReduciblePoly: return reducible;
      case CellClass::RS: return rs;
      case CellClass::NRS_Reduced: return reduced;
      case CellClass::NRS_Nonreduced: return nonreduced;
      case CellClass::NRS_Unknown: return unknown;
      default:
        return c.kind == Spectrum4Kind::FourReal ? four_real : c.kind == Spectrum4Kind::TwoRealTwoComplex ? two_two
                                                                                                           : four_complex;
    }
  }
};

enum class ImageFormat { PPM, SVG };

namespace detail {

struct Raster {
  long m0 = 0, m1 = -1, n0 = 0, n1 = -1;
  std::vector<const GridCell*> at;  // row-major, top row = largest n
  std::size_t width() const { return static_cast<std::size_t>(m1 - m0 + 1); }
  std::size_t height() const { return static_cast<std::size_t>(n1 - n0 + 1); }
};

inline Raster rasterize(const std::vector<GridCell>& cells) {
  if (cells.empty()) throw PreconditionError("no cells to render");
  Raster r;
  bool first = true;
  for (const auto& c : cells) {
    if (c.params.size() != 2) throw PreconditionError("render_grid needs two-parameter cells");
    long m = c.params[0].get_si(), n = c.params[1].get_si();
    if (first) {
      r.m0 = r.m1 = m;
      r.n0 = r.n1 = n;
      first = false;
    }
    r.m0 = std::min(r.m0, m);
    r.m1 = std::max(r.m1, m);
    r.n0 = std::min(r.n0, n);
    r.n1 = std::max(r.n1, n);
  }
  r.at.assign(r.width() * r.height(), nullptr);
  for (const auto& c : cells) {
    std::size_t x = static_cast<std::size_t>(c.params[0].get_si() - r.m0);
    std::size_t y = static_cast<std::size_t>(r.n1 - c.params[1].get_si());
    r.at[y * r.width() + x] = &c;
  }
  for (auto* p : r.at)
    if (!p) throw PreconditionError("cell range is not rectangular");
  return r;
}

}  // namespace detail

/// One pixel (PPM) or one square (SVG) per cell; m runs left to right, n bottom to top.
inline std::string render_grid(const std::vector<GridCell>& cells, const Palette& pal, ImageFormat fmt,
                               int cell_px = 10) {
  const detail::Raster r = detail::rasterize(cells);
  std::ostringstream os;
  if (fmt == ImageFormat::PPM) {
    os << "P3\n" << r.width() << " " << r.height() << "\n255\n";
    for (std::size_t y = 0; y < r.height(); ++y) {
      for (std::size_t x = 0; x < r.width(); ++x) {
        int g = pal.level(*r.at[y * r.width() + x]);
        os << (x ? " " : "") << g << " " << g << " " << g;
      }
      os << "\n";
    }
    return os.str();
  }
  const long w = static_cast<long>(r.width()) * cell_px, h = static_cast<long>(r.height()) * cell_px;
  const long margin = 3 * cell_px;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * margin << "\" height=\"" << h + 2 * margin
     << "\" shape-rendering=\"crispEdges\">\n";
  os << "<g transform=\"translate(" << margin << "," << margin << ")\">\n";
  for (std::size_t y = 0; y < r.height(); ++y)
    for (std::size_t x = 0; x < r.width(); ++x) {
      const GridCell& c = *r.at[y * r.width() + x];
      int g = pal.level(c);
      os << "<rect x=\"" << static_cast<long>(x) * cell_px << "\" y=\"" << static_cast<long>(y) * cell_px
         << "\" width=\"" << cell_px << "\" height=\"" << cell_px << "\" fill=\"rgb(" << g << "," << g << "," << g
         << ")\"><title>(" << c.params[0].get_str() << "," << c.params[1].get_str() << ") " << to_string(c.cls)
         << "</title></rect>\n";
    }
  // axes through m = 0 and n = 0 when inside the window
  if (r.m0 <= 0 && 0 <= r.m1) {
    long x = (0 - r.m0) * cell_px + cell_px / 2;
    os << "<line x1=\"" << x << "\" y1=\"0\" x2=\"" << x << "\" y2=\"" << h << "\" stroke=\"red\"/>\n";
  }
  if (r.n0 <= 0 && 0 <= r.n1) {
    long y = (r.n1 - 0) * cell_px + cell_px / 2;
    os << "<line x1=\"0\" y1=\"" << y << "\" x2=\"" << w << "\" y2=\"" << y << "\" stroke=\"red\"/>\n";
  }
  os << "<text x=\"" << w / 2 << "\" y=\"" << h + 2 * cell_px << "\" font-size=\"" << cell_px
     << "\" text-anchor=\"middle\">m " << r.m0 << ".." << r.m1 << "</text>\n";
  os << "<text x=\"" << -cell_px << "\" y=\"" << h / 2 << "\" font-size=\"" << cell_px
     << "\" text-anchor=\"end\">n " << r.n0 << ".." << r.n1 << "</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace hesslab
