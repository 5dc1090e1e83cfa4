#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hesslab;

namespace {

const HessType kFrobType = parse_hess_type("<0,1|0,0,1>");
const HessType k102 = parse_hess_type("<0,1|1,0,2>");

std::size_t count(const std::vector<GridCell>& cells, CellClass c) {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [&](const GridCell& g) { return g.cls == c; }));
}

}  // namespace

TEST(Discriminant, FrobeniusFamilyIdentity) {
  for (long m = -20; m <= 20; ++m)
    for (long n = -20; n <= 20; ++n) {
      Integer want = Integer(m * m - 4 * n) * Integer(n * n + 4 * m) - 2 * m * n - 27;
      ASSERT_EQ(discriminant_at({kFrobType, IntVector{1, 0, 0}, {m, n}}), want);
    }
  EXPECT_EQ(discriminant_at({kFrobType, IntVector{1, 0, 0}, {0, 0}}), -27);
}

TEST(Discriminant, QuarticPolynomialOfFamily) {
  for (long m = -20; m <= 20; ++m)
    for (long n = -20; n <= 20; ++n) {
      Integer want = -44 - 44 * n * n - 56 * m * n - 32 * n * n * n + 32 * m * m * m + 16 * m * m * n * n +
                     16 * m * n * n + 16 * m * m * n - 56 * n - 8 * m + 52 * m * m;
      FamilyPoint fp{k102, IntVector{1, 0, 1}, {m, n}};
      ASSERT_EQ(discriminant_at(fp), want);
      ASSERT_EQ(discriminant_at(fp), oracle::disc_closed_form(IntPoly(oracle::char_poly_fl(family_member(fp)))));
    }
  EXPECT_THROW(discriminant_at({parse_hess_type("<2,5>"), IntVector{1, 3}, {0}}), PreconditionError);
}

TEST(Parabola, FrobeniusParameters) {
  ParabolaParams p = parabola_params(kFrobType, IntVector{1, 0, 0});
  EXPECT_EQ(p.alpha1, Rational(-1, 4));
  EXPECT_EQ(p.beta1, 0);
  EXPECT_EQ(p.gamma1, 0);
  EXPECT_EQ(p.alpha2, Rational(1, 4));
  EXPECT_EQ(p.beta2, 0);
  EXPECT_EQ(p.gamma2, 0);
  // p1 = -m - n^2/4, p2 = n - m^2/4
  EXPECT_EQ(p.p1(Rational(2), Rational(4)), -6);
  EXPECT_EQ(p.p2(Rational(2), Rational(4)), 3);
}

TEST(Parabola, DiscriminantRemainderHasDegreeTwo) {
  // D - 16 a21^2 a32^2 b3 p1 p2 has no terms of total degree above 2
  for (const auto& [ts, anchor] : std::vector<std::pair<const char*, IntVector>>{
           {"<0,1|0,0,1>", IntVector{1, 0, 0}}, {"<0,1|1,0,2>", IntVector{1, 0, 1}}, {"<1,2|1,1,3>", IntVector{0, 0, -1}}}) {
    HessType t = parse_hess_type(ts);
    ParabolaParams p = parabola_params(t, anchor);
    IntMatrix h0 = family_member({t, anchor, {0, 0}});
    Rational k = 16 * p.a21 * p.a21 * Rational(h0(2, 1) * h0(2, 1)) * Rational(det(h0));
    auto r = [&](long m, long n) -> Rational {
      return Rational(discriminant_at({t, anchor, {m, n}})) - k * p.p1(Rational(m), Rational(n)) * p.p2(Rational(m), Rational(n));
    };
    // third finite differences vanish in both directions and mixed
    for (long m = -3; m <= 3; ++m)
      for (long n = -3; n <= 3; ++n) {
        ASSERT_EQ(r(m + 3, n) - 3 * r(m + 2, n) + 3 * r(m + 1, n) - r(m, n), 0) << ts;
        ASSERT_EQ(r(m, n + 3) - 3 * r(m, n + 2) + 3 * r(m, n + 1) - r(m, n), 0) << ts;
        ASSERT_EQ(r(m + 2, n + 1) - 2 * r(m + 1, n + 1) + r(m, n + 1) - r(m + 2, n) + 2 * r(m + 1, n) - r(m, n), 0) << ts;
        ASSERT_EQ(r(m + 1, n + 2) - 2 * r(m + 1, n + 1) + r(m + 1, n) - r(m, n + 2) + 2 * r(m, n + 1) - r(m, n), 0) << ts;
      }
  }
}

TEST(Parabola, LambdaMembership) {
  ParabolaParams p = parabola_params(kFrobType, IntVector{1, 0, 0});
  EXPECT_TRUE(lambda_membership(p, Rational(1), Rational(-30), Rational(0)));
  EXPECT_FALSE(lambda_membership(p, Rational(1), Rational(0), Rational(-30)));
  EXPECT_TRUE(lambda_membership(p, Rational(1), Rational(0), Rational(30)));
  EXPECT_FALSE(lambda_membership(p, Rational(1), Rational(-1), Rational(0)));
}

TEST(Normalize, PreservesCharacteristicPolynomial) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<long> d(-30, 30);
  const std::vector<std::pair<const char*, IntVector>> fams{
      {"<0,1|1,0,2>", IntVector{1, 0, 1}}, {"<1,2|1,1,3>", IntVector{0, 0, -1}}, {"<0,1|1,0,3>", IntVector{1, 0, 2}},
      {"<0,1|0,0,1>", IntVector{1, 0, 0}}};
  for (int k = 0; k < 100; ++k) {
    const auto& [ts, anchor] = fams[static_cast<std::size_t>(k) % fams.size()];
    FamilyPoint fp{parse_hess_type(ts), anchor, {d(rng), d(rng)}};
    auto [mt, nt] = normalize_to_frobenius(fp);
    FamilyPoint ff{kFrobType, IntVector{1, 0, 0}, {mt, nt}};
    IntMatrix h = family_member(fp), f = family_member(ff);
    ASSERT_EQ(char_poly(h), char_poly(f));
    ASSERT_EQ(discriminant_at(fp), discriminant_at(ff));
    IntMatrix x = frobenius_conjugator(fp);
    ASSERT_EQ(h * x, x * f);
    IntMatrix h0 = family_member({fp.type, fp.anchor, {0, 0}});
    ASSERT_EQ(det(x), h0(1, 0) * h0(1, 0) * h0(2, 1));
  }
}

TEST(Grid, SmallFamilyCount) {
  GridRange r;
  auto cells = classify_grid(parse_hess_type("<0,1|1,0,3>"), IntVector{1, 0, 2}, r);
  EXPECT_EQ(cells.size(), 41u * 41u);
  EXPECT_EQ(count(cells, CellClass::NRS_Nonreduced), 6u);
  EXPECT_EQ(count(cells, CellClass::NRS_Unknown), 0u);
  GridSummary s = summarize(cells);
  EXPECT_EQ(s.reducible + s.rs + s.reduced + s.nonreduced + s.unknown, cells.size());
  for (const auto& c : cells) {
    if (c.cls == CellClass::RS) {
      EXPECT_GT(c.discriminant, 0);
    }
    if (c.cls == CellClass::NRS_Reduced || c.cls == CellClass::NRS_Nonreduced) {
      EXPECT_LT(c.discriminant, 0);
    }
  }
}

TEST(Grid, OrderAndThreadDeterminism) {
  GridRange r{-4, 4, -3, 3};
  auto a = classify_grid(k102, IntVector{1, 0, 1}, r);
  GridOptions opt;
  opt.jobs = 3;
  auto b = classify_grid(k102, IntVector{1, 0, 1}, r, opt);
  ASSERT_EQ(a.size(), 63u);
  EXPECT_EQ(a.front().params, (std::vector<Integer>{-4, -3}));
  EXPECT_EQ(a[1].params, (std::vector<Integer>{-4, -2}));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Grid, Preconditions) {
  EXPECT_THROW(classify_grid(parse_hess_type("<0,1|1,0,2>"), IntVector{0, 0, 2}, GridRange{}), PreconditionError);
  EXPECT_THROW(classify_grid(parse_hess_type("<0,1|2,0,2>"), IntVector{1, 0, 1}, GridRange{}), PreconditionError);
  EXPECT_THROW(classify_grid(k102, IntVector{1, 0, 1}, GridRange{1, 0, 0, 0}), PreconditionError);
}

TEST(Ray, BothDirections) {
  RayScan a = ray_scan(k102, IntVector{1, 0, 1}, -6, 0, 0, 12);
  ASSERT_EQ(a.points.size(), 13u);
  EXPECT_EQ(a.points[3].params, (std::vector<Integer>{-9, 0}));
  RayScan b = ray_scan(k102, IntVector{1, 0, 1}, 3, -2, 1, 6);
  EXPECT_EQ(b.points[2].params, (std::vector<Integer>{3, 0}));
  for (const auto& p : a.points)
    if (p.nrs) {
      ASSERT_TRUE(p.verdict.has_value());
    }
  EXPECT_LE(a.nonreduced, 1u);
  EXPECT_THROW(ray_scan(k102, IntVector{1, 0, 1}, 0, 0, 2, 3), PreconditionError);
}

TEST(Family4, CharacteristicPolynomial) {
  const HessType t = family4_type();
  EXPECT_EQ(char_poly(family_member({t, family4_anchor(), {1, 1, 1}})), (IntPoly{1, -6, -6, -6, 1}));
  for (long l = -4; l <= 4; ++l)
    for (long m = -4; m <= 4; ++m)
      for (long n = -4; n <= 4; ++n) {
        // the displayed quartic matches the member at l-1
        ASSERT_EQ(char_poly(family_member({t, family4_anchor(), {l - 1, m, n}})), printed_quartic(l, m, n));
      }
}

TEST(Family4, ClassificationMatchesFactorization) {
  auto cells = classify_family_4d(Range3{-4, 4});
  ASSERT_EQ(cells.size(), 729u);
  for (const auto& c : cells) {
    IntPoly p = char_poly(family_member({family4_type(), family4_anchor(), c.params}));
    ASSERT_EQ(c.cls == CellClass::ReduciblePoly, factor_small(p).size() > 1);
    if (c.cls == CellClass::Spectrum4) {
      ASSERT_EQ(static_cast<int>(count_real_roots(p)), oracle::real_root_count_numeric(p));
    }
  }
  EXPECT_EQ(to_json(cells).dump(), to_json(classify_family_4d(Range3{-4, 4}, family4_anchor(), 2)).dump());
}

TEST(Spectrum4, Kinds) {
  EXPECT_EQ(spectrum4_kind(IntPoly{1, 0, 0, 0, 1}), Spectrum4Kind::FourComplex);
  EXPECT_EQ(spectrum4_kind(IntPoly{-1, 0, 0, 0, 1}), Spectrum4Kind::TwoRealTwoComplex);
  EXPECT_EQ(spectrum4_kind(IntPoly{15, 0, -8, 0, 1}), Spectrum4Kind::FourReal);
}

TEST(Render, SinglePixel) {
  GridCell c;
  c.params = {Integer(0), Integer(0)};
  EXPECT_EQ(render_grid({c}, Palette{}, ImageFormat::PPM), "P3\n1 1\n255\n0 0 0\n");
  c.cls = CellClass::NRS_Reduced;
  EXPECT_EQ(render_grid({c}, Palette{}, ImageFormat::PPM), "P3\n1 1\n255\n255 255 255\n");
  std::string svg = render_grid({c}, Palette{}, ImageFormat::SVG);
  EXPECT_NE(svg.find("<title>(0,0) NRS_Reduced</title>"), std::string::npos);
  EXPECT_THROW(render_grid({}, Palette{}, ImageFormat::PPM), PreconditionError);
}

TEST(Render, TopRowIsLargestN) {
  std::vector<GridCell> cells(2);
  cells[0].params = {Integer(0), Integer(0)};
  cells[1].params = {Integer(0), Integer(1)};
  cells[1].cls = CellClass::RS;
  EXPECT_EQ(render_grid(cells, Palette{}, ImageFormat::PPM), "P3\n1 2\n255\n200 200 200\n0 0 0\n");
}

TEST(Config, RoundTripAndErrors) {
  Config c;
  load_config_text(c, "# local\nbound = 20\n[palette]\nnonreduced = 7\nfour_real = 9\n");
  EXPECT_EQ(c.bound, 20);
  EXPECT_EQ(c.palette.nonreduced, 7);
  Config d;
  load_config_text(d, config_to_text(c));
  EXPECT_EQ(config_to_text(d), config_to_text(c));
  EXPECT_EQ(d.palette.four_real, 9);
  EXPECT_THROW(load_config_text(c, "colour = 3\n"), Error);
  GridRange r = parse_grid_range("-3:4,0:2");
  EXPECT_EQ(r.lo0, -3);
  EXPECT_EQ(r.hi1, 2);
  EXPECT_EQ(parse_range3("-2:2").lo, -2);
}
