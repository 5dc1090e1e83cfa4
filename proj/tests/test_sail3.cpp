#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hesslab;

namespace {

const IntMatrix kFrob = parse_matrix("0 0 1; 1 0 1; 0 1 3");
const IntMatrix kA0 = parse_matrix("0 0 0 1; 1 0 0 -4; 0 1 0 1; 0 0 1 4");

std::vector<IntVector> preimages(const std::vector<PiPoint>& ps) {
  std::vector<IntVector> out;
  for (const auto& p : ps) out.push_back(p.preimage);
  return out;
}

}  // namespace

TEST(Eigen, FrobeniusRootEnclosure) {
  EigenData3 e = eigen_data(kFrob);
  RatInterval r = e.field->enclosure(e.r);
  EXPECT_GT(r.lo, Rational(338, 100));
  EXPECT_LT(r.hi, Rational(339, 100));
  EXPECT_EQ(e.field->minpoly(), char_poly(kFrob));
}

TEST(Eigen, EigenvectorRelationsAreExact) {
  for (const IntMatrix& m : {kFrob, parse_matrix("0 2 3; 1 1 1; 0 3 4"), parse_matrix("0 1 3; 1 0 0; 0 3 8")}) {
    EigenData3 e = eigen_data(m);
    const RealField& f = *e.field;
    for (std::size_t i = 0; i < 3; ++i) {
      FieldElem lhs = f.zero(), rl = f.zero();
      for (std::size_t j = 0; j < 3; ++j) {
        lhs = lhs + Rational(m(i, j)) * e.g1[j];
        rl = rl + Rational(m(j, i)) * e.u1[j];
      }
      ASSERT_TRUE((lhs - f.mul(e.r, e.g1[i])).is_zero());
      ASSERT_TRUE((rl - f.mul(e.r, e.u1[i])).is_zero());
    }
    EXPECT_GT(f.sign(e.u1[0]), 0);
  }
}

TEST(Eigen, RejectsBadInput) {
  EXPECT_THROW(eigen_data(IntMatrix::identity(3)), PreconditionError);
  // t^3-3t+1 has three real roots
  EXPECT_THROW(eigen_data(parse_matrix("0 0 -1; 1 0 3; 0 1 0")), PreconditionError);
  EXPECT_THROW(eigen_data(kA0), PreconditionError);
}

TEST(Sail, FrobeniusFundamentalDomain) {
  SailData s = compute_sail(kFrob);
  EXPECT_EQ(preimages(s.fundamental_vertices()), std::vector<IntVector>(1, IntVector{1, 0, 0}));
  EXPECT_EQ(s.generator, kFrob);
  EXPECT_EQ((s.generator * IntVector{1, 0, 0}), (IntVector{0, 1, 0}));
  ASSERT_EQ(s.vertices.size(), 3u);
  EXPECT_EQ(s.vertices[2].preimage, (IntVector{0, 1, 0}));
  for (const auto& v : s.vertices) {
    EXPECT_EQ(v.md, 1);
  }
}

TEST(Sail, SecondSailIsNegatedFirst) {
  for (const IntMatrix& m : {kFrob, parse_matrix("0 2 3; 1 1 1; 0 3 4")}) {
    SailData a = compute_sail(m, {}, 1), b = compute_sail(m, {}, -1);
    ASSERT_EQ(a.vertices.size(), b.vertices.size());
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
      EXPECT_EQ(b.vertices[i].preimage, -a.vertices[i].preimage);
    }
  }
}

TEST(Sail, GeneratorShiftsPeriods) {
  SailData s = compute_sail(parse_matrix("0 2 3; 1 1 1; 0 3 4"));
  const std::size_t k = s.fundamental.size();
  ASSERT_EQ(s.vertices.size(), 3 * k);
  const RealField& f = *s.eigen->field;
  for (std::size_t i = 0; i < 2 * k; ++i) {
    EXPECT_EQ(s.generator * s.vertices[i].preimage, s.vertices[i + k].preimage);
    EXPECT_EQ(s.vertices[i].md, s.vertices[i + k].md);
    EXPECT_TRUE((f.mul(s.lambda, s.vertices[i].x) - s.vertices[i + k].x).is_zero());
  }
  for (std::size_t i = 0; i + 1 < s.vertices.size(); ++i) {
    EXPECT_LT(f.compare(s.vertices[i].x, s.vertices[i + 1].x), 0);
  }
  EXPECT_GT(f.compare(s.lambda, f.from_rational(1)), 0);
}

TEST(Sail, FundamentalMinimumMatchesBoundedSearch) {
  SailData s = compute_sail(parse_matrix("0 1 2; 1 0 0; 0 3 5"));
  Integer best = -1;
  for (const auto& v : s.fundamental_vertices())
    if (best < 0 || v.md < best) best = v.md;
  EXPECT_EQ(best, minimize_md_bounded(parse_matrix("0 1 2; 1 0 0; 0 3 5"), 10).value);
}

TEST(Projection, Equivariance) {
  EigenData3 e = eigen_data(kFrob);
  const RealField& f = *e.field;
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int k = 0; k < 100; ++k) {
    IntVector v{d(rng), d(rng), d(rng)};
    if (v.is_zero()) continue;
    PiPoint p = project_pi(e, v), q = project_pi(e, kFrob * v);
    ASSERT_EQ(p.md, q.md);
    ASSERT_TRUE((f.mul(e.r, p.x) - q.x).is_zero());
    ASSERT_TRUE((p.y_sq - f.mul(e.r, q.y_sq)).is_zero());
  }
  PiPoint z = project_pi(e, IntVector{0, 0, 0});
  EXPECT_EQ(z.md, 0);
  EXPECT_TRUE(z.y_sq.is_zero());
}

TEST(Sail, StableUnderDoubledPrecision) {
  IntMatrix m = parse_matrix("0 2 3; 1 1 1; 0 3 4");
  SailOptions lo, hi;
  lo.precision_bits = 2048;
  hi.precision_bits = 4096;
  EXPECT_EQ(preimages(compute_sail(m, lo).vertices), preimages(compute_sail(m, hi).vertices));
}

TEST(Dirichlet, FourDimensionalGenerators) {
  const IntMatrix e = IntMatrix::identity(4);
  EXPECT_TRUE(verify_dirichlet_element(kA0, kA0 * kA0));
  EXPECT_TRUE(verify_dirichlet_element(kA0, (e - kA0) * (e - kA0)));
  EXPECT_FALSE(verify_dirichlet_element(kA0, kA0));  // det -1
  EXPECT_FALSE(verify_dirichlet_element(kA0, kA0 * kA0 * kA0 + kA0));  // det -65
}

TEST(Dirichlet, RejectsNonCommuting) {
  std::mt19937_64 rng(52);
  int rejected = 0;
  for (int k = 0; k < 10; ++k) {
    IntMatrix x = oracle::random_sl(rng, 4, 8, 2);
    if (x * kA0 == kA0 * x) continue;
    EXPECT_FALSE(verify_dirichlet_element(kA0, x));
    ++rejected;
  }
  EXPECT_GT(rejected, 5);
  EXPECT_FALSE(verify_dirichlet_element(kA0, -IntMatrix::identity(4)));
  EXPECT_TRUE(verify_dirichlet_element(kFrob, kFrob));
  EXPECT_FALSE(verify_dirichlet_element(kFrob, IntMatrix::identity(4)));
}

TEST(SailJson, Dump) {
  Json j = sail_to_json(compute_sail(kFrob));
  ASSERT_TRUE(j.contains("vertices"));
  EXPECT_EQ(j["vertices"].size(), 3u);
  EXPECT_EQ(j.dump(), sail_to_json(compute_sail(kFrob)).dump());
}
