#include "fsw/families.hpp"
#include "support/oracles.hpp"
#include "support/random_models.hpp"

#include <gtest/gtest.h>

using namespace fsw;
using fsw_test::Rng;
namespace oracle = fsw_test::oracle;

namespace {

Ring projective_line() { return Ring(RingSpec::projective_space(1)); }

BlowupSpec blowup_on(const Ring &ring, BlowupTwist twist, int k, int p0, int p1, int p2, int rho) {
  BlowupSpec s;
  s.ring = ring;
  s.L1 = ring.zero();
  s.L2 = BundleClass::trivial(ring, 1);
  s.cotangent = BundleClass::trivial(ring, 2);
  s.canonical = ring.zero();
  s.twist = twist;
  s.k = k;
  s.p0 = p0;
  s.p1 = p1;
  s.p2 = p2;
  s.rho_g = rho;
  return s;
}

} // namespace

TEST(Projectivisation, ProjectiveLineExample) {
  // V = O + O + O(d) over CP^1, k = 1: FSW_3 = -d t
  const Ring ring = projective_line();
  const GradedClass t = ring.generator("t");
  for (int d = -4; d <= 4; ++d) {
    const ProjectivisationSpec spec{ring, BundleClass(ring, 3, {ring.one(), Integer(d) * t}), 1,
                                    BundleClass::trivial(ring, 1)};
    EXPECT_EQ(projectivisation_fsw(spec, 3), Integer(-d) * t);
    EXPECT_EQ(projectivisation_fsw(spec, 2), ring.one());
    EXPECT_TRUE(projectivisation_fsw(spec, 1).is_zero());
    EXPECT_EQ(fsw_general(projectivisation_family_data(spec), 3), Integer(-d) * t);
  }
}

TEST(Projectivisation, MatchesDenseOracleForSplitBundles) {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int top = rng.uniform(1, 3);
    const Ring ring(RingSpec::projective_space(top));
    const GradedClass t = ring.generator("t");
    std::vector<int> a{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const int ell = rng.uniform(-2, 2);
    const int k = rng.uniform(0, 3);
    GradedClass total = ring.one();
    for (int x : a)
      total *= ring.one() + Integer(x) * t;
    const ProjectivisationSpec spec{ring, BundleClass::from_total(3, total), k,
                                    BundleClass::line(Integer(ell) * t)};
    // roots of S^k(V^*) (x) L: -(a_i + a_j + ...) + ell
    oracle::SplitFamily f;
    f.top = top;
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto &&self, int start, int left, int acc) -> void {
      if (left == 0) {
        f.v0.push_back(acc + ell);
        return;
      }
      for (int i = start; i < 3; ++i)
        self(self, i, left - 1, acc - a[i]);
    };
    rec(rec, 0, k, 0);
    for (int n = 0; n <= static_cast<int>(f.v0.size()) + 2; ++n) {
      const GradedClass value = projectivisation_fsw(spec, n);
      const int delta = n - static_cast<int>(f.v0.size()) + 1;
      const Integer expected = oracle::fsw(f, n);
      if (delta < 0 || delta > top)
        EXPECT_TRUE(value.is_zero());
      else
        EXPECT_EQ(value, expected * t.pow(delta));
    }
  }
}

TEST(Projectivisation, NegativeTwistIsZero) {
  const Ring ring = projective_line();
  const ProjectivisationSpec spec{ring, BundleClass::trivial(ring, 3), -1, BundleClass::trivial(ring, 1)};
  EXPECT_EQ(projectivisation_sections(spec).rank(), 0);
  for (int n = 0; n < 4; ++n)
    EXPECT_TRUE(projectivisation_fsw(spec, n).is_zero());
}

TEST(Projectivisation, RejectsWrongRank) {
  const Ring ring = projective_line();
  const ProjectivisationSpec spec{ring, BundleClass::trivial(ring, 2), 1, BundleClass::trivial(ring, 1)};
  EXPECT_THROW(projectivisation_fsw(spec, 0), SpecError);
}

TEST(FibreProduct, TrivialCase) {
  const Ring ring = projective_line();
  const FibreProductSpec spec{ring, BundleClass::trivial(ring, 2), BundleClass::trivial(ring, 2), 0, 0,
                              BundleClass::trivial(ring, 1)};
  EXPECT_EQ(fibre_product_fsw(spec, 0), ring.one());
  for (int n = 1; n < 4; ++n)
    EXPECT_TRUE(fibre_product_fsw(spec, n).is_zero());
}

TEST(FibreProduct, RankAndGeneralFormula) {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const Ring ring = rng.coin() ? Ring(RingSpec::projective_space(rng.uniform(1, 3))) : fsw_test::random_surface(rng);
    const FibreProductSpec spec{ring,
                                fsw_test::random_bundle(ring, 2, rng),
                                fsw_test::random_bundle(ring, 2, rng),
                                rng.uniform(0, 2),
                                rng.uniform(0, 2),
                                BundleClass::line(fsw_test::random_line_class(ring, rng))};
    const KahlerFamilyData d = fibre_product_family_data(spec);
    EXPECT_EQ(d.h0, (1 + spec.k) * (1 + spec.l));
    for (int n = 0; n <= d.h0 + 2; ++n)
      EXPECT_EQ(fibre_product_fsw(spec, n), fsw_general(d, n));
  }
}

TEST(Blowup, ZeroModeDeltaZeroIsBinomial) {
  const Ring ring(RingSpec::surface({"h"}, {{1}}));
  for (int p0 = 1; p0 <= 4; ++p0)
    for (int p1 = 0; p1 <= 3; ++p1)
      for (int p2 = 0; p2 <= 3; ++p2)
        for (int rho = 0; rho <= 2; ++rho) {
          const BlowupSpec s = blowup_on(ring, BlowupTwist::Zero, 0, p0, p1, p2, rho);
          const int r = p1 - p2 + rho;
          const int n = p0 - 1 - r;
          if (n < 0)
            continue;
          EXPECT_EQ(blowup_fsw_delta(s, n), ring.constant(sign_power(n) * oracle::binomial(p1 - p2, r)));
        }
}

TEST(Blowup, ZeroModeWorkedValue) {
  // p = (2, 1, 0), rho = 0, c1(L1) = 2h: FSW_1 = 2h
  const Ring ring(RingSpec::surface({"h"}, {{1}}));
  const GradedClass h = ring.generator("h");
  BlowupSpec s = blowup_on(ring, BlowupTwist::Zero, 0, 2, 1, 0, 0);
  s.L1 = Integer(2) * h;
  EXPECT_EQ(blowup_fsw_delta(s, 0), ring.one());
  EXPECT_EQ(blowup_fsw_delta(s, 1), Integer(2) * h);
  EXPECT_EQ(fsw_general(blowup_family_data(s), 1), Integer(2) * h);
}

TEST(Blowup, BundleDataPerTwist) {
  const Ring ring(RingSpec::surface({"h"}, {{1}}));
  const GradedClass h = ring.generator("h");
  BlowupSpec s = blowup_on(ring, BlowupTwist::MinusE, 1, 4, 1, 0, 0);
  s.L2 = BundleClass::line(h);
  BlowupBundleData w = blowup_bundle_data(s);
  EXPECT_EQ(w.h0, 3);
  EXPECT_EQ(segre_of(w.W0).total(), ring.one() + h);

  s.twist = BlowupTwist::MinusKE;
  s.k = 2;
  s.p0 = 6;
  s.cotangent = BundleClass(ring, 2, {ring.one(), Integer(-3) * h, Integer(3) * ring.vol()});
  w = blowup_bundle_data(s);
  EXPECT_EQ(w.h0, 6 - 3);
  EXPECT_EQ(w.W0.total() * jet_total_class(s.cotangent, s.L2, 1).total(), ring.one());
  EXPECT_THROW(
      [&] {
        BlowupSpec big = s;
        big.p0 = 2;
        (void)blowup_bundle_data(big);
      }(),
      SpecError);

  s.twist = BlowupTwist::PlusKE;
  s.k = 3;
  s.canonical = Integer(-3) * h;
  w = blowup_bundle_data(s);
  EXPECT_EQ(w.h2, 0 + 3);
  EXPECT_EQ(w.W2.total(), jet_total_class(s.cotangent, BundleClass::line(h + Integer(3) * h), 1).total());
}

TEST(Blowup, RejectsInconsistentSpecs) {
  const Ring surface(RingSpec::surface({"h"}, {{1}}));
  EXPECT_THROW(blowup_bundle_data(blowup_on(surface, BlowupTwist::MinusE, 1, 0, 0, 0, 0)), SpecError);
  EXPECT_THROW(blowup_bundle_data(blowup_on(surface, BlowupTwist::Zero, 1, 1, 0, 0, 0)), SpecError);
  EXPECT_THROW(blowup_bundle_data(blowup_on(surface, BlowupTwist::PlusKE, 1, 1, 0, 0, 0)), SpecError);
  EXPECT_THROW(blowup_bundle_data(blowup_on(projective_line(), BlowupTwist::Zero, 0, 1, 0, 0, 0)), SpecError);
  // c(W0) = 1 - h + h^2 needs rank >= 2
  BlowupSpec s = blowup_on(surface, BlowupTwist::MinusE, 1, 2, 0, 0, 0);
  s.L2 = BundleClass::line(surface.generator("h"));
  EXPECT_THROW(blowup_bundle_data(s), SpecError);
}

TEST(Blowup, DeltaFormulasAgreeWithGeneralFormula) {
  Rng rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const Ring ring = fsw_test::random_surface(rng);
    BlowupSpec s = blowup_on(ring, BlowupTwist::Zero, 0, rng.uniform(1, 5), rng.uniform(0, 3), rng.uniform(0, 3),
                             rng.uniform(0, 2));
    s.L1 = fsw_test::random_line_class(ring, rng);
    s.L2 = BundleClass::line(fsw_test::random_line_class(ring, rng));
    s.cotangent = fsw_test::random_bundle(ring, 2, rng);
    s.canonical = s.cotangent.c(1);
    const int mode = rng.uniform(0, 4);
    s.twist = static_cast<BlowupTwist>(mode);
    s.k = s.twist == BlowupTwist::MinusKE ? rng.uniform(1, 3)
          : s.twist == BlowupTwist::PlusKE ? rng.uniform(2, 3)
                                           : *BlowupSpec::implied_k(s.twist);
    s.p0 += 8;
    const KahlerFamilyData d = blowup_family_data(s);
    for (int n = 0; n <= d.h0 + 4; ++n)
      EXPECT_EQ(blowup_fsw_delta(s, n), fsw_general(d, n)) << "twist " << twist_name(s.twist) << " n=" << n;
  }
}

TEST(CrossCheck, ReportsAgreementForEveryFamily) {
  const Ring ring = projective_line();
  const GradedClass t = ring.generator("t");
  const ProjectivisationSpec p{ring, BundleClass(ring, 3, {ring.one(), Integer(2) * t}), 1,
                               BundleClass::trivial(ring, 1)};
  const CrossCheckReport report = family_cross_check(p, 0, 5);
  EXPECT_EQ(report.rows.size(), 6u);
  EXPECT_TRUE(report.all_equal());

  KahlerFamilyData d = KahlerFamilyData::trivial(ring, 2, 1, 0, 1);
  d.V0 = BundleClass(ring, 2, {ring.one(), t});
  EXPECT_TRUE(family_cross_check(d, 0, 4).all_equal());
  EXPECT_FALSE(family_form(d, 0).has_value());
  EXPECT_EQ(family_name(d), "generic");
}
