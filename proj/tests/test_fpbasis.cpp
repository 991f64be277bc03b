#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oclab/eisenstein.hpp"
#include "oclab/errors.hpp"
#include "oclab/fpbasis.hpp"
#include "oclab/verify.hpp"

using namespace oclab;

namespace {

BigRational q(long a, long b = 1) { return make_rational(BigInt(a), BigInt(b)); }

QSeries e_ratio(int weight, std::int64_t p, std::size_t prec) {
  return ratio_with_frobenius(eisenstein_series(weight, prec), p);
}

}  // namespace

TEST(ExpandInFp, Identity) {
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    const FpExpansion e = expand_in_fp(eta_quotient_fp(p, 4), p, 3);
    EXPECT_EQ(e.a, (std::vector<BigRational>{0, 1, 0, 0}));
    const auto prof = valuation_profile(e);
    EXPECT_TRUE(prof[0].is_infinite());
    EXPECT_EQ(prof[1], PadicVal(0L));
    EXPECT_TRUE(prof[2].is_infinite());
  }
}

TEST(ExpandInFp, E4OverVE4AtTwo) {
  const std::size_t M = 50;
  const FpExpansion e = expand_in_fp(e_ratio(4, 2, M + 1), 2, M);
  EXPECT_EQ(e.a[0], q(1));
  BigInt expect = 240;
  for (std::size_t i = 1; i <= M; ++i) {
    ASSERT_EQ(e.a[i], BigRational(expect)) << i;
    expect *= -16;
  }
  const auto prof = valuation_profile(e);
  for (std::size_t i = 1; i <= M; ++i) {
    EXPECT_EQ(prof[i], PadicVal(static_cast<long>(4 * i)));
  }
  const BoundReport r = check_bound(e, membership_bound(2, 0, q(1, 3), 1));
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.min_margin, PadicVal(0L));
}

TEST(ExpandInFp, GoldenValuesP2K12) {
  const FpExpansion e = expand_in_fp(ratio_with_frobenius(estar(2, 12, 64), 2), 2, 30);
  EXPECT_EQ(padic_val(e.a[2], 2), PadicVal(7L));
  EXPECT_EQ(padic_val(e.a[30], 2), PadicVal(105L));
  const LinearBound b = membership_bound(2, 0, params(2, 12).main_rate(), 1);
  EXPECT_EQ(b.slope, q(10, 3));
  EXPECT_EQ(b.required(2), PadicVal(q(20, 3)));
  EXPECT_EQ(b.required(30), PadicVal(100L));
  EXPECT_TRUE(check_bound(e, b).pass());
}

TEST(ExpandInFp, Errors) {
  EXPECT_THROW(expand_in_fp(QSeries::one(5), 2, 5), PrecisionError);
  EXPECT_THROW(expand_in_fp(QSeries::one(5), 11, 2), ParameterError);
}

TEST(ExpandInFp, TriangularStability) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> num(-1000, 1000);
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<BigRational> c(41);
      for (auto& x : c) {
        x = q(num(rng), 1 + static_cast<long>(rng() % 7));
      }
      const QSeries g(c);
      const FpExpansion full = expand_in_fp(g, p, 40);
      for (std::size_t m : {0U, 1U, 7U, 25U}) {
        const FpExpansion part = expand_in_fp(g.truncated(m + 1), p, m);
        ASSERT_EQ(part.a, std::vector<BigRational>(full.a.begin(), full.a.begin() + m + 1));
      }
    }
  }
}

TEST(ExpandInFp, RoundTrip) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> num(-1000, 1000);
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    std::vector<BigRational> c(31);
    for (auto& x : c) {
      x = q(num(rng), 1 + static_cast<long>(rng() % 5));
    }
    const QSeries g(c);
    ASSERT_EQ(evaluate_fp(expand_in_fp(g, p, 30)), g);
    const QSeries h = ratio_with_frobenius(estar(p, 12, 31), p);
    ASSERT_EQ(evaluate_fp(expand_in_fp(h, p, 30)), h);
  }
}

TEST(RationalFn, Examples) {
  const FpExpansion one = rational_fn_expansion({1}, {1}, 2, 4);
  EXPECT_EQ(one.a, (std::vector<BigRational>{1, 0, 0, 0, 0}));
  const FpExpansion g = rational_fn_expansion({1, 256}, {1, 16}, 2, 3);
  EXPECT_EQ(g.a[0], q(1));
  EXPECT_EQ(g.a[1], q(240));
  EXPECT_EQ(g.a[2], q(-3840));
  EXPECT_THROW(rational_fn_expansion({1}, {0, 1}, 2, 3), NonUnitError);
}

TEST(RationalFn, ClosedFormsMatchQExpansions) {
  const std::size_t M = 50;
  for (std::int64_t p : {2, 3}) {
    for (const auto& form : closed_forms(p)) {
      const FpExpansion lhs = expand_in_fp(e_ratio(form.weight, p, M + 1), p, M);
      const FpExpansion rhs = rational_fn_expansion(form.numer, form.denom, p, M);
      ASSERT_EQ(lhs.a, rhs.a) << "p=" << p << " E_" << form.weight;
    }
  }
}

TEST(RationalFn, UnitCriterion) {
  // Each closed-form function and its inverse satisfy the slope of its unit rate.
  const std::size_t M = 40;
  const std::map<std::pair<std::int64_t, int>, BigRational> slopes = {
      {{2, 4}, q(4)}, {{2, 6}, q(3)}, {{3, 4}, q(1)}, {{3, 6}, q(3, 2)}};
  for (std::int64_t p : {2, 3}) {
    for (const auto& form : closed_forms(p)) {
      const LinearBound b = membership_bound(p, 0, form.unit_rate, 1);
      EXPECT_EQ(b.slope, slopes.at({p, form.weight}));
      const FpExpansion h = expand_in_fp(e_ratio(form.weight, p, M + 1), p, M);
      EXPECT_TRUE(check_bound(h, b).pass()) << p << " E_" << form.weight;
      EXPECT_TRUE(check_bound(invert_expansion(h), b).pass()) << p << " E_" << form.weight;
    }
  }
}

TEST(CheckBound, Behaviour) {
  const FpExpansion f = expand_in_fp(eta_quotient_fp(3, 6), 3, 5);
  EXPECT_TRUE(check_bound(f, LinearBound{0, 0, 0}).pass());
  EXPECT_TRUE(check_bound(f, LinearBound{0, -2, 0}).pass());
  const BoundReport bad = check_bound(f, LinearBound{1, 0, 0});
  EXPECT_FALSE(bad.pass());
  ASSERT_EQ(bad.violations.size(), 1U);
  EXPECT_EQ(bad.violations[0].i, 1U);
  EXPECT_EQ(bad.min_margin, PadicVal(-1L));
  EXPECT_THROW(check_bound(f, LinearBound{0, 0, 6}), ParameterError);
  // the criterion stops at 12/(p-1) * p/(p+1) = 9/2 for p = 3
  EXPECT_EQ(max_criterion_slope(3), q(9, 2));
  EXPECT_NO_THROW(check_bound(f, LinearBound{0, q(9, 2), 1}));
  EXPECT_THROW(check_bound(f, LinearBound{0, q(5), 1}), OutOfCriterionError);
  EXPECT_EQ(check_bound(f, LinearBound{0, 0, 1}).summary(), "certified on [1, 5]");
}

TEST(FpPowers, SharedTableIsConsistent) {
  const auto small = fp_powers(5, 4);
  const auto large = fp_powers(5, 30);
  ASSERT_GE(large->size(), 31U);
  const QSeries f = eta_quotient_fp(5, 31);
  EXPECT_EQ((*large)[3].truncated(31), pow(f, 3));
  EXPECT_EQ((*small)[2].truncated(5), (*large)[2].truncated(5));
}
