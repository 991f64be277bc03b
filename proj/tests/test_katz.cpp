#include <gtest/gtest.h>

#include "oclab/eisenstein.hpp"
#include "oclab/errors.hpp"
#include "oclab/fpbasis.hpp"
#include "oclab/katz.hpp"
#include "oclab/verify.hpp"

using namespace oclab;

namespace {

BigRational q(long a, long b = 1) { return make_rational(BigInt(a), BigInt(b)); }

// Delta from its product q prod (1 - q^n)^24.
QSeries delta_product(std::size_t prec) {
  std::vector<BigInt> g(prec - 1, BigInt(0));
  g[0] = 1;
  for (std::size_t m = 1; m < g.size(); ++m) {
    for (int r = 0; r < 24; ++r) {
      for (std::size_t k = g.size() - 1; k >= m; --k) {
        g[k] -= g[k - m];
      }
    }
  }
  QSeries d(prec);
  for (std::size_t n = 0; n < g.size(); ++n) {
    d[n + 1] = BigRational(g[n]);
  }
  return d;
}

void expect_profile_at_least(const KatzExpansion& e, const BigRational& c0,
                             const BigRational& sigma) {
  const auto prof = katz_profile(e);
  for (std::size_t i = 0; i < prof.size(); ++i) {
    EXPECT_GE(prof[i], PadicVal(BigRational(c0 + sigma * static_cast<long>(i))))
        << "p=" << e.p << " i=" << i;
  }
}

}  // namespace

TEST(Miller, Dimensions) {
  EXPECT_EQ(modular_forms_dim(0), 1U);
  EXPECT_EQ(modular_forms_dim(2), 0U);
  EXPECT_EQ(modular_forms_dim(4), 1U);
  EXPECT_EQ(modular_forms_dim(12), 2U);
  EXPECT_EQ(modular_forms_dim(14), 1U);
  EXPECT_EQ(modular_forms_dim(24), 3U);
}

TEST(Miller, Bases) {
  const auto b0 = miller_basis(0, 6);
  ASSERT_EQ(b0.size(), 1U);
  EXPECT_EQ(b0[0], QSeries::one(6));
  const auto b4 = miller_basis(4, 6);
  ASSERT_EQ(b4.size(), 1U);
  EXPECT_EQ(b4[0], eisenstein_series(4, 6));
  const auto b12 = miller_basis(12, 30);
  ASSERT_EQ(b12.size(), 2U);
  EXPECT_EQ(b12[0][0], q(1));
  EXPECT_EQ(b12[0][1], q(0));
  EXPECT_EQ(b12[1][0], q(0));
  EXPECT_EQ(b12[1][1], q(1));
  EXPECT_EQ(b12[1], delta_product(30));
  EXPECT_EQ(b12[1][2], q(-24));
  EXPECT_THROW(miller_basis(5, 4), ParameterError);
  EXPECT_THROW(miller_basis(24, 2), PrecisionError);
}

TEST(Miller, EchelonAndIntegral) {
  for (int w = 0; w <= 120; w += 2) {
    const std::size_t d = modular_forms_dim(w);
    const auto basis = miller_basis(w, d + 10);
    ASSERT_EQ(basis.size(), d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t n = 0; n < d; ++n) {
        ASSERT_EQ(basis[j][n], q(n == j ? 1 : 0)) << w << " " << j << " " << n;
      }
      for (std::size_t n = 0; n < basis[j].prec(); ++n) {
        ASSERT_EQ(basis[j][n].get_den(), 1) << w << " " << j << " " << n;
      }
    }
  }
}

TEST(BiBasis, Sizes) {
  EXPECT_TRUE(bi_basis(1, 5, 10).empty());
  const auto b3 = bi_basis(3, 5, 10);
  ASSERT_EQ(b3.size(), 1U);
  EXPECT_EQ(b3[0].order(), 1U);
  const auto b13 = bi_basis(1, 13, 10);
  ASSERT_EQ(b13.size(), 1U);
  EXPECT_EQ(b13[0].order(), 1U);
  EXPECT_EQ(bi_basis(0, 7, 5), std::vector<QSeries>{QSeries::one(5)});
  EXPECT_THROW(bi_basis(1, 3, 10), ParameterError);
}

TEST(BiBasis, SplittingRank) {
  for (std::int64_t p : {5, 7, 13}) {
    for (std::size_t i = 0; i <= 6; ++i) {
      EXPECT_TRUE(splitting_spans(i, p)) << "p=" << p << " i=" << i;
    }
  }
  // the rank helper itself
  const QSeries a = eisenstein_series(4, 5);
  EXPECT_EQ(exact_rank({a, a * q(3)}, 5), 1U);
  EXPECT_EQ(exact_rank({a, eisenstein_series(6, 5)}, 5), 2U);
}

TEST(KatzExpand, One) {
  const KatzExpansion e = katz_expand(QSeries::one(20), 7, 5, 20);
  ASSERT_EQ(e.b.size(), 6U);
  EXPECT_EQ(e.b[0], QSeries::one(e.b[0].prec()));
  const auto prof = katz_profile(e);
  EXPECT_EQ(prof[0], PadicVal(0L));
  for (std::size_t i = 1; i <= 5; ++i) {
    EXPECT_TRUE(e.b[i].is_zero());
    EXPECT_TRUE(prof[i].is_infinite());
  }
}

TEST(KatzExpand, RoundTrip) {
  for (std::int64_t p : {5, 7, 13}) {
    for (std::size_t i_max : {1U, 3U, 6U}) {
      const std::size_t d = modular_forms_dim(static_cast<int>(i_max * (p - 1)));
      const QSeries g = ratio_with_frobenius(estar(p, static_cast<int>(p - 1), d + 5), p);
      const KatzExpansion e = katz_expand(g, p, i_max, d + 5);
      EXPECT_EQ(e.justified_prec, d);
      EXPECT_EQ(katz_sum(e, d), g.truncated(d)) << p << " " << i_max;
      EXPECT_GE(e.residual_order, d);
      for (std::size_t i = 1; i <= i_max; ++i) {
        // b_i lies in B_i: its coefficients below dim M_{(i-1)(p-1)} vanish
        const std::size_t lower = modular_forms_dim(static_cast<int>((i - 1) * (p - 1)));
        for (std::size_t n = 0; n < lower; ++n) {
          ASSERT_EQ(e.b[i][n], q(0));
        }
      }
    }
  }
}

TEST(KatzExpand, ExactModularFormRatio) {
  // A finite Katz sum is recovered exactly.
  const std::int64_t p = 5;
  const QSeries e4 = eisenstein_series(4, 40);
  const QSeries b3 = bi_basis(3, p, 40)[0] * q(25);
  const QSeries g = QSeries::one(40) + mul(b3, invert(pow(e4, 3)));
  const KatzExpansion e = katz_expand(g, p, 6, 40);
  EXPECT_EQ(e.b[3], b3);
  EXPECT_TRUE(e.b[1].is_zero());
  EXPECT_TRUE(e.b[2].is_zero());
  EXPECT_TRUE(e.b[4].is_zero());
  EXPECT_EQ(e.residual_order, 40U);
}

TEST(KatzExpand, ColemanWanProfile) {
  // E_{p-1}/V(E_{p-1}) is a unit in M_0(>= 1/(p+1)).
  for (std::int64_t p : {5, 7, 13}) {
    const std::size_t i_max = 6;
    const std::size_t d = modular_forms_dim(static_cast<int>(i_max * (p - 1)));
    const QSeries g = ratio_with_frobenius(eisenstein_series(static_cast<int>(p - 1), d), p);
    expect_profile_at_least(katz_expand(g, p, i_max, d), 0, q(1, p + 1));
  }
}

TEST(KatzExpand, EstarOverF) {
  for (auto [p, k] : std::vector<std::pair<std::int64_t, int>>{{5, 4}, {7, 6}, {13, 12}}) {
    const std::size_t i_max = 6;
    const std::size_t d = modular_forms_dim(static_cast<int>(i_max * (p - 1)));
    const QSeries g = mul(estar(p, k, d), invert(lift_F(p, k, d)));
    const Params prm = params(p, k);
    expect_profile_at_least(katz_expand(g, p, i_max, d), -1, BigRational(p * prm.rho));
  }
}

TEST(KatzExpand, CrossCertifierAgreesWithFp) {
  // Both certifiers confirm the main rate on their checked ranges; the largest
  // certified rate from each is at least the claimed one.
  for (auto [p, k] : std::vector<std::pair<std::int64_t, int>>{{5, 4}, {7, 6}}) {
    const BigRational sigma = params(p, k).main_rate();
    const std::size_t i_max = 12;
    const auto katz = verify_theorem_a_katz(p, k, i_max);
    const auto fp = verify_theorem_a(p, k, i_max);
    EXPECT_TRUE(katz.pass);
    EXPECT_TRUE(fp.pass);
    const KatzExpansion e = katz_expand(
        ratio_with_frobenius(estar(p, k, 40), p), p, i_max, 40);
    const auto kprof = katz_profile(e);
    const auto fprof =
        valuation_profile(expand_in_fp(ratio_with_frobenius(estar(p, k, i_max + 1), p), p, i_max));
    for (std::size_t i = 1; i <= i_max; ++i) {
      const BigRational scale = make_rational(BigInt(static_cast<long>(p - 1)), BigInt(12));
      if (kprof[i].is_finite()) {
        EXPECT_GE(BigRational(kprof[i].value() / static_cast<long>(i)), sigma);
      }
      if (fprof[i].is_finite()) {
        EXPECT_GE(BigRational(scale * fprof[i].value() / static_cast<long>(i)), sigma);
      }
    }
  }
}

TEST(KatzExpand, Errors) {
  EXPECT_THROW(katz_expand(QSeries::one(3), 2, 1, 3), ParameterError);
  EXPECT_THROW(katz_expand(QSeries::one(2), 5, 20, 2), PrecisionError);
}
