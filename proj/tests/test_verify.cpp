#include <gtest/gtest.h>

#include "oclab/eisenstein.hpp"
#include "oclab/errors.hpp"
#include "oclab/verify.hpp"

using namespace oclab;

namespace {

BigRational q(long a, long b = 1) { return make_rational(BigInt(a), BigInt(b)); }

const ReportRow& row_at(const VerificationReport& r, const std::string& part, std::size_t i) {
  for (const auto& row : r.rows) {
    if (row.part == part && row.i == i) {
      return row;
    }
  }
  throw std::out_of_range("no row " + part + "@" + std::to_string(i));
}

}  // namespace

TEST(MainBound, GoldenP2K12) {
  const auto r = verify_theorem_a(2, 12, 30);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.claim, ClaimId::ThmA);
  EXPECT_EQ(r.rows.size(), 30U);
  EXPECT_EQ(row_at(r, "", 2).observed, PadicVal(7L));
  EXPECT_EQ(row_at(r, "", 2).required, PadicVal(q(20, 3)));
  EXPECT_EQ(row_at(r, "", 2).margin.to_string(), "1/3");
  EXPECT_EQ(row_at(r, "", 30).observed, PadicVal(105L));
  EXPECT_EQ(row_at(r, "", 30).required, PadicVal(100L));
  EXPECT_EQ(r.params.N, 31U);
}

TEST(MainBound, OtherCells) {
  const auto a = verify_theorem_a(3, 6, 20);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(row_at(a, "", 1).required, PadicVal(q(9, 8)));  // (3/2)(3/4)
  const auto b = verify_theorem_a(5, 4, 20);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(row_at(b, "", 3).required, PadicVal(1L));  // slope 1/3
  EXPECT_THROW(verify_theorem_a(2, 12, 30, 20), PrecisionError);
  EXPECT_THROW(verify_theorem_a(11, 10, 5), ParameterError);
  EXPECT_THROW(verify_theorem_a(5, 6, 5), ParameterError);
}

TEST(MainBound, KatzCertifier) {
  const auto r = verify_theorem_a_katz(5, 4, 6);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(row_at(r, "katz", 6).required, PadicVal(q(2, 3)));
  EXPECT_EQ(row_at(r, "round-trip", 3).observed, PadicVal::infinity());
  EXPECT_THROW(verify_theorem_a_katz(3, 4, 2), ParameterError);
}

TEST(Special, Examples) {
  const auto r = verify_special(2, 12, 30);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(row_at(r, "", 30).required, PadicVal(91L));
  EXPECT_EQ(row_at(r, "", 30).observed, PadicVal(105L));
  EXPECT_EQ(row_at(r, "a_0", 0).observed, PadicVal::infinity());

  for (auto [p, k] : std::vector<std::pair<std::int64_t, int>>{{2, 6}, {2, 10}, {3, 4}, {3, 8}, {3, 10}}) {
    const auto s = verify_special(p, k, 10);
    EXPECT_TRUE(s.pass) << p << "," << k;
    EXPECT_NE(s.derived.at("equality_attained_at"), "none") << p << "," << k;
  }
  EXPECT_THROW(verify_special(5, 4, 10), ParameterError);
}

TEST(BoundLines, CrossoverIsExact) {
  for (std::int64_t p : {2, 3}) {
    for (int k = 4; k <= 40; k += 2) {
      const BoundLines b = bound_lines(p, k);
      if (!b.crossover) {
        EXPECT_LE(b.main_slope, b.special_slope);
        continue;
      }
      const BigRational x = *b.crossover;
      EXPECT_EQ(b.special_offset + b.special_slope * x, b.main_slope * x) << p << "," << k;
    }
  }
  const BoundLines l = bound_lines(2, 12);
  EXPECT_EQ(l.main_slope, q(10, 3));
  EXPECT_EQ(l.special_slope, q(3));
  EXPECT_EQ(*l.crossover, q(3));
}

TEST(Congruence, Examples) {
  const auto a = verify_congruence(2, 12, 64);
  EXPECT_TRUE(a.pass);
  for (const auto& row : a.rows) {
    if (row.part != "E*-E_k:k-1") {
      EXPECT_GE(row.observed, PadicVal(5L)) << row.part << row.i;
    }
  }
  EXPECT_TRUE(verify_congruence(5, 4, 64).pass);
  const auto c = verify_congruence(2, 4, 64);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.derived.at("F"), "E_4");
  EXPECT_EQ(row_at(c, "U^i(F)-F", 4).required, PadicVal(3L));
}

TEST(Identities, BothPrimes) {
  for (std::int64_t p : {2, 3}) {
    const auto r = verify_identities_21(p, 200);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.rows.size(), 2U);
  }
  EXPECT_THROW(verify_identities_21(5, 50), ParameterError);
}

TEST(Identities, WrongSignIsDetected) {
  // E_6 with +504 breaks the p = 2 identity.
  QSeries e6 = eisenstein_series(6, 60);
  for (std::size_t n = 1; n < 60; ++n) {
    e6[n] = -e6[n];
  }
  const auto forms = closed_forms(2);
  const QSeries f = eta_quotient_fp(2, 60);
  const QSeries rhs = mul(QSeries::one(60) + f * forms[1].numer[1],
                          invert(QSeries::one(60) + f * forms[1].denom[1]));
  EXPECT_NE(ratio_with_frobenius(e6, 2), rhs);
  EXPECT_EQ(ratio_with_frobenius(eisenstein_series(6, 60), 2), rhs);
}

TEST(CorUF, Examples) {
  const auto a = verify_cor_UF_F(2, 4, 20);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(row_at(a, "", 1).required, PadicVal(7L));  // -1 + 8
  const auto b = verify_cor_UF_F(3, 6, 20);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(row_at(b, "", 2).required, PadicVal(8L));  // -1 + 9/2 * 2
}

TEST(LemmaUi, Examples) {
  EXPECT_TRUE(verify_lemma_ui(2, 12, 4, 15).pass);
  EXPECT_TRUE(verify_lemma_ui(5, 8, 3, 10).pass);
  const auto vacuous = verify_lemma_ui(3, 6, 1, 5);
  EXPECT_TRUE(vacuous.pass);
  EXPECT_TRUE(vacuous.rows.empty());
  EXPECT_THROW(verify_lemma_ui(2, 12, 4, 15, 100), PrecisionError);
}

TEST(EsVsF, Examples) {
  EXPECT_TRUE(verify_prop_es_vs_f(2, 12, 20).pass);
  const auto r = verify_prop_es_vs_f(3, 4, 20);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(row_at(r, "E*/F", 1).required, PadicVal(2L));   // -1 + 3
  EXPECT_EQ(row_at(r, "F/E*", 3).required, PadicVal(6L));   // 2 * 3
  EXPECT_EQ(row_at(r, "E*/F:a_0", 0).observed, PadicVal::infinity());
}

TEST(Serre, Examples) {
  const auto a = verify_serre_convergence(2, 12, 6, 256);
  EXPECT_TRUE(a.pass);
  EXPECT_GE(row_at(a, "m_0>=t", 0).observed, PadicVal(5L));
  const auto b = verify_serre_convergence(7, 6, 4, 2 * 2401);
  EXPECT_TRUE(b.pass);
  EXPECT_THROW(verify_serre_convergence(7, 6, 4, 686), PrecisionError);
  EXPECT_THROW(verify_serre_convergence(13, 12, 1, 100), ParameterError);
}

TEST(UMatrixReports, GeneralAndStar) {
  const auto g = verify_umatrix_general(2, 10);
  EXPECT_TRUE(g.pass);
  EXPECT_EQ(row_at(g, "recurrence", 10).observed, PadicVal::infinity());
  EXPECT_TRUE(verify_umatrix_star(3, 10).pass);
  EXPECT_THROW(verify_umatrix_star(5, 4), ParameterError);
  EXPECT_TRUE(verify_umatrix_general(5, 4).pass);
}

TEST(Sweep, DeterministicAndSorted) {
  std::vector<SweepCell> cells = {{SweepClaim::Special, 3, 8},
                                  {SweepClaim::ThmA, 2, 12},
                                  {SweepClaim::ThmA, 2, 7},
                                  {SweepClaim::Identities, 2, 12},
                                  {SweepClaim::Identities, 2, 4},
                                  {SweepClaim::ThmA, 5, 4}};
  SweepOptions opt;
  opt.M = 10;
  const auto one = run_sweep(cells, opt, 1);
  const auto four = run_sweep(cells, opt, 4);
  ASSERT_EQ(one.size(), 4U);  // odd k skipped, identity cells merged
  EXPECT_EQ(one, four);
  EXPECT_EQ(one[0].claim, ClaimId::ThmA);
  EXPECT_EQ(one[0].params.p, 2);
  EXPECT_EQ(one[1].params.p, 5);
  EXPECT_EQ(one[2].claim, ClaimId::PropSpecial);
  EXPECT_EQ(one[3].claim, ClaimId::Identities21);
  EXPECT_EQ(parse_sweep_claim("umatrix-star"), SweepClaim::UmatrixStar);
  EXPECT_EQ(to_string(SweepClaim::EsVsF), "es-vs-f");
  EXPECT_THROW(parse_sweep_claim("nope"), ParameterError);
}

TEST(Reports, RequiredColumnIndependentOfObservations) {
  // Re-running gives bit-identical reports.
  EXPECT_EQ(verify_theorem_a(3, 10, 15), verify_theorem_a(3, 10, 15));
  EXPECT_EQ(verify_congruence(7, 12, 30), verify_congruence(7, 12, 30));
}
