#include <gtest/gtest.h>

#include "oclab/errors.hpp"
#include "oclab/fpbasis.hpp"
#include "oclab/umatrix.hpp"

using namespace oclab;

namespace {

BigRational q(long a, long b = 1) { return make_rational(BigInt(a), BigInt(b)); }

std::vector<BigInt> ints(std::initializer_list<const char*> xs) {
  std::vector<BigInt> out;
  for (const char* x : xs) {
    out.emplace_back(x);
  }
  return out;
}

}  // namespace

TEST(UMatrix, FirstRowsP2) {
  const UMatrix u = compute_umatrix(2, 3);
  EXPECT_EQ(u.rows[0], ints({"1"}));
  EXPECT_EQ(u.rows[1], ints({"0", "24", "2048"}));
  EXPECT_EQ(u.rows[2], ints({"0", "1", "1152", "196608", "8388608"}));
  EXPECT_EQ(u.rows[3],
            ints({"0", "0", "72", "61440", "14155776", "1207959552", "34359738368"}));
  EXPECT_EQ(u.at(1, 1), 24);
  EXPECT_EQ(u.at(1, 2), 2048);
  EXPECT_EQ(u.at(1, 3), 0);
  EXPECT_EQ(u.at(9, 9), 0);
}

TEST(UMatrix, WitnessP5) {
  const UMatrix u = compute_umatrix(5, 4);
  EXPECT_EQ(u.at(4, 1), 24);
  EXPECT_EQ(u.at(0, 0), 1);
}

TEST(UMatrix, RowsMatchDirectExpansion) {
  // Row i is the f_p expansion of U(f^i).
  for (std::int64_t p : {3, 7, 13}) {
    const std::size_t i_max = 3;
    const UMatrix u = compute_umatrix(p, i_max);
    const std::size_t M = static_cast<std::size_t>(p) * i_max + 2;
    const QSeries f = eta_quotient_fp(p, static_cast<std::size_t>(p) * M + 1);
    for (std::size_t i = 1; i <= i_max; ++i) {
      const FpExpansion e = expand_in_fp(apply_U(pow(f, static_cast<unsigned>(i)), p), p, M);
      for (std::size_t j = 0; j <= M; ++j) {
        ASSERT_EQ(e.a[j], BigRational(u.at(i, j))) << p << " " << i << " " << j;
      }
    }
  }
}

TEST(UMatrix, RecurrenceOracleP2) {
  const std::size_t i_max = 40;
  const UMatrix direct = compute_umatrix(2, i_max);
  const UMatrix rec = umatrix_recurrence_p2(i_max);
  for (std::size_t i = 0; i <= i_max; ++i) {
    for (std::size_t j = 0; j <= 2 * i + 1; ++j) {
      ASSERT_EQ(direct.at(i, j), rec.at(i, j)) << i << "," << j;
    }
  }
  EXPECT_EQ(rec.at(2, 1), 1);
}

TEST(UMatrix, SupportAndGeneralBound) {
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    const std::size_t i_max = p == 13 ? 15 : 25;
    const UMatrix u = compute_umatrix(p, i_max);
    EXPECT_TRUE(support_violations(u).empty()) << p;
    const EntryBoundReport r = check_general_bound(u);
    EXPECT_TRUE(r.pass()) << p;
    EXPECT_EQ(r.slope, gamma_p(p));
    EXPECT_EQ(r.offset, q(-1));
  }
}

TEST(UMatrix, GeneralBoundEntries) {
  const EntryBoundReport r2 = check_general_bound(compute_umatrix(2, 1));
  bool seen = false;
  for (const auto& e : r2.entries) {
    if (e.i == 1 && e.j == 2) {
      EXPECT_EQ(e.required, PadicVal(11L));
      EXPECT_EQ(e.observed, PadicVal(11L));
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
  const EntryBoundReport r5 = check_general_bound(compute_umatrix(5, 4));
  for (const auto& e : r5.entries) {
    if (e.i == 4 && e.j == 1) {
      EXPECT_EQ(e.required, PadicVal(q(-1, 2)));
      EXPECT_EQ(e.observed, PadicVal(0L));
      EXPECT_TRUE(e.pass);
    }
  }
}

TEST(UMatrix, StarBound) {
  EXPECT_EQ(star_slope(2), q(3));
  EXPECT_EQ(star_slope(3), q(1));
  EXPECT_EQ(star_rate(2), q(1, 4));
  EXPECT_EQ(star_rate(3), q(1, 6));
  const EntryBoundReport r = check_star_bound(compute_umatrix(2, 1));
  ASSERT_TRUE(r.pass());
  for (const auto& e : r.entries) {
    if (e.j == 1) {
      EXPECT_EQ(e.required, PadicVal(3L));
      EXPECT_EQ(e.observed, PadicVal(3L));
    }
    if (e.j == 2) {
      EXPECT_EQ(e.required, PadicVal(9L));
      EXPECT_EQ(e.observed, PadicVal(11L));
    }
  }
  EXPECT_TRUE(check_star_bound(compute_umatrix(2, 25)).pass());
  EXPECT_TRUE(check_star_bound(compute_umatrix(3, 25)).pass());
  try {
    check_star_bound(compute_umatrix(5, 4));
    FAIL() << "star bound accepted for p = 5";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("c_{4,1} = 24"), std::string::npos);
  }
}

TEST(UMatrix, StarBoundReallyFailsAtFive) {
  // The refusal is backed by the data: (gamma_5 - 1/4)(5 - 4) = 1/4 > v_5(24) = 0.
  const UMatrix u = compute_umatrix(5, 4);
  const BigRational required = (gamma_p(5) - q(1, 4)) * 1;
  EXPECT_EQ(required, q(1, 4));
  EXPECT_LT(padic_val(BigRational(u.at(4, 1)), 5), PadicVal(required));
}

TEST(UMatrix, Errors) {
  EXPECT_THROW(compute_umatrix(11, 2), ParameterError);
  EXPECT_THROW(compute_umatrix(2, 0), ParameterError);
  EXPECT_THROW(umatrix_recurrence_p2(0), ParameterError);
}
