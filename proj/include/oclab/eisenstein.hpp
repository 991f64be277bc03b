#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oclab/arith.hpp"
#include "oclab/qseries.hpp"

namespace oclab {

// The auxiliary form F as a product E_a^x * E_b^y of level-one Eisenstein
// series, one recipe per congruence class of (p, k).
struct FRecipe {
  enum class Case {
    P2_K0Mod4,   // E_4^{k/4}
    P2_K2Mod4,   // E_4^{(k-6)/4} E_6
    P3_K0Mod6,   // E_6^{k/6}
    P3_K2Mod6,   // E_8 E_6^{(k-8)/6}
    P3_K4Mod6,   // E_4 E_6^{(k-4)/6}
    PGe5,        // E_{p-1}^{k/(p-1)}
  };
  Case which;
  int first_weight;
  unsigned first_exponent;
  int second_weight;  // 0 when absent
  unsigned second_exponent;

  std::string describe() const;
  // Number of Eisenstein factors counted with multiplicity.
  unsigned factor_count() const { return first_exponent + (second_weight != 0 ? second_exponent : 0); }
  friend bool operator==(const FRecipe&, const FRecipe&) = default;
};

struct Params {
  std::int64_t p;
  int k;
  BigRational rho;
  int t;
  std::optional<int> s;  // only for p in {2, 3}
  FRecipe f_recipe;

  // sigma = t/(t+1) * rho, the rate in the main overconvergence bound.
  BigRational main_rate() const;
};

void require_weight(std::int64_t p, int k);

Params params(std::int64_t p, int k);

// 1 - (2m / B_m) sum sigma_{m-1}(n) q^n + O(q^prec), m even >= 4.
QSeries eisenstein_series(int m, std::size_t prec);

// E*_k = (E_k - p^{k-1} V(E_k)) / (1 - p^{k-1}).
QSeries estar(std::int64_t p, int k, std::size_t prec);

QSeries lift_F(std::int64_t p, int k, std::size_t prec);

// The coefficients of F at the given indices. With at most two Eisenstein
// factors they come from a pointwise convolution of divisor sums, which avoids
// building F up to the largest index; otherwise lift_F is used.
std::vector<BigRational> lift_F_at(std::int64_t p, int k, const std::vector<std::size_t>& indices);

}  // namespace oclab
