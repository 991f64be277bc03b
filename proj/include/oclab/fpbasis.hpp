#pragma once

// Expansions g = sum a_i f_p^i in the genus-0 uniformizer and the valuation
// bound checker behind every membership claim g in p^c M_0(>= sigma).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "oclab/arith.hpp"
#include "oclab/qseries.hpp"

namespace oclab {

struct FpExpansion {
  std::int64_t p = 0;
  std::size_t max_index = 0;  // M
  std::vector<BigRational> a;  // a_0 .. a_M
  std::size_t source_prec = 0;
};

// The claim v_p(a_i) >= c0 + slope * i for all i >= i0.
struct LinearBound {
  BigRational c0;
  BigRational slope;
  std::size_t i0 = 0;

  PadicVal required(std::size_t i) const;
  std::string describe() const;
};

// g in p^c M_0(>= sigma):  c0 = c, slope = 12/(p-1) sigma.
LinearBound membership_bound(std::int64_t p, const BigRational& c, const BigRational& sigma,
                             std::size_t i0);

// Largest slope for which the f_p criterion is an equivalence:
// 12/(p-1) * p/(p+1).
BigRational max_criterion_slope(std::int64_t p);

struct BoundViolation {
  std::size_t i;
  PadicVal observed;
  PadicVal required;
};

struct BoundReport {
  LinearBound bound;
  std::size_t first = 0;  // checked range [first, last]
  std::size_t last = 0;
  std::vector<PadicVal> observed;  // observed[i - first]
  std::vector<BoundViolation> violations;
  PadicVal min_margin;

  bool pass() const { return violations.empty(); }
  // "certified on [i0, M]" or the first violation.
  std::string summary() const;
};

// Powers f_p^0 .. f_p^M, each to q-precision at least M + 1. Shared cache.
std::shared_ptr<const std::vector<QSeries>> fp_powers(std::int64_t p, std::size_t max_index);

FpExpansion expand_in_fp(const QSeries& g, std::int64_t p, std::size_t max_index);

std::vector<PadicVal> valuation_profile(const FpExpansion& e);

BoundReport check_bound(const FpExpansion& e, const LinearBound& b);

// Formal expansion of numer(f) / denom(f) to index M.
FpExpansion rational_fn_expansion(const std::vector<BigRational>& numer,
                                  const std::vector<BigRational>& denom, std::int64_t p,
                                  std::size_t max_index);

// sum_{i <= M} a_i f_p^i as a q-series to precision M + 1.
QSeries evaluate_fp(const FpExpansion& e);

// The expansion of 1/g from that of g (formal power series inverse).
FpExpansion invert_expansion(const FpExpansion& e);

}  // namespace oclab
