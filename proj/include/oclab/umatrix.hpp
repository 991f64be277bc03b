#pragma once

// Matrix of U in the f_p basis: U(f^i) = sum_j c_{i,j} f^j for the genus-0
// primes, with the valuation bounds on its entries.

#include <cstdint>
#include <string>
#include <vector>

#include "oclab/arith.hpp"

namespace oclab {

struct UMatrix {
  std::int64_t p = 0;
  std::size_t i_max = 0;
  // rows[i][j] = c_{i,j} for 0 <= j <= i p; rows[0] = {1}.
  std::vector<std::vector<BigInt>> rows;

  // Zero outside the stored window.
  BigInt at(std::size_t i, std::size_t j) const;
};

UMatrix compute_umatrix(std::int64_t p, std::size_t i_max);

// c_{i,j} = 2^12 c_{i-1,j-2} + 2^4 3 c_{i-1,j-1} + c_{i-2,j-1}, seeded with
// c_{0,0} = 1, c_{1,1} = 24, c_{1,2} = 2^11.
UMatrix umatrix_recurrence_p2(std::size_t i_max);

struct EntryCheck {
  std::size_t i;
  std::size_t j;
  BigInt value;
  PadicVal observed;
  PadicVal required;
  bool pass;
};

struct EntryBoundReport {
  std::string name;
  BigRational slope;   // required = slope (p j - i) + offset
  BigRational offset;
  std::vector<EntryCheck> entries;

  bool pass() const;
  const EntryCheck* first_violation() const;
};

// gamma_p = 12 / (p^2 - 1).
BigRational gamma_p(std::int64_t p);
// gamma_p - 1/(p-1): 3 for p = 2, 1 for p = 3.
BigRational star_slope(std::int64_t p);
// (p-1)/12 * star_slope(p), the rate preserved by U; equals 1/(2p) for p = 2, 3.
BigRational star_rate(std::int64_t p);

// (i, j) with c_{i,j} != 0 and j < i/p or j > i p.
std::vector<std::pair<std::size_t, std::size_t>> support_violations(const UMatrix& u);

// v_p(c_{i,j}) >= gamma_p (p j - i) - 1 over ceil(i/p) <= j <= i p.
EntryBoundReport check_general_bound(const UMatrix& u);

// v_p(c_{i,j}) >= (gamma_p - 1/(p-1)) (p j - i). Refused (ParameterError)
// for p outside {2, 3}, where c_{4,1} = 24 at p = 5 already breaks it.
EntryBoundReport check_star_bound(const UMatrix& u);

}  // namespace oclab
