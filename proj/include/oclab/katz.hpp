#pragma once

// Katz expansions g = sum_i b_i / E_{p-1}^i for p >= 5, with b_i drawn from
// complements B_i of E_{p-1} M_{(i-1)(p-1)} inside M_{i(p-1)}. B_i is spanned
// by the Miller basis elements of weight i(p-1) whose q-order is at least
// dim M_{(i-1)(p-1)}; that choice makes the expansion triangular.

#include <cstdint>
#include <string>
#include <vector>

#include "oclab/arith.hpp"
#include "oclab/qseries.hpp"

namespace oclab {

// dim M_weight(SL_2(Z)).
std::size_t modular_forms_dim(int weight);

// Echelonized integral basis of M_weight: element j is q^j + O(q^d).
std::vector<QSeries> miller_basis(int weight, std::size_t prec);

// Delta = (E_4^3 - E_6^2) / 1728.
QSeries delta_series(std::size_t prec);

std::vector<QSeries> bi_basis(std::size_t i, std::int64_t p, std::size_t prec);

struct KatzExpansion {
  std::int64_t p = 0;
  std::size_t i_max = 0;
  std::vector<QSeries> b;  // b_0 .. b_{i_max}
  std::string basis_choice;
  // sum b_i E^{-i} agrees with g below this q-index.
  std::size_t justified_prec = 0;
  // q-order of g - sum b_i E^{-i} at the input precision (== input precision
  // if the expansion terminates within i_max).
  std::size_t residual_order = 0;
};

KatzExpansion katz_expand(const QSeries& g, std::int64_t p, std::size_t i_max, std::size_t prec);

std::vector<PadicVal> katz_profile(const KatzExpansion& e);

// sum b_i E_{p-1}^{-i} to precision prec (<= that of the b_i).
QSeries katz_sum(const KatzExpansion& e, std::size_t prec);

// Rank over Q of the matrix whose rows are the first `columns` coefficients.
std::size_t exact_rank(const std::vector<QSeries>& rows, std::size_t columns);

// Rank of E_{p-1} * miller_basis((i-1)(p-1)) together with bi_basis(i),
// compared against dim M_{i(p-1)}.
bool splitting_spans(std::size_t i, std::int64_t p);

}  // namespace oclab
