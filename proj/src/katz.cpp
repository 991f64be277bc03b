#include "oclab/katz.hpp"

#include <algorithm>

#include "oclab/eisenstein.hpp"
#include "oclab/errors.hpp"

namespace oclab {

namespace {

void require_katz_prime(std::int64_t p) {
  require_prime(p);
  if (p < 5) {
    throw ParameterError("Katz expansions need p >= 5 (E_{p-1} is not classical for p = " +
                         std::to_string(p) + ")");
  }
}

}  // namespace

std::size_t modular_forms_dim(int weight) {
  if (weight < 0 || weight % 2 != 0) {
    return 0;
  }
  const auto base = static_cast<std::size_t>(weight / 12);
  return weight % 12 == 2 ? base : base + 1;
}

QSeries delta_series(std::size_t prec) {
  const QSeries e4 = eisenstein_series(4, prec);
  const QSeries e6 = eisenstein_series(6, prec);
  return (pow(e4, 3) - pow(e6, 2)) * make_rational(1, 1728);
}

std::vector<QSeries> miller_basis(int weight, std::size_t prec) {
  if (weight < 0 || weight % 2 != 0) {
    throw ParameterError("miller_basis: weight " + std::to_string(weight) +
                         " must be even and >= 0");
  }
  const std::size_t d = modular_forms_dim(weight);
  if (prec < d) {
    throw PrecisionError("miller_basis: weight " + std::to_string(weight) +
                         " needs q-precision >= " + std::to_string(d));
  }
  std::vector<QSeries> basis;
  if (d == 0) {
    return basis;
  }
  const QSeries e4 = eisenstein_series(4, prec);
  const QSeries e6 = eisenstein_series(6, prec);
  const QSeries delta = delta_series(prec);
  for (std::size_t j = 0; j < d; ++j) {
    // Delta^j E_4^a E_6^b with 4a + 6b = weight - 12 j has q-order exactly j.
    const int rest = weight - 12 * static_cast<int>(j);
    const unsigned b = rest % 4 == 0 ? 0 : 1;
    const auto a = static_cast<unsigned>((rest - 6 * static_cast<int>(b)) / 4);
    basis.push_back(mul(mul(pow(delta, static_cast<unsigned>(j)), pow(e4, a)), pow(e6, b)));
  }
  for (std::size_t j = d - 1; j-- > 0;) {
    for (std::size_t l = j + 1; l < d; ++l) {
      const BigRational c = basis[j][l];
      if (sgn(c) != 0) {
        basis[j] -= basis[l] * c;
      }
    }
  }
  return basis;
}

std::vector<QSeries> bi_basis(std::size_t i, std::int64_t p, std::size_t prec) {
  require_katz_prime(p);
  if (i == 0) {
    return {QSeries::one(prec)};
  }
  const int weight = static_cast<int>(i) * static_cast<int>(p - 1);
  const std::size_t lower = modular_forms_dim(weight - static_cast<int>(p - 1));
  std::vector<QSeries> full = miller_basis(weight, prec);
  return std::vector<QSeries>(full.begin() + static_cast<std::ptrdiff_t>(lower), full.end());
}

KatzExpansion katz_expand(const QSeries& g, std::int64_t p, std::size_t i_max, std::size_t prec) {
  require_katz_prime(p);
  const int step = static_cast<int>(p - 1);
  const std::size_t d_top = modular_forms_dim(static_cast<int>(i_max) * step);
  if (g.prec() < d_top) {
    throw PrecisionError("katz_expand: i_max = " + std::to_string(i_max) +
                         " needs input q-precision >= " + std::to_string(d_top) + ", have " +
                         std::to_string(g.prec()));
  }
  const std::size_t work = g.prec();
  const std::size_t out_prec = std::max({prec, d_top, work});

  const QSeries e = eisenstein_series(step, work);
  const QSeries e_inv = invert(e);

  KatzExpansion out;
  out.p = p;
  out.i_max = i_max;
  out.basis_choice = "Miller basis of weight i(p-1), q-order >= dim M_{(i-1)(p-1)}";
  out.justified_prec = d_top;

  QSeries residual = g;
  QSeries e_pow = QSeries::one(work);
  QSeries e_inv_pow = QSeries::one(work);
  std::size_t d_prev = 0;
  for (std::size_t i = 0; i <= i_max; ++i) {
    const std::size_t d_i = modular_forms_dim(static_cast<int>(i) * step);
    const QSeries scaled = mul(residual, e_pow);
    for (std::size_t n = 0; n < std::min(d_prev, work); ++n) {
      if (sgn(scaled[n]) != 0) {
        throw ConsistencyError("katz_expand: residual not divisible at stage " +
                               std::to_string(i));
      }
    }
    const auto basis = bi_basis(i, p, out_prec);
    QSeries bi(out_prec);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const BigRational c = scaled[d_prev + j];
      if (sgn(c) != 0) {
        bi += basis[j] * c;
      }
    }
    residual -= mul(bi.truncated(work), e_inv_pow);
    out.b.push_back(std::move(bi));
    e_pow = mul(e_pow, e);
    e_inv_pow = mul(e_inv_pow, e_inv);
    d_prev = d_i;
  }
  out.residual_order = residual.order();
  return out;
}

std::vector<PadicVal> katz_profile(const KatzExpansion& e) {
  std::vector<PadicVal> out;
  out.reserve(e.b.size());
  for (const auto& b : e.b) {
    out.push_back(min_val(b, e.p, 0));
  }
  return out;
}

QSeries katz_sum(const KatzExpansion& e, std::size_t prec) {
  const QSeries e_inv = invert(eisenstein_series(static_cast<int>(e.p - 1), prec));
  QSeries sum(prec);
  QSeries e_inv_pow = QSeries::one(prec);
  for (const auto& b : e.b) {
    sum += mul(b.truncated(prec), e_inv_pow);
    e_inv_pow = mul(e_inv_pow, e_inv);
  }
  return sum;
}

std::size_t exact_rank(const std::vector<QSeries>& rows, std::size_t columns) {
  std::vector<std::vector<BigRational>> m;
  for (const auto& r : rows) {
    if (r.prec() < columns) {
      throw PrecisionError("exact_rank: row shorter than column count");
    }
    m.emplace_back(r.coeffs().begin(), r.coeffs().begin() + columns);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < columns && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && sgn(m[pivot][col]) == 0) {
      ++pivot;
    }
    if (pivot == m.size()) {
      continue;
    }
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (sgn(m[r][col]) == 0) {
        continue;
      }
      const BigRational factor = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < columns; ++c) {
        m[r][c] -= factor * m[rank][c];
      }
    }
    ++rank;
  }
  return rank;
}

bool splitting_spans(std::size_t i, std::int64_t p) {
  require_katz_prime(p);
  if (i == 0) {
    return true;
  }
  const int step = static_cast<int>(p - 1);
  const int weight = static_cast<int>(i) * step;
  const std::size_t d = modular_forms_dim(weight);
  const std::size_t prec = d + 1;
  const QSeries e = eisenstein_series(step, prec);
  std::vector<QSeries> rows;
  for (const auto& m : miller_basis(weight - step, prec)) {
    rows.push_back(mul(e, m));
  }
  for (auto& b : bi_basis(i, p, prec)) {
    rows.push_back(std::move(b));
  }
  return rows.size() == d && exact_rank(rows, d) == d;
}

}  // namespace oclab
