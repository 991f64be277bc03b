#include "oclab/umatrix.hpp"

#include "oclab/errors.hpp"
#include "oclab/fpbasis.hpp"
#include "oclab/qseries.hpp"

namespace oclab {

BigInt UMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows.size() || j >= rows[i].size()) {
    return 0;
  }
  return rows[i][j];
}

UMatrix compute_umatrix(std::int64_t p, std::size_t i_max) {
  require_genus_zero_prime(p);
  if (i_max < 1) {
    throw ParameterError("compute_umatrix: i_max must be >= 1");
  }
  const auto step = static_cast<std::size_t>(p);
  // One index past the last row's support, so every row has a residual to check.
  const std::size_t last_index = step * i_max + 1;
  const std::size_t prec = step * last_index + 1;

  UMatrix u{p, i_max, {{BigInt(1)}}};
  const QSeries f = eta_quotient_fp(p, prec);
  QSeries power = QSeries::one(prec);
  for (std::size_t i = 1; i <= i_max; ++i) {
    power = mul(power, f);
    const FpExpansion e = expand_in_fp(apply_U(power, p), p, last_index);
    std::vector<BigInt> row(i * step + 1);
    for (std::size_t j = 0; j <= last_index; ++j) {
      const BigRational& c = e.a[j];
      if (c.get_den() != 1) {
        throw ConsistencyError("compute_umatrix: c_{" + std::to_string(i) + "," +
                               std::to_string(j) + "} = " + to_string(c) + " is not an integer");
      }
      if (j > i * step) {
        if (sgn(c) != 0) {
          throw ConsistencyError("compute_umatrix: nonzero residual c_{" + std::to_string(i) +
                                 "," + std::to_string(j) + "} past j = ip");
        }
        continue;
      }
      row[j] = c.get_num();
    }
    u.rows.push_back(std::move(row));
  }
  return u;
}

UMatrix umatrix_recurrence_p2(std::size_t i_max) {
  if (i_max < 1) {
    throw ParameterError("umatrix_recurrence_p2: i_max must be >= 1");
  }
  UMatrix u{2, i_max, {{BigInt(1)}, {BigInt(0), BigInt(24), BigInt(2048)}}};
  const BigInt c_shift2 = 4096;
  const BigInt c_shift1 = 48;
  for (std::size_t i = 2; i <= i_max; ++i) {
    std::vector<BigInt> row(2 * i + 1);
    for (std::size_t j = 1; j <= 2 * i; ++j) {
      BigInt c = c_shift1 * u.at(i - 1, j - 1) + u.at(i - 2, j - 1);
      if (j >= 2) {
        c += c_shift2 * u.at(i - 1, j - 2);
      }
      row[j] = c;
    }
    u.rows.push_back(std::move(row));
  }
  return u;
}

bool EntryBoundReport::pass() const { return first_violation() == nullptr; }

const EntryCheck* EntryBoundReport::first_violation() const {
  for (const auto& e : entries) {
    if (!e.pass) {
      return &e;
    }
  }
  return nullptr;
}

BigRational gamma_p(std::int64_t p) {
  return make_rational(12, BigInt(static_cast<long>(p * p - 1)));
}

BigRational star_slope(std::int64_t p) {
  return gamma_p(p) - make_rational(1, BigInt(static_cast<long>(p - 1)));
}

BigRational star_rate(std::int64_t p) {
  return make_rational(BigInt(static_cast<long>(p - 1)), 12) * star_slope(p);
}

std::vector<std::pair<std::size_t, std::size_t>> support_violations(const UMatrix& u) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto step = static_cast<std::size_t>(u.p);
  for (std::size_t i = 0; i < u.rows.size(); ++i) {
    for (std::size_t j = 0; j < u.rows[i].size(); ++j) {
      const bool inside = j * step >= i && j <= i * step;
      if (!inside && sgn(u.rows[i][j]) != 0) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

namespace {

EntryBoundReport check_entries(const UMatrix& u, std::string name, const BigRational& slope,
                               const BigRational& offset) {
  EntryBoundReport r{std::move(name), slope, offset, {}};
  const auto step = static_cast<std::size_t>(u.p);
  for (std::size_t i = 1; i < u.rows.size(); ++i) {
    const std::size_t j_min = (i + step - 1) / step;
    for (std::size_t j = j_min; j <= i * step; ++j) {
      const BigInt c = u.at(i, j);
      const long weight = static_cast<long>(step * j) - static_cast<long>(i);
      const PadicVal required(BigRational(slope * weight + offset));
      const PadicVal observed = padic_val(BigRational(c), u.p);
      r.entries.push_back({i, j, c, observed, required, !(observed < required)});
    }
  }
  return r;
}

}  // namespace

EntryBoundReport check_general_bound(const UMatrix& u) {
  return check_entries(u, "general", gamma_p(u.p), BigRational(-1));
}

EntryBoundReport check_star_bound(const UMatrix& u) {
  if (u.p != 2 && u.p != 3) {
    throw ParameterError(
        "bound (*) v_p(c_{i,j}) >= (gamma_p - 1/(p-1))(pj - i) is only valid for p = 2, 3; "
        "it fails for p = 5, 7, 13 (witness p = 5: c_{4,1} = 24 has v_5 = 0 but the bound "
        "requires 1/4)");
  }
  return check_entries(u, "star", star_slope(u.p), BigRational(0));
}

}  // namespace oclab
