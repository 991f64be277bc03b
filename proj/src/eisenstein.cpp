#include "oclab/eisenstein.hpp"

#include <algorithm>

#include "oclab/errors.hpp"

namespace oclab {

std::string FRecipe::describe() const {
  auto factor = [](int weight, unsigned exponent) {
    std::string s = "E_" + std::to_string(weight);
    if (exponent != 1) {
      s += "^" + std::to_string(exponent);
    }
    return s;
  };
  std::string out = factor(first_weight, first_exponent);
  if (second_weight != 0) {
    out += " * " + factor(second_weight, second_exponent);
  }
  return out;
}

BigRational Params::main_rate() const {
  return make_rational(t, t + 1) * rho;
}

void require_weight(std::int64_t p, int k) {
  require_prime(p);
  if (k < 4 || k % 2 != 0) {
    throw ParameterError("k = " + std::to_string(k) + " must be even and >= 4");
  }
  if (k % (p - 1) != 0) {
    throw ParameterError("k = " + std::to_string(k) + " is not divisible by p - 1 = " +
                         std::to_string(p - 1));
  }
}

namespace {

FRecipe recipe_for(std::int64_t p, int k) {
  using Case = FRecipe::Case;
  auto checked = [k](int numerator, int divisor) {
    if (numerator < 0 || numerator % divisor != 0) {
      throw ParameterError("lift_F: negative or fractional exponent for k = " + std::to_string(k));
    }
    return static_cast<unsigned>(numerator / divisor);
  };
  if (p == 2) {
    if (k % 4 == 0) {
      return {Case::P2_K0Mod4, 4, checked(k, 4), 0, 0};
    }
    return {Case::P2_K2Mod4, 4, checked(k - 6, 4), 6, 1};
  }
  if (p == 3) {
    switch (k % 6) {
      case 0:
        return {Case::P3_K0Mod6, 6, checked(k, 6), 0, 0};
      case 2:
        return {Case::P3_K2Mod6, 8, 1, 6, checked(k - 8, 6)};
      default:
        return {Case::P3_K4Mod6, 4, 1, 6, checked(k - 4, 6)};
    }
  }
  const int w = static_cast<int>(p - 1);
  return {Case::PGe5, w, checked(k, w), 0, 0};
}

}  // namespace

Params params(std::int64_t p, int k) {
  require_weight(p, k);
  Params out{p, k, BigRational(0), 0, std::nullopt, recipe_for(p, k)};

  const bool small = p == 2 || p == 3;
  if (!small || k % (2 * p) == 0) {
    out.rho = make_rational(1, BigInt(static_cast<long>(p + 1)));
  } else {
    out.rho = make_rational(1, BigInt(static_cast<long>(2 * p)));
  }

  const auto vk = static_cast<int>(padic_val_int(k, p));
  if (p == 2) {
    out.t = k == 4 ? 3 : 3 + vk;
  } else {
    out.t = 2 + vk;
  }
  if (small) {
    out.s = static_cast<int>(padic_val_int(k / 2, p));
  }
  return out;
}

QSeries eisenstein_series(int m, std::size_t prec) {
  if (m < 4 || m % 2 != 0) {
    throw ParameterError("eisenstein_series: weight " + std::to_string(m) +
                         " must be even and >= 4");
  }
  const BigRational scale = BigRational(-2 * m) / bernoulli(m);
  const auto sigmas = sigma_power_table(static_cast<unsigned>(m - 1), prec);
  QSeries e(prec);
  e[0] = 1;
  for (std::size_t n = 1; n < prec; ++n) {
    e[n] = scale * sigmas[n];
  }
  return e;
}

QSeries estar(std::int64_t p, int k, std::size_t prec) {
  require_weight(p, k);
  const QSeries ek = eisenstein_series(k, prec);
  const BigRational pk1(ipow(BigInt(static_cast<long>(p)), static_cast<unsigned long>(k - 1)));
  const BigRational unit = 1 / (1 - pk1);
  QSeries out = ek;
  const auto step = static_cast<std::size_t>(p);
  for (std::size_t n = 0; n * step < prec; ++n) {
    out[n * step] -= pk1 * ek[n];
  }
  out *= unit;
  return out;
}

QSeries lift_F(std::int64_t p, int k, std::size_t prec) {
  const FRecipe r = params(p, k).f_recipe;
  QSeries f = pow(eisenstein_series(r.first_weight, prec), r.first_exponent);
  if (r.second_weight != 0 && r.second_exponent > 0) {
    f = mul(f, pow(eisenstein_series(r.second_weight, prec), r.second_exponent));
  }
  return f;
}

std::vector<BigRational> lift_F_at(std::int64_t p, int k, const std::vector<std::size_t>& indices) {
  const FRecipe r = params(p, k).f_recipe;
  std::vector<BigRational> out;
  out.reserve(indices.size());
  if (indices.empty()) {
    return out;
  }
  const std::size_t top = *std::max_element(indices.begin(), indices.end()) + 1;
  if (r.factor_count() > 2) {
    const QSeries f = lift_F(p, k, top);
    for (std::size_t m : indices) {
      out.push_back(f[m]);
    }
    return out;
  }

  // F = E_a E_b (or E_a). E_w[n] = c_w sigma_{w-1}(n) for n >= 1.
  std::vector<int> weights;
  for (unsigned e = 0; e < r.first_exponent; ++e) weights.push_back(r.first_weight);
  for (unsigned e = 0; r.second_weight != 0 && e < r.second_exponent; ++e) {
    weights.push_back(r.second_weight);
  }
  auto scale = [](int w) { return BigRational(BigRational(-2 * w) / bernoulli(w)); };
  const BigRational ca = scale(weights[0]);
  const auto sa = sigma_power_table(static_cast<unsigned>(weights[0] - 1), top);
  if (weights.size() == 1) {
    for (std::size_t m : indices) {
      out.push_back(m == 0 ? BigRational(1) : BigRational(ca * sa[m]));
    }
    return out;
  }
  const BigRational cb = scale(weights[1]);
  std::vector<BigInt> sb_storage;
  if (weights[1] != weights[0]) {
    sb_storage = sigma_power_table(static_cast<unsigned>(weights[1] - 1), top);
  }
  const std::vector<BigInt>& sb = weights[1] == weights[0] ? sa : sb_storage;
  const BigRational cab = ca * cb;
  for (std::size_t m : indices) {
    if (m == 0) {
      out.emplace_back(1);
      continue;
    }
    BigInt acc = 0;
    for (std::size_t a = 1; a < m; ++a) {
      mpz_addmul(acc.get_mpz_t(), sa[a].get_mpz_t(), sb[m - a].get_mpz_t());
    }
    out.push_back(ca * sa[m] + cb * sb[m] + cab * acc);
  }
  return out;
}

}  // namespace oclab
