#include "oclab/fpbasis.hpp"

#include <map>
#include <mutex>

#include "oclab/errors.hpp"

namespace oclab {

PadicVal LinearBound::required(std::size_t i) const {
  return PadicVal(BigRational(c0 + slope * static_cast<unsigned long>(i)));
}

std::string LinearBound::describe() const {
  return "v_p(a_i) >= " + to_string(c0) + " + " + to_string(slope) + "*i for i >= " +
         std::to_string(i0);
}

LinearBound membership_bound(std::int64_t p, const BigRational& c, const BigRational& sigma,
                             std::size_t i0) {
  require_prime(p);
  return LinearBound{c, BigRational(make_rational(12, BigInt(static_cast<long>(p - 1))) * sigma),
                     i0};
}

BigRational max_criterion_slope(std::int64_t p) {
  return make_rational(12 * p, BigInt(static_cast<long>((p - 1) * (p + 1))));
}

std::string BoundReport::summary() const {
  if (pass()) {
    return "certified on [" + std::to_string(first) + ", " + std::to_string(last) + "]";
  }
  const auto& v = violations.front();
  return "violated at i = " + std::to_string(v.i) + ": observed " + v.observed.to_string() +
         " < required " + v.required.to_string();
}

std::shared_ptr<const std::vector<QSeries>> fp_powers(std::int64_t p, std::size_t max_index) {
  require_genus_zero_prime(p);
  static std::mutex mutex;
  static std::map<std::int64_t, std::shared_ptr<const std::vector<QSeries>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(p);
  if (it != cache.end() && it->second->size() > max_index) {
    return it->second;
  }
  const std::size_t prec = max_index + 1;
  const QSeries f = eta_quotient_fp(p, prec);
  auto table = std::make_shared<std::vector<QSeries>>();
  table->reserve(prec);
  table->push_back(QSeries::one(prec));
  for (std::size_t j = 1; j <= max_index; ++j) {
    table->push_back(mul(table->back(), f));
  }
  std::shared_ptr<const std::vector<QSeries>> frozen = std::move(table);
  cache[p] = frozen;
  return frozen;
}

FpExpansion expand_in_fp(const QSeries& g, std::int64_t p, std::size_t max_index) {
  require_genus_zero_prime(p);
  if (g.prec() < max_index + 1) {
    throw PrecisionError("expand_in_fp: index " + std::to_string(max_index) +
                         " needs q-precision " + std::to_string(max_index + 1) + ", have " +
                         std::to_string(g.prec()));
  }
  const auto powers = fp_powers(p, max_index);
  // f_p^j = q^j + O(q^{j+1}): the leading coefficient of the residual at q^j
  // is a_j.
  std::vector<BigRational> residual(g.coeffs().begin(), g.coeffs().begin() + max_index + 1);
  FpExpansion e{p, max_index, std::vector<BigRational>(max_index + 1), g.prec()};
  for (std::size_t j = 0; j <= max_index; ++j) {
    const BigRational aj = residual[j];
    e.a[j] = aj;
    if (sgn(aj) == 0) {
      continue;
    }
    const QSeries& fj = (*powers)[j];
    residual[j] = 0;
    for (std::size_t n = j + 1; n <= max_index; ++n) {
      if (sgn(fj[n]) != 0) {
        residual[n] -= aj * fj[n];
      }
    }
  }
  return e;
}

std::vector<PadicVal> valuation_profile(const FpExpansion& e) {
  std::vector<PadicVal> out;
  out.reserve(e.a.size());
  for (const auto& a : e.a) {
    out.push_back(padic_val(a, e.p));
  }
  return out;
}

BoundReport check_bound(const FpExpansion& e, const LinearBound& b) {
  if (b.i0 > e.max_index) {
    throw ParameterError("check_bound: empty range, i0 = " + std::to_string(b.i0) + " > M = " +
                         std::to_string(e.max_index));
  }
  if (b.slope > max_criterion_slope(e.p)) {
    throw OutOfCriterionError("check_bound: slope " + to_string(b.slope) +
                              " exceeds the criterion limit " +
                              to_string(max_criterion_slope(e.p)) + " for p = " +
                              std::to_string(e.p));
  }
  BoundReport r{b, b.i0, e.max_index, {}, {}, PadicVal::infinity()};
  for (std::size_t i = b.i0; i <= e.max_index; ++i) {
    const PadicVal observed = padic_val(e.a[i], e.p);
    const PadicVal required = b.required(i);
    r.observed.push_back(observed);
    if (observed < required) {
      r.violations.push_back({i, observed, required});
    }
    if (observed.is_finite()) {
      r.min_margin = min(r.min_margin, PadicVal(BigRational(observed.value() - required.value())));
    }
  }
  return r;
}

FpExpansion rational_fn_expansion(const std::vector<BigRational>& numer,
                                  const std::vector<BigRational>& denom, std::int64_t p,
                                  std::size_t max_index) {
  require_prime(p);
  const std::size_t prec = max_index + 1;
  auto as_series = [prec](const std::vector<BigRational>& c) {
    QSeries s(prec);
    for (std::size_t n = 0; n < std::min(prec, c.size()); ++n) {
      s[n] = c[n];
    }
    return s;
  };
  if (denom.empty() || sgn(denom[0]) == 0) {
    throw NonUnitError("rational_fn_expansion: denominator has zero constant term");
  }
  const QSeries q = mul(as_series(numer), invert(as_series(denom)));
  return FpExpansion{p, max_index, q.coeffs(), prec};
}

QSeries evaluate_fp(const FpExpansion& e) {
  const auto powers = fp_powers(e.p, e.max_index);
  QSeries out(e.max_index + 1);
  for (std::size_t j = 0; j <= e.max_index; ++j) {
    if (sgn(e.a[j]) == 0) {
      continue;
    }
    for (std::size_t n = j; n <= e.max_index; ++n) {
      out[n] += e.a[j] * (*powers)[j][n];
    }
  }
  return out;
}

FpExpansion invert_expansion(const FpExpansion& e) {
  const QSeries inv = invert(QSeries(e.a));
  return FpExpansion{e.p, e.max_index, inv.coeffs(), e.source_prec};
}

}  // namespace oclab
