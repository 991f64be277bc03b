#include "oclab/qseries.hpp"

#include <algorithm>
#include <string>

#include "oclab/errors.hpp"
#include "oclab/poly_mul.hpp"

namespace oclab {

namespace {

constexpr std::size_t kRationalSchoolbookLimit = 40;

void require_prec(std::size_t prec) {
  if (prec == 0) {
    throw ParameterError("q-series precision must be >= 1");
  }
}

QSeries padded(const QSeries& a, std::size_t prec) {
  QSeries r(prec);
  for (std::size_t n = 0; n < std::min(prec, a.prec()); ++n) {
    r[n] = a[n];
  }
  return r;
}

BigInt common_denominator(const std::vector<BigRational>& c, std::size_t count) {
  BigInt l = 1;
  for (std::size_t n = 0; n < count; ++n) {
    if (c[n].get_den() != 1) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), mpq_denref(c[n].get_mpq_t()));
    }
  }
  return l;
}

std::vector<BigInt> scaled_integers(const std::vector<BigRational>& c, std::size_t count,
                                    const BigInt& den) {
  std::vector<BigInt> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    if (den == 1) {
      out[n] = c[n].get_num();
    } else {
      out[n] = c[n].get_num() * (den / c[n].get_den());
    }
  }
  return out;
}

}  // namespace

QSeries::QSeries(std::size_t prec) : coeffs_(prec, BigRational(0)) { require_prec(prec); }

QSeries::QSeries(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {
  require_prec(coeffs_.size());
  for (auto& c : coeffs_) {
    c.canonicalize();
  }
}

QSeries QSeries::one(std::size_t prec) {
  QSeries r(prec);
  r[0] = 1;
  return r;
}

QSeries QSeries::from_integers(std::span<const BigInt> coeffs) {
  std::vector<BigRational> c(coeffs.size());
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    c[n] = BigRational(coeffs[n]);
  }
  return QSeries(std::move(c));
}

std::size_t QSeries::order() const {
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (sgn(coeffs_[n]) != 0) {
      return n;
    }
  }
  return coeffs_.size();
}

QSeries QSeries::truncated(std::size_t prec) const {
  require_prec(prec);
  if (prec > coeffs_.size()) {
    throw PrecisionError("cannot truncate a series of precision " +
                         std::to_string(coeffs_.size()) + " to " + std::to_string(prec));
  }
  return QSeries(std::vector<BigRational>(coeffs_.begin(), coeffs_.begin() + prec));
}

QSeries& QSeries::operator+=(const QSeries& other) {
  coeffs_.resize(std::min(prec(), other.prec()));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    coeffs_[n] += other.coeffs_[n];
  }
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
  coeffs_.resize(std::min(prec(), other.prec()));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    coeffs_[n] -= other.coeffs_[n];
  }
  return *this;
}

QSeries& QSeries::operator*=(const BigRational& scalar) {
  for (auto& c : coeffs_) {
    c *= scalar;
  }
  return *this;
}

QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
QSeries operator-(QSeries a) { return a *= BigRational(-1); }
QSeries operator*(QSeries a, const BigRational& scalar) { return a *= scalar; }
QSeries operator*(const BigRational& scalar, QSeries a) { return a *= scalar; }
QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

QSeries mul(const QSeries& a, const QSeries& b) {
  const std::size_t prec = std::min(a.prec(), b.prec());
  if (prec < kRationalSchoolbookLimit) {
    QSeries c(prec);
    for (std::size_t i = 0; i < prec; ++i) {
      if (sgn(a[i]) == 0) {
        continue;
      }
      for (std::size_t j = 0; i + j < prec; ++j) {
        c[i + j] += a[i] * b[j];
      }
    }
    return c;
  }
  // Clear denominators and multiply integer polynomials.
  const BigInt da = common_denominator(a.coeffs(), prec);
  const BigInt db = common_denominator(b.coeffs(), prec);
  const auto ia = scaled_integers(a.coeffs(), prec, da);
  const auto ib = scaled_integers(b.coeffs(), prec, db);
  const auto ic = detail::mul_trunc(ia, ib, prec);
  const BigInt den = da * db;
  std::vector<BigRational> c(prec);
  for (std::size_t n = 0; n < prec; ++n) {
    c[n] = BigRational(ic[n], den);
  }
  return QSeries(std::move(c));
}

QSeries invert(const QSeries& a) {
  if (sgn(a[0]) == 0) {
    throw NonUnitError("invert: constant term is zero");
  }
  const std::size_t target = a.prec();
  if (target <= 2 * kRationalSchoolbookLimit) {
    QSeries b(target);
    const BigRational inv0 = 1 / a[0];
    b[0] = inv0;
    for (std::size_t n = 1; n < target; ++n) {
      BigRational acc = 0;
      for (std::size_t k = 1; k <= n; ++k) {
        acc += a[k] * b[n - k];
      }
      b[n] = -acc * inv0;
    }
    return b;
  }
  // Newton iteration b <- b (2 - a b), doubling the precision each step.
  QSeries b = QSeries::one(1);
  b[0] = 1 / a[0];
  std::size_t prec = 1;
  while (prec < target) {
    const std::size_t next = std::min(2 * prec, target);
    const QSeries bp = padded(b, next);
    QSeries e = mul(a.truncated(next), bp);
    e = -e;
    e[0] += 2;
    b = mul(bp, e);
    prec = next;
  }
  return b;
}

QSeries div_by_order(const QSeries& a, const QSeries& b) {
  const std::size_t ord_b = b.order();
  if (ord_b == b.prec()) {
    throw DegenerateDivisorError("div_by_order: divisor is zero within its precision");
  }
  const std::size_t ord_a = a.order();
  if (ord_a < ord_b) {
    throw NonDivisibleError("div_by_order: ord_q(a) = " + std::to_string(ord_a) +
                            " < ord_q(b) = " + std::to_string(ord_b));
  }
  const std::size_t prec = std::min(a.prec(), b.prec()) - ord_b;
  std::vector<BigRational> num(a.coeffs().begin() + ord_b, a.coeffs().begin() + ord_b + prec);
  std::vector<BigRational> den(b.coeffs().begin() + ord_b, b.coeffs().begin() + ord_b + prec);
  return mul(QSeries(std::move(num)), invert(QSeries(std::move(den))));
}

QSeries pow(const QSeries& a, unsigned n) {
  QSeries result = QSeries::one(a.prec());
  QSeries base = a;
  while (n > 0) {
    if (n & 1U) {
      result = mul(result, base);
    }
    n >>= 1U;
    if (n > 0) {
      base = mul(base, base);
    }
  }
  return result;
}

QSeries apply_U(const QSeries& a, std::int64_t p) {
  require_prime(p);
  const auto step = static_cast<std::size_t>(p);
  const std::size_t prec = (a.prec() + step - 1) / step;
  QSeries r(prec);
  for (std::size_t n = 0; n < prec; ++n) {
    r[n] = a[n * step];
  }
  return r;
}

QSeries apply_V(const QSeries& a, std::int64_t p) {
  require_prime(p);
  const auto step = static_cast<std::size_t>(p);
  QSeries r(step * (a.prec() - 1) + 1);
  for (std::size_t n = 0; n < a.prec(); ++n) {
    r[n * step] = a[n];
  }
  return r;
}

bool is_genus_zero_prime(std::int64_t p) {
  return p == 2 || p == 3 || p == 5 || p == 7 || p == 13;
}

void require_genus_zero_prime(std::int64_t p) {
  if (!is_genus_zero_prime(p)) {
    throw ParameterError("p = " + std::to_string(p) +
                         " is not one of the genus-0 primes 2, 3, 5, 7, 13");
  }
}

QSeries eta_quotient_fp(std::int64_t p, std::size_t prec) {
  require_genus_zero_prime(p);
  require_prec(prec);
  const int e = static_cast<int>(24 / (p - 1));
  const auto step = static_cast<std::size_t>(p);
  // g = prod (1 - q^{pm})^e (1 - q^m)^{-e}, needed to precision prec - 1.
  const std::size_t len = prec - 1;
  std::vector<BigInt> g(len, BigInt(0));
  if (len > 0) {
    g[0] = 1;
  }
  for (std::size_t m = 1; m < len; ++m) {
    for (int r = 0; r < e; ++r) {
      for (std::size_t k = m; k < len; ++k) {
        g[k] += g[k - m];
      }
    }
    const std::size_t pm = step * m;
    if (pm < len) {
      for (int r = 0; r < e; ++r) {
        for (std::size_t k = len - 1; k >= pm; --k) {
          g[k] -= g[k - pm];
        }
      }
    }
  }
  QSeries f(prec);
  for (std::size_t n = 0; n < len; ++n) {
    f[n + 1] = BigRational(g[n]);
  }
  return f;
}

PadicVal min_val(const QSeries& a, std::int64_t p, std::size_t from) {
  if (from >= a.prec()) {
    throw ParameterError("min_val: empty index range [" + std::to_string(from) + ", " +
                         std::to_string(a.prec()) + ")");
  }
  PadicVal best = PadicVal::infinity();
  for (std::size_t n = from; n < a.prec(); ++n) {
    if (sgn(a[n]) != 0) {
      best = min(best, padic_val(a[n], p));
    }
  }
  return best;
}

}  // namespace oclab
