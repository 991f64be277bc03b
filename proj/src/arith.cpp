#include "oclab/arith.hpp"

#include <mutex>
#include <stdexcept>

#include "oclab/errors.hpp"

namespace oclab {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw ParameterError("rational with zero denominator");
  }
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

BigRational parse_rational(const std::string& text) {
  BigRational r;
  if (r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw ParameterError("not a rational number: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

std::string to_string(const BigRational& x) { return x.get_str(10); }

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) {
    return false;
  }
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) {
    throw ParameterError("p = " + std::to_string(p) + " is not prime");
  }
}

// ---------------------------------------------------------------------------

const BigRational& PadicVal::value() const {
  if (infinite_) {
    throw std::logic_error("value() of an infinite valuation");
  }
  return value_;
}

std::string PadicVal::to_string() const {
  return infinite_ ? std::string("inf") : oclab::to_string(value_);
}

PadicVal PadicVal::parse(const std::string& text) {
  if (text == "inf") {
    return infinity();
  }
  return PadicVal(parse_rational(text));
}

PadicVal operator+(const PadicVal& a, const PadicVal& b) {
  if (a.infinite_ || b.infinite_) {
    return PadicVal::infinity();
  }
  return PadicVal(BigRational(a.value_ + b.value_));
}

bool operator==(const PadicVal& a, const PadicVal& b) {
  if (a.infinite_ || b.infinite_) {
    return a.infinite_ == b.infinite_;
  }
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const PadicVal& a, const PadicVal& b) {
  if (a.infinite_ || b.infinite_) {
    return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
  }
  return cmp(a.value_, b.value_) <=> 0;
}

PadicVal min(const PadicVal& a, const PadicVal& b) { return b < a ? b : a; }

// ---------------------------------------------------------------------------

ExtRational ExtRational::pos_inf() {
  ExtRational r;
  r.kind_ = Kind::PosInf;
  return r;
}

ExtRational ExtRational::neg_inf() {
  ExtRational r;
  r.kind_ = Kind::NegInf;
  return r;
}

const BigRational& ExtRational::value() const {
  if (kind_ != Kind::Finite) {
    throw std::logic_error("value() of an infinite extended rational");
  }
  return value_;
}

std::string ExtRational::to_string() const {
  switch (kind_) {
    case Kind::PosInf:
      return "inf";
    case Kind::NegInf:
      return "-inf";
    case Kind::Finite:
      break;
  }
  return oclab::to_string(value_);
}

ExtRational ExtRational::parse(const std::string& text) {
  if (text == "inf") {
    return pos_inf();
  }
  if (text == "-inf") {
    return neg_inf();
  }
  return ExtRational(parse_rational(text));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) {
    return false;
  }
  return a.kind_ != ExtRational::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) {
    return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  }
  if (a.kind_ != ExtRational::Kind::Finite) {
    return std::strong_ordering::equal;
  }
  return cmp(a.value_, b.value_) <=> 0;
}

ExtRational margin(const PadicVal& observed, const PadicVal& required) {
  if (required.is_infinite()) {
    return observed.is_infinite() ? ExtRational(BigRational(0)) : ExtRational::neg_inf();
  }
  if (observed.is_infinite()) {
    return ExtRational::pos_inf();
  }
  return ExtRational(BigRational(observed.value() - required.value()));
}

// ---------------------------------------------------------------------------

namespace {

long remove_factor(const BigInt& n, std::int64_t p) {
  BigInt rest;
  BigInt prime(static_cast<long>(p));
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

}  // namespace

PadicVal padic_val(const BigRational& x, std::int64_t p) {
  require_prime(p);
  if (x == 0) {
    return PadicVal::infinity();
  }
  return PadicVal(remove_factor(x.get_num(), p) - remove_factor(x.get_den(), p));
}

std::int64_t padic_val_int(std::int64_t n, std::int64_t p) {
  require_prime(p);
  if (n == 0) {
    throw ParameterError("padic_val_int of zero");
  }
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

BigRational bernoulli(int m) {
  if (m < 0 || m % 2 != 0) {
    throw ParameterError("bernoulli: m = " + std::to_string(m) + " must be even and >= 0");
  }
  static std::mutex mutex;
  // All B_0..B_n with the B_1 = -1/2 convention, so the recurrence
  // sum_{j<=n} C(n+1, j) B_j = 0 closes.
  static std::vector<BigRational> table{BigRational(1)};
  std::lock_guard<std::mutex> lock(mutex);
  while (static_cast<int>(table.size()) <= m) {
    const unsigned long n = table.size();
    BigRational acc = 0;
    BigInt binom = 1;  // C(n+1, j)
    for (unsigned long j = 0; j < n; ++j) {
      acc += binom * table[j];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    BigRational bn = -acc / BigRational(static_cast<long>(n + 1));
    bn.canonicalize();
    table.push_back(bn);
  }
  return table[static_cast<std::size_t>(m)];
}

BigInt sigma_power(unsigned e, std::int64_t n) {
  if (n < 1) {
    throw ParameterError("sigma_power: n = " + std::to_string(n) + " must be >= 1");
  }
  BigInt sum = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) {
      continue;
    }
    sum += ipow(BigInt(static_cast<long>(d)), e);
    const std::int64_t co = n / d;
    if (co != d) {
      sum += ipow(BigInt(static_cast<long>(co)), e);
    }
  }
  return sum;
}

std::vector<BigInt> sigma_power_table(unsigned e, std::size_t count) {
  std::vector<BigInt> table(count, BigInt(0));
  for (std::size_t d = 1; d < count; ++d) {
    const BigInt power = ipow(BigInt(static_cast<unsigned long>(d)), e);
    for (std::size_t n = d; n < count; n += d) {
      table[n] += power;
    }
  }
  return table;
}

}  // namespace oclab
