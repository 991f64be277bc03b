#pragma once

// Exact arithmetic substrate: rationals, p-adic valuations, Bernoulli numbers
// and divisor power sums.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace oclab {

using BigInt = mpz_class;
// mpq_class arithmetic keeps values canonical (lowest terms, positive
// denominator); anything built from raw parts goes through make_rational.
using BigRational = mpq_class;

BigRational make_rational(const BigInt& num, const BigInt& den);
BigRational parse_rational(const std::string& text);
std::string to_string(const BigRational& x);
BigInt ipow(const BigInt& base, unsigned long exponent);

bool is_prime(std::int64_t n);
void require_prime(std::int64_t p);

// Valuation of a rational: a finite rational value or +infinity (for zero).
// Rational values are allowed so that bound lines c0 + m*i share the type.
class PadicVal {
 public:
  PadicVal() : infinite_(true) {}
  PadicVal(BigRational value) : infinite_(false), value_(std::move(value)) {}
  PadicVal(long value) : infinite_(false), value_(value) {}

  static PadicVal infinity() { return PadicVal(); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Throws std::logic_error on +infinity.
  const BigRational& value() const;

  std::string to_string() const;
  static PadicVal parse(const std::string& text);

  friend PadicVal operator+(const PadicVal& a, const PadicVal& b);
  friend bool operator==(const PadicVal& a, const PadicVal& b);
  friend std::strong_ordering operator<=>(const PadicVal& a, const PadicVal& b);

 private:
  bool infinite_;
  BigRational value_;
};

PadicVal min(const PadicVal& a, const PadicVal& b);

// Rational extended by both infinities; used for margins observed - required.
class ExtRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRational() : kind_(Kind::Finite) {}
  ExtRational(BigRational value) : kind_(Kind::Finite), value_(std::move(value)) {}
  static ExtRational pos_inf();
  static ExtRational neg_inf();

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const BigRational& value() const;

  std::string to_string() const;
  static ExtRational parse(const std::string& text);

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  Kind kind_;
  BigRational value_;
};

// observed - required, with inf - inf taken as 0.
ExtRational margin(const PadicVal& observed, const PadicVal& required);

PadicVal padic_val(const BigRational& x, std::int64_t p);
std::int64_t padic_val_int(std::int64_t n, std::int64_t p);

// Exact B_m for even m >= 0 (B_2 = 1/6, B_4 = -1/30, ...). Memoized.
BigRational bernoulli(int m);

// sum_{d | n} d^e.
BigInt sigma_power(unsigned e, std::int64_t n);
// sigma_power(e, n) for every n in [0, count); entry 0 is 0. Divisor sieve.
std::vector<BigInt> sigma_power_table(unsigned e, std::size_t count);

}  // namespace oclab
