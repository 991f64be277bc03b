#pragma once

// Truncated q-expansions sum c_n q^n + O(q^N) over exact rationals.
//
// Precision contracts:
//   add/sub/mul     prec = min of the operands
//   apply_U         prec = ceil(N / p)
//   apply_V         prec = p (N - 1) + 1
//   div_by_order    prec = min(prec a, prec b) - ord_q(b)

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oclab/arith.hpp"

namespace oclab {

class QSeries {
 public:
  // prec coefficients, all zero.
  explicit QSeries(std::size_t prec);
  explicit QSeries(std::vector<BigRational> coeffs);

  static QSeries zero(std::size_t prec) { return QSeries(prec); }
  static QSeries one(std::size_t prec);
  static QSeries from_integers(std::span<const BigInt> coeffs);

  std::size_t prec() const { return coeffs_.size(); }
  const BigRational& operator[](std::size_t n) const { return coeffs_[n]; }
  BigRational& operator[](std::size_t n) { return coeffs_[n]; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  // Index of the first nonzero coefficient; prec() if none.
  std::size_t order() const;
  bool is_zero() const { return order() == prec(); }
  QSeries truncated(std::size_t prec) const;

  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  QSeries& operator*=(const BigRational& scalar);

  friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<BigRational> coeffs_;
};

QSeries operator+(QSeries a, const QSeries& b);
QSeries operator-(QSeries a, const QSeries& b);
QSeries operator-(QSeries a);
QSeries operator*(QSeries a, const BigRational& scalar);
QSeries operator*(const BigRational& scalar, QSeries a);
QSeries operator*(const QSeries& a, const QSeries& b);

QSeries mul(const QSeries& a, const QSeries& b);
// Throws NonUnitError if the constant term vanishes.
QSeries invert(const QSeries& a);
// Exact quotient a / b after cancelling q^{ord b}.
QSeries div_by_order(const QSeries& a, const QSeries& b);
QSeries pow(const QSeries& a, unsigned n);

// c_n -> c_{pn}.
QSeries apply_U(const QSeries& a, std::int64_t p);
// q -> q^p.
QSeries apply_V(const QSeries& a, std::int64_t p);

// p for which X_0(p) has genus 0 and 24/(p-1) is an integer.
bool is_genus_zero_prime(std::int64_t p);
void require_genus_zero_prime(std::int64_t p);

// f_p = (eta(pz)/eta(z))^{24/(p-1)} = q prod_n (1 - q^{pn})^e (1 - q^n)^{-e}.
QSeries eta_quotient_fp(std::int64_t p, std::size_t prec);

// Minimum p-adic valuation of c_n over n in [from, prec).
PadicVal min_val(const QSeries& a, std::int64_t p, std::size_t from = 0);

}  // namespace oclab
