#include "oclab/poly_mul.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "oclab/errors.hpp"

namespace oclab::detail {

namespace {

constexpr std::size_t kKroneckerThreshold = 40;
constexpr std::size_t kWordBits = 64;

std::size_t max_bits(std::span<const BigInt> a) {
  std::size_t bits = 1;
  for (const BigInt& x : a) {
    if (sgn(x) != 0) {
      bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
    }
  }
  return bits;
}

BigInt import_words(const std::vector<std::uint64_t>& words) {
  BigInt r;
  mpz_import(r.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
  return r;
}

// Evaluates the polynomial at 2^(64 * slot_words). Positive and negative
// coefficients are packed separately so every slot holds an absolute value.
BigInt pack(std::span<const BigInt> a, std::size_t slot_words) {
  std::vector<std::uint64_t> pos(a.size() * slot_words, 0);
  std::vector<std::uint64_t> neg(a.size() * slot_words, 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int sign = sgn(a[k]);
    if (sign == 0) {
      continue;
    }
    auto& dst = sign > 0 ? pos : neg;
    std::size_t written = 0;
    mpz_export(&dst[k * slot_words], &written, -1, sizeof(std::uint64_t), 0, 0,
               a[k].get_mpz_t());
  }
  return import_words(pos) - import_words(neg);
}

}  // namespace

std::vector<BigInt> mul_trunc_schoolbook(std::span<const BigInt> a, std::span<const BigInt> b,
                                         std::size_t count) {
  std::vector<BigInt> c(count, BigInt(0));
  const std::size_t la = std::min(a.size(), count);
  const std::size_t lb = std::min(b.size(), count);
  for (std::size_t i = 0; i < la; ++i) {
    if (sgn(a[i]) == 0) {
      continue;
    }
    const std::size_t upto = std::min(lb, count - i);
    for (std::size_t j = 0; j < upto; ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return c;
}

std::vector<BigInt> mul_trunc(std::span<const BigInt> a, std::span<const BigInt> b,
                              std::size_t count) {
  const std::size_t la = std::min(a.size(), count);
  const std::size_t lb = std::min(b.size(), count);
  if (la == 0 || lb == 0) {
    return std::vector<BigInt>(count, BigInt(0));
  }
  if (std::min(la, lb) < kKroneckerThreshold) {
    return mul_trunc_schoolbook(a, b, count);
  }
  a = a.first(la);
  b = b.first(lb);

  // |c_k| < min(la, lb) * 2^(bits a + bits b); one more bit for the sign
  // and one for the offset that makes every slot nonnegative.
  const std::size_t bits =
      max_bits(a) + max_bits(b) + std::bit_width(std::min(la, lb)) + 2;
  const std::size_t slot_words = (bits + kWordBits - 1) / kWordBits;
  const std::size_t full = la + lb - 1;

  BigInt product = pack(a, slot_words) * pack(b, slot_words);

  std::vector<std::uint64_t> offset_words(full * slot_words, 0);
  for (std::size_t k = 0; k < full; ++k) {
    offset_words[k * slot_words + slot_words - 1] = std::uint64_t{1} << 63;
  }
  const BigInt offset = import_words(offset_words);
  product += offset;
  if (sgn(product) < 0) {
    throw ConsistencyError("Kronecker product: negative packed value");
  }

  std::vector<std::uint64_t> words(full * slot_words + 1, 0);
  std::size_t written = 0;
  mpz_export(words.data(), &written, -1, sizeof(std::uint64_t), 0, 0, product.get_mpz_t());
  if (written > full * slot_words) {
    throw ConsistencyError("Kronecker product: slot overflow");
  }

  BigInt half;
  mpz_setbit(half.get_mpz_t(), slot_words * kWordBits - 1);
  std::vector<BigInt> c(count, BigInt(0));
  const std::size_t keep = std::min(count, full);
  for (std::size_t k = 0; k < keep; ++k) {
    mpz_import(c[k].get_mpz_t(), slot_words, -1, sizeof(std::uint64_t), 0, 0,
               &words[k * slot_words]);
    c[k] -= half;
  }
  return c;
}

}  // namespace oclab::detail
