#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oclab/arith.hpp"

namespace oclab::detail {

// Product of two integer polynomials truncated to `count` coefficients.
// Uses Kronecker substitution into a single GMP multiplication for long
// inputs and the schoolbook product otherwise.
std::vector<BigInt> mul_trunc(std::span<const BigInt> a, std::span<const BigInt> b,
                              std::size_t count);

std::vector<BigInt> mul_trunc_schoolbook(std::span<const BigInt> a, std::span<const BigInt> b,
                                         std::size_t count);

}  // namespace oclab::detail
