#pragma once

#include <cstdint>

namespace rmtlab {

/// Exact integer helpers for the moment method. All of them compute in
/// 128-bit arithmetic and throw std::overflow_error when the result (or an
/// intermediate product) does not fit.

__extension__ typedef unsigned __int128 u128;

u128 binomial_u128(unsigned n, unsigned k);
u128 catalan_u128(unsigned k);
/// (1/(r+1)) binom(k-1, r) binom(k, r): MP-pds with k steps and weight r.
u128 narayana_mp_u128(unsigned k, unsigned r);

std::uint64_t binomial(unsigned n, unsigned k);

/// (2k)! / (k! (k+1)!). Fits 64 bits for k <= 36.
std::uint64_t catalan(unsigned k);

/// (1/(r+1)) binom(k-1, r) binom(k, r); 0 when r >= k.
std::uint64_t narayana_mp(unsigned k, unsigned r);

/// n (n-1) ... (n-l+1); 1 for l = 0, 0 when l > n.
std::uint64_t falling_factorial(std::uint64_t n, unsigned l);

/// Lossless only below 2^53; used when converting exact counts for floating
/// point consumers.
double to_double(u128 v);

}  // namespace rmtlab
