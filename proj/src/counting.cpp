#include "rmtlab/counting.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace rmtlab {

namespace {

u128 checked_mul(u128 a, u128 b, const char* what) {
  u128 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error(std::string(what) + ": 128-bit overflow");
  }
  return out;
}

std::uint64_t narrow(u128 v, const char* what) {
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error(std::string(what) + ": result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

u128 binomial_u128(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  u128 c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // c * (n - k + i) / i stays integral; cancel the gcd first to keep the
    // intermediate product small.
    u128 num = n - k + i;
    u128 den = i;
    const u128 g = gcd(c, den);
    c /= g;
    den /= g;
    num /= den;  // den now divides num because the full quotient is integral
    c = checked_mul(c, num, "binomial");
  }
  return c;
}

u128 catalan_u128(unsigned k) {
  return binomial_u128(2 * k, k) / (k + 1);
}

u128 narayana_mp_u128(unsigned k, unsigned r) {
  if (k == 0 || r >= k) return 0;
  return checked_mul(binomial_u128(k - 1, r), binomial_u128(k, r), "narayana_mp") / (r + 1);
}

std::uint64_t binomial(unsigned n, unsigned k) { return narrow(binomial_u128(n, k), "binomial"); }

std::uint64_t catalan(unsigned k) { return narrow(catalan_u128(k), "catalan"); }

std::uint64_t narayana_mp(unsigned k, unsigned r) {
  return narrow(narayana_mp_u128(k, r), "narayana_mp");
}

std::uint64_t falling_factorial(std::uint64_t n, unsigned l) {
  if (l > n) return 0;
  u128 out = 1;
  for (unsigned i = 0; i < l; ++i) out = checked_mul(out, n - i, "falling_factorial");
  return narrow(out, "falling_factorial");
}

double to_double(u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  const auto lo = static_cast<std::uint64_t>(v);
  return static_cast<double>(hi) * 0x1.0p64 + static_cast<double>(lo);
}

}  // namespace rmtlab
