#pragma once

// Exact integer helpers: Moebius, totient, divisors, necklace counts and
// overflow-checked 64-bit arithmetic. Factorization is trial division.

#include <cstdint>
#include <utility>
#include <vector>

namespace dzeta::nt {

// Checked arithmetic; throws ResourceError on overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);
std::int64_t checked_pow(std::int64_t base, std::uint64_t exp);

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// If n = p^e with p prime and e >= 1, returns {p, e}; otherwise {0, 0}.
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t n);

int moebius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Number of aperiodic necklaces of length b over an alphabet of size a:
/// (1/b) * sum_{d | b} mu(b/d) a^d.
std::uint64_t necklace_count(std::uint64_t a, std::uint64_t b);

/// 2-adic valuation.
unsigned ord2(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Least nonnegative residue of a modulo m (m > 0).
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

}  // namespace dzeta::nt
