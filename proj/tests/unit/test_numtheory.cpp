#include <gtest/gtest.h>

#include <random>

#include "dzeta/errors.hpp"
#include "dzeta/numtheory.hpp"

using namespace dzeta;

namespace {

std::uint64_t gcd_slow(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = 1;
  for (std::uint64_t d = 1; d <= std::min(a, b); ++d) {
    if (a % d == 0 && b % d == 0) g = d;
  }
  return std::max(a, b) == 0 ? 0 : (std::min(a, b) == 0 ? std::max(a, b) : g);
}

int moebius_slow(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) prime = prime && p % d;
    if (!prime) continue;
    if (n % (p * p) == 0) return 0;
    mu = -mu;
  }
  return mu;
}

// Aperiodic words of length n over a letters, divided by n.
std::uint64_t necklaces_brute(std::uint64_t a, std::uint64_t n) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < n; ++i) total *= a;
  std::uint64_t primitive = 0;
  std::vector<std::uint64_t> w(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& x : w) {
      x = c % a;
      c /= a;
    }
    bool periodic = false;
    for (std::uint64_t d = 1; d < n && !periodic; ++d) {
      if (n % d) continue;
      bool same = true;
      for (std::uint64_t i = 0; i < n && same; ++i) same = w[i] == w[(i + d) % n];
      periodic = same;
    }
    if (!periodic) ++primitive;
  }
  return primitive / n;
}

}  // namespace

TEST(NumTheory, MoebiusMatchesTrialDivision) {
  for (std::uint64_t n = 1; n <= 500; ++n) EXPECT_EQ(nt::moebius(n), moebius_slow(n)) << n;
}

TEST(NumTheory, EulerPhiCountsUnits) {
  for (std::uint64_t n = 1; n <= 300; ++n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k) c += gcd_slow(k, n) == 1;
    EXPECT_EQ(nt::euler_phi(n), c) << n;
  }
}

TEST(NumTheory, DivisorsAndFactorization) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = rng() % 100000 + 1;
    std::uint64_t prod = 1;
    for (auto [p, e] : nt::factorize(n)) {
      EXPECT_TRUE(nt::is_prime(p));
      for (unsigned k = 0; k < e; ++k) prod *= p;
    }
    EXPECT_EQ(prod, n);
    std::vector<std::uint64_t> slow;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) slow.push_back(d);
    }
    EXPECT_EQ(nt::divisors(n), slow);
  }
}

TEST(NumTheory, NecklaceCountMatchesWordEnumeration) {
  for (std::uint64_t a = 1; a <= 4; ++a) {
    for (std::uint64_t n = 1; a > 1 ? n <= 8 : n <= 4; ++n) EXPECT_EQ(nt::necklace_count(a, n), necklaces_brute(a, n));
  }
  // The number of monic irreducible quadratics over F_3 is (9 - 3) / 2.
  EXPECT_EQ(nt::necklace_count(3, 2), 3u);
}

TEST(NumTheory, PrimePowerAndOrd2) {
  EXPECT_EQ(nt::prime_power(9), (std::pair<std::uint64_t, unsigned>{3, 2}));
  EXPECT_EQ(nt::prime_power(13), (std::pair<std::uint64_t, unsigned>{13, 1}));
  EXPECT_EQ(nt::prime_power(12).first, 0u);
  EXPECT_EQ(nt::ord2(12), 2u);
  EXPECT_EQ(nt::ord2(1), 0u);
}

TEST(NumTheory, GcdLcmModFloor) {
  for (std::uint64_t a = 0; a < 40; ++a) {
    for (std::uint64_t b = 0; b < 40; ++b) {
      EXPECT_EQ(nt::gcd(a, b), gcd_slow(a, b));
      if (a && b) {
        EXPECT_EQ(nt::lcm(a, b) * nt::gcd(a, b), a * b);
      }
    }
  }
  EXPECT_EQ(nt::mod_floor(-1, 4), 3);
  EXPECT_EQ(nt::mod_floor(-8, 4), 0);
}

TEST(NumTheory, CheckedArithmeticThrowsOnOverflow) {
  EXPECT_THROW(nt::checked_add(INT64_MAX, std::int64_t{1}), ResourceError);
  EXPECT_THROW(nt::checked_sub(INT64_MIN, std::int64_t{1}), ResourceError);
  EXPECT_THROW(nt::checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), ResourceError);
  EXPECT_THROW(nt::checked_pow(std::uint64_t{3}, 40), ResourceError);  // results stay within int64
  EXPECT_EQ(nt::checked_pow(std::uint64_t{3}, 39), 4052555153018976267ull);
}
