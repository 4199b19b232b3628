#include "dzeta/numtheory.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "dzeta/errors.hpp"

namespace dzeta::nt {

namespace {

void require_positive(std::uint64_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": argument must be >= 1");
}

}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("integer overflow in addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ResourceError("integer overflow in subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("integer overflow in multiplication");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r) || r > static_cast<std::uint64_t>(INT64_MAX)) {
    throw ResourceError("integer overflow in multiplication");
  }
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  if (base <= 1) return (base == 0 && exp > 0) ? 0 : 1;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::int64_t checked_pow(std::int64_t base, std::uint64_t exp) {
  if (base == 0) return exp == 0 ? 1 : 0;
  if (base == 1) return 1;
  if (base == -1) return (exp % 2 == 0) ? 1 : -1;
  std::int64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  require_positive(n, "factorize");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t n) {
  if (n < 2) return {0, 0};
  auto f = factorize(n);
  if (f.size() != 1) return {0, 0};
  return f.front();
}

int moebius(std::uint64_t n) {
  require_positive(n, "moebius");
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t euler_phi(std::uint64_t n) {
  require_positive(n, "euler_phi");
  std::uint64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  require_positive(n, "divisors");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::uint64_t necklace_count(std::uint64_t a, std::uint64_t b) {
  require_positive(a, "necklace_count");
  require_positive(b, "necklace_count");
  std::int64_t sum = 0;
  for (std::uint64_t d : divisors(b)) {
    int mu = moebius(b / d);
    if (mu == 0) continue;
    auto term = static_cast<std::int64_t>(checked_pow(a, d));
    sum = mu > 0 ? checked_add(sum, term) : checked_sub(sum, term);
  }
  if (sum < 0 || sum % static_cast<std::int64_t>(b) != 0) {
    throw std::logic_error("necklace_count: Moebius sum not divisible by b");
  }
  return static_cast<std::uint64_t>(sum) / b;
}

unsigned ord2(std::uint64_t n) {
  require_positive(n, "ord2");
  return static_cast<unsigned>(__builtin_ctzll(n));
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd(a, b), b);
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace dzeta::nt
