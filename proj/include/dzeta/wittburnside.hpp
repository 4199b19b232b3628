#pragma once

// Truncated big Witt vectors in Burnside coordinates b_1..b_N (orbit counts
// by orbit size), ghost coordinates c_n = sum_{d|n} d b_d, and the zeta
// series prod_n (1 - t^n)^(-b_n).

#include <cstdint>
#include <span>
#include <vector>

#include "dzeta/geometry.hpp"

namespace dzeta::witt {

/// b[0] holds b_1; size() == N.
struct WittVec {
  std::vector<std::int64_t> b;

  WittVec() = default;
  explicit WittVec(std::size_t N) : b(N, 0) {}
  explicit WittVec(std::vector<std::int64_t> coords) : b(std::move(coords)) {}

  std::size_t N() const { return b.size(); }
  std::int64_t at(std::size_t n) const { return b.at(n - 1); }
  std::int64_t& at(std::size_t n) { return b.at(n - 1); }
  bool operator==(const WittVec&) const = default;
};

/// c[0] holds c_1.
struct GhostVec {
  std::vector<std::int64_t> c;

  GhostVec() = default;
  explicit GhostVec(std::vector<std::int64_t> coords) : c(std::move(coords)) {}

  std::size_t N() const { return c.size(); }
  std::int64_t at(std::size_t n) const { return c.at(n - 1); }
  bool operator==(const GhostVec&) const = default;
};

/// Coefficients of t^0..t^T.
struct IntSeries {
  std::vector<std::int64_t> coeffs;
  bool operator==(const IntSeries&) const = default;
};

GhostVec ghost_of(const WittVec& w);

/// Inverse of ghost_of. Throws ValidationError naming the first n where
/// sum_{d|n} mu(n/d) c_d is not divisible by n.
WittVec from_ghost(const GhostVec& g);

WittVec witt_add(const WittVec& u, const WittVec& v);
/// Orbit products: an orbit of size i times one of size j is gcd(i,j)
/// orbits of size lcm(i,j); sizes beyond N are dropped.
WittVec witt_mul(const WittVec& u, const WittVec& v);

WittVec burnside_of_variety(const geo::VarietySpec& v, const ff::FieldSpec& base, unsigned N,
                            const geo::ComputeOptions& opts = {});

/// prod_{n <= N} (1 - t^n)^(-b_n) up to t^T, T <= N.
IntSeries zeta_from_witt(const WittVec& w, std::size_t T);

/// exp(sum_n c_n t^n / n) up to t^T with exact rational arithmetic; throws
/// ValidationError if a coefficient is not an integer.
IntSeries zeta_exp_form(std::span<const std::int64_t> counts, std::size_t T);

/// Truncated product of two series.
IntSeries series_mul(const IntSeries& a, const IntSeries& b);

}  // namespace dzeta::witt
