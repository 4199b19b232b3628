#pragma once

// Joint Frobenius/automorphism orbits on free Z/n-sets and the class
// (sign, twist) in Z/2 + Z/n attached to an automorphism commuting with
// Frobenius.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dzeta/errors.hpp"
#include "dzeta/geometry.hpp"

namespace dzeta::orb {

/// (sign, twist) with sign in {+1,-1} and 0 <= twist < n.
struct K1Class {
  std::uint64_t n = 1;
  int sign = 1;
  std::uint64_t twist = 0;

  static K1Class identity(std::uint64_t n) { return {n, 1, 0}; }
  /// Signs multiply, twists add mod n. Throws std::invalid_argument if n differs.
  K1Class operator*(const K1Class& other) const;
  bool operator==(const K1Class&) const = default;
  std::string str() const;
};

/// Orbit types (d, a) -> number of joint orbits of that type.
struct OrbitCensus {
  std::uint64_t n = 1;
  std::uint64_t m = 1;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;

  std::uint64_t count(std::uint64_t d, std::uint64_t a) const;
  /// Sum of count * d * n.
  std::uint64_t total_points() const;
  bool operator==(const OrbitCensus&) const = default;
};

/// Raised by orbit_census when the automorphism has a point with a proper
/// stabilizer.
class NonFreeActionError : public ValidationError {
 public:
  NonFreeActionError(std::size_t index, std::string point, std::uint64_t power, std::uint64_t order);
  std::size_t index;
  std::string point;
  std::uint64_t power;  // phi^power fixes the point, 0 < power < order
  std::uint64_t order;
};

/// frob must be a permutation whose cycles all have length n; phi must be a
/// permutation commuting with frob. Throws ValidationError otherwise.
K1Class k1_class(std::uint64_t n, std::span<const std::uint32_t> frob, std::span<const std::uint32_t> phi);
K1Class k1_class(const geo::StratumN& s, std::span<const std::uint32_t> phi);

/// Requires the additional hypothesis that every phi-cycle on points has
/// length equal to the order of phi.
OrbitCensus orbit_census(std::uint64_t n, std::span<const std::uint32_t> frob, std::span<const std::uint32_t> phi);
OrbitCensus orbit_census(const geo::StratumN& s, std::span<const std::uint32_t> phi);

K1Class census_to_class(const OrbitCensus& c);

/// P_d for d | gcd(n, m): P_1 = #(m, 0) and P_d = #(m/d, n/d). Throws
/// ValidationError when orbit types at one level carry different counts.
std::map<std::uint64_t, std::uint64_t> scaling_levels(const OrbitCensus& c);

/// sign (-1)^(P_1 (m+1) + P_2 (m/2+1)), twist sum_{d | (n,m)} P_d phi(d) n/d mod n.
K1Class su_special_reduction(const OrbitCensus& c);

/// Class of (P^1, x -> -x) over F_q in degree n; q must be odd.
K1Class closed_form_calc(std::uint64_t q, std::uint64_t n);

/// With l = ord2(q-1): r = 0 gives (q-1)/2^l, r >= 1 gives
/// (q^(2^(r-1)) - 1)^2 / 2^(l+r). This is the predicted P_{2^(l-r)}.
std::uint64_t genroot_predicted_P(std::uint64_t q, unsigned r);

/// Entry n is ((-1)^(b_n), 0) in Z/2 + Z/n, for n = 1..N.
std::vector<K1Class> mult_of_eta_profile(std::span<const std::uint64_t> b, std::uint64_t N);

enum class Verdict { kNonPermutativeCertified, kInconclusive };

Verdict permutativity_verdict(std::span<const K1Class> classes);
std::string to_string(Verdict v);

/// Class of the automorphism on the exact-degree-n stratum. The automorphism
/// is validated over all of X(F_{q^n}) first.
K1Class psi(const geo::VarietySpec& v, const geo::AutomorphismSpec& a, const ff::FieldSpec& base, unsigned n,
            const geo::ComputeOptions& opts = {});

}  // namespace dzeta::orb
