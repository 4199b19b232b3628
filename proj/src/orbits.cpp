#include "dzeta/orbits.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <sstream>

#include "dzeta/numtheory.hpp"

namespace dzeta::orb {

namespace {

using boost::multiprecision::cpp_int;

struct OrbitIndex {
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::uint64_t> pos;   // x = frob^pos(base)
  std::vector<std::uint32_t> base;  // smallest index of each orbit
};

void check_permutation(std::span<const std::uint32_t> p, std::size_t size, const char* what) {
  if (p.size() != size) throw ValidationError(std::string(what) + " has wrong size");
  std::vector<char> hit(size, 0);
  for (std::uint32_t v : p) {
    if (v >= size || hit[v]) throw ValidationError(std::string(what) + " is not a permutation");
    hit[v] = 1;
  }
}

OrbitIndex index_orbits(std::uint64_t n, std::span<const std::uint32_t> frob) {
  if (n == 0) throw ValidationError("n must be >= 1");
  check_permutation(frob, frob.size(), "Frobenius");
  OrbitIndex idx;
  idx.orbit_of.assign(frob.size(), UINT32_MAX);
  idx.pos.assign(frob.size(), 0);
  for (std::size_t i = 0; i < frob.size(); ++i) {
    if (idx.orbit_of[i] != UINT32_MAX) continue;
    const auto o = static_cast<std::uint32_t>(idx.base.size());
    idx.base.push_back(static_cast<std::uint32_t>(i));
    std::uint64_t k = 0;
    std::size_t x = i;
    do {
      idx.orbit_of[x] = o;
      idx.pos[x] = k++;
      x = frob[x];
    } while (x != i);
    if (k != n) {
      throw ValidationError("Frobenius cycle of length " + std::to_string(k) + " in a Z/" + std::to_string(n) +
                            "-set that should be free");
    }
  }
  return idx;
}

void check_commutes(std::span<const std::uint32_t> frob, std::span<const std::uint32_t> phi) {
  check_permutation(phi, frob.size(), "automorphism");
  for (std::size_t i = 0; i < frob.size(); ++i) {
    if (phi[frob[i]] != frob[phi[i]]) {
      throw ValidationError("automorphism does not commute with Frobenius at index " + std::to_string(i));
    }
  }
}

// Visits the cycles of phi acting on Frobenius orbits: f(length d, twist a).
template <class F>
void for_each_orbit_cycle(const OrbitIndex& idx, std::span<const std::uint32_t> phi, F f) {
  std::vector<char> seen(idx.base.size(), 0);
  for (std::uint32_t o = 0; o < idx.base.size(); ++o) {
    if (seen[o]) continue;
    std::uint64_t d = 0;
    for (std::uint32_t cur = o; !seen[cur]; cur = idx.orbit_of[phi[idx.base[cur]]]) {
      seen[cur] = 1;
      ++d;
    }
    std::uint32_t y = idx.base[o];
    for (std::uint64_t k = 0; k < d; ++k) y = phi[y];
    if (idx.orbit_of[y] != o) throw std::logic_error("orbit cycle did not close");
    f(d, idx.pos[y]);
  }
}

OrbitCensus census_impl(std::uint64_t n, std::span<const std::uint32_t> frob, std::span<const std::uint32_t> phi,
                        const std::function<std::string(std::size_t)>& describe) {
  const OrbitIndex idx = index_orbits(n, frob);
  check_commutes(frob, phi);

  // Point-level cycle lengths of phi; the action is free iff all are equal.
  std::vector<std::uint64_t> len(phi.size(), 0);
  std::uint64_t m = 1;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (len[i]) continue;
    std::uint64_t l = 0;
    std::size_t x = i;
    do {
      ++l;
      x = phi[x];
    } while (x != i);
    x = i;
    do {
      len[x] = l;
      x = phi[x];
    } while (x != i);
    m = nt::lcm(m, l);
  }
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (len[i] != m) throw NonFreeActionError(i, describe(i), len[i], m);
  }

  OrbitCensus c;
  c.n = n;
  c.m = m;
  for_each_orbit_cycle(idx, phi, [&](std::uint64_t d, std::uint64_t a) {
    if (m % d != 0 || m / d != n / nt::gcd(n, a)) throw std::logic_error("orbit type violates m/d = n/(n,a)");
    ++c.counts[{d, a}];
  });
  if (c.total_points() != phi.size()) throw std::logic_error("orbit census does not account for every point");
  return c;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

K1Class K1Class::operator*(const K1Class& o) const {
  if (n != o.n) throw std::invalid_argument("cannot combine classes in Z/" + std::to_string(n) + " and Z/" + std::to_string(o.n));
  return {n, sign * o.sign, (twist + o.twist) % n};
}

std::string K1Class::str() const {
  std::ostringstream os;
  os << "(" << (sign > 0 ? "+1" : "-1") << ", " << twist << " mod " << n << ")";
  return os.str();
}

std::uint64_t OrbitCensus::count(std::uint64_t d, std::uint64_t a) const {
  const auto it = counts.find({d, a});
  return it == counts.end() ? 0 : it->second;
}

std::uint64_t OrbitCensus::total_points() const {
  std::uint64_t t = 0;
  for (const auto& [key, cnt] : counts) t += cnt * key.first * n;
  return t;
}

NonFreeActionError::NonFreeActionError(std::size_t index_, std::string point_, std::uint64_t power_,
                                       std::uint64_t order_)
    : ValidationError("automorphism action is not free: phi^" + std::to_string(power_) + " fixes " + point_ +
                      " but phi has order " + std::to_string(order_)),
      index(index_),
      point(std::move(point_)),
      power(power_),
      order(order_) {}

K1Class k1_class(std::uint64_t n, std::span<const std::uint32_t> frob, std::span<const std::uint32_t> phi) {
  const OrbitIndex idx = index_orbits(n, frob);
  check_commutes(frob, phi);
  K1Class c = K1Class::identity(n);
  for_each_orbit_cycle(idx, phi, [&](std::uint64_t d, std::uint64_t a) {
    if (d % 2 == 0) c.sign = -c.sign;
    c.twist = (c.twist + a) % n;
  });
  return c;
}

K1Class k1_class(const geo::StratumN& s, std::span<const std::uint32_t> phi) { return k1_class(s.n, s.frob, phi); }

OrbitCensus orbit_census(std::uint64_t n, std::span<const std::uint32_t> frob, std::span<const std::uint32_t> phi) {
  return census_impl(n, frob, phi, [](std::size_t i) { return "index " + std::to_string(i); });
}

OrbitCensus orbit_census(const geo::StratumN& s, std::span<const std::uint32_t> phi) {
  return census_impl(s.n, s.frob, phi, [&](std::size_t i) { return s.describe(i); });
}

K1Class census_to_class(const OrbitCensus& c) {
  K1Class k = K1Class::identity(c.n);
  for (const auto& [key, cnt] : c.counts) {
    const auto [d, a] = key;
    if ((d + 1) % 2 == 1 && cnt % 2 == 1) k.sign = -k.sign;
    k.twist = (k.twist + mulmod(cnt % c.n, a % c.n, c.n)) % c.n;
  }
  return k;
}

std::map<std::uint64_t, std::uint64_t> scaling_levels(const OrbitCensus& c) {
  const std::uint64_t g = nt::gcd(c.n, c.m);
  std::map<std::uint64_t, std::uint64_t> P;
  for (std::uint64_t d : nt::divisors(g)) P[d] = c.count(c.m / d, d == 1 ? 0 : c.n / d);
  for (const auto& [key, cnt] : c.counts) {
    const auto [dd, a] = key;
    const std::uint64_t level = c.n / nt::gcd(c.n, a);
    if (g % level != 0 || c.m % dd != 0 || c.m / dd != level) {
      throw ValidationError("orbit type (" + std::to_string(dd) + "," + std::to_string(a) +
                            ") does not fit the scaling shape for n=" + std::to_string(c.n) + ", m=" + std::to_string(c.m));
    }
    if (cnt != P[level]) {
      throw ValidationError("orbit types at level " + std::to_string(level) + " have unequal counts (" +
                            std::to_string(cnt) + " vs " + std::to_string(P[level]) + ")");
    }
  }
  return P;
}

K1Class su_special_reduction(const OrbitCensus& c) {
  const auto P = scaling_levels(c);
  std::uint64_t sign_exp = (P.at(1) % 2) * ((c.m + 1) % 2);
  if (P.count(2)) sign_exp += (P.at(2) % 2) * ((c.m / 2 + 1) % 2);
  K1Class k = K1Class::identity(c.n);
  k.sign = sign_exp % 2 ? -1 : 1;
  for (const auto& [d, pd] : P) {
    const std::uint64_t term = mulmod(mulmod(pd % c.n, nt::euler_phi(d) % c.n, c.n), (c.n / d) % c.n, c.n);
    k.twist = (k.twist + term) % c.n;
  }
  return k;
}

K1Class closed_form_calc(std::uint64_t q, std::uint64_t n) {
  if (q < 3 || q % 2 == 0 || nt::prime_power(q).first == 0) {
    throw ValidationError("closed form requires an odd prime power q, got " + std::to_string(q));
  }
  if (n == 0) throw ValidationError("n must be >= 1");
  const std::uint64_t h = (q - 1) / 2;
  const int s = h % 2 ? -1 : 1;
  if (n == 1) return {1, s, 0};
  if (n == 2) return {2, s, h % 2};
  return K1Class::identity(n);
}

std::uint64_t genroot_predicted_P(std::uint64_t q, unsigned r) {
  if (q < 3 || q % 2 == 0) throw ValidationError("q must be odd and >= 3");
  const unsigned l = nt::ord2(q - 1);
  if (r > l) throw ValidationError("r must satisfy 0 <= r <= ord2(q-1) = " + std::to_string(l));
  cpp_int num, den;
  if (r == 0) {
    num = q - 1;
    den = cpp_int(1) << l;
  } else {
    if (r - 1 >= 64) throw ResourceError("exponent 2^(r-1) too large");
    cpp_int t = boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(1ull << (r - 1))) - 1;
    num = t * t;
    den = cpp_int(1) << (l + r);
  }
  if (num % den != 0) {
    throw ValidationError("predicted P is not integral for q=" + std::to_string(q) + ", r=" + std::to_string(r));
  }
  const cpp_int v = num / den;
  if (v > cpp_int(INT64_MAX)) throw ResourceError("predicted P exceeds 64-bit range");
  return v.convert_to<std::uint64_t>();
}

std::vector<K1Class> mult_of_eta_profile(std::span<const std::uint64_t> b, std::uint64_t N) {
  if (b.size() < N) throw ValidationError("need " + std::to_string(N) + " census values, got " + std::to_string(b.size()));
  std::vector<K1Class> out;
  for (std::uint64_t n = 1; n <= N; ++n) out.push_back({n, b[n - 1] % 2 ? -1 : 1, 0});
  return out;
}

Verdict permutativity_verdict(std::span<const K1Class> classes) {
  for (const auto& c : classes) {
    if (c.twist % c.n != 0) return Verdict::kNonPermutativeCertified;
  }
  return Verdict::kInconclusive;
}

std::string to_string(Verdict v) {
  return v == Verdict::kNonPermutativeCertified ? "NonPermutativeCertified" : "Inconclusive";
}

K1Class psi(const geo::VarietySpec& v, const geo::AutomorphismSpec& a, const ff::FieldSpec& base, unsigned n,
            const geo::ComputeOptions& opts) {
  const geo::StratumN s = geo::exact_degree_stratum(v, base, n, opts);
  if (!std::holds_alternative<geo::ExplicitPermutation>(a.action)) {
    const auto report = geo::validate_automorphism(v, a, s.field, opts);
    if (!report.ok) throw ValidationError(report.violation->kind + ": " + report.violation->message);
  }
  const auto phi = geo::apply_automorphism(a, s);
  return k1_class(s, phi);
}

}  // namespace dzeta::orb
