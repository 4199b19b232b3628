#pragma once

// Random free Z/n-sets and Frobenius-equivariant permutations on them, with
// the K1 class computed straight from the construction (orbit permutation
// parity and total rotation) rather than from cycle walking.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dzeta/orbits.hpp"

namespace zn {

struct FreeSet {
  std::uint64_t n = 1;
  std::size_t orbits = 0;
  std::vector<std::uint32_t> label;  // (orbit i, position j) -> index label[i*n+j]
  std::vector<std::uint32_t> frob;
  std::size_t size() const { return label.size(); }
};

// An equivariant map sends (i, j) to (sigma[i], j + shift[i]).
struct Equivariant {
  std::vector<std::uint32_t> sigma;
  std::vector<std::uint64_t> shift;
};

inline FreeSet random_set(std::mt19937& rng, std::uint64_t n, std::size_t orbits) {
  FreeSet s;
  s.n = n;
  s.orbits = orbits;
  s.label.resize(orbits * n);
  std::iota(s.label.begin(), s.label.end(), 0u);
  std::shuffle(s.label.begin(), s.label.end(), rng);
  s.frob.resize(s.label.size());
  for (std::size_t i = 0; i < orbits; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) s.frob[s.label[i * n + j]] = s.label[i * n + (j + 1) % n];
  }
  return s;
}

inline Equivariant random_equivariant(std::mt19937& rng, const FreeSet& s) {
  Equivariant e;
  e.sigma.resize(s.orbits);
  std::iota(e.sigma.begin(), e.sigma.end(), 0u);
  std::shuffle(e.sigma.begin(), e.sigma.end(), rng);
  std::uniform_int_distribution<std::uint64_t> r(0, s.n - 1);
  for (std::size_t i = 0; i < s.orbits; ++i) e.shift.push_back(r(rng));
  return e;
}

inline std::vector<std::uint32_t> realize(const FreeSet& s, const Equivariant& e) {
  std::vector<std::uint32_t> phi(s.size());
  for (std::size_t i = 0; i < s.orbits; ++i) {
    for (std::uint64_t j = 0; j < s.n; ++j) {
      phi[s.label[i * s.n + j]] = s.label[e.sigma[i] * s.n + (j + e.shift[i]) % s.n];
    }
  }
  return phi;
}

inline dzeta::orb::K1Class oracle_class(const FreeSet& s, const Equivariant& e) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < e.sigma.size(); ++i) {
    for (std::size_t j = i + 1; j < e.sigma.size(); ++j) inversions += e.sigma[i] > e.sigma[j];
  }
  std::uint64_t twist = 0;
  for (auto t : e.shift) twist = (twist + t) % s.n;
  return {s.n, inversions % 2 ? -1 : 1, twist};
}

// (f then g)[x] = g[f[x]].
inline std::vector<std::uint32_t> then(const std::vector<std::uint32_t>& f, const std::vector<std::uint32_t>& g) {
  std::vector<std::uint32_t> r(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) r[x] = g[f[x]];
  return r;
}

inline std::vector<std::uint32_t> inverse(const std::vector<std::uint32_t>& f) {
  std::vector<std::uint32_t> r(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) r[f[x]] = static_cast<std::uint32_t>(x);
  return r;
}

// Orbit cycles all of length d, each with total rotation of gcd g with n, so
// every point cycle has the same length d * n / g.
inline Equivariant regular_equivariant(std::mt19937& rng, const FreeSet& s, std::size_t d, std::uint64_t g) {
  std::vector<std::uint32_t> order(s.orbits);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::uint64_t> rotations;
  for (std::uint64_t a = 0; a < s.n; ++a) {
    if (std::gcd(a, s.n) == g) rotations.push_back(a);
  }
  Equivariant e;
  e.sigma.assign(s.orbits, 0);
  e.shift.assign(s.orbits, 0);
  std::uniform_int_distribution<std::uint64_t> r(0, s.n - 1);
  std::uniform_int_distribution<std::size_t> pick(0, rotations.size() - 1);
  for (std::size_t c = 0; c < s.orbits; c += d) {
    const std::uint64_t total = rotations[pick(rng)];
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < d; ++k) {
      e.sigma[order[c + k]] = order[c + (k + 1) % d];
      const std::uint64_t t = k + 1 < d ? r(rng) : (total + s.n * s.n - acc) % s.n;
      e.shift[order[c + k]] = t;
      acc = (acc + t) % s.n;
    }
  }
  return e;
}

}  // namespace zn
