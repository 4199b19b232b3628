#include <gtest/gtest.h>

#include <random>

#include "dzeta/errors.hpp"
#include "dzeta/wittburnside.hpp"

using namespace dzeta;
using witt::WittVec;

namespace {

WittVec random_witt(std::mt19937& rng, std::size_t N, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  WittVec w(N);
  for (auto& x : w.b) x = d(rng);
  return w;
}

// Builds the Z-set with b_i cycles of length i, takes the product with the
// diagonal action and counts cycles by length.
WittVec product_by_cycles(const WittVec& u, const WittVec& v) {
  std::vector<std::uint32_t> su, sv;  // cycle length of each point
  std::vector<std::uint32_t> pu, pv;  // position within its cycle
  auto build = [](const WittVec& w, std::vector<std::uint32_t>& len, std::vector<std::uint32_t>& pos) {
    for (std::size_t i = 1; i <= w.N(); ++i) {
      for (std::int64_t k = 0; k < w.at(i); ++k) {
        for (std::size_t j = 0; j < i; ++j) {
          len.push_back(static_cast<std::uint32_t>(i));
          pos.push_back(static_cast<std::uint32_t>(j));
        }
      }
    }
  };
  build(u, su, pu);
  build(v, sv, pv);
  WittVec r(u.N());
  for (std::size_t x = 0; x < su.size(); ++x) {
    for (std::size_t y = 0; y < sv.size(); ++y) {
      // Walk the diagonal orbit through (x, y).
      std::uint32_t a = pu[x], b = pv[y];
      std::size_t len = 0;
      do {
        a = (a + 1) % su[x];
        b = (b + 1) % sv[y];
        ++len;
      } while (a != pu[x] || b != pv[y]);
      if (len <= r.N()) r.at(len) += 1;
    }
  }
  // Each orbit of length L was visited L times.
  for (std::size_t L = 1; L <= r.N(); ++L) r.at(L) /= static_cast<std::int64_t>(L);
  return r;
}

std::vector<std::int64_t> zeta_by_geometric_series(const WittVec& w, std::size_t T) {
  std::vector<std::int64_t> z(T + 1, 0);
  z[0] = 1;
  for (std::size_t n = 1; n <= T; ++n) {
    const std::int64_t b = w.at(n);
    for (std::int64_t k = 0; k < std::abs(b); ++k) {
      if (b > 0) {
        for (std::size_t i = n; i <= T; ++i) z[i] += z[i - n];  // divide by 1 - t^n
      } else {
        for (std::size_t i = T; i >= n; --i) z[i] -= z[i - n];  // multiply by 1 - t^n
      }
    }
  }
  return z;
}

}  // namespace

TEST(Witt, GhostIsRingHomomorphism) {
  std::mt19937 rng(21);
  for (int it = 0; it < 200; ++it) {
    const auto u = random_witt(rng, 24, -9, 9);
    const auto v = random_witt(rng, 24, -9, 9);
    const auto gu = witt::ghost_of(u), gv = witt::ghost_of(v);
    const auto gs = witt::ghost_of(witt::witt_add(u, v));
    const auto gp = witt::ghost_of(witt::witt_mul(u, v));
    for (std::size_t n = 1; n <= 24; ++n) {
      EXPECT_EQ(gs.at(n), gu.at(n) + gv.at(n));
      EXPECT_EQ(gp.at(n), gu.at(n) * gv.at(n));
    }
    EXPECT_EQ(witt::from_ghost(gu), u);
  }
}

TEST(Witt, MultiplicationMatchesProductOfCyclicSets) {
  std::mt19937 rng(8);
  for (int it = 0; it < 40; ++it) {
    const auto u = random_witt(rng, 8, 0, 2);
    const auto v = random_witt(rng, 8, 0, 2);
    EXPECT_EQ(witt::witt_mul(u, v), product_by_cycles(u, v));
  }
  WittVec a(6), b(6), c(6);
  a.at(2) = 1;
  b.at(3) = 1;
  c.at(6) = 1;
  EXPECT_EQ(witt::witt_mul(a, b), c);
}

TEST(Witt, MultiplicationCommutativeAssociative) {
  std::mt19937 rng(13);
  for (int it = 0; it < 100; ++it) {
    const auto u = random_witt(rng, 12, -9, 9), v = random_witt(rng, 12, -9, 9), w = random_witt(rng, 12, -9, 9);
    EXPECT_EQ(witt::witt_mul(u, v), witt::witt_mul(v, u));
    EXPECT_EQ(witt::witt_mul(witt::witt_mul(u, v), w), witt::witt_mul(u, witt::witt_mul(v, w)));
  }
}

TEST(Witt, FromGhostNamesNonIntegralIndex) {
  try {
    witt::from_ghost(witt::GhostVec({1, 0, 1}));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("n=2"), std::string::npos);
  }
}

TEST(Witt, TruncationMismatchAndOverflow) {
  EXPECT_THROW(witt::witt_add(WittVec(3), WittVec(4)), ValidationError);
  WittVec big(2);
  big.at(1) = INT64_MAX / 2;
  EXPECT_THROW(witt::witt_mul(big, big), ResourceError);
  EXPECT_THROW(witt::witt_add(big, witt::witt_add(big, big)), ResourceError);
}

TEST(Zeta, ProductFormMatchesGeometricSeries) {
  std::mt19937 rng(3);
  for (int it = 0; it < 50; ++it) {
    const auto w = random_witt(rng, 10, -3, 3);
    EXPECT_EQ(witt::zeta_from_witt(w, 10).coeffs, zeta_by_geometric_series(w, 10));
  }
  EXPECT_THROW(witt::zeta_from_witt(WittVec(3), 4), ValidationError);
}

TEST(Zeta, ExponentialFormOfProjectiveLine) {
  for (std::int64_t q : {3, 5}) {
    std::vector<std::int64_t> counts;
    std::int64_t qn = 1;
    for (int n = 1; n <= 8; ++n) counts.push_back((qn *= q) + 1);
    const auto z = witt::zeta_exp_form(counts, 8);
    std::int64_t s = 0, qk = 1;
    for (std::size_t k = 0; k <= 8; ++k, qk *= q) {
      s += qk;
      EXPECT_EQ(z.coeffs[k], s);
    }
  }
  const std::vector<std::int64_t> bad{1, 2};
  EXPECT_THROW(witt::zeta_exp_form(bad, 2), ValidationError);
}

TEST(Zeta, SeriesProduct) {
  const witt::IntSeries a{{1, 1}}, b{{1, -1}};
  EXPECT_EQ(witt::series_mul(a, b).coeffs, (std::vector<std::int64_t>{1, 0}));
}
