#include <gtest/gtest.h>

#include <random>

#include "dzeta/errors.hpp"
#include "dzeta/numtheory.hpp"
#include "dzeta/orbits.hpp"
#include "zn_sets.hpp"

using namespace dzeta;
using orb::K1Class;

TEST(K1Class, GroupLaw) {
  EXPECT_EQ((K1Class{4, -1, 3} * K1Class{4, -1, 2}), (K1Class{4, 1, 1}));
  EXPECT_EQ((K1Class{4, -1, 3} * K1Class::identity(4)), (K1Class{4, -1, 3}));
  EXPECT_THROW((K1Class{4, 1, 0} * K1Class{2, 1, 0}), std::invalid_argument);
  EXPECT_EQ((K1Class{2, -1, 1}).str(), "(-1, 1 mod 2)");
}

TEST(K1Class, MatchesConstructionOracle) {
  std::mt19937 rng(1234);
  for (int it = 0; it < 300; ++it) {
    const std::uint64_t n = rng() % 12 + 1;
    const auto s = zn::random_set(rng, n, rng() % (60 / n) + 1);
    const auto e = zn::random_equivariant(rng, s);
    EXPECT_EQ(orb::k1_class(n, s.frob, zn::realize(s, e)), zn::oracle_class(s, e));
  }
}

TEST(K1Class, HomomorphismAndConjugationInvariance) {
  std::mt19937 rng(99);
  for (int it = 0; it < 200; ++it) {
    const std::uint64_t n = rng() % 12 + 1;
    const auto s = zn::random_set(rng, n, rng() % (60 / n) + 1);
    const auto f = zn::realize(s, zn::random_equivariant(rng, s));
    const auto g = zn::realize(s, zn::random_equivariant(rng, s));
    EXPECT_EQ(orb::k1_class(n, s.frob, zn::then(f, g)), orb::k1_class(n, s.frob, f) * orb::k1_class(n, s.frob, g));
    EXPECT_EQ(orb::k1_class(n, s.frob, zn::then(zn::then(zn::inverse(g), f), g)), orb::k1_class(n, s.frob, f));
  }
}

TEST(K1Class, RejectsBadInput) {
  const std::vector<std::uint32_t> frob{1, 0, 3, 2};
  EXPECT_THROW(orb::k1_class(2, frob, std::vector<std::uint32_t>{1, 2, 0, 3}), ValidationError);
  EXPECT_THROW(orb::k1_class(3, frob, std::vector<std::uint32_t>{0, 1, 2, 3}), ValidationError);
  EXPECT_THROW(orb::k1_class(2, frob, std::vector<std::uint32_t>{0, 0, 2, 3}), ValidationError);
}

TEST(OrbitCensus, ClassFromCensusMatchesWhenHypothesisHolds) {
  std::mt19937 rng(5);
  int checked = 0;
  for (int it = 0; it < 300; ++it) {
    const std::uint64_t n = rng() % 12 + 1;
    const std::size_t d = rng() % 4 + 1;
    const std::size_t orbits = d * (rng() % std::max<std::size_t>(1, 60 / (n * d)) + 1);
    if (orbits * n > 60) continue;
    const auto divs = nt::divisors(n);
    const std::uint64_t g = divs[rng() % divs.size()];
    const auto s = zn::random_set(rng, n, orbits);
    const auto phi = zn::realize(s, zn::regular_equivariant(rng, s, d, g));
    const auto c = orb::orbit_census(n, s.frob, phi);
    EXPECT_EQ(c.m, d * (n / g));
    EXPECT_EQ(c.total_points(), s.size());
    EXPECT_EQ(orb::census_to_class(c), orb::k1_class(n, s.frob, phi));
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(OrbitCensus, NonFreeActionReportsWitness) {
  // Two orbits of size 2; phi swaps the orbits with no rotation on one and a
  // fixed orbit elsewhere would make cycle lengths differ.
  const std::vector<std::uint32_t> frob{1, 0, 3, 2, 5, 4};
  const std::vector<std::uint32_t> phi{2, 3, 0, 1, 4, 5};
  try {
    orb::orbit_census(2, frob, phi);
    FAIL();
  } catch (const orb::NonFreeActionError& e) {
    EXPECT_EQ(e.order, 2u);
    EXPECT_EQ(e.power, 1u);
    EXPECT_EQ(e.index, 4u);
  }
}

TEST(Orbits, ProjectiveLineNegationPinned) {
  const auto p1 = geo::VarietySpec::projective_line();
  auto neg = [](std::uint64_t q) { return geo::AutomorphismSpec{geo::Scale{ff::ExtField::build({q, 1}, 1).from_int(-1)}}; };
  EXPECT_EQ(orb::psi(p1, neg(3), {3, 1}, 2), (K1Class{2, -1, 1}));
  EXPECT_EQ(orb::psi(p1, neg(7), {7, 1}, 2), (K1Class{2, -1, 1}));
  EXPECT_EQ(orb::psi(p1, neg(5), {5, 1}, 2), (K1Class{2, 1, 0}));
  EXPECT_EQ(orb::psi(p1, neg(7), {7, 1}, 3), (K1Class{3, 1, 0}));
}

TEST(Orbits, ClosedFormAgreesWithBruteForceSmall) {
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const auto F = ff::ExtField::build(ff::FieldSpec::parse(std::to_string(q)), 1);
    for (unsigned n = 1; n <= 3; ++n) {
      const auto k = orb::psi(geo::VarietySpec::projective_line(), {geo::Scale{F.from_int(-1)}}, F.base_spec(), n);
      EXPECT_EQ(k, orb::closed_form_calc(q, n)) << q << " " << n;
    }
  }
  EXPECT_THROW(orb::closed_form_calc(4, 1), ValidationError);
  EXPECT_THROW(orb::closed_form_calc(6, 1), ValidationError);
}

TEST(Orbits, ScalingLevelsOfQuarterTurn) {
  // x -> 2x on P^1 over F_5 in degree 2: 2 has order 4, every orbit pair
  // is swapped with a half twist.
  const auto F = ff::ExtField::build({5, 1}, 1);
  const auto s = geo::exact_degree_stratum(geo::VarietySpec::projective_line(), {5, 1}, 2);
  const auto phi = geo::apply_automorphism({geo::Scale{F.from_int(2)}}, s);
  const auto c = orb::orbit_census(s, phi);
  EXPECT_EQ(c.m, 4u);
  EXPECT_EQ(c.total_points(), 20u);
  const auto P = orb::scaling_levels(c);
  std::uint64_t pts = 0;
  for (auto [d, pd] : P) pts += pd * (c.m / d) * (d == 1 ? 1 : nt::euler_phi(d)) * c.n;
  EXPECT_EQ(pts, 20u);
}

TEST(Orbits, GenrootPrediction) {
  EXPECT_EQ(orb::genroot_predicted_P(5, 0), 1u);
  EXPECT_EQ(orb::genroot_predicted_P(5, 1), 2u);
  EXPECT_EQ(orb::genroot_predicted_P(5, 2), 36u);
  EXPECT_EQ(orb::genroot_predicted_P(13, 0), 3u);
  EXPECT_EQ(orb::genroot_predicted_P(13, 1), 18u);
  EXPECT_THROW(orb::genroot_predicted_P(5, 3), ValidationError);
}

TEST(Orbits, EtaProfileAndVerdict) {
  const std::vector<std::uint64_t> b{4, 3, 8};
  const auto prof = orb::mult_of_eta_profile(b, 3);
  EXPECT_EQ(prof, (std::vector<K1Class>{{1, 1, 0}, {2, -1, 0}, {3, 1, 0}}));
  EXPECT_EQ(orb::permutativity_verdict(prof), orb::Verdict::kInconclusive);
  const std::vector<K1Class> twisted{{2, -1, 1}};
  EXPECT_EQ(orb::permutativity_verdict(twisted), orb::Verdict::kNonPermutativeCertified);
  EXPECT_EQ(orb::to_string(orb::Verdict::kNonPermutativeCertified), "NonPermutativeCertified");
}
