#include <gtest/gtest.h>

#include <random>

#include "dzeta/assembler.hpp"
#include "dzeta/errors.hpp"
#include "dzeta/fixtures.hpp"

using namespace dzeta;
using asmb::FinAssembler;
using asmb::Policy;

namespace {

// Fraction-free elimination; returns (rank, |product of pivots|) where the
// latter is |det| for a nonsingular square matrix.
std::pair<std::size_t, __int128> bareiss(std::vector<std::vector<std::int64_t>> rows, std::size_t cols) {
  std::vector<std::vector<__int128>> m(rows.size(), std::vector<__int128>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = rows[i][j];
  }
  std::size_t r = 0;
  __int128 prev = 1;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return {r, prev < 0 ? -prev : prev};
}

FinAssembler square() { return FinAssembler::from_data(fix::example_square()); }
FinAssembler sphere() { return FinAssembler::from_data(fix::sphere()); }

}  // namespace

TEST(Assembler, FixturesValidate) {
  EXPECT_TRUE(asmb::validate(square()).empty());
  EXPECT_TRUE(asmb::validate(sphere()).empty());
}

TEST(Assembler, SquarePullbackIsA) {
  const auto a = square();
  const auto BD = *a.morphism_index("BD"), CD = *a.morphism_index("CD");
  const auto pb = asmb::pullback(a, BD, CD);
  ASSERT_TRUE(pb.has_value());
  EXPECT_EQ(a.object_name(pb->object), "A");
  EXPECT_EQ(a.morphism(pb->p1).id, "AB");
  EXPECT_EQ(a.morphism(pb->p2).id, "AC");
  EXPECT_FALSE(asmb::is_disjoint(a, BD, CD));
  const auto cut = asmb::remove_sieve(a, fix::square_sieve());
  EXPECT_TRUE(asmb::is_disjoint(cut, *cut.morphism_index("BD"), *cut.morphism_index("CD")));
}

TEST(Assembler, K0Fixtures) {
  const asmb::AbelianGroup z1{1, {}}, z2{2, {}}, z3{3, {}};
  EXPECT_EQ(asmb::k0(square()), z3);
  EXPECT_EQ(asmb::k0(asmb::remove_sieve(square(), fix::square_sieve())), z2);
  EXPECT_EQ(asmb::k0(sphere()), z1);
  EXPECT_EQ(asmb::k0(asmb::smash_product(sphere(), sphere(), Policy::kExcludeDegenerateProductCovers)), z1);
  EXPECT_EQ(asmb::k0(asmb::box_product(sphere(), sphere(), Policy::kExcludeDegenerateProductCovers)), z3);
  EXPECT_EQ(asmb::k0(asmb::box_product(sphere(), sphere(), Policy::kLiteral)), z1);
}

TEST(Assembler, BoxProductShape) {
  const auto b = asmb::box_product(sphere(), sphere(), Policy::kLiteral);
  EXPECT_EQ(b.object_count(), 4u);
  EXPECT_EQ(b.object_name(b.initial()), "(0,0)");
  EXPECT_TRUE(asmb::validate(b).empty());
  EXPECT_EQ(asmb::wedge_objects(sphere(), sphere()), (std::vector<std::string>{"(0,*)", "(*,0)"}));
}

TEST(Assembler, DataRoundTrip) {
  const auto a = square();
  const auto b = FinAssembler::from_data(a.to_data());
  EXPECT_EQ(asmb::k0(b), asmb::k0(a));
  EXPECT_EQ(b.to_data().objects, a.to_data().objects);
}

TEST(Assembler, ValidationFindsMissingComposite) {
  auto d = fix::example_square();
  d.compose.pop_back();
  const auto v = asmb::validate(FinAssembler::from_data(d));
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().kind, "composition-missing");
}

TEST(Assembler, MalformedDataRejected) {
  auto d = fix::example_square();
  d.morphisms.push_back({"BD", "B", "D"});
  EXPECT_THROW(FinAssembler::from_data(d), ValidationError);
  d = fix::example_square();
  d.coverage.push_back({"D", {"AB"}});
  EXPECT_THROW(FinAssembler::from_data(d), ValidationError);
  d = fix::example_square();
  d.initial = "Z";
  EXPECT_THROW(FinAssembler::from_data(d), ValidationError);
  EXPECT_THROW(asmb::parse_policy("strict"), ValidationError);
}

TEST(Assembler, SieveMustBeDownwardClosed) {
  EXPECT_THROW(asmb::remove_sieve(square(), {"B"}), ValidationError);
  EXPECT_NO_THROW(asmb::remove_sieve(square(), {"A", "B"}));
}

TEST(Assembler, ClosureCapsAreResourceErrors) {
  asmb::ClosureCaps caps;
  caps.max_families = 2;
  EXPECT_THROW(asmb::refinement_closure(square(), caps), ResourceError);
}

TEST(Smith, KnownCokernels) {
  EXPECT_EQ(asmb::smith_cokernel({{2, 0}, {0, 3}}, 2), (asmb::AbelianGroup{0, {6}}));
  EXPECT_EQ(asmb::smith_cokernel({{2, 4}, {6, 8}}, 2), (asmb::AbelianGroup{0, {2, 4}}));
  EXPECT_EQ(asmb::smith_cokernel({{1, -1, 0}}, 3), (asmb::AbelianGroup{2, {}}));
  EXPECT_EQ(asmb::smith_cokernel({}, 2), (asmb::AbelianGroup{2, {}}));
  EXPECT_EQ((asmb::AbelianGroup{1, {2}}).str(), "Z^1 + Z/2");
}

TEST(Smith, RankAndOrderMatchElimination) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> e(-5, 5);
  for (int it = 0; it < 300; ++it) {
    const std::size_t r = rng() % 5 + 1, c = rng() % 5 + 1;
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(c));
    for (auto& row : m) {
      for (auto& x : row) x = e(rng);
    }
    const auto g = asmb::smith_cokernel(m, c);
    const auto [rank, pivot] = bareiss(m, c);
    EXPECT_EQ(g.rank, c - rank);
    for (std::size_t i = 0; i + 1 < g.torsion.size(); ++i) EXPECT_EQ(g.torsion[i + 1] % g.torsion[i], 0);
    if (r == c && rank == c) {
      __int128 prod = 1;
      for (auto t : g.torsion) prod *= t;
      EXPECT_TRUE(prod == pivot);
    }
  }
}
