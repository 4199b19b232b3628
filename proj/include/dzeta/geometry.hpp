#pragma once

// Varieties from a closed menu of shapes, exhaustive point enumeration over
// F_{q^n}, exact-degree strata X_n with their Frobenius permutation, and
// automorphisms acting as index permutations.
//
// Points are identified by a 64-bit key. The top 8 bits hold the index of the
// component inside a (flattened) disjoint union; the low 56 bits are
//   projective line:  code(x), with infinity = Q
//   Weierstrass:      code(x) * Q + code(y), with infinity = Q^2
//   affine system:    coordinates in base Q, first variable most significant
// where Q = |F_{q^n}|. Sorting keys gives the canonical point order.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dzeta/ffield.hpp"

namespace dzeta::geo {

using PointKey = std::uint64_t;

struct ProjectiveLine {};

/// y^2 = x^3 + a x + b over F_q.
struct WeierstrassCurve {
  ff::FFElem a, b;
};

/// alpha y^2 = x^3 + a x + b with alpha a nonsquare in F_q.
struct TwistedWeierstrass {
  ff::FFElem alpha, a, b;
};

/// Common zero set of integer polynomials in affine space.
struct AffineSystem {
  std::vector<std::string> vars;
  std::vector<std::string> polys;
};

struct VarietySpec;

struct DisjointUnion {
  std::vector<VarietySpec> parts;
};

struct VarietySpec {
  std::variant<ProjectiveLine, WeierstrassCurve, TwistedWeierstrass, AffineSystem, DisjointUnion> shape;

  static VarietySpec projective_line() { return {ProjectiveLine{}}; }
  static VarietySpec weierstrass(ff::FFElem a, ff::FFElem b) { return {WeierstrassCurve{std::move(a), std::move(b)}}; }
  static VarietySpec twist(ff::FFElem alpha, ff::FFElem a, ff::FFElem b) {
    return {TwistedWeierstrass{std::move(alpha), std::move(a), std::move(b)}};
  }
  static VarietySpec affine(std::vector<std::string> vars, std::vector<std::string> polys) {
    return {AffineSystem{std::move(vars), std::move(polys)}};
  }
  static VarietySpec disjoint_union(std::vector<VarietySpec> parts) { return {DisjointUnion{std::move(parts)}}; }
};

/// Checks the shape invariants over the base field F_q (constants must live
/// in F_q). Throws ValidationError.
void validate_variety(const VarietySpec& v, const ff::FieldSpec& base);

/// [x:y] -> [ax+by : cx+dy] on the projective line.
struct MobiusMatrix {
  ff::FFElem a, b, c, d;
};

/// x -> lambda x on the projective line, fixing infinity.
struct Scale {
  ff::FFElem lambda;
};

/// (x, y) -> (alpha x, beta y) on a Weierstrass curve, fixing infinity.
struct CurveDiagonal {
  ff::FFElem alpha, beta;
};

/// table[i] is the index of the image of the i-th point (canonical order) of
/// whatever point set the permutation is applied to.
struct ExplicitPermutation {
  std::vector<std::uint32_t> table;
};

struct AutomorphismSpec {
  std::variant<MobiusMatrix, Scale, CurveDiagonal, ExplicitPermutation> action;
};

struct Point {
  std::size_t part = 0;
  bool infinity = false;
  std::vector<ff::FFElem> coords;
};

struct ComputeOptions {
  std::uint64_t budget = ff::kDefaultBudget;
  unsigned threads = 0;  // 0: hardware concurrency
};

namespace detail {
class Model;
}

/// X(F) for one extension field, keys ascending.
class PointSet {
 public:
  const ff::ExtField& field() const;
  std::size_t size() const { return keys_.size(); }
  const std::vector<PointKey>& keys() const { return keys_; }
  std::optional<std::size_t> index_of(PointKey key) const;
  Point point(std::size_t i) const;
  std::string describe(std::size_t i) const;

 private:
  friend PointSet enumerate_points(const VarietySpec&, const ff::ExtField&, const ComputeOptions&);
  std::shared_ptr<const detail::Model> model_;
  std::vector<PointKey> keys_;
};

PointSet enumerate_points(const VarietySpec& v, const ff::ExtField& field, const ComputeOptions& opts = {});

/// X_n: points of exact degree n, a free Z/n-set under Frobenius.
struct StratumN {
  ff::ExtField field;
  std::uint64_t n = 1;
  std::vector<PointKey> keys;
  std::vector<std::uint32_t> frob;
  std::shared_ptr<const detail::Model> model;
  ComputeOptions options;

  std::size_t size() const { return keys.size(); }
  std::optional<std::size_t> index_of(PointKey key) const;
  Point point(std::size_t i) const;
  std::string describe(std::size_t i) const;
};

StratumN exact_degree_stratum(const VarietySpec& v, const ff::FieldSpec& base, unsigned n,
                              const ComputeOptions& opts = {});

/// |X(F_{q^n})|.
std::uint64_t count_points(const VarietySpec& v, const ff::FieldSpec& base, unsigned n,
                           const ComputeOptions& opts = {});

/// b_n = |X_n| / n for n = 1..N.
std::vector<std::uint64_t> degree_census(const VarietySpec& v, const ff::FieldSpec& base, unsigned N,
                                         const ComputeOptions& opts = {});

struct AutomorphismViolation {
  std::string kind;   // "degenerate", "not-applicable", "not-well-defined", "not-bijective", "not-frobenius-equivariant"
  std::string point;  // first offending point, empty if not pointwise
  std::string message;
};

struct AutomorphismReport {
  bool ok = true;
  std::optional<AutomorphismViolation> violation;
};

/// Pointwise check over X(F): the image of every point is a point, the map
/// is a bijection, and it commutes with x -> x^q.
AutomorphismReport validate_automorphism(const VarietySpec& v, const AutomorphismSpec& a,
                                         const ff::ExtField& field, const ComputeOptions& opts = {});

/// The action on S as an index permutation. Throws ValidationError when the
/// image leaves the stratum, the map is not bijective, or it does not commute
/// with S.frob.
std::vector<std::uint32_t> apply_automorphism(const AutomorphismSpec& a, const StratumN& s);

}  // namespace dzeta::geo
