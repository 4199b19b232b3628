#pragma once

// Finite assemblers given as explicit category data (objects, non-identity
// morphisms, composition table, initial object, coverage), with pullbacks
// computed by cone enumeration, closure of disjoint covering families under
// refinement, and K_0 as the cokernel of the covering relations.
//
// Composition is written in diagrammatic order: compose(f, g) is "f, then g",
// i.e. g o f. Identities are implicit and named "id:X".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dzeta::asmb {

enum class Policy { kExcludeDegenerateProductCovers, kLiteral };

std::string to_string(Policy p);
/// "default" or "literal".
Policy parse_policy(const std::string& s);

struct MorphismData {
  std::string id, src, dst;
};

/// result = second o first.
struct ComposeEntry {
  std::string first, second, result;
};

struct FamilyData {
  std::string target;
  std::vector<std::string> members;
};

struct AssemblerData {
  std::vector<std::string> objects;
  std::string initial;
  std::vector<MorphismData> morphisms;
  std::vector<ComposeEntry> compose;
  std::vector<FamilyData> coverage;
  Policy policy = Policy::kExcludeDegenerateProductCovers;
};

struct Morphism {
  std::string id;
  std::size_t src = 0, dst = 0;
  bool identity = false;
};

/// Members sorted by morphism index; a multiset.
struct Family {
  std::size_t target = 0;
  std::vector<std::size_t> members;
  bool operator==(const Family&) const = default;
  bool operator<(const Family& o) const {
    return target != o.target ? target < o.target : members < o.members;
  }
};

class FinAssembler {
 public:
  /// Throws ValidationError for unknown or duplicate ids, ill-typed
  /// composition entries and coverage members with the wrong target. Axiom
  /// violations are reported by validate() instead.
  static FinAssembler from_data(const AssemblerData& d);
  /// Non-identity morphisms and composites only.
  AssemblerData to_data() const;

  std::size_t object_count() const { return objects_.size(); }
  const std::string& object_name(std::size_t o) const { return objects_.at(o); }
  std::optional<std::size_t> object_index(const std::string& name) const;
  std::size_t initial() const { return initial_; }
  std::vector<std::size_t> noninitial_objects() const;

  std::size_t morphism_count() const { return morphisms_.size(); }
  const Morphism& morphism(std::size_t f) const { return morphisms_.at(f); }
  std::optional<std::size_t> morphism_index(const std::string& id) const;
  std::size_t identity(std::size_t o) const { return identity_.at(o); }
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const { return hom_.at(a * objects_.size() + b); }
  /// "f then g"; nullopt if not composable or missing from the table.
  std::optional<std::size_t> compose(std::size_t f, std::size_t g) const;

  const std::vector<Family>& coverage() const { return coverage_; }
  Policy policy() const { return policy_; }
  void set_policy(Policy p) { policy_ = p; }

 private:
  std::vector<std::string> objects_;
  std::size_t initial_ = 0;
  std::vector<Morphism> morphisms_;
  std::vector<std::size_t> identity_;
  std::vector<std::vector<std::size_t>> hom_;
  std::vector<std::int64_t> comp_;  // morphism_count^2, -1 = undefined
  std::vector<Family> coverage_;
  Policy policy_ = Policy::kExcludeDegenerateProductCovers;
};

struct Violation {
  std::string kind;     // composition-missing, non-associative, initial, non-monic, axiom-I
  std::string witness;
};

std::vector<Violation> validate(const FinAssembler& a);

struct Pullback {
  std::size_t object = 0;
  std::size_t p1 = 0, p2 = 0;  // projections to the sources of f and g
};

/// Limit of f: X -> Z <- Y : g, if one exists. Candidates are tried with the
/// initial object first, then in object order.
std::optional<Pullback> pullback(const FinAssembler& a, std::size_t f, std::size_t g);

/// The pullback exists and is the initial object.
bool is_disjoint(const FinAssembler& a, std::size_t f, std::size_t g);
/// Pairwise disjointness of distinct member slots.
bool is_disjoint_family(const FinAssembler& a, const Family& fam);

struct ClosureCaps {
  std::size_t max_family_size = 8;
  std::size_t max_families = 10'000;
};

/// All covering families reachable from the coverage (and the trivial
/// families {id}) by refinement, deduplicated. Throws ResourceError naming
/// the cap that was hit.
std::vector<Family> refinement_closure(const FinAssembler& a, const ClosureCaps& caps = {});

/// The disjoint members of refinement_closure, sorted.
std::vector<Family> cover_closure(const FinAssembler& a, const ClosureCaps& caps = {});

struct AbelianGroup {
  std::uint64_t rank = 0;
  std::vector<std::int64_t> torsion;  // each > 1, each dividing the next
  bool operator==(const AbelianGroup&) const = default;
  std::string str() const;
};

/// Cokernel of Z^rows -> Z^cols given by the integer matrix, via Smith
/// normal form with overflow-checked arithmetic.
AbelianGroup smith_cokernel(std::vector<std::vector<std::int64_t>> rows, std::size_t cols);

/// Free abelian group on the noninitial objects modulo [T] = sum [A_i] for
/// every family in cover_closure.
AbelianGroup k0(const FinAssembler& a, const ClosureCaps& caps = {});

FinAssembler box_product(const FinAssembler& a, const FinAssembler& b, Policy policy);

/// Full subcategory on the objects not listed; coverage families keep their
/// target if it survives and lose members whose source was removed. The
/// listed objects together with the initial object must be closed under
/// taking sources of morphisms into them.
FinAssembler remove_sieve(const FinAssembler& a, const std::vector<std::string>& objects);

/// box_product with every pair having an initial coordinate removed.
FinAssembler smash_product(const FinAssembler& a, const FinAssembler& b, Policy policy);

/// Object names of the form (x,y) with x or y initial, excluding the initial pair.
std::vector<std::string> wedge_objects(const FinAssembler& a, const FinAssembler& b);

}  // namespace dzeta::asmb
