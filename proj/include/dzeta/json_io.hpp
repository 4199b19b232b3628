#pragma once

// JSON schemas for varieties, automorphisms, Witt vectors and assemblers.
// Unknown keys are rejected; errors carry a JSON path such as $.parts[1].a.

#include <json.hpp>

#include "dzeta/assembler.hpp"
#include "dzeta/ffield.hpp"
#include "dzeta/geometry.hpp"
#include "dzeta/orbits.hpp"
#include "dzeta/wittburnside.hpp"

namespace dzeta::io {

using Json = nlohmann::ordered_json;

/// 7 or [3, 2].
ff::FieldSpec parse_field_spec(const Json& j, const std::string& path = "$");

/// A base-field constant: INT (reduced mod p) or, for q = p^e, an array of at
/// most e integers giving the coefficients over F_p, low-to-high.
ff::FFElem parse_constant(const Json& j, const ff::ExtField& base, const std::string& path);
Json constant_to_json(const ff::FFElem& x);

geo::VarietySpec parse_variety_spec(const Json& j, const ff::FieldSpec& base);
Json variety_to_json(const geo::VarietySpec& v);

geo::AutomorphismSpec parse_automorphism_spec(const Json& j, const ff::FieldSpec& base);
Json automorphism_to_json(const geo::AutomorphismSpec& a);

/// {"N": int, "b": {"1": int, ...}}; missing indices are 0.
witt::WittVec parse_witt(const Json& j);
Json witt_to_json(const witt::WittVec& w);
/// {"N": int, "c": {"1": int, ...}}.
witt::GhostVec parse_ghost(const Json& j);
Json ghost_to_json(const witt::GhostVec& g);

asmb::AssemblerData parse_assembler(const Json& j);
Json assembler_to_json(const asmb::AssemblerData& d);
Json abelian_group_to_json(const asmb::AbelianGroup& g);

Json k1_to_json(const orb::K1Class& c);
Json census_to_json(const orb::OrbitCensus& c);

}  // namespace dzeta::io
