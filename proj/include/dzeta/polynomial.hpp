#pragma once

// Integer polynomials in named variables, parsed from the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' UINT)?
//   base   := INT | NAME | '(' expr ')'
// and expanded to a sparse form over F_p for evaluation on field points.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dzeta/ffield.hpp"

namespace dzeta::poly {

inline constexpr unsigned kMaxExponent = 256;

struct Monomial {
  std::uint32_t coeff = 0;            // in [1, p)
  std::vector<unsigned> exponents;    // one per variable
};

/// Sparse polynomial over F_p with monomials in a fixed deterministic order.
struct SparsePoly {
  std::uint64_t p = 0;
  std::size_t nvars = 0;
  std::vector<Monomial> terms;

  unsigned degree_in(std::size_t var) const;
  /// Evaluates at a point whose coordinates live in one extension field.
  ff::FFElem evaluate(std::span<const ff::FFElem> point) const;
};

/// Parses and expands `text` over F_p. Throws ValidationError with the
/// offending column on syntax errors or unknown variable names.
SparsePoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                            std::uint64_t p);

/// Syntax check only (no reduction); used when p is not yet known.
void check_polynomial_syntax(const std::string& text, const std::vector<std::string>& vars);

}  // namespace dzeta::poly
