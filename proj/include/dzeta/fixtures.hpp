#pragma once

// Small assemblers used by selftest and the test suites. The same data ships
// as JSON under data/.

#include "dzeta/assembler.hpp"

namespace dzeta::fix {

/// Objects 0 (initial), A, B, C, D; A -> B -> D, A -> C -> D, A -> D. The
/// square is covered by {B -> D, C -> D}; A and 0 by the empty family.
asmb::AssemblerData example_square();

/// The square with A removed: B and C become disjoint over D.
std::vector<std::string> square_sieve();

/// Two objects 0 -> *, with 0 covered by the empty family.
asmb::AssemblerData sphere();

}  // namespace dzeta::fix
