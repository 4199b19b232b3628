#include "dzeta/fixtures.hpp"

namespace dzeta::fix {

asmb::AssemblerData example_square() {
  asmb::AssemblerData d;
  d.objects = {"0", "A", "B", "C", "D"};
  d.initial = "0";
  d.morphisms = {{"0A", "0", "A"}, {"0B", "0", "B"}, {"0C", "0", "C"}, {"0D", "0", "D"}, {"AB", "A", "B"},
                 {"AC", "A", "C"}, {"BD", "B", "D"}, {"CD", "C", "D"}, {"AD", "A", "D"}};
  d.compose = {{"0A", "AB", "0B"}, {"0A", "AC", "0C"}, {"0A", "AD", "0D"}, {"0B", "BD", "0D"},
               {"0C", "CD", "0D"}, {"AB", "BD", "AD"}, {"AC", "CD", "AD"}};
  d.coverage = {{"D", {"BD", "CD"}}, {"A", {}}, {"0", {}}};
  return d;
}

std::vector<std::string> square_sieve() { return {"A"}; }

asmb::AssemblerData sphere() {
  asmb::AssemblerData d;
  d.objects = {"0", "*"};
  d.initial = "0";
  d.morphisms = {{"0*", "0", "*"}};
  d.coverage = {{"0", {}}};
  return d;
}

}  // namespace dzeta::fix
