#include <gtest/gtest.h>

#include "dzeta/errors.hpp"
#include "dzeta/json_io.hpp"

using namespace dzeta;
using io::Json;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(JsonIo, VarietiesRoundTrip) {
  const ff::FieldSpec q{5, 1};
  for (const char* text : {R"({"type":"p1"})", R"({"type":"weierstrass","a":1,"b":0})",
                           R"({"type":"twist","alpha":2,"a":1,"b":0})",
                           R"({"type":"affine","vars":["x","y"],"polys":["y^2 - x^3 - x"]})",
                           R"({"type":"union","parts":[{"type":"p1"},{"type":"affine","vars":["x"],"polys":["x"]}]})"}) {
    const Json j = Json::parse(text);
    EXPECT_EQ(io::variety_to_json(io::parse_variety_spec(j, q)), j) << text;
  }
}

TEST(JsonIo, ConstantsReducedModP) {
  const auto v = io::parse_variety_spec(Json::parse(R"({"type":"weierstrass","a":-4,"b":10})"), {5, 1});
  EXPECT_EQ(io::variety_to_json(v), Json::parse(R"({"type":"weierstrass","a":1,"b":0})"));
  const auto w = io::parse_variety_spec(Json::parse(R"({"type":"weierstrass","a":[1,1],"b":[0,4]})"), {3, 2});
  EXPECT_EQ(io::variety_to_json(w)["b"], Json::parse("[0,1]"));
}

TEST(JsonIo, ErrorsCarryPaths) {
  const ff::FieldSpec q{5, 1};
  EXPECT_NE(error_of([&] { io::parse_variety_spec(Json::parse(R"({"type":"p1","extra":1})"), q); }).find("$: unknown key 'extra'"),
            std::string::npos);
  EXPECT_NE(error_of([&] {
              io::parse_variety_spec(Json::parse(R"({"type":"union","parts":[{"type":"p1"},{"type":"weierstrass","a":"x","b":0}]})"), q);
            }).find("$.parts[1].a"),
            std::string::npos);
  EXPECT_NE(error_of([&] { io::parse_variety_spec(Json::parse(R"({"type":"cone"})"), q); }).find("$.type"), std::string::npos);
  EXPECT_NE(error_of([&] { io::parse_automorphism_spec(Json::parse(R"({"type":"mobius","m":[[0,1]]})"), q); }).find("$.m"),
            std::string::npos);
  EXPECT_THROW(io::parse_variety_spec(Json::parse(R"({"type":"weierstrass","a":0,"b":0})"), q), ValidationError);
  EXPECT_THROW(io::parse_variety_spec(Json::parse(R"({"type":"weierstrass","a":[1,1],"b":0})"), q), ValidationError);
}

TEST(JsonIo, Automorphisms) {
  const ff::FieldSpec q{5, 1};
  for (const char* text : {R"({"type":"scale","lambda":4})", R"({"type":"mobius","m":[[0,1],[1,0]]})",
                           R"({"type":"diag","alpha":4,"beta":2})", R"({"type":"permutation","table":[1,0]})"}) {
    const Json j = Json::parse(text);
    EXPECT_EQ(io::automorphism_to_json(io::parse_automorphism_spec(j, q)), j) << text;
  }
  const auto neg = io::parse_automorphism_spec(Json::parse(R"({"type":"scale","lambda":-1})"), q);
  EXPECT_EQ(io::automorphism_to_json(neg)["lambda"], 4);
}

TEST(JsonIo, WittAndGhost) {
  const auto w = io::parse_witt(Json::parse(R"({"N":4,"b":{"1":2,"4":-1}})"));
  EXPECT_EQ(w.b, (std::vector<std::int64_t>{2, 0, 0, -1}));
  EXPECT_EQ(io::witt_to_json(w), Json::parse(R"({"N":4,"b":{"1":2,"4":-1}})"));
  EXPECT_THROW(io::parse_witt(Json::parse(R"({"N":4,"b":{"5":1}})")), ValidationError);
  EXPECT_THROW(io::parse_witt(Json::parse(R"({"N":4,"b":{"x":1}})")), ValidationError);
  EXPECT_THROW(io::parse_witt(Json::parse(R"({"N":4,"b":{},"c":{}})")), ValidationError);
  EXPECT_EQ(io::parse_ghost(Json::parse(R"({"N":2,"c":{"2":3}})")).c, (std::vector<std::int64_t>{0, 3}));
}

TEST(JsonIo, AssemblerRoundTrip) {
  const char* text = R"({"objects":["0","*"],"initial":"0","morphisms":[{"id":"0*","src":"0","dst":"*"}],
                         "compose":[],"coverage":[{"target":"0","members":[]}],"policy":"literal"})";
  const auto d = io::parse_assembler(Json::parse(text));
  EXPECT_EQ(d.policy, asmb::Policy::kLiteral);
  EXPECT_EQ(io::assembler_to_json(d), Json::parse(text));
  EXPECT_THROW(io::parse_assembler(Json::parse(R"({"objects":["0"],"initial":"0","cover":[]})")), ValidationError);
}

TEST(JsonIo, FieldSpecs) {
  EXPECT_EQ(io::parse_field_spec(Json(7)), (ff::FieldSpec{7, 1}));
  EXPECT_EQ(io::parse_field_spec(Json::parse("[3,2]")), (ff::FieldSpec{3, 2}));
  EXPECT_THROW(io::parse_field_spec(Json::parse("[3]")), ValidationError);
}
