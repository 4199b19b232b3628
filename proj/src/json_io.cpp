#include "dzeta/json_io.hpp"

#include <set>

#include "dzeta/errors.hpp"

namespace dzeta::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  require_object(j, path);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!ok.count(item.key())) fail(path, "unknown key '" + item.key() + "'");
  }
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path, std::string("missing key '") + key + "'");
  return j.at(key);
}

std::int64_t get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) fail(path, "integer out of range");
  return j.get<std::int64_t>();
}

std::uint64_t get_uint(const Json& j, const std::string& path) {
  const std::int64_t v = get_int(j, path);
  if (v < 0) fail(path, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> get_strings(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::string type_of(const Json& j, const std::string& path) { return get_string(field(j, path, "type"), path + ".type"); }

geo::VarietySpec parse_variety_at(const Json& j, const ff::ExtField& base, const std::string& path) {
  const std::string type = type_of(j, path);
  if (type == "p1") {
    check_keys(j, path, {"type"});
    return geo::VarietySpec::projective_line();
  }
  if (type == "weierstrass") {
    check_keys(j, path, {"type", "a", "b"});
    return geo::VarietySpec::weierstrass(parse_constant(field(j, path, "a"), base, path + ".a"),
                                         parse_constant(field(j, path, "b"), base, path + ".b"));
  }
  if (type == "twist") {
    check_keys(j, path, {"type", "alpha", "a", "b"});
    return geo::VarietySpec::twist(parse_constant(field(j, path, "alpha"), base, path + ".alpha"),
                                   parse_constant(field(j, path, "a"), base, path + ".a"),
                                   parse_constant(field(j, path, "b"), base, path + ".b"));
  }
  if (type == "affine") {
    check_keys(j, path, {"type", "vars", "polys"});
    return geo::VarietySpec::affine(get_strings(field(j, path, "vars"), path + ".vars"),
                                    get_strings(field(j, path, "polys"), path + ".polys"));
  }
  if (type == "union") {
    check_keys(j, path, {"type", "parts"});
    const Json& parts = field(j, path, "parts");
    if (!parts.is_array()) fail(path + ".parts", "expected an array");
    std::vector<geo::VarietySpec> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out.push_back(parse_variety_at(parts[i], base, path + ".parts[" + std::to_string(i) + "]"));
    }
    return geo::VarietySpec::disjoint_union(std::move(out));
  }
  fail(path + ".type", "unknown variety type '" + type + "'");
}

Json witt_like_to_json(const std::vector<std::int64_t>& v, const char* key) {
  Json j;
  j["N"] = v.size();
  Json m = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) m[std::to_string(i + 1)] = v[i];
  }
  j[key] = m;
  return j;
}

std::vector<std::int64_t> parse_witt_like(const Json& j, const char* key) {
  check_keys(j, "$", {"N", key});
  const std::uint64_t N = get_uint(field(j, "$", "N"), "$.N");
  if (N == 0 || N > 100000) fail("$.N", "N must be in [1, 100000]");
  std::vector<std::int64_t> v(N, 0);
  const std::string p = std::string("$.") + key;
  const Json& m = field(j, "$", key);
  require_object(m, p);
  for (const auto& item : m.items()) {
    const std::string& k = item.key();
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      fail(p, "index '" + k + "' is not a positive integer");
    }
    if (idx < 1 || idx > N) fail(p, "index " + k + " outside 1.." + std::to_string(N));
    v[idx - 1] = get_int(item.value(), p + "." + k);
  }
  return v;
}

}  // namespace

ff::FieldSpec parse_field_spec(const Json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) fail(path, "expected [p, e]");
    return ff::FieldSpec::parse("[" + std::to_string(get_uint(j[0], path + "[0]")) + "," +
                                std::to_string(get_uint(j[1], path + "[1]")) + "]");
  }
  if (j.is_string()) return ff::FieldSpec::parse(j.get<std::string>());
  return ff::FieldSpec::parse(std::to_string(get_uint(j, path)));
}

ff::FFElem parse_constant(const Json& j, const ff::ExtField& base, const std::string& path) {
  if (j.is_array()) {
    if (j.size() > base.degree()) {
      fail(path, "expected at most " + std::to_string(base.degree()) + " coefficients");
    }
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(get_int(j[i], path + "[" + std::to_string(i) + "]"));
    return base.from_coeffs(c);
  }
  return base.from_int(get_int(j, path));
}

Json constant_to_json(const ff::FFElem& x) {
  const auto& c = x.coeffs();
  if (c.size() == 1) return c[0];
  Json a = Json::array();
  for (auto v : c) a.push_back(v);
  return a;
}

geo::VarietySpec parse_variety_spec(const Json& j, const ff::FieldSpec& base) {
  const ff::ExtField F = ff::ExtField::build(base, 1);
  geo::VarietySpec v = parse_variety_at(j, F, "$");
  geo::validate_variety(v, base);
  return v;
}

Json variety_to_json(const geo::VarietySpec& v) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json j;
        if constexpr (std::is_same_v<T, geo::ProjectiveLine>) {
          j["type"] = "p1";
        } else if constexpr (std::is_same_v<T, geo::WeierstrassCurve>) {
          j["type"] = "weierstrass";
          j["a"] = constant_to_json(s.a);
          j["b"] = constant_to_json(s.b);
        } else if constexpr (std::is_same_v<T, geo::TwistedWeierstrass>) {
          j["type"] = "twist";
          j["alpha"] = constant_to_json(s.alpha);
          j["a"] = constant_to_json(s.a);
          j["b"] = constant_to_json(s.b);
        } else if constexpr (std::is_same_v<T, geo::AffineSystem>) {
          j["type"] = "affine";
          j["vars"] = s.vars;
          j["polys"] = s.polys;
        } else {
          j["type"] = "union";
          j["parts"] = Json::array();
          for (const auto& p : s.parts) j["parts"].push_back(variety_to_json(p));
        }
        return j;
      },
      v.shape);
}

geo::AutomorphismSpec parse_automorphism_spec(const Json& j, const ff::FieldSpec& base) {
  const ff::ExtField F = ff::ExtField::build(base, 1);
  const std::string type = type_of(j, "$");
  if (type == "scale") {
    check_keys(j, "$", {"type", "lambda"});
    return {geo::Scale{parse_constant(field(j, "$", "lambda"), F, "$.lambda")}};
  }
  if (type == "mobius") {
    check_keys(j, "$", {"type", "m"});
    const Json& m = field(j, "$", "m");
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 || m[1].size() != 2) {
      fail("$.m", "expected [[a,b],[c,d]]");
    }
    return {geo::MobiusMatrix{parse_constant(m[0][0], F, "$.m[0][0]"), parse_constant(m[0][1], F, "$.m[0][1]"),
                              parse_constant(m[1][0], F, "$.m[1][0]"), parse_constant(m[1][1], F, "$.m[1][1]")}};
  }
  if (type == "diag") {
    check_keys(j, "$", {"type", "alpha", "beta"});
    return {geo::CurveDiagonal{parse_constant(field(j, "$", "alpha"), F, "$.alpha"),
                               parse_constant(field(j, "$", "beta"), F, "$.beta")}};
  }
  if (type == "permutation") {
    check_keys(j, "$", {"type", "table"});
    const Json& t = field(j, "$", "table");
    if (!t.is_array()) fail("$.table", "expected an array");
    geo::ExplicitPermutation p;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::uint64_t v = get_uint(t[i], "$.table[" + std::to_string(i) + "]");
      if (v >= UINT32_MAX) fail("$.table[" + std::to_string(i) + "]", "index too large");
      p.table.push_back(static_cast<std::uint32_t>(v));
    }
    return {p};
  }
  fail("$.type", "unknown automorphism type '" + type + "'");
}

Json automorphism_to_json(const geo::AutomorphismSpec& a) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json j;
        if constexpr (std::is_same_v<T, geo::Scale>) {
          j["type"] = "scale";
          j["lambda"] = constant_to_json(s.lambda);
        } else if constexpr (std::is_same_v<T, geo::MobiusMatrix>) {
          j["type"] = "mobius";
          j["m"] = Json::array({Json::array({constant_to_json(s.a), constant_to_json(s.b)}),
                                Json::array({constant_to_json(s.c), constant_to_json(s.d)})});
        } else if constexpr (std::is_same_v<T, geo::CurveDiagonal>) {
          j["type"] = "diag";
          j["alpha"] = constant_to_json(s.alpha);
          j["beta"] = constant_to_json(s.beta);
        } else {
          j["type"] = "permutation";
          j["table"] = s.table;
        }
        return j;
      },
      a.action);
}

witt::WittVec parse_witt(const Json& j) { return witt::WittVec(parse_witt_like(j, "b")); }

Json witt_to_json(const witt::WittVec& w) { return witt_like_to_json(w.b, "b"); }

witt::GhostVec parse_ghost(const Json& j) { return witt::GhostVec(parse_witt_like(j, "c")); }

Json ghost_to_json(const witt::GhostVec& g) { return witt_like_to_json(g.c, "c"); }

asmb::AssemblerData parse_assembler(const Json& j) {
  check_keys(j, "$", {"objects", "initial", "morphisms", "compose", "coverage", "policy"});
  asmb::AssemblerData d;
  d.objects = get_strings(field(j, "$", "objects"), "$.objects");
  d.initial = get_string(field(j, "$", "initial"), "$.initial");
  if (j.contains("morphisms")) {
    const Json& ms = j.at("morphisms");
    if (!ms.is_array()) fail("$.morphisms", "expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string p = "$.morphisms[" + std::to_string(i) + "]";
      check_keys(ms[i], p, {"id", "src", "dst"});
      d.morphisms.push_back({get_string(field(ms[i], p, "id"), p + ".id"), get_string(field(ms[i], p, "src"), p + ".src"),
                             get_string(field(ms[i], p, "dst"), p + ".dst")});
    }
  }
  if (j.contains("compose")) {
    const Json& cs = j.at("compose");
    if (!cs.is_array()) fail("$.compose", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string p = "$.compose[" + std::to_string(i) + "]";
      const auto t = get_strings(cs[i], p);
      if (t.size() != 3) fail(p, "expected [f, g, composite]");
      d.compose.push_back({t[0], t[1], t[2]});
    }
  }
  if (j.contains("coverage")) {
    const Json& cv = j.at("coverage");
    if (!cv.is_array()) fail("$.coverage", "expected an array");
    for (std::size_t i = 0; i < cv.size(); ++i) {
      const std::string p = "$.coverage[" + std::to_string(i) + "]";
      check_keys(cv[i], p, {"target", "members"});
      d.coverage.push_back({get_string(field(cv[i], p, "target"), p + ".target"),
                            get_strings(field(cv[i], p, "members"), p + ".members")});
    }
  }
  if (j.contains("policy")) d.policy = asmb::parse_policy(get_string(j.at("policy"), "$.policy"));
  return d;
}

Json assembler_to_json(const asmb::AssemblerData& d) {
  Json j;
  j["objects"] = d.objects;
  j["initial"] = d.initial;
  j["morphisms"] = Json::array();
  for (const auto& m : d.morphisms) j["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
  j["compose"] = Json::array();
  for (const auto& c : d.compose) j["compose"].push_back(Json::array({c.first, c.second, c.result}));
  j["coverage"] = Json::array();
  for (const auto& f : d.coverage) j["coverage"].push_back({{"target", f.target}, {"members", f.members}});
  j["policy"] = asmb::to_string(d.policy);
  return j;
}

Json abelian_group_to_json(const asmb::AbelianGroup& g) { return {{"rank", g.rank}, {"torsion", g.torsion}}; }

Json k1_to_json(const orb::K1Class& c) { return {{"n", c.n}, {"sign", c.sign}, {"twist", c.twist}}; }

Json census_to_json(const orb::OrbitCensus& c) {
  Json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["counts"] = Json::array();
  for (const auto& [key, cnt] : c.counts) j["counts"].push_back({{"d", key.first}, {"a", key.second}, {"count", cnt}});
  return j;
}

}  // namespace dzeta::io
