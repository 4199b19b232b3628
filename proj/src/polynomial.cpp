#include "dzeta/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "dzeta/errors.hpp"

namespace dzeta::poly {

namespace {

// Dense-keyed map from exponent vector to coefficient mod p. p == 0 means
// "syntax only": coefficients are not tracked.
using Expansion = std::map<std::vector<unsigned>, std::uint64_t>;

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars, std::uint64_t p)
      : s_(text), vars_(vars), p_(p) {}

  Expansion parse() {
    Expansion e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("polynomial '" + s_ + "': " + what + " at column " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t reduce(std::uint64_t v) const { return p_ ? v % p_ : 0; }

  void add_into(Expansion& acc, const Expansion& t, bool negate) const {
    for (const auto& [k, v] : t) {
      std::uint64_t& slot = acc[k];
      if (p_) slot = (slot + (negate ? (p_ - v) % p_ : v)) % p_;
    }
  }

  Expansion mul(const Expansion& a, const Expansion& b) const {
    Expansion r;
    for (const auto& [ka, va] : a) {
      for (const auto& [kb, vb] : b) {
        std::vector<unsigned> k(ka.size());
        for (std::size_t i = 0; i < k.size(); ++i) {
          k[i] = ka[i] + kb[i];
          if (k[i] > kMaxExponent) throw ValidationError("polynomial '" + s_ + "': degree exceeds " + std::to_string(kMaxExponent));
        }
        std::uint64_t& slot = r[k];
        if (p_) slot = (slot + va * vb % p_) % p_;
      }
    }
    return r;
  }

  Expansion constant(std::uint64_t v) const {
    Expansion e;
    e[std::vector<unsigned>(vars_.size(), 0)] = reduce(v);
    return e;
  }

  Expansion expr() {
    Expansion acc = term();
    while (true) {
      if (accept('+')) {
        add_into(acc, term(), false);
      } else if (accept('-')) {
        add_into(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  Expansion term() {
    Expansion acc = factor();
    while (accept('*')) acc = mul(acc, factor());
    return acc;
  }

  Expansion factor() {
    Expansion b = base();
    if (accept('^')) {
      skip_ws();
      const std::uint64_t e = uint_literal();
      if (e > kMaxExponent) fail("exponent too large");
      Expansion r = constant(1);
      for (std::uint64_t i = 0; i < e; ++i) r = mul(r, b);
      return r;
    }
    return b;
  }

  std::uint64_t uint_literal() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an unsigned integer");
    std::uint64_t v = 0, vp = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const unsigned d = static_cast<unsigned>(s_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) fail("integer literal too large");
      v = v * 10 + d;
      if (p_) vp = (vp * 10 + d) % p_;
      ++pos_;
    }
    literal_mod_ = vp;
    return v;
  }

  Expansion base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expansion e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint_literal();
      Expansion e;
      e[std::vector<unsigned>(vars_.size(), 0)] = literal_mod_;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      const auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      std::vector<unsigned> k(vars_.size(), 0);
      k[static_cast<std::size_t>(it - vars_.begin())] = 1;
      Expansion e;
      e[k] = reduce(1);
      return e;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::uint64_t p_;
  std::size_t pos_ = 0;
  std::uint64_t literal_mod_ = 0;
};

void check_vars(const std::vector<std::string>& vars) {
  if (vars.empty()) throw ValidationError("affine system needs at least one variable");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string& v = vars[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') ||
        !std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })) {
      throw ValidationError("invalid variable name '" + v + "'");
    }
    if (std::find(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(i), v) != vars.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw ValidationError("duplicate variable name '" + v + "'");
    }
  }
}

}  // namespace

unsigned SparsePoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms) d = std::max(d, t.exponents[var]);
  return d;
}

ff::FFElem SparsePoly::evaluate(std::span<const ff::FFElem> point) const {
  if (point.size() != nvars) throw std::invalid_argument("point has wrong number of coordinates");
  const ff::ExtField F = point.front().field();
  ff::FFElem acc = F.zero();
  // Power tables per variable, built lazily up to the needed degree.
  std::vector<std::vector<ff::FFElem>> powers(nvars);
  for (std::size_t v = 0; v < nvars; ++v) {
    const unsigned d = degree_in(v);
    powers[v].reserve(d + 1);
    powers[v].push_back(F.one());
    for (unsigned k = 1; k <= d; ++k) powers[v].push_back(powers[v].back() * point[v]);
  }
  for (const auto& t : terms) {
    ff::FFElem m = F.from_int(t.coeff);
    for (std::size_t v = 0; v < nvars; ++v) {
      if (t.exponents[v]) m = m * powers[v][t.exponents[v]];
    }
    acc = acc + m;
  }
  return acc;
}

SparsePoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars, std::uint64_t p) {
  check_vars(vars);
  if (p < 2) throw std::invalid_argument("parse_polynomial: p must be prime");
  Parser parser(text, vars, p);
  const Expansion e = parser.parse();
  SparsePoly out;
  out.p = p;
  out.nvars = vars.size();
  for (const auto& [k, v] : e) {
    if (v % p == 0) continue;
    out.terms.push_back({static_cast<std::uint32_t>(v % p), k});
  }
  return out;
}

void check_polynomial_syntax(const std::string& text, const std::vector<std::string>& vars) {
  check_vars(vars);
  Parser parser(text, vars, 0);
  parser.parse();
}

}  // namespace dzeta::poly
