#include "dzeta/ffield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "dzeta/errors.hpp"
#include "dzeta/numtheory.hpp"

namespace dzeta::ff {

namespace {

using Poly = std::vector<std::uint32_t>;  // over F_p, low-to-high

std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint32_t>(a * b % p);
}

std::uint32_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo f (f nonzero, trimmed).
Poly poly_rem(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint32_t lead_inv = invmod(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint32_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - mulmod(c, f[i], p)) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j] % p) % p);
    }
  }
  trim(r);
  return r;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  base = poly_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_rem(poly_mul(r, base, p), f, p);
    base = poly_rem(poly_mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f (monic, degree D) is irreducible iff gcd(f, x^(p^k) - x) = 1 for
// k = 1..D/2.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return deg == 1;
  if (f[0] == 0) return false;
  Poly h{0, 1};
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    h = poly_powmod(h, p, f, p);
    Poly t = h;
    if (t.size() < 2) t.resize(2, 0);
    t[1] = static_cast<std::uint32_t>((t[1] + p - 1) % p);
    trim(t);
    Poly g = poly_gcd(f, t, p);
    if (g.size() > 1) return false;
  }
  return true;
}

Poly smallest_irreducible(std::uint64_t p, unsigned degree) {
  const std::uint64_t count = nt::checked_pow(p, degree);
  Poly f(degree + 1, 0);
  f[degree] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = degree; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    // f[0] is the most significant digit of idx: low-to-high lexicographic.
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

namespace detail {

struct FieldCore {
  std::uint64_t p = 0;
  unsigned e = 1, n = 1, degree = 1;
  std::uint64_t q = 0, size = 0;
  Poly modulus;
  std::vector<std::uint64_t> place;  // place[i] = p^(D-1-i)
  std::vector<std::pair<std::uint64_t, unsigned>> group_factors;
  std::vector<std::uint32_t> frob_matrix;  // row-major; column j is (x^j)^q
  Poly base_root;                          // image of y under F_q -> F_{q^n}

  void mul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
           std::span<std::uint32_t> out) const {
    const unsigned d = degree;
    std::vector<std::uint64_t> t(2 * d - 1, 0);
    for (unsigned i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < d; ++j) t[i + j] = (t[i + j] + std::uint64_t{a[i]} * b[j] % p) % p;
    }
    for (unsigned k = 2 * d - 2; k >= d; --k) {
      const std::uint64_t c = t[k];
      if (c == 0) continue;
      for (unsigned i = 0; i < d; ++i) t[k - d + i] = (t[k - d + i] + (p - c) * modulus[i] % p) % p;
      t[k] = 0;
    }
    for (unsigned i = 0; i < d; ++i) out[i] = static_cast<std::uint32_t>(t[i]);
  }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly r(degree);
    mul(a, b, r);
    return r;
  }

  Poly pow(Poly base, std::uint64_t e) const {
    Poly r(degree, 0);
    r[0] = 1;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Poly inverse(const Poly& a) const {
    // Extended Euclid in F_p[x]: find s with s*a = 1 mod modulus.
    Poly r0 = modulus, r1 = a;
    trim(r1);
    if (r1.empty()) throw std::domain_error("division by zero in finite field");
    Poly s0{}, s1{1};
    while (r1.size() > 1) {
      // quotient of r0 by r1
      Poly rem = r0;
      Poly quot(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
      const std::uint32_t lead_inv = invmod(r1.back(), p);
      while (rem.size() >= r1.size()) {
        const std::uint32_t c = mulmod(rem.back(), lead_inv, p);
        const std::size_t shift = rem.size() - r1.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < r1.size(); ++i) {
          rem[shift + i] = static_cast<std::uint32_t>((rem[shift + i] + p - mulmod(c, r1[i], p)) % p);
        }
        trim(rem);
      }
      trim(quot);
      Poly qs = poly_mul(quot, s1, p);
      Poly s2(std::max(s0.size(), qs.size()), 0);
      for (std::size_t i = 0; i < s2.size(); ++i) {
        const std::uint64_t x = i < s0.size() ? s0[i] : 0;
        const std::uint64_t y = i < qs.size() ? qs[i] : 0;
        s2[i] = static_cast<std::uint32_t>((x + p - y) % p);
      }
      trim(s2);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r1 is a nonzero constant c; inverse is s1 / c.
    const std::uint32_t cinv = invmod(r1[0], p);
    Poly out(degree, 0);
    for (std::size_t i = 0; i < s1.size() && i < degree; ++i) out[i] = mulmod(s1[i], cinv, p);
    return out;
  }

  Code code(std::span<const std::uint32_t> c) const {
    Code r = 0;
    for (unsigned i = 0; i < degree; ++i) r += c[i] * place[i];
    return r;
  }

  void digits(Code x, std::span<std::uint32_t> out) const {
    for (unsigned i = degree; i-- > 0;) {
      out[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
  }

  void apply_matrix(const std::vector<std::uint32_t>& m, std::span<const std::uint32_t> in,
                    std::span<std::uint32_t> out) const {
    const unsigned d = degree;
    const bool small = p < (1u << 20);
    for (unsigned i = 0; i < d; ++i) {
      std::uint64_t acc = 0;
      const std::uint32_t* row = m.data() + static_cast<std::size_t>(i) * d;
      if (small) {
        for (unsigned j = 0; j < d; ++j) acc += std::uint64_t{row[j]} * in[j];
        acc %= p;
      } else {
        for (unsigned j = 0; j < d; ++j) acc = (acc + std::uint64_t{row[j]} * in[j] % p) % p;
      }
      out[i] = static_cast<std::uint32_t>(acc);
    }
  }
};

}  // namespace detail

namespace {

void check_same(const std::shared_ptr<const detail::FieldCore>& a,
                const std::shared_ptr<const detail::FieldCore>& b) {
  if (!a || !b) throw std::invalid_argument("uninitialized field element");
  if (a == b) return;
  if (a->p != b->p || a->e != b->e || a->n != b->n) {
    throw std::invalid_argument("field mismatch in finite field arithmetic");
  }
}

// Matrix of y -> c*y in the power basis, row-major.
std::vector<std::uint32_t> multiplication_matrix(const detail::FieldCore& core, const Poly& c) {
  const unsigned d = core.degree;
  std::vector<std::uint32_t> m(static_cast<std::size_t>(d) * d, 0);
  Poly basis(d, 0);
  for (unsigned j = 0; j < d; ++j) {
    std::fill(basis.begin(), basis.end(), 0);
    basis[j] = 1;
    Poly col = core.mul(c, basis);
    for (unsigned i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + j] = col[i];
  }
  return m;
}

// Basis of the kernel of (M - I) over F_p, as digit vectors.
std::vector<Poly> fixed_space(const detail::FieldCore& core, const std::vector<std::uint32_t>& m) {
  const unsigned d = core.degree;
  const std::uint64_t p = core.p;
  std::vector<Poly> a(d, Poly(d));
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      std::uint64_t v = m[static_cast<std::size_t>(i) * d + j];
      if (i == j) v = (v + p - 1) % p;
      a[i][j] = static_cast<std::uint32_t>(v);
    }
  }
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(d, false);
  unsigned row = 0;
  for (unsigned col = 0; col < d && row < d; ++col) {
    unsigned sel = row;
    while (sel < d && a[sel][col] == 0) ++sel;
    if (sel == d) continue;
    std::swap(a[sel], a[row]);
    const std::uint32_t inv = invmod(a[row][col], p);
    for (auto& v : a[row]) v = mulmod(v, inv, p);
    for (unsigned r = 0; r < d; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const std::uint32_t f = a[r][col];
      for (unsigned j = 0; j < d; ++j) {
        a[r][j] = static_cast<std::uint32_t>((a[r][j] + p - mulmod(f, a[row][j], p)) % p);
      }
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    is_pivot[col] = true;
    ++row;
  }
  std::vector<Poly> basis;
  for (unsigned free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    Poly v(d, 0);
    v[free] = 1;
    for (unsigned r = 0; r < pivot_col_of_row.size(); ++r) {
      v[pivot_col_of_row[r]] = static_cast<std::uint32_t>((p - a[r][free]) % p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

// ---------------------------------------------------------------- FieldSpec

std::uint64_t FieldSpec::q() const { return nt::checked_pow(p, e); }

FieldSpec FieldSpec::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto to_u64 = [&](const std::string& t) -> std::uint64_t {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ValidationError("invalid field specification '" + text + "'");
    }
    try {
      return std::stoull(t);
    } catch (const std::exception&) {
      throw ValidationError("invalid field specification '" + text + "'");
    }
  };
  FieldSpec spec;
  if (!s.empty() && s.front() == '[' && s.back() == ']') {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ValidationError("invalid field specification '" + text + "'");
    spec.p = to_u64(s.substr(1, comma - 1));
    spec.e = static_cast<unsigned>(to_u64(s.substr(comma + 1, s.size() - comma - 2)));
  } else if (const auto caret = s.find('^'); caret != std::string::npos) {
    spec.p = to_u64(s.substr(0, caret));
    spec.e = static_cast<unsigned>(to_u64(s.substr(caret + 1)));
  } else {
    auto [p, e] = nt::prime_power(to_u64(s));
    if (p == 0) throw ValidationError("q = " + s + " is not a prime power");
    spec.p = p;
    spec.e = e;
  }
  if (!nt::is_prime(spec.p)) throw ValidationError("characteristic " + std::to_string(spec.p) + " is not prime");
  if (spec.e == 0) throw ValidationError("field exponent must be >= 1");
  return spec;
}

// ---------------------------------------------------------------- FFElem

ExtField FFElem::field() const {
  if (!core_) throw std::invalid_argument("uninitialized field element");
  return ExtField(core_);
}

bool FFElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
}

bool FFElem::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
}

FFElem FFElem::operator+(const FFElem& b) const {
  check_same(core_, b.core_);
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = static_cast<std::uint32_t>((std::uint64_t{c_[i]} + b.c_[i]) % core_->p);
  }
  return FFElem(core_, std::move(r));
}

FFElem FFElem::operator-(const FFElem& b) const {
  check_same(core_, b.core_);
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = static_cast<std::uint32_t>((std::uint64_t{c_[i]} + core_->p - b.c_[i]) % core_->p);
  }
  return FFElem(core_, std::move(r));
}

FFElem FFElem::operator-() const {
  if (!core_) throw std::invalid_argument("uninitialized field element");
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = static_cast<std::uint32_t>((core_->p - c_[i]) % core_->p);
  }
  return FFElem(core_, std::move(r));
}

FFElem FFElem::operator*(const FFElem& b) const {
  check_same(core_, b.core_);
  std::vector<std::uint32_t> r(c_.size());
  core_->mul(c_, b.c_, r);
  return FFElem(core_, std::move(r));
}

FFElem FFElem::operator/(const FFElem& b) const {
  check_same(core_, b.core_);
  return *this * b.inverse();
}

FFElem FFElem::inverse() const {
  if (!core_) throw std::invalid_argument("uninitialized field element");
  return FFElem(core_, core_->inverse(c_));
}

FFElem FFElem::pow(std::uint64_t exponent) const {
  if (!core_) throw std::invalid_argument("uninitialized field element");
  return FFElem(core_, core_->pow(c_, exponent));
}

FFElem FFElem::frobenius() const {
  if (!core_) throw std::invalid_argument("uninitialized field element");
  std::vector<std::uint32_t> r(c_.size());
  core_->apply_matrix(core_->frob_matrix, c_, r);
  return FFElem(core_, std::move(r));
}

bool FFElem::operator==(const FFElem& b) const {
  if (core_ != b.core_) {
    if (!core_ || !b.core_) return false;
    if (core_->p != b.core_->p || core_->e != b.core_->e || core_->n != b.core_->n) return false;
  }
  return c_ == b.c_;
}

bool FFElem::operator<(const FFElem& b) const {
  check_same(core_, b.core_);
  return c_ < b.c_;  // lexicographic, c_0 first
}

FFElem field_arithmetic(const FFElem& a, const FFElem& b, ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return a + b;
    case ArithOp::kSub: return a - b;
    case ArithOp::kMul: return a * b;
    case ArithOp::kDiv: return a / b;
  }
  throw std::invalid_argument("unknown arithmetic operation");
}

FFElem field_pow(const FFElem& a, std::uint64_t exponent) { return a.pow(exponent); }

// ---------------------------------------------------------------- LinearMap

Code LinearMap::apply(Code x) const {
  const unsigned d = core_->degree;
  std::uint32_t in[64], out[64];
  core_->digits(x, {in, d});
  core_->apply_matrix(matrix_, {in, d}, {out, d});
  return core_->code({out, d});
}

void LinearMap::apply_digits(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) const {
  core_->apply_matrix(matrix_, in, out);
}

// ---------------------------------------------------------------- ExtField

ExtField ExtField::build(std::uint64_t p, unsigned e, unsigned n, std::uint64_t budget) {
  if (!nt::is_prime(p)) throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0 || n == 0) throw ValidationError("field exponents must be >= 1");
  if (p > 0xFFFFFFFFull) throw ValidationError("characteristic too large");
  const unsigned degree = e * n;
  if (degree > 63) throw ResourceError("field degree exceeds 63");
  std::uint64_t size = 1;
  for (unsigned i = 0; i < degree; ++i) {
    if (size > budget / p) {
      throw ResourceError("field of size " + std::to_string(p) + "^" + std::to_string(degree) +
                          " exceeds enumeration budget " + std::to_string(budget));
    }
    size *= p;
  }

  auto core = std::make_shared<detail::FieldCore>();
  core->p = p;
  core->e = e;
  core->n = n;
  core->degree = degree;
  core->q = nt::checked_pow(p, e);
  core->size = size;
  core->modulus = smallest_irreducible(p, degree);
  core->place.assign(degree, 1);
  for (unsigned i = degree - 1; i-- > 0;) core->place[i] = core->place[i + 1] * p;
  core->group_factors = nt::factorize(size - 1 == 0 ? 1 : size - 1);

  Poly xq(degree, 0);
  if (degree == 1) {
    xq[0] = 0;  // x = 0 in F_p[x]/(x); its q-th power is 0
  } else {
    Poly x(degree, 0);
    x[1] = 1;
    xq = core->pow(x, core->q);
  }
  // Column j of the Frobenius matrix is (x^q)^j.
  core->frob_matrix.assign(static_cast<std::size_t>(degree) * degree, 0);
  Poly col(degree, 0);
  col[0] = 1;
  for (unsigned j = 0; j < degree; ++j) {
    for (unsigned i = 0; i < degree; ++i) core->frob_matrix[static_cast<std::size_t>(i) * degree + j] = col[i];
    col = core->mul(col, xq);
  }

  if (e > 1) {
    if (n == 1) {
      core->base_root.assign(degree, 0);
      core->base_root[1] = 1;
    } else {
      const Poly g = smallest_irreducible(p, e);
      const auto basis = fixed_space(*core, core->frob_matrix);
      if (basis.size() != e) throw std::logic_error("fixed field of Frobenius has wrong dimension");
      Poly best;
      Code best_code = 0;
      std::vector<std::uint32_t> t(e, 0);
      const std::uint64_t count = core->q;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t rest = idx;
        for (unsigned j = 0; j < e; ++j) {
          t[j] = static_cast<std::uint32_t>(rest % p);
          rest /= p;
        }
        Poly cand(degree, 0);
        for (unsigned j = 0; j < e; ++j) {
          for (unsigned i = 0; i < degree; ++i) {
            cand[i] = static_cast<std::uint32_t>((cand[i] + std::uint64_t{t[j]} * basis[j][i]) % p);
          }
        }
        // Horner evaluation of g at cand.
        Poly acc(degree, 0);
        for (std::size_t k = g.size(); k-- > 0;) {
          acc = core->mul(acc, cand);
          acc[0] = static_cast<std::uint32_t>((acc[0] + g[k]) % p);
        }
        if (std::all_of(acc.begin(), acc.end(), [](std::uint32_t v) { return v == 0; })) {
          const Code c = core->code(cand);
          if (best.empty() || c < best_code) {
            best = cand;
            best_code = c;
          }
        }
      }
      if (best.empty()) throw std::logic_error("base field modulus has no root in extension");
      core->base_root = std::move(best);
    }
  }
  return ExtField(std::move(core));
}

std::uint64_t ExtField::p() const { return core_->p; }
unsigned ExtField::e() const { return core_->e; }
unsigned ExtField::n() const { return core_->n; }
unsigned ExtField::degree() const { return core_->degree; }
std::uint64_t ExtField::q() const { return core_->q; }
std::uint64_t ExtField::size() const { return core_->size; }
const std::vector<std::uint32_t>& ExtField::modulus() const { return core_->modulus; }

FFElem ExtField::zero() const { return FFElem(core_, std::vector<std::uint32_t>(core_->degree, 0)); }

FFElem ExtField::one() const {
  std::vector<std::uint32_t> c(core_->degree, 0);
  c[0] = 1;
  return FFElem(core_, std::move(c));
}

FFElem ExtField::from_int(std::int64_t a) const {
  std::vector<std::uint32_t> c(core_->degree, 0);
  c[0] = static_cast<std::uint32_t>(nt::mod_floor(a, static_cast<std::int64_t>(core_->p)));
  return FFElem(core_, std::move(c));
}

FFElem ExtField::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > core_->degree) {
    throw ValidationError("too many coefficients for a field of degree " + std::to_string(core_->degree));
  }
  std::vector<std::uint32_t> c(core_->degree, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    c[i] = static_cast<std::uint32_t>(nt::mod_floor(coeffs[i], static_cast<std::int64_t>(core_->p)));
  }
  return FFElem(core_, std::move(c));
}

FFElem ExtField::element(Code code) const {
  if (code >= core_->size) throw std::out_of_range("element code out of range");
  std::vector<std::uint32_t> c(core_->degree);
  core_->digits(code, c);
  return FFElem(core_, std::move(c));
}

Code ExtField::code(const FFElem& x) const {
  check_same(core_, x.core_);
  return core_->code(x.c_);
}

Code ExtField::frobenius_code(Code x) const {
  const unsigned d = core_->degree;
  std::uint32_t in[64], out[64];
  core_->digits(x, {in, d});
  core_->apply_matrix(core_->frob_matrix, {in, d}, {out, d});
  return core_->code({out, d});
}

LinearMap ExtField::frobenius_map() const {
  LinearMap m;
  m.core_ = core_;
  m.matrix_ = core_->frob_matrix;
  return m;
}

LinearMap ExtField::multiplication_map(const FFElem& c) const {
  check_same(core_, c.core_);
  LinearMap m;
  m.core_ = core_;
  m.matrix_ = multiplication_matrix(*core_, c.c_);
  return m;
}

std::uint64_t ExtField::multiplicative_order(const FFElem& x) const {
  check_same(core_, x.core_);
  if (x.is_zero()) throw std::domain_error("multiplicative order of zero");
  std::uint64_t m = core_->size - 1;
  for (auto [r, k] : core_->group_factors) {
    for (unsigned j = 0; j < k; ++j) {
      if (m % r != 0) break;
      if (x.pow(m / r).is_one()) {
        m /= r;
      } else {
        break;
      }
    }
  }
  return m;
}

FFElem ExtField::find_generator() const {
  const std::uint64_t order = core_->size - 1;
  for (Code c = 1; c < core_->size; ++c) {
    FFElem x = element(c);
    bool ok = true;
    for (auto [r, k] : core_->group_factors) {
      if (order % r == 0 && x.pow(order / r).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  throw std::logic_error("no generator found");
}

bool ExtField::is_square(const FFElem& x) const {
  check_same(core_, x.core_);
  if (core_->p == 2) throw ValidationError("is_square is unsupported in characteristic 2");
  if (x.is_zero()) return true;
  return x.pow((core_->size - 1) / 2).is_one();
}

ExtField ExtField::base_field() const { return build(core_->p, core_->e, 1, core_->q); }

FFElem ExtField::embed_base(const FFElem& base_elem) const {
  if (!base_elem.core_) throw std::invalid_argument("uninitialized field element");
  const auto& b = *base_elem.core_;
  if (b.p != core_->p || b.e != core_->e || b.n != 1) {
    throw std::invalid_argument("element is not in the base field F_q of " + describe());
  }
  if (core_->e == 1) return from_int(base_elem.c_[0]);
  FFElem root(core_, core_->base_root);
  FFElem acc = zero();
  for (std::size_t k = base_elem.c_.size(); k-- > 0;) acc = acc * root + from_int(base_elem.c_[k]);
  return acc;
}

bool ExtField::same_field(const ExtField& other) const {
  return core_->p == other.core_->p && core_->e == other.core_->e && core_->n == other.core_->n;
}

std::string ExtField::describe() const {
  std::ostringstream os;
  os << "F_{" << core_->p;
  if (core_->e > 1) os << "^" << core_->e;
  if (core_->n > 1) os << "^" << core_->n;
  os << "}";
  return os.str();
}

}  // namespace dzeta::ff
