#pragma once

// Finite fields F_{q^n} with q = p^e, realized as F_p[x]/(f) where f is the
// lexicographically smallest monic irreducible of degree e*n. Coefficient
// vectors are compared low-to-high (c_0 first), and the same order defines
// the canonical enumeration of elements: an element's Code is its rank in
// that order, Code = sum_i c_i * p^(D-1-i).

#include <cstdint>
#include <memory>
#include <ranges>
#include <span>
#include <string>
#include <vector>

namespace dzeta::ff {

using Code = std::uint64_t;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// The base field F_q as given on the command line: q = p^e.
struct FieldSpec {
  std::uint64_t p = 0;
  unsigned e = 1;

  std::uint64_t q() const;
  /// Accepts "7", "9" (any prime power), "3^2" or "[3,2]".
  static FieldSpec parse(const std::string& text);
  bool operator==(const FieldSpec&) const = default;
};

namespace detail {
struct FieldCore;
}

class ExtField;

class FFElem {
 public:
  FFElem() = default;

  ExtField field() const;
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  bool valid() const { return core_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;

  FFElem operator+(const FFElem& b) const;
  FFElem operator-(const FFElem& b) const;
  FFElem operator*(const FFElem& b) const;
  FFElem operator/(const FFElem& b) const;
  FFElem operator-() const;
  FFElem pow(std::uint64_t exponent) const;
  FFElem inverse() const;
  /// x -> x^q.
  FFElem frobenius() const;

  bool operator==(const FFElem& b) const;
  /// Canonical element order.
  bool operator<(const FFElem& b) const;

 private:
  friend class ExtField;
  FFElem(std::shared_ptr<const detail::FieldCore> core, std::vector<std::uint32_t> c)
      : core_(std::move(core)), c_(std::move(c)) {}

  std::shared_ptr<const detail::FieldCore> core_;
  std::vector<std::uint32_t> c_;
};

/// An F_p-linear endomorphism of the field acting directly on Codes.
class LinearMap {
 public:
  Code apply(Code x) const;
  /// Applies to a digit vector in place (length = degree).
  void apply_digits(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) const;

 private:
  friend class ExtField;
  std::shared_ptr<const detail::FieldCore> core_;
  std::vector<std::uint32_t> matrix_;  // row-major D x D
};

class ExtField {
 public:
  static ExtField build(std::uint64_t p, unsigned e, unsigned n,
                        std::uint64_t budget = kDefaultBudget);
  static ExtField build(const FieldSpec& base, unsigned n, std::uint64_t budget = kDefaultBudget) {
    return build(base.p, base.e, n, budget);
  }

  std::uint64_t p() const;
  unsigned e() const;
  unsigned n() const;
  unsigned degree() const;
  std::uint64_t q() const;
  std::uint64_t size() const;
  FieldSpec base_spec() const { return {p(), e()}; }
  /// Monic modulus over F_p, low-to-high, length degree()+1.
  const std::vector<std::uint32_t>& modulus() const;

  FFElem zero() const;
  FFElem one() const;
  /// The prime-field element a mod p.
  FFElem from_int(std::int64_t a) const;
  /// Coefficients over F_p, low-to-high; each reduced mod p; at most degree() entries.
  FFElem from_coeffs(std::span<const std::int64_t> coeffs) const;
  FFElem element(Code code) const;
  Code code(const FFElem& x) const;

  FFElem frobenius_q(const FFElem& x) const { return x.frobenius(); }
  Code frobenius_code(Code x) const;
  LinearMap frobenius_map() const;
  /// y -> c*y as an F_p-linear map.
  LinearMap multiplication_map(const FFElem& c) const;

  std::uint64_t multiplicative_order(const FFElem& x) const;
  /// First element of multiplicative order size()-1 in canonical order.
  FFElem find_generator() const;
  /// Euler criterion; odd characteristic only.
  bool is_square(const FFElem& x) const;

  /// All elements once, in canonical order.
  auto elements() const {
    return std::views::iota(Code{0}, size()) |
           std::views::transform([f = *this](Code c) { return f.element(c); });
  }

  /// The base field F_q = F_p[y]/(g) built as (p, e, 1).
  ExtField base_field() const;
  /// Embeds an element of base_field() into this field by sending y to the
  /// first root of g in canonical order (y -> x when n = 1).
  FFElem embed_base(const FFElem& base_elem) const;

  bool same_field(const ExtField& other) const;
  std::string describe() const;

 private:
  friend class FFElem;
  explicit ExtField(std::shared_ptr<const detail::FieldCore> core) : core_(std::move(core)) {}
  std::shared_ptr<const detail::FieldCore> core_;
};

enum class ArithOp { kAdd, kSub, kMul, kDiv };

/// Throws std::invalid_argument on field mismatch, std::domain_error on
/// division by zero.
FFElem field_arithmetic(const FFElem& a, const FFElem& b, ArithOp op);
/// Square-and-multiply.
FFElem field_pow(const FFElem& a, std::uint64_t exponent);

}  // namespace dzeta::ff
