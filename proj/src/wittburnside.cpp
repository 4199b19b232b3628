#include "dzeta/wittburnside.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "dzeta/errors.hpp"
#include "dzeta/numtheory.hpp"

namespace dzeta::witt {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

void same_length(std::size_t a, std::size_t b) {
  if (a != b) throw ValidationError("truncation mismatch: N=" + std::to_string(a) + " vs N=" + std::to_string(b));
}

std::int64_t to_i64(const cpp_int& v, const char* what) {
  if (v > cpp_int(INT64_MAX) || v < cpp_int(INT64_MIN)) throw ResourceError(std::string(what) + " exceeds 64-bit range");
  return v.convert_to<std::int64_t>();
}

}  // namespace

GhostVec ghost_of(const WittVec& w) {
  const std::size_t N = w.N();
  std::vector<std::int64_t> c(N, 0);
  for (std::size_t d = 1; d <= N; ++d) {
    const std::int64_t t = nt::checked_mul(static_cast<std::int64_t>(d), w.at(d));
    for (std::size_t n = d; n <= N; n += d) c[n - 1] = nt::checked_add(c[n - 1], t);
  }
  return GhostVec(std::move(c));
}

WittVec from_ghost(const GhostVec& g) {
  const std::size_t N = g.N();
  WittVec w(N);
  for (std::size_t n = 1; n <= N; ++n) {
    std::int64_t s = 0;
    for (std::uint64_t d : nt::divisors(n)) {
      const int mu = nt::moebius(n / d);
      if (mu > 0) s = nt::checked_add(s, g.at(d));
      if (mu < 0) s = nt::checked_sub(s, g.at(d));
    }
    if (s % static_cast<std::int64_t>(n) != 0) {
      throw ValidationError("ghost vector is not integral at n=" + std::to_string(n) + ": b_n = " + std::to_string(s) +
                            "/" + std::to_string(n));
    }
    w.at(n) = s / static_cast<std::int64_t>(n);
  }
  return w;
}

WittVec witt_add(const WittVec& u, const WittVec& v) {
  same_length(u.N(), v.N());
  WittVec r(u.N());
  for (std::size_t i = 0; i < u.N(); ++i) r.b[i] = nt::checked_add(u.b[i], v.b[i]);
  return r;
}

WittVec witt_mul(const WittVec& u, const WittVec& v) {
  same_length(u.N(), v.N());
  const std::size_t N = u.N();
  WittVec r(N);
  for (std::size_t i = 1; i <= N; ++i) {
    if (u.at(i) == 0) continue;
    for (std::size_t j = 1; j <= N; ++j) {
      if (v.at(j) == 0) continue;
      const std::uint64_t g = nt::gcd(i, j);
      const std::uint64_t k = i / g * j;
      if (k > N) continue;
      const std::int64_t t = nt::checked_mul(nt::checked_mul(static_cast<std::int64_t>(g), u.at(i)), v.at(j));
      r.at(k) = nt::checked_add(r.at(k), t);
    }
  }
  return r;
}

WittVec burnside_of_variety(const geo::VarietySpec& v, const ff::FieldSpec& base, unsigned N,
                            const geo::ComputeOptions& opts) {
  const auto census = geo::degree_census(v, base, N, opts);
  WittVec w(N);
  for (std::size_t n = 0; n < N; ++n) {
    if (census[n] > static_cast<std::uint64_t>(INT64_MAX)) throw ResourceError("degree census exceeds 64-bit range");
    w.b[n] = static_cast<std::int64_t>(census[n]);
  }
  return w;
}

IntSeries zeta_from_witt(const WittVec& w, std::size_t T) {
  if (T > w.N()) throw ValidationError("T=" + std::to_string(T) + " exceeds truncation N=" + std::to_string(w.N()));
  std::vector<cpp_int> z(T + 1, 0);
  z[0] = 1;
  for (std::size_t n = 1; n <= T; ++n) {
    const cpp_int b = w.at(n);
    if (b == 0) continue;
    // (1 - t^n)^(-b) = sum_k [b (b+1) ... (b+k-1) / k!] t^(nk)
    std::vector<cpp_int> f(T + 1, 0);
    cpp_int coeff = 1;
    for (std::size_t k = 0; n * k <= T; ++k) {
      if (k > 0) coeff = coeff * (b + static_cast<long long>(k) - 1) / static_cast<long long>(k);
      f[n * k] = coeff;
    }
    std::vector<cpp_int> next(T + 1, 0);
    for (std::size_t i = 0; i <= T; ++i) {
      if (z[i] == 0) continue;
      for (std::size_t j = 0; i + j <= T; j += n) next[i + j] += z[i] * f[j];
    }
    z = std::move(next);
  }
  IntSeries out;
  for (const auto& c : z) out.coeffs.push_back(to_i64(c, "zeta coefficient"));
  return out;
}

IntSeries zeta_exp_form(std::span<const std::int64_t> counts, std::size_t T) {
  if (T > counts.size()) {
    throw ValidationError("T=" + std::to_string(T) + " exceeds the number of counts " + std::to_string(counts.size()));
  }
  std::vector<cpp_rational> z(T + 1, 0);
  z[0] = 1;
  for (std::size_t k = 1; k <= T; ++k) {
    cpp_rational s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += cpp_rational(counts[j - 1]) * z[k - j];
    z[k] = s / cpp_rational(static_cast<long long>(k));
  }
  IntSeries out;
  for (std::size_t k = 0; k <= T; ++k) {
    if (boost::multiprecision::denominator(z[k]) != 1) {
      throw ValidationError("zeta coefficient of t^" + std::to_string(k) + " is not an integer; counts are inconsistent");
    }
    out.coeffs.push_back(to_i64(boost::multiprecision::numerator(z[k]), "zeta coefficient"));
  }
  return out;
}

IntSeries series_mul(const IntSeries& a, const IntSeries& b) {
  const std::size_t T = std::min(a.coeffs.size(), b.coeffs.size());
  IntSeries r;
  r.coeffs.assign(T, 0);
  for (std::size_t i = 0; i < T; ++i) {
    for (std::size_t j = 0; i + j < T; ++j) {
      r.coeffs[i + j] = nt::checked_add(r.coeffs[i + j], nt::checked_mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  return r;
}

}  // namespace dzeta::witt
