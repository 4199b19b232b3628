#include "dzeta/geometry.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "dzeta/errors.hpp"
#include "dzeta/numtheory.hpp"
#include "dzeta/polynomial.hpp"
#include "parallel.hpp"

namespace dzeta::geo {

namespace {

constexpr unsigned kPartShift = 56;
constexpr PointKey kLocalMask = (PointKey{1} << kPartShift) - 1;
constexpr std::size_t kMaxParts = 255;
constexpr std::uint32_t kNoRoot = UINT32_MAX;

std::size_t part_of(PointKey k) { return static_cast<std::size_t>(k >> kPartShift); }
PointKey local_of(PointKey k) { return k & kLocalMask; }
PointKey make_key(std::size_t part, PointKey local) { return (PointKey{part} << kPartShift) | local; }

void check_base_constant(const ff::FFElem& c, const ff::FieldSpec& base, const char* name) {
  if (!c.valid()) throw ValidationError(std::string("missing constant '") + name + "'");
  const ff::ExtField f = c.field();
  if (f.p() != base.p || f.e() != base.e || f.n() != 1) {
    throw ValidationError(std::string("constant '") + name + "' is not an element of F_" + std::to_string(base.q()));
  }
}

void check_curve(const ff::FFElem& a, const ff::FFElem& b, const ff::FieldSpec& base) {
  check_base_constant(a, base, "a");
  check_base_constant(b, base, "b");
  if (base.p == 2) throw ValidationError("Weierstrass curves require odd characteristic");
  const ff::ExtField f = a.field();
  const ff::FFElem disc = f.from_int(4) * a * a * a + f.from_int(27) * b * b;
  if (disc.is_zero()) throw ValidationError("singular Weierstrass curve: 4a^3 + 27b^2 = 0");
}

std::string render(const ff::ExtField& F, const ff::FFElem& x) {
  const auto& c = x.coeffs();
  if (F.degree() == 1) return std::to_string(c[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

void flatten(const VarietySpec& v, std::vector<const VarietySpec*>& out) {
  if (const auto* u = std::get_if<DisjointUnion>(&v.shape)) {
    for (const auto& part : u->parts) flatten(part, out);
    return;
  }
  out.push_back(&v);
}

}  // namespace

void validate_variety(const VarietySpec& v, const ff::FieldSpec& base) {
  std::vector<const VarietySpec*> leaves;
  flatten(v, leaves);
  if (leaves.size() > kMaxParts) throw ValidationError("disjoint union has more than 255 components");
  for (const VarietySpec* leaf : leaves) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, WeierstrassCurve>) {
            check_curve(s.a, s.b, base);
          } else if constexpr (std::is_same_v<T, TwistedWeierstrass>) {
            check_base_constant(s.alpha, base, "alpha");
            check_curve(s.a, s.b, base);
            if (s.alpha.field().is_square(s.alpha)) throw ValidationError("twist parameter alpha must be a nonsquare in F_q");
          } else if constexpr (std::is_same_v<T, AffineSystem>) {
            for (const auto& p : s.polys) poly::check_polynomial_syntax(p, s.vars);
            if (s.polys.empty()) poly::check_polynomial_syntax("0", s.vars);
          }
        },
        leaf->shape);
  }
}

namespace detail {

enum class LeafKind { kLine, kCurve, kAffine };

struct Leaf {
  LeafKind kind = LeafKind::kLine;
  std::string name;
  // curve: y^2 = (x^3 + a x + b) * alpha_inv
  ff::FFElem a, b, alpha_inv;
  std::vector<std::uint32_t> sqrt_table;
  // affine
  std::size_t nvars = 0;
  std::vector<poly::SparsePoly> polys;
};

class Model {
 public:
  Model(const VarietySpec& v, const ff::ExtField& F, const ComputeOptions& opts)
      : F_(F), Q_(F.size()), frob_(F.frobenius_map()), opts_(opts) {
    const ff::FieldSpec base = F.base_spec();
    validate_variety(v, base);
    std::vector<const VarietySpec*> flat;
    flatten(v, flat);
    for (const VarietySpec* spec : flat) leaves_.push_back(make_leaf(*spec));
  }

  const ff::ExtField& field() const { return F_; }

  std::vector<PointKey> enumerate() const {
    std::vector<PointKey> keys;
    for (std::size_t part = 0; part < leaves_.size(); ++part) {
      const Leaf& leaf = leaves_[part];
      switch (leaf.kind) {
        case LeafKind::kLine:
          keys.reserve(keys.size() + Q_ + 1);
          for (ff::Code x = 0; x <= Q_; ++x) keys.push_back(make_key(part, x));
          break;
        case LeafKind::kCurve:
          enumerate_curve(part, leaf, keys);
          break;
        case LeafKind::kAffine:
          enumerate_affine(part, leaf, keys);
          break;
      }
    }
    return keys;  // ascending by construction
  }

  PointKey frob(PointKey k) const {
    const std::size_t part = part_of(k);
    const PointKey local = local_of(k);
    const Leaf& leaf = leaves_[part];
    switch (leaf.kind) {
      case LeafKind::kLine:
        return local == Q_ ? k : make_key(part, frob_.apply(local));
      case LeafKind::kCurve: {
        if (local == Q_ * Q_) return k;
        return make_key(part, frob_.apply(local / Q_) * Q_ + frob_.apply(local % Q_));
      }
      case LeafKind::kAffine: {
        std::vector<ff::Code> c = affine_digits(leaf, local);
        PointKey out = 0;
        for (ff::Code x : c) out = out * Q_ + frob_.apply(x);
        return make_key(part, out);
      }
    }
    return k;
  }

  Point decode(PointKey k) const {
    Point p;
    p.part = part_of(k);
    const PointKey local = local_of(k);
    const Leaf& leaf = leaves_.at(p.part);
    switch (leaf.kind) {
      case LeafKind::kLine:
        if (local == Q_) {
          p.infinity = true;
        } else {
          p.coords.push_back(F_.element(local));
        }
        break;
      case LeafKind::kCurve:
        if (local == Q_ * Q_) {
          p.infinity = true;
        } else {
          p.coords.push_back(F_.element(local / Q_));
          p.coords.push_back(F_.element(local % Q_));
        }
        break;
      case LeafKind::kAffine:
        for (ff::Code x : affine_digits(leaf, local)) p.coords.push_back(F_.element(x));
        break;
    }
    return p;
  }

  std::string describe(PointKey k) const {
    const Point p = decode(k);
    std::ostringstream os;
    if (leaves_.size() > 1) os << "part " << p.part << " ";
    if (p.infinity) {
      os << "infinity";
    } else {
      os << "(";
      for (std::size_t i = 0; i < p.coords.size(); ++i) os << (i ? ", " : "") << render(F_, p.coords[i]);
      os << ")";
    }
    return os.str();
  }

  using KeyMap = std::function<PointKey(PointKey)>;

  // Either a key map or the reason the automorphism cannot act on this variety.
  std::variant<KeyMap, AutomorphismViolation> action(const AutomorphismSpec& a) const {
    std::vector<KeyMap> per_leaf;
    for (const Leaf& leaf : leaves_) {
      auto r = leaf_action(leaf, a);
      if (auto* v = std::get_if<AutomorphismViolation>(&r)) return *v;
      per_leaf.push_back(std::get<KeyMap>(std::move(r)));
    }
    return KeyMap([per_leaf = std::move(per_leaf)](PointKey k) {
      return make_key(part_of(k), per_leaf[part_of(k)](local_of(k)));
    });
  }

 private:
  Leaf make_leaf(const VarietySpec& v) const {
    Leaf leaf;
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ProjectiveLine>) {
            leaf.kind = LeafKind::kLine;
            leaf.name = "p1";
          } else if constexpr (std::is_same_v<T, WeierstrassCurve> || std::is_same_v<T, TwistedWeierstrass>) {
            leaf.kind = LeafKind::kCurve;
            leaf.a = F_.embed_base(s.a);
            leaf.b = F_.embed_base(s.b);
            if constexpr (std::is_same_v<T, TwistedWeierstrass>) {
              leaf.alpha_inv = F_.embed_base(s.alpha).inverse();
              leaf.name = "twist";
            } else {
              leaf.alpha_inv = F_.one();
              leaf.name = "weierstrass";
            }
          } else if constexpr (std::is_same_v<T, AffineSystem>) {
            leaf.kind = LeafKind::kAffine;
            leaf.name = "affine";
            leaf.nvars = s.vars.size();
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < leaf.nvars; ++i) {
              if (total > opts_.budget / Q_) {
                throw ResourceError("affine enumeration of " + std::to_string(Q_) + "^" + std::to_string(leaf.nvars) +
                                    " points exceeds budget " + std::to_string(opts_.budget));
              }
              total *= Q_;
            }
            for (const auto& p : s.polys) leaf.polys.push_back(poly::parse_polynomial(p, s.vars, F_.p()));
          }
        },
        v.shape);
    if (leaf.kind == LeafKind::kCurve) {
      if (Q_ >= kNoRoot) throw ResourceError("field too large for the square-root table");
      // Smallest square root of each square, in canonical order.
      leaf.sqrt_table.assign(Q_, kNoRoot);
      for (ff::Code y = 0; y < Q_; ++y) {
        const ff::FFElem e = F_.element(y);
        const ff::Code s = F_.code(e * e);
        if (leaf.sqrt_table[s] == kNoRoot) leaf.sqrt_table[s] = static_cast<std::uint32_t>(y);
      }
    }
    return leaf;
  }

  void enumerate_curve(std::size_t part, const Leaf& leaf, std::vector<PointKey>& keys) const {
    std::vector<std::vector<PointKey>> chunks;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    const unsigned t = par::resolve_threads(opts_.threads);
    const std::size_t step = std::max<std::size_t>(4096, (Q_ + t - 1) / t);
    for (std::size_t lo = 0; lo < Q_; lo += step) ranges.emplace_back(lo, std::min<std::size_t>(Q_, lo + step));
    chunks.resize(ranges.size());
    par::parallel_chunks(
        ranges.size(), t,
        [&](std::size_t lo, std::size_t hi) {
      for (std::size_t r = lo; r < hi; ++r) {
        auto& out = chunks[r];
        for (ff::Code x = ranges[r].first; x < ranges[r].second; ++x) {
          const ff::FFElem ex = F_.element(x);
          const ff::FFElem rhs = (ex * ex * ex + leaf.a * ex + leaf.b) * leaf.alpha_inv;
          const ff::Code s = F_.code(rhs);
          const std::uint32_t root = leaf.sqrt_table[s];
          if (root == kNoRoot) continue;
          if (s == 0) {
            out.push_back(make_key(part, x * Q_));
            continue;
          }
          const ff::Code other = F_.code(-F_.element(root));
          out.push_back(make_key(part, x * Q_ + std::min<ff::Code>(root, other)));
          out.push_back(make_key(part, x * Q_ + std::max<ff::Code>(root, other)));
        }
      }
        },
        1);
    for (auto& c : chunks) keys.insert(keys.end(), c.begin(), c.end());
    keys.push_back(make_key(part, Q_ * Q_));
  }

  std::vector<ff::Code> affine_digits(const Leaf& leaf, PointKey local) const {
    std::vector<ff::Code> c(leaf.nvars);
    for (std::size_t i = leaf.nvars; i-- > 0;) {
      c[i] = local % Q_;
      local /= Q_;
    }
    return c;
  }

  void enumerate_affine(std::size_t part, const Leaf& leaf, std::vector<PointKey>& keys) const {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < leaf.nvars; ++i) total *= Q_;
    const unsigned t = par::resolve_threads(opts_.threads);
    const std::size_t nchunks = std::min<std::uint64_t>(total, std::max<unsigned>(1, t) * 4);
    const std::uint64_t step = (total + nchunks - 1) / nchunks;
    std::vector<std::vector<PointKey>> chunks(nchunks);
    par::parallel_chunks(
        nchunks, t,
        [&](std::size_t lo, std::size_t hi) {
      std::vector<ff::FFElem> pt(leaf.nvars);
      for (std::size_t r = lo; r < hi; ++r) {
        const std::uint64_t begin = r * step, end = std::min(total, begin + step);
        for (std::uint64_t key = begin; key < end; ++key) {
          const auto digits = affine_digits(leaf, key);
          for (std::size_t i = 0; i < leaf.nvars; ++i) pt[i] = F_.element(digits[i]);
          bool zero = true;
          for (const auto& p : leaf.polys) {
            if (!p.evaluate(pt).is_zero()) {
              zero = false;
              break;
            }
          }
          if (zero) chunks[r].push_back(make_key(part, key));
        }
      }
        },
        1);
    for (auto& c : chunks) keys.insert(keys.end(), c.begin(), c.end());
  }

  std::variant<KeyMap, AutomorphismViolation> leaf_action(const Leaf& leaf, const AutomorphismSpec& a) const {
    const ff::Code Q = Q_;
    const ff::ExtField F = F_;
    auto not_applicable = [&](const std::string& what) {
      return AutomorphismViolation{"not-applicable", "", what + " does not act on a " + leaf.name + " component"};
    };
    if (const auto* s = std::get_if<Scale>(&a.action)) {
      if (leaf.kind != LeafKind::kLine) return not_applicable("scale");
      const ff::FFElem lambda = F.embed_base(s->lambda);
      if (lambda.is_zero()) return AutomorphismViolation{"degenerate", "", "scale factor must be a unit"};
      auto m = std::make_shared<ff::LinearMap>(F.multiplication_map(lambda));
      return KeyMap([m, Q](PointKey x) { return x == Q ? x : m->apply(x); });
    }
    if (const auto* mm = std::get_if<MobiusMatrix>(&a.action)) {
      if (leaf.kind != LeafKind::kLine) return not_applicable("mobius");
      const ff::FFElem A = F.embed_base(mm->a), B = F.embed_base(mm->b), C = F.embed_base(mm->c),
                       D = F.embed_base(mm->d);
      if ((A * D - B * C).is_zero()) return AutomorphismViolation{"degenerate", "", "mobius matrix has ad - bc = 0"};
      return KeyMap([=](PointKey x) -> PointKey {
        if (x == Q) return C.is_zero() ? Q : F.code(A / C);
        const ff::FFElem ex = F.element(x);
        const ff::FFElem den = C * ex + D;
        if (den.is_zero()) return Q;
        return F.code((A * ex + B) / den);
      });
    }
    if (const auto* cd = std::get_if<CurveDiagonal>(&a.action)) {
      if (leaf.kind != LeafKind::kCurve) return not_applicable("diag");
      const ff::FFElem alpha = F.embed_base(cd->alpha), beta = F.embed_base(cd->beta);
      if (alpha.is_zero() || beta.is_zero()) {
        return AutomorphismViolation{"degenerate", "", "diagonal automorphism needs nonzero alpha and beta"};
      }
      auto ma = std::make_shared<ff::LinearMap>(F.multiplication_map(alpha));
      auto mb = std::make_shared<ff::LinearMap>(F.multiplication_map(beta));
      return KeyMap([ma, mb, Q](PointKey k) -> PointKey {
        if (k == Q * Q) return k;
        return ma->apply(k / Q) * Q + mb->apply(k % Q);
      });
    }
    return AutomorphismViolation{"not-applicable", "", "explicit permutations act on indices, not points"};
  }

  ff::ExtField F_;
  ff::Code Q_;
  ff::LinearMap frob_;
  ComputeOptions opts_;
  std::vector<Leaf> leaves_;
};

}  // namespace detail

namespace {

std::optional<std::size_t> find_key(const std::vector<PointKey>& keys, PointKey k) {
  const auto it = std::lower_bound(keys.begin(), keys.end(), k);
  if (it == keys.end() || *it != k) return std::nullopt;
  return static_cast<std::size_t>(it - keys.begin());
}

std::shared_ptr<const detail::Model> make_model(const VarietySpec& v, const ff::ExtField& F,
                                                const ComputeOptions& opts) {
  try {
    return std::make_shared<const detail::Model>(v, F, opts);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

// Images of keys[i] under f as indices into keys; UINT32_MAX when the image
// is not in the set.
std::vector<std::uint32_t> image_indices(const std::vector<PointKey>& keys,
                                         const std::function<PointKey(PointKey)>& f, unsigned threads) {
  std::vector<std::uint32_t> img(keys.size());
  par::parallel_chunks(keys.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto j = find_key(keys, f(keys[i]));
      img[i] = j ? static_cast<std::uint32_t>(*j) : UINT32_MAX;
    }
  });
  return img;
}

// Checks well-definedness, bijectivity and commutation; returns the first
// violation in canonical point order.
std::optional<AutomorphismViolation> check_permutation(const std::vector<std::uint32_t>& phi,
                                                       const std::vector<std::uint32_t>& frob,
                                                       const std::function<std::string(std::size_t)>& describe) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] == UINT32_MAX || phi[i] >= phi.size()) {
      return AutomorphismViolation{"not-well-defined", describe(i), "image of " + describe(i) + " is not a point of the set"};
    }
  }
  std::vector<std::uint32_t> pre(phi.size(), UINT32_MAX);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (pre[phi[i]] != UINT32_MAX) {
      return AutomorphismViolation{"not-bijective", describe(i),
                                   describe(pre[phi[i]]) + " and " + describe(i) + " have the same image"};
    }
    pre[phi[i]] = static_cast<std::uint32_t>(i);
  }
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[frob[i]] != frob[phi[i]]) {
      return AutomorphismViolation{"not-frobenius-equivariant", describe(i),
                                   "automorphism does not commute with Frobenius at " + describe(i)};
    }
  }
  return std::nullopt;
}

}  // namespace

const ff::ExtField& PointSet::field() const { return model_->field(); }

std::optional<std::size_t> PointSet::index_of(PointKey key) const { return find_key(keys_, key); }

Point PointSet::point(std::size_t i) const { return model_->decode(keys_.at(i)); }

std::string PointSet::describe(std::size_t i) const { return model_->describe(keys_.at(i)); }

PointSet enumerate_points(const VarietySpec& v, const ff::ExtField& field, const ComputeOptions& opts) {
  PointSet s;
  s.model_ = make_model(v, field, opts);
  s.keys_ = s.model_->enumerate();
  return s;
}

std::optional<std::size_t> StratumN::index_of(PointKey key) const { return find_key(keys, key); }

Point StratumN::point(std::size_t i) const { return model->decode(keys.at(i)); }

std::string StratumN::describe(std::size_t i) const { return model->describe(keys.at(i)); }

StratumN exact_degree_stratum(const VarietySpec& v, const ff::FieldSpec& base, unsigned n,
                              const ComputeOptions& opts) {
  if (n == 0) throw ValidationError("n must be >= 1");
  const ff::ExtField F = ff::ExtField::build(base, n, opts.budget);
  auto model = make_model(v, F, opts);
  const std::vector<PointKey> all = model->enumerate();
  if (all.size() >= UINT32_MAX) throw ResourceError("too many points");
  const auto img = image_indices(all, [&](PointKey k) { return model->frob(k); }, opts.threads);

  // Exact degree = length of the Frobenius cycle.
  std::vector<char> keep(all.size(), 0), seen(all.size(), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img[j]) {
      if (img[j] == UINT32_MAX) throw std::logic_error("Frobenius image is not a point");
      seen[j] = 1;
      ++len;
    }
    if (len == n) {
      for (std::size_t j = i, c = 0; c < len; j = img[j], ++c) keep[j] = 1;
    }
  }

  StratumN s{F, n, {}, {}, model, opts};
  std::vector<std::uint32_t> remap(all.size(), UINT32_MAX);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<std::uint32_t>(s.keys.size());
    s.keys.push_back(all[i]);
  }
  s.frob.reserve(s.keys.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) s.frob.push_back(remap[img[i]]);
  }
  if (s.keys.size() % n != 0) throw std::logic_error("stratum size not divisible by n");
  return s;
}

std::uint64_t count_points(const VarietySpec& v, const ff::FieldSpec& base, unsigned n, const ComputeOptions& opts) {
  if (n == 0) throw ValidationError("n must be >= 1");
  const ff::ExtField F = ff::ExtField::build(base, n, opts.budget);
  return make_model(v, F, opts)->enumerate().size();
}

std::vector<std::uint64_t> degree_census(const VarietySpec& v, const ff::FieldSpec& base, unsigned N,
                                         const ComputeOptions& opts) {
  std::vector<std::uint64_t> b;
  for (unsigned n = 1; n <= N; ++n) {
    const StratumN s = exact_degree_stratum(v, base, n, opts);
    if (s.size() % n != 0) throw std::logic_error("degree census: |X_n| not divisible by n");
    b.push_back(s.size() / n);
  }
  return b;
}

AutomorphismReport validate_automorphism(const VarietySpec& v, const AutomorphismSpec& a, const ff::ExtField& field,
                                         const ComputeOptions& opts) {
  auto model = make_model(v, field, opts);
  const std::vector<PointKey> keys = model->enumerate();
  const auto frob = image_indices(keys, [&](PointKey k) { return model->frob(k); }, opts.threads);
  std::vector<std::uint32_t> phi;
  if (const auto* t = std::get_if<ExplicitPermutation>(&a.action)) {
    if (t->table.size() != keys.size()) {
      return {false, AutomorphismViolation{"not-bijective", "", "permutation table has " + std::to_string(t->table.size()) +
                                                                    " entries for " + std::to_string(keys.size()) + " points"}};
    }
    phi = t->table;
  } else {
    auto act = model->action(a);
    if (auto* bad = std::get_if<AutomorphismViolation>(&act)) return {false, *bad};
    phi = image_indices(keys, std::get<detail::Model::KeyMap>(act), opts.threads);
  }
  auto violation = check_permutation(phi, frob, [&](std::size_t i) { return model->describe(keys[i]); });
  if (violation) return {false, violation};
  return {true, std::nullopt};
}

std::vector<std::uint32_t> apply_automorphism(const AutomorphismSpec& a, const StratumN& s) {
  std::vector<std::uint32_t> phi;
  if (const auto* t = std::get_if<ExplicitPermutation>(&a.action)) {
    if (t->table.size() != s.size()) {
      throw ValidationError("permutation table has " + std::to_string(t->table.size()) + " entries for a stratum of " +
                            std::to_string(s.size()) + " points");
    }
    phi = t->table;
  } else {
    auto act = s.model->action(a);
    if (auto* bad = std::get_if<AutomorphismViolation>(&act)) throw ValidationError(bad->kind + ": " + bad->message);
    phi = image_indices(s.keys, std::get<detail::Model::KeyMap>(act), s.options.threads);
  }
  auto violation = check_permutation(phi, s.frob, [&](std::size_t i) { return s.describe(i); });
  if (violation) throw ValidationError(violation->kind + ": " + violation->message);
  return phi;
}

}  // namespace dzeta::geo
