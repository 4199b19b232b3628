#include "dzeta/assembler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "dzeta/errors.hpp"
#include "dzeta/numtheory.hpp"

namespace dzeta::asmb {

namespace {

constexpr const char* kIdPrefix = "id:";

bool is_identity_name(const std::string& s) { return s.rfind(kIdPrefix, 0) == 0; }

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

}  // namespace

std::string to_string(Policy p) { return p == Policy::kLiteral ? "literal" : "default"; }

Policy parse_policy(const std::string& s) {
  if (s == "default") return Policy::kExcludeDegenerateProductCovers;
  if (s == "literal") return Policy::kLiteral;
  throw ValidationError("unknown policy '" + s + "' (expected default or literal)");
}

// ---------------------------------------------------------------- structure

FinAssembler FinAssembler::from_data(const AssemblerData& d) {
  FinAssembler a;
  std::map<std::string, std::size_t> obj;
  for (const auto& name : d.objects) {
    if (name.empty()) throw ValidationError("object ids must be nonempty");
    if (!obj.emplace(name, a.objects_.size()).second) throw ValidationError("duplicate object id '" + name + "'");
    a.objects_.push_back(name);
  }
  const auto find_obj = [&](const std::string& name, const std::string& ctx) {
    const auto it = obj.find(name);
    if (it == obj.end()) throw ValidationError(ctx + ": unknown object '" + name + "'");
    return it->second;
  };
  a.initial_ = find_obj(d.initial, "initial");
  const std::size_t O = a.objects_.size();

  std::map<std::string, std::size_t> mor;
  for (std::size_t o = 0; o < O; ++o) {
    a.identity_.push_back(a.morphisms_.size());
    mor[kIdPrefix + a.objects_[o]] = a.morphisms_.size();
    a.morphisms_.push_back({kIdPrefix + a.objects_[o], o, o, true});
  }
  for (const auto& m : d.morphisms) {
    if (m.id.empty() || is_identity_name(m.id)) throw ValidationError("invalid morphism id '" + m.id + "'");
    if (mor.count(m.id)) throw ValidationError("duplicate morphism id '" + m.id + "'");
    const std::size_t s = find_obj(m.src, "morphism " + m.id), t = find_obj(m.dst, "morphism " + m.id);
    mor[m.id] = a.morphisms_.size();
    a.morphisms_.push_back({m.id, s, t, false});
  }
  const auto find_mor = [&](const std::string& id, const std::string& ctx) {
    const auto it = mor.find(id);
    if (it == mor.end()) throw ValidationError(ctx + ": unknown morphism '" + id + "'");
    return it->second;
  };

  const std::size_t M = a.morphisms_.size();
  a.hom_.assign(O * O, {});
  for (std::size_t f = 0; f < M; ++f) a.hom_[a.morphisms_[f].src * O + a.morphisms_[f].dst].push_back(f);
  a.comp_.assign(M * M, -1);
  for (std::size_t f = 0; f < M; ++f) {
    a.comp_[a.identity_[a.morphisms_[f].src] * M + f] = static_cast<std::int64_t>(f);
    a.comp_[f * M + a.identity_[a.morphisms_[f].dst]] = static_cast<std::int64_t>(f);
  }
  for (const auto& c : d.compose) {
    const std::string ctx = "compose [" + c.first + "," + c.second + "," + c.result + "]";
    const std::size_t f = find_mor(c.first, ctx), g = find_mor(c.second, ctx), h = find_mor(c.result, ctx);
    const Morphism &mf = a.morphisms_[f], &mg = a.morphisms_[g], &mh = a.morphisms_[h];
    if (mf.dst != mg.src) throw ValidationError(ctx + ": morphisms are not composable");
    if (mh.src != mf.src || mh.dst != mg.dst) throw ValidationError(ctx + ": result has the wrong source or target");
    std::int64_t& slot = a.comp_[f * M + g];
    if (slot >= 0 && slot != static_cast<std::int64_t>(h)) {
      throw ValidationError(ctx + ": conflicts with " + a.morphisms_[static_cast<std::size_t>(slot)].id);
    }
    slot = static_cast<std::int64_t>(h);
  }

  std::set<Family> fams;
  for (const auto& fd : d.coverage) {
    Family fam;
    fam.target = find_obj(fd.target, "coverage");
    for (const auto& mid : fd.members) {
      const std::size_t f = find_mor(mid, "coverage of " + fd.target);
      if (a.morphisms_[f].dst != fam.target) {
        throw ValidationError("coverage of " + fd.target + ": member " + mid + " does not map to the target");
      }
      fam.members.push_back(f);
    }
    std::sort(fam.members.begin(), fam.members.end());
    fams.insert(std::move(fam));
  }
  a.coverage_.assign(fams.begin(), fams.end());
  a.policy_ = d.policy;
  return a;
}

AssemblerData FinAssembler::to_data() const {
  AssemblerData d;
  d.objects = objects_;
  d.initial = objects_[initial_];
  const std::size_t M = morphisms_.size();
  for (const auto& m : morphisms_) {
    if (!m.identity) d.morphisms.push_back({m.id, objects_[m.src], objects_[m.dst]});
  }
  for (std::size_t f = 0; f < M; ++f) {
    if (morphisms_[f].identity) continue;
    for (std::size_t g = 0; g < M; ++g) {
      if (morphisms_[g].identity || comp_[f * M + g] < 0) continue;
      d.compose.push_back({morphisms_[f].id, morphisms_[g].id, morphisms_[static_cast<std::size_t>(comp_[f * M + g])].id});
    }
  }
  for (const auto& fam : coverage_) {
    FamilyData fd{objects_[fam.target], {}};
    for (std::size_t f : fam.members) fd.members.push_back(morphisms_[f].id);
    d.coverage.push_back(std::move(fd));
  }
  d.policy = policy_;
  return d;
}

std::optional<std::size_t> FinAssembler::object_index(const std::string& name) const {
  const auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - objects_.begin());
}

std::vector<std::size_t> FinAssembler::noninitial_objects() const {
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    if (o != initial_) out.push_back(o);
  }
  return out;
}

std::optional<std::size_t> FinAssembler::morphism_index(const std::string& id) const {
  for (std::size_t f = 0; f < morphisms_.size(); ++f) {
    if (morphisms_[f].id == id) return f;
  }
  return std::nullopt;
}

std::optional<std::size_t> FinAssembler::compose(std::size_t f, std::size_t g) const {
  const std::int64_t r = comp_.at(f * morphisms_.size() + g);
  if (r < 0) return std::nullopt;
  return static_cast<std::size_t>(r);
}

// ---------------------------------------------------------------- axioms

std::vector<Violation> validate(const FinAssembler& a) {
  std::vector<Violation> out;
  const std::size_t M = a.morphism_count(), O = a.object_count();
  const auto name = [&](std::size_t f) { return a.morphism(f).id; };
  bool total = true;
  for (std::size_t f = 0; f < M; ++f) {
    for (std::size_t g = 0; g < M; ++g) {
      if (a.morphism(f).dst == a.morphism(g).src && !a.compose(f, g)) {
        out.push_back({"composition-missing", "(" + name(f) + ", " + name(g) + ")"});
        total = false;
      }
    }
  }
  if (total) {
    for (std::size_t f = 0; f < M; ++f) {
      for (std::size_t y = 0; y < O; ++y) {
        for (std::size_t g : a.hom(a.morphism(f).dst, y)) {
          for (std::size_t z = 0; z < O; ++z) {
            for (std::size_t h : a.hom(y, z)) {
              const auto l = a.compose(*a.compose(f, g), h), r = a.compose(f, *a.compose(g, h));
              if (l != r) out.push_back({"non-associative", "(" + name(f) + ", " + name(g) + ", " + name(h) + ")"});
            }
          }
        }
      }
    }
  }
  for (std::size_t o = 0; o < O; ++o) {
    const std::size_t k = a.hom(a.initial(), o).size();
    if (k != 1) {
      out.push_back({"initial", a.object_name(a.initial()) + " has " + std::to_string(k) + " morphisms to " + a.object_name(o)});
    }
  }
  if (total) {
    for (std::size_t f = 0; f < M; ++f) {
      const std::size_t b = a.morphism(f).src;
      for (std::size_t x = 0; x < O; ++x) {
        const auto& hs = a.hom(x, b);
        for (std::size_t i = 0; i < hs.size(); ++i) {
          for (std::size_t j = i + 1; j < hs.size(); ++j) {
            if (a.compose(hs[i], f) == a.compose(hs[j], f)) {
              out.push_back({"non-monic", "(" + name(f) + ", " + name(hs[i]) + ", " + name(hs[j]) + ")"});
            }
          }
        }
      }
    }
  }
  const bool has_empty = std::any_of(a.coverage().begin(), a.coverage().end(), [&](const Family& fam) {
    return fam.target == a.initial() && fam.members.empty();
  });
  if (!has_empty) out.push_back({"axiom-I", "no empty covering family on " + a.object_name(a.initial())});
  return out;
}

// ---------------------------------------------------------------- pullbacks

std::optional<Pullback> pullback(const FinAssembler& a, std::size_t f, std::size_t g) {
  const std::size_t X = a.morphism(f).src, Y = a.morphism(g).src, Z = a.morphism(f).dst;
  if (a.morphism(g).dst != Z) throw std::invalid_argument("pullback: morphisms must share a target");
  struct Cone {
    std::size_t w, u, v;
  };
  std::vector<Cone> cones;
  std::vector<std::size_t> order{a.initial()};
  for (std::size_t o : a.noninitial_objects()) order.push_back(o);
  for (std::size_t w : order) {
    for (std::size_t u : a.hom(w, X)) {
      for (std::size_t v : a.hom(w, Y)) {
        const auto l = a.compose(u, f), r = a.compose(v, g);
        if (l && r && *l == *r) cones.push_back({w, u, v});
      }
    }
  }
  for (const Cone& cand : cones) {
    bool universal = true;
    for (const Cone& c : cones) {
      std::size_t factorizations = 0;
      for (std::size_t h : a.hom(c.w, cand.w)) {
        if (a.compose(h, cand.u) == c.u && a.compose(h, cand.v) == c.v) ++factorizations;
      }
      if (factorizations != 1) {
        universal = false;
        break;
      }
    }
    if (universal) return Pullback{cand.w, cand.u, cand.v};
  }
  return std::nullopt;
}

bool is_disjoint(const FinAssembler& a, std::size_t f, std::size_t g) {
  const auto pb = pullback(a, f, g);
  return pb && pb->object == a.initial();
}

bool is_disjoint_family(const FinAssembler& a, const Family& fam) {
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.members.size(); ++j) {
      if (!is_disjoint(a, fam.members[i], fam.members[j])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- closure

std::vector<Family> refinement_closure(const FinAssembler& a, const ClosureCaps& caps) {
  std::set<Family> seen;
  std::deque<Family> queue;
  const auto add = [&](Family fam) {
    std::sort(fam.members.begin(), fam.members.end());
    if (fam.members.size() > caps.max_family_size) {
      throw ResourceError("cover closure: family on " + a.object_name(fam.target) + " exceeds the family size cap of " +
                          std::to_string(caps.max_family_size));
    }
    if (seen.insert(fam).second) {
      if (seen.size() > caps.max_families) {
        throw ResourceError("cover closure: more than " + std::to_string(caps.max_families) + " families (family count cap)");
      }
      queue.push_back(std::move(fam));
    }
  };
  for (std::size_t o = 0; o < a.object_count(); ++o) add(Family{o, {a.identity(o)}});
  for (const Family& fam : a.coverage()) add(fam);

  while (!queue.empty()) {
    const Family fam = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      const std::size_t f = fam.members[i];
      const std::size_t src = a.morphism(f).src;
      for (const Family& g : a.coverage()) {
        if (g.target != src) continue;
        Family next{fam.target, {}};
        for (std::size_t j = 0; j < fam.members.size(); ++j) {
          if (j != i) next.members.push_back(fam.members[j]);
        }
        for (std::size_t h : g.members) {
          const auto c = a.compose(h, f);
          if (!c) throw ValidationError("composition missing for (" + a.morphism(h).id + ", " + a.morphism(f).id + ")");
          next.members.push_back(*c);
        }
        add(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Family> cover_closure(const FinAssembler& a, const ClosureCaps& caps) {
  std::vector<Family> out;
  for (auto& fam : refinement_closure(a, caps)) {
    if (is_disjoint_family(a, fam)) out.push_back(std::move(fam));
  }
  return out;
}

// ---------------------------------------------------------------- K_0

std::string AbelianGroup::str() const {
  std::ostringstream os;
  bool first = true;
  if (rank > 0 || torsion.empty()) {
    os << "Z^" << rank;
    first = false;
  }
  for (auto t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

AbelianGroup smith_cokernel(std::vector<std::vector<std::int64_t>> A, std::size_t cols) {
  using nt::checked_mul;
  using nt::checked_sub;
  const std::size_t m = A.size();
  for (auto& row : A) {
    if (row.size() > cols) throw std::invalid_argument("smith_cokernel: row longer than column count");
    row.resize(cols, 0);
  }
  const auto row_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t j = 0; j < cols; ++j) A[dst][j] = checked_sub(A[dst][j], checked_mul(q, A[src][j]));
  };
  const auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t i = 0; i < m; ++i) A[i][dst] = checked_sub(A[i][dst], checked_mul(q, A[i][src]));
  };
  std::vector<std::int64_t> diag;
  for (std::size_t t = 0; t < std::min(m, cols); ++t) {
    bool found = false;
    while (true) {
      std::size_t pi = 0, pj = 0;
      std::int64_t best = 0;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          const std::int64_t v = A[i][j] < 0 ? -A[i][j] : A[i][j];
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      }
      if (best == 0) break;
      found = true;
      std::swap(A[t], A[pi]);
      for (std::size_t i = 0; i < m; ++i) std::swap(A[i][t], A[i][pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        row_op(i, t, A[i][t] / A[t][t]);
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (A[t][j] == 0) continue;
        col_op(j, t, A[t][j] / A[t][t]);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Make the pivot divide the rest of the submatrix.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (A[i][j] % A[t][t] != 0) {
            for (std::size_t k = 0; k < cols; ++k) A[t][k] = nt::checked_add(A[t][k], A[i][k]);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (!found) break;
    diag.push_back(A[t][t] < 0 ? -A[t][t] : A[t][t]);
  }
  AbelianGroup g;
  g.rank = cols - diag.size();
  for (auto d : diag) {
    if (d > 1) g.torsion.push_back(d);
  }
  std::sort(g.torsion.begin(), g.torsion.end());
  return g;
}

AbelianGroup k0(const FinAssembler& a, const ClosureCaps& caps) {
  std::vector<std::size_t> col(a.object_count(), SIZE_MAX);
  const auto gens = a.noninitial_objects();
  for (std::size_t i = 0; i < gens.size(); ++i) col[gens[i]] = i;
  std::vector<std::vector<std::int64_t>> rows;
  for (const Family& fam : cover_closure(a, caps)) {
    std::vector<std::int64_t> row(gens.size(), 0);
    if (fam.target != a.initial()) row[col[fam.target]] += 1;
    for (std::size_t f : fam.members) {
      const std::size_t s = a.morphism(f).src;
      if (s != a.initial()) row[col[s]] -= 1;
    }
    if (std::any_of(row.begin(), row.end(), [](std::int64_t v) { return v != 0; })) rows.push_back(std::move(row));
  }
  return smith_cokernel(std::move(rows), gens.size());
}

// ---------------------------------------------------------------- products

FinAssembler box_product(const FinAssembler& a, const FinAssembler& b, Policy policy) {
  AssemblerData d;
  d.policy = policy;
  for (std::size_t x = 0; x < a.object_count(); ++x) {
    for (std::size_t y = 0; y < b.object_count(); ++y) d.objects.push_back(pair_name(a.object_name(x), b.object_name(y)));
  }
  d.initial = pair_name(a.object_name(a.initial()), b.object_name(b.initial()));

  const auto mname = [&](std::size_t f, std::size_t g) {
    const Morphism &mf = a.morphism(f), &mg = b.morphism(g);
    if (mf.identity && mg.identity) return kIdPrefix + pair_name(a.object_name(mf.src), b.object_name(mg.src));
    return pair_name(mf.id, mg.id);
  };
  for (std::size_t f = 0; f < a.morphism_count(); ++f) {
    for (std::size_t g = 0; g < b.morphism_count(); ++g) {
      const Morphism &mf = a.morphism(f), &mg = b.morphism(g);
      if (mf.identity && mg.identity) continue;
      d.morphisms.push_back({mname(f, g), pair_name(a.object_name(mf.src), b.object_name(mg.src)),
                             pair_name(a.object_name(mf.dst), b.object_name(mg.dst))});
    }
  }
  for (std::size_t f1 = 0; f1 < a.morphism_count(); ++f1) {
    for (std::size_t g1 = 0; g1 < b.morphism_count(); ++g1) {
      if (a.morphism(f1).identity && b.morphism(g1).identity) continue;
      for (std::size_t f2 = 0; f2 < a.morphism_count(); ++f2) {
        if (a.morphism(f1).dst != a.morphism(f2).src) continue;
        for (std::size_t g2 = 0; g2 < b.morphism_count(); ++g2) {
          if (b.morphism(g1).dst != b.morphism(g2).src) continue;
          if (a.morphism(f2).identity && b.morphism(g2).identity) continue;
          const auto fc = a.compose(f1, f2), gc = b.compose(g1, g2);
          if (!fc || !gc) continue;  // reported by validate()
          d.compose.push_back({mname(f1, g1), mname(f2, g2), mname(*fc, *gc)});
        }
      }
    }
  }

  const auto families_of = [](const FinAssembler& c, std::size_t o) {
    std::vector<Family> out{Family{o, {c.identity(o)}}};
    for (const Family& fam : c.coverage()) {
      if (fam.target == o && fam != out.front()) out.push_back(fam);
    }
    return out;
  };
  for (std::size_t x = 0; x < a.object_count(); ++x) {
    const auto fa = families_of(a, x);
    for (std::size_t y = 0; y < b.object_count(); ++y) {
      const auto fb = families_of(b, y);
      const bool one_initial = (x == a.initial()) != (y == b.initial());
      for (std::size_t i = 0; i < fa.size(); ++i) {
        for (std::size_t j = 0; j < fb.size(); ++j) {
          if (i == 0 && j == 0) continue;  // trivial family, implicit
          FamilyData fd{pair_name(a.object_name(x), b.object_name(y)), {}};
          for (std::size_t f : fa[i].members) {
            for (std::size_t g : fb[j].members) fd.members.push_back(mname(f, g));
          }
          if (policy == Policy::kExcludeDegenerateProductCovers && fd.members.empty() && one_initial) continue;
          d.coverage.push_back(std::move(fd));
        }
      }
    }
  }
  return FinAssembler::from_data(d);
}

FinAssembler remove_sieve(const FinAssembler& a, const std::vector<std::string>& objects) {
  std::vector<char> removed(a.object_count(), 0);
  for (const auto& name : objects) {
    const auto o = a.object_index(name);
    if (!o) throw ValidationError("remove_sieve: unknown object '" + name + "'");
    if (*o == a.initial()) throw ValidationError("remove_sieve: the initial object cannot be removed");
    removed[*o] = 1;
  }
  for (std::size_t f = 0; f < a.morphism_count(); ++f) {
    const Morphism& m = a.morphism(f);
    if (removed[m.dst] && !removed[m.src] && m.src != a.initial()) {
      throw ValidationError("remove_sieve: not a sieve, " + a.object_name(m.src) + " maps into removed object " +
                            a.object_name(m.dst) + " via " + m.id);
    }
  }
  const AssemblerData full = a.to_data();
  AssemblerData d;
  d.policy = a.policy();
  d.initial = full.initial;
  const auto keep = [&](const std::string& name) { return !removed[*a.object_index(name)]; };
  for (const auto& o : full.objects) {
    if (keep(o)) d.objects.push_back(o);
  }
  std::set<std::string> kept_morphisms;
  for (const auto& m : full.morphisms) {
    if (keep(m.src) && keep(m.dst)) {
      d.morphisms.push_back(m);
      kept_morphisms.insert(m.id);
    }
  }
  for (const auto& c : full.compose) {
    if (kept_morphisms.count(c.first) && kept_morphisms.count(c.second)) d.compose.push_back(c);
  }
  for (const Family& fam : a.coverage()) {
    if (removed[fam.target]) continue;
    FamilyData fd{a.object_name(fam.target), {}};
    for (std::size_t f : fam.members) {
      if (!removed[a.morphism(f).src]) fd.members.push_back(a.morphism(f).id);
    }
    d.coverage.push_back(std::move(fd));
  }
  return FinAssembler::from_data(d);
}

std::vector<std::string> wedge_objects(const FinAssembler& a, const FinAssembler& b) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < a.object_count(); ++x) {
    for (std::size_t y = 0; y < b.object_count(); ++y) {
      if ((x == a.initial()) != (y == b.initial())) out.push_back(pair_name(a.object_name(x), b.object_name(y)));
    }
  }
  return out;
}

FinAssembler smash_product(const FinAssembler& a, const FinAssembler& b, Policy policy) {
  return remove_sieve(box_product(a, b, policy), wedge_objects(a, b));
}

}  // namespace dzeta::asmb
