#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "formkit/form.hpp"
#include "formkit/topogenous.hpp"

/// The subgroup form over finite groups: fibres are subgroup lattices,
/// push is the image and pull the preimage along a homomorphism.
namespace formkit::grp {

/// Subsets of a group as bit masks, bit g = element g.
using Mask = std::uint32_t;

inline constexpr std::size_t kMaxSubgroupOrder = 24;
inline constexpr std::size_t kMaxHomOrder = 12;
inline constexpr std::size_t kBruteForceHomOrder = 6;

/// A group given by its Cayley table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup("Z1", 1, {0}) {}

  FiniteGroup(std::string name, std::size_t order, std::vector<std::size_t> cayley)
      : name_(std::move(name)), n_(order), table_(std::move(cayley)) {
    if (n_ == 0) throw input_error("group order must be positive");
    if (table_.size() != n_ * n_) throw input_error("Cayley table must be order x order");
    for (auto v : table_)
      if (v >= n_) throw input_error("Cayley table entry out of range");
    inverse_.assign(n_, n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (mul(a, b) == 0 && mul(b, a) == 0) inverse_[a] = b;
  }

  const std::string& name() const { return name_; }
  std::size_t order() const { return n_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }
  std::size_t inv(std::size_t a) const { return inverse_.at(a); }
  const std::vector<std::size_t>& cayley() const { return table_; }
  Mask whole() const { return n_ >= 32 ? ~Mask{0} : (Mask{1} << n_) - 1; }

  /// Associativity, identity 0 and inverses; empty result means a group.
  std::vector<std::string> problems() const {
    std::vector<std::string> p;
    for (std::size_t a = 0; a < n_; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a) p.push_back("0 is not neutral for " + std::to_string(a));
      if (inverse_[a] == n_) p.push_back("no inverse for " + std::to_string(a));
    }
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            p.push_back("not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                        "," + std::to_string(c) + ")");
            return p;
          }
    return p;
  }

  void validate() const {
    auto p = problems();
    if (!p.empty()) throw input_error("group '" + name_ + "': " + p.front());
  }

  bool abelian() const {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  std::string name_;
  std::size_t n_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
};

inline FiniteGroup cyclic(std::size_t n) {
  std::vector<std::size_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return FiniteGroup("Z" + std::to_string(n), n, std::move(t));
}

using Permutation = std::vector<std::size_t>;

/// The group generated by the given permutations, composed as
/// (p q)(x) = p(q(x)). Elements are listed identity first, then in order of
/// discovery by breadth-first search over right multiplication.
inline FiniteGroup permutation_group(std::string name, const std::vector<Permutation>& gens) {
  const std::size_t deg = gens.empty() ? 0 : gens.front().size();
  Permutation id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = i;
  auto compose = [](const Permutation& p, const Permutation& q) {
    Permutation r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
  };
  std::vector<Permutation> elems{id};
  std::map<Permutation, std::size_t> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      auto p = compose(elems[i], g);
      if (index.emplace(p, elems.size()).second) elems.push_back(std::move(p));
    }
  const std::size_t n = elems.size();
  std::vector<std::size_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = index.at(compose(elems[a], elems[b]));
  return FiniteGroup(std::move(name), n, std::move(t));
}

/// S3 with elements in lexicographic order of their one-line notation:
/// 012, 021, 102, 120, 201, 210. Index 2 is the transposition of the
/// first two points and {0, 3, 4} is A3.
inline FiniteGroup symmetric3() {
  std::vector<Permutation> elems = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::size_t> t(36);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      Permutation r(3);
      for (std::size_t i = 0; i < 3; ++i) r[i] = elems[a][elems[b][i]];
      t[a * 6 + b] = static_cast<std::size_t>(std::find(elems.begin(), elems.end(), r) - elems.begin());
    }
  return FiniteGroup("S3", 6, std::move(t));
}

inline FiniteGroup klein4() { return permutation_group("V4", {{1, 0, 3, 2}, {2, 3, 0, 1}}); }

/// Symmetries of the square on its vertices 0..3.
inline FiniteGroup dihedral4() { return permutation_group("D4", {{1, 2, 3, 0}, {0, 3, 2, 1}}); }

/// Q8 with elements 1, -1, i, -i, j, -j, k, -k at indices 0..7.
inline FiniteGroup quaternion8() {
  // unit products on {1, i, j, k} as (sign, unit)
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::size_t> t(64);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      const std::size_t ua = a / 2, ub = b / 2;
      int s = sign[ua][ub] * ((a % 2) ? -1 : 1) * ((b % 2) ? -1 : 1);
      t[a * 8 + b] = static_cast<std::size_t>(unit[ua][ub]) * 2 + (s < 0 ? 1 : 0);
    }
  return FiniteGroup("Q8", 8, std::move(t));
}

/// Z1..Z8, V4, S3, D4 and Q8, restricted to orders <= max_order.
inline std::vector<FiniteGroup> standard_corpus(std::size_t max_order = 8) {
  std::vector<FiniteGroup> all;
  for (std::size_t n = 1; n <= 8; ++n) all.push_back(cyclic(n));
  all.push_back(klein4());
  all.push_back(symmetric3());
  all.push_back(dihedral4());
  all.push_back(quaternion8());
  std::vector<FiniteGroup> out;
  for (auto& g : all)
    if (g.order() <= max_order) out.push_back(std::move(g));
  return out;
}

inline FiniteGroup corpus_group(const std::string& name) {
  for (auto& g : standard_corpus(8))
    if (g.name() == name) return g;
  throw input_error("unknown corpus group '" + name + "'");
}

// ---------------------------------------------------------------------------
// subgroups

/// The subgroup generated by a subset (closure under multiplication, which
/// suffices in a finite group).
inline Mask generated(const FiniteGroup& g, Mask seed) {
  Mask m = seed | 1u;
  std::vector<std::size_t> members;
  for (std::size_t a = 0; a < g.order(); ++a)
    if ((m >> a) & 1u) members.push_back(a);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (auto p : {g.mul(members[i], members[j]), g.mul(members[j], members[i])})
        if (!((m >> p) & 1u)) {
          m |= Mask{1} << p;
          members.push_back(p);
        }
  return m;
}

inline bool is_subgroup(const FiniteGroup& g, Mask m) {
  if (!(m & 1u)) return false;
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (!((m >> a) & 1u)) continue;
    if (!((m >> g.inv(a)) & 1u)) return false;
    for (std::size_t b = 0; b < g.order(); ++b)
      if (((m >> b) & 1u) && !((m >> g.mul(a, b)) & 1u)) return false;
  }
  return true;
}

inline bool is_normal(const FiniteGroup& g, Mask m) {
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t a = 0; a < g.order(); ++a)
      if (((m >> a) & 1u) && !((m >> g.mul(g.mul(x, a), g.inv(x))) & 1u)) return false;
  return true;
}

inline void check_subgroup_cap(const FiniteGroup& g) {
  if (g.order() > kMaxSubgroupOrder)
    throw input_error("subgroup lattices are capped at order " + std::to_string(kMaxSubgroupOrder));
}

/// Every subgroup, sorted by (size, mask). Built as joins of cyclic
/// subgroups until no new subgroup appears.
inline std::vector<Mask> enumerate_subgroups(const FiniteGroup& g) {
  check_subgroup_cap(g);
  std::vector<Mask> subs;
  auto add = [&](Mask m) {
    if (std::find(subs.begin(), subs.end(), m) == subs.end()) subs.push_back(m);
  };
  for (std::size_t a = 0; a < g.order(); ++a) add(generated(g, Mask{1} << a));
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(generated(g, subs[i] | subs[j]));
  std::sort(subs.begin(), subs.end(), [](Mask a, Mask b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return subs;
}

inline std::string describe(const FiniteGroup& g, Mask m) {
  std::string s = "{";
  bool first = true;
  for (std::size_t a = 0; a < g.order(); ++a)
    if ((m >> a) & 1u) {
      s += (first ? "" : ",") + std::to_string(a);
      first = false;
    }
  return s + "}";
}

struct SubgroupLattice {
  FiniteGroup group;
  std::vector<Mask> subgroups;
  FiniteLattice lattice;  // ordered by inclusion

  std::size_t index_of(Mask m) const {
    auto it = std::find(subgroups.begin(), subgroups.end(), m);
    if (it == subgroups.end()) throw input_error("not a subgroup of " + group.name());
    return static_cast<std::size_t>(it - subgroups.begin());
  }
};

inline SubgroupLattice subgroups(const FiniteGroup& g) {
  SubgroupLattice s{g, enumerate_subgroups(g), {}};
  std::vector<std::string> labels;
  for (auto m : s.subgroups) labels.push_back(describe(g, m));
  const auto& subs = s.subgroups;
  s.lattice = FiniteLattice::from_predicate(
      subs.size(), [&](std::size_t a, std::size_t b) { return (subs[a] & ~subs[b]) == 0; },
      std::move(labels));
  return s;
}

inline std::vector<Mask> normal_subgroups(const FiniteGroup& g) {
  std::vector<Mask> r;
  for (auto m : enumerate_subgroups(g))
    if (is_normal(g, m)) r.push_back(m);
  return r;
}

/// Intersection of all normal subgroups containing `a`.
inline Mask normal_closure(const FiniteGroup& g, Mask a) {
  Mask acc = g.whole();
  for (auto n : normal_subgroups(g))
    if ((a & ~n) == 0) acc &= n;
  return acc;
}

// ---------------------------------------------------------------------------
// homomorphisms

struct GroupHom {
  std::size_t source = 0;  // indices into the owning group list
  std::size_t target = 0;
  std::vector<std::size_t> values;

  friend bool operator==(const GroupHom&, const GroupHom&) = default;
};

inline bool is_hom(const FiniteGroup& g, const FiniteGroup& h, const std::vector<std::size_t>& v) {
  if (v.size() != g.order()) return false;
  for (auto x : v)
    if (x >= h.order()) return false;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (v[g.mul(a, b)] != h.mul(v[a], v[b])) return false;
  return true;
}

inline Mask image(const std::vector<std::size_t>& v, Mask a) {
  Mask r = 0;
  for (std::size_t x = 0; x < v.size(); ++x)
    if ((a >> x) & 1u) r |= Mask{1} << v[x];
  return r;
}

inline Mask preimage(const std::vector<std::size_t>& v, Mask b) {
  Mask r = 0;
  for (std::size_t x = 0; x < v.size(); ++x)
    if ((b >> v[x]) & 1u) r |= Mask{1} << x;
  return r;
}

inline bool surjective(const FiniteGroup& h, const std::vector<std::size_t>& v) {
  return image(v, ~Mask{0}) == h.whole();
}

/// h(N) is normal in the target for every normal N of the source.
inline bool preserves_normals(const FiniteGroup& g, const FiniteGroup& h,
                              const std::vector<std::size_t>& v) {
  for (auto n : normal_subgroups(g))
    if (!is_normal(h, image(v, n))) return false;
  return true;
}

inline void check_hom_cap(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() > kMaxHomOrder || h.order() > kMaxHomOrder)
    throw input_error("homomorphism enumeration is capped at order " + std::to_string(kMaxHomOrder));
}

/// Every value table with identity fixed, filtered by the homomorphism law.
inline std::vector<std::vector<std::size_t>> enumerate_homs_brute(const FiniteGroup& g,
                                                                  const FiniteGroup& h) {
  check_hom_cap(g, h);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> v(g.order(), 0);
  while (true) {
    if (is_hom(g, h, v)) out.push_back(v);
    std::size_t i = g.order();
    while (true) {
      if (i == 1) return out;
      --i;
      if (++v[i] < h.order()) break;
      v[i] = 0;
    }
  }
}

/// Greedy generating set: repeatedly add the smallest element outside the
/// subgroup generated so far.
inline std::vector<std::size_t> generating_set(const FiniteGroup& g) {
  std::vector<std::size_t> gens;
  Mask cur = 1;
  for (std::size_t a = 1; a < g.order() && cur != g.whole(); ++a)
    if (!((cur >> a) & 1u)) {
      gens.push_back(a);
      cur = generated(g, cur | (Mask{1} << a));
    }
  return gens;
}

/// Assigns images to a generating set, extends along words and keeps the
/// assignments that yield a homomorphism.
inline std::vector<std::vector<std::size_t>> enumerate_homs_generators(const FiniteGroup& g,
                                                                       const FiniteGroup& h) {
  check_hom_cap(g, h);
  const auto gens = generating_set(g);
  // each element reached by right-multiplying a known element by a generator
  struct Step {
    std::size_t from, gen, to;
  };
  std::vector<Step> steps;
  std::vector<std::uint8_t> seen(g.order(), 0);
  seen[0] = 1;
  std::vector<std::size_t> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const auto to = g.mul(queue[i], gens[k]);
      if (seen[to]) continue;
      seen[to] = 1;
      steps.push_back({queue[i], k, to});
      queue.push_back(to);
    }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> img(gens.size(), 0);
  while (true) {
    std::vector<std::size_t> v(g.order(), 0);
    for (const auto& s : steps) v[s.to] = h.mul(v[s.from], img[s.gen]);
    if (is_hom(g, h, v)) out.push_back(std::move(v));
    std::size_t i = gens.size();
    while (true) {
      if (i == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
      --i;
      if (++img[i] < h.order()) break;
      img[i] = 0;
    }
  }
}

/// All homomorphisms in lexicographic order of value tables. Small sources
/// use the brute-force table filter, larger ones generator images.
inline std::vector<std::vector<std::size_t>> enumerate_homs(const FiniteGroup& g, const FiniteGroup& h) {
  return g.order() <= kBruteForceHomOrder ? enumerate_homs_brute(g, h) : enumerate_homs_generators(g, h);
}

// ---------------------------------------------------------------------------
// the form

struct GrpForm {
  FormInstance form;
  std::vector<SubgroupLattice> fibres;  // per object
  std::vector<GroupHom> homs;           // per morphism

  const FiniteGroup& group(ObjectId x) const { return fibres.at(x).group; }
};

inline std::string hom_name(const FiniteGroup& g, const FiniteGroup& h,
                            const std::vector<std::size_t>& v) {
  static constexpr char digits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s = g.name() + ">" + h.name() + ":";
  for (auto x : v) s += digits[x];
  return s;
}

/// Objects are the given groups, morphisms every homomorphism between them.
inline GrpForm build_grp_form(const std::vector<FiniteGroup>& groups) {
  GrpForm gf;
  CategoryPresentation cat;
  for (const auto& g : groups) {
    g.validate();
    check_hom_cap(g, g);
    cat.add_object(g.name());
    gf.fibres.push_back(subgroups(g));
  }
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, MorphismId> ids;
  std::vector<std::vector<Element>> push, pull;
  for (std::size_t x = 0; x < groups.size(); ++x)
    for (std::size_t y = 0; y < groups.size(); ++y)
      for (auto& v : enumerate_homs(groups[x], groups[y])) {
        const auto id = cat.add_morphism(hom_name(groups[x], groups[y], v), x, y);
        ids[{x, y, v}] = id;
        const auto& fx = gf.fibres[x];
        const auto& fy = gf.fibres[y];
        std::vector<Element> ps, pl;
        for (auto a : fx.subgroups) ps.push_back(fy.index_of(image(v, a)));
        for (auto b : fy.subgroups) pl.push_back(fx.index_of(preimage(v, b)));
        push.push_back(std::move(ps));
        pull.push_back(std::move(pl));
        gf.homs.push_back({x, y, std::move(v)});
      }
  for (std::size_t x = 0; x < groups.size(); ++x) {
    std::vector<std::size_t> id(groups[x].order());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    cat.set_identity(x, ids.at({x, x, id}));
  }
  for (MorphismId f = 0; f < cat.morphism_count(); ++f) {
    const auto& hf = gf.homs[f];
    for (MorphismId g : std::vector<MorphismId>(cat.out_of(hf.target))) {
      const auto& hg = gf.homs[g];
      std::vector<std::size_t> v(hf.values.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = hg.values[hf.values[i]];
      cat.set_composite(g, f, ids.at({hf.source, hg.target, v}));
    }
  }
  std::vector<FiniteLattice> lattices;
  for (const auto& fib : gf.fibres) lattices.push_back(fib.lattice);
  gf.form = FormInstance(std::move(cat), std::move(lattices), std::move(push), std::move(pull));
  return gf;
}

/// A < B iff some normal N has A <= N <= B.
inline TopogenousOrder normal_interval_order(const GrpForm& gf) {
  TopogenousOrder t;
  for (const auto& fib : gf.fibres) {
    const auto normals = normal_subgroups(fib.group);
    const auto n = fib.subgroups.size();
    Relation r(n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (auto nm : normals)
          if ((fib.subgroups[a] & ~nm) == 0 && (nm & ~fib.subgroups[b]) == 0) {
            r.set(a, b);
            break;
          }
    t.rel.push_back(std::move(r));
  }
  return t;
}

inline ClosureOperator normal_closure_operator(const GrpForm& gf) {
  ClosureOperator c;
  for (const auto& fib : gf.fibres) {
    std::vector<Element> m;
    for (auto a : fib.subgroups) m.push_back(fib.index_of(normal_closure(fib.group, a)));
    c.map.push_back(std::move(m));
  }
  return c;
}

}  // namespace formkit::grp
