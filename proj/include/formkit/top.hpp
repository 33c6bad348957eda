#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "formkit/form.hpp"
#include "formkit/topogenous.hpp"

/// The forgetful form Top -> Set on small finite sets: fibres are lattices of
/// topologies, push is the final topology and pull the initial topology.
namespace formkit::top {

/// Subsets of {0..n-1} as bit masks, bit i = point i.
using Subset = std::uint32_t;

inline constexpr std::size_t kMaxPoints = 4;

/// A family of open sets on {0..n-1}. `opens` has bit S set iff the subset
/// with mask S is open (so 2^n bits, at most 16 for n <= 4).
class FiniteTopology {
 public:
  FiniteTopology() = default;

  /// Unchecked; see is_valid().
  FiniteTopology(std::size_t n, std::uint32_t opens) : n_(n), opens_(opens) {}

  static FiniteTopology from_opens(std::size_t n, const std::vector<Subset>& opens) {
    check_points(n);
    std::uint32_t family = 0;
    for (Subset s : opens) {
      if (s >> n) throw input_error("open set " + std::to_string(s) + " exceeds ground set");
      family |= std::uint32_t{1} << s;
    }
    FiniteTopology t(n, family);
    if (!t.is_valid()) throw input_error("open sets do not form a topology");
    return t;
  }

  static FiniteTopology discrete(std::size_t n) {
    check_points(n);
    return FiniteTopology(n, static_cast<std::uint32_t>((std::uint64_t{1} << (std::uint64_t{1} << n)) - 1));
  }
  static FiniteTopology indiscrete(std::size_t n) {
    check_points(n);
    return FiniteTopology(n, 1u | (std::uint32_t{1} << full(n)));
  }

  static void check_points(std::size_t n) {
    if (n > kMaxPoints)
      throw input_error("finite topologies are capped at " + std::to_string(kMaxPoints) + " points");
  }

  static Subset full(std::size_t n) { return static_cast<Subset>((1u << n) - 1); }

  std::size_t points() const { return n_; }
  std::uint32_t family() const { return opens_; }
  bool is_open(Subset s) const { return (opens_ >> s) & 1u; }
  bool is_closed(Subset s) const { return is_open(full(n_) & ~s); }

  std::vector<Subset> open_sets() const {
    std::vector<Subset> r;
    for (Subset s = 0; s <= full(n_); ++s)
      if (is_open(s)) r.push_back(s);
    return r;
  }

  /// Contains the empty and full sets and is closed under pairwise unions
  /// and intersections.
  bool is_valid() const {
    if (n_ > kMaxPoints) return false;
    if (opens_ >> (full(n_) + 1)) return false;
    if (!is_open(0) || !is_open(full(n_))) return false;
    for (Subset a = 0; a <= full(n_); ++a) {
      if (!is_open(a)) continue;
      for (Subset b = a; b <= full(n_); ++b)
        if (is_open(b) && (!is_open(a | b) || !is_open(a & b))) return false;
    }
    return true;
  }

  /// Every open set of this topology is open in `finer`.
  bool subset_of(const FiniteTopology& finer) const { return (opens_ & ~finer.opens_) == 0; }

  friend bool operator==(const FiniteTopology&, const FiniteTopology&) = default;

 private:
  std::size_t n_ = 0;
  std::uint32_t opens_ = 1;
};

struct SetFunction {
  std::size_t domain = 0;
  std::size_t codomain = 0;
  std::vector<std::size_t> values;

  std::size_t operator()(std::size_t x) const { return values.at(x); }

  Subset preimage(Subset v) const {
    Subset r = 0;
    for (std::size_t x = 0; x < domain; ++x)
      if ((v >> values[x]) & 1u) r |= Subset{1} << x;
    return r;
  }
  Subset image(Subset u) const {
    Subset r = 0;
    for (std::size_t x = 0; x < domain; ++x)
      if ((u >> x) & 1u) r |= Subset{1} << values[x];
    return r;
  }
  bool surjective() const { return image(FiniteTopology::full(domain)) == FiniteTopology::full(codomain); }
  bool injective() const {
    for (std::size_t a = 0; a < domain; ++a)
      for (std::size_t b = a + 1; b < domain; ++b)
        if (values[a] == values[b]) return false;
    return true;
  }

  void validate() const {
    if (values.size() != domain) throw input_error("function table length must equal domain size");
    for (auto v : values)
      if (v >= codomain) throw input_error("function value outside codomain");
  }

  friend bool operator==(const SetFunction&, const SetFunction&) = default;
};

/// All functions {0..m-1} -> {0..n-1}, in lexicographic order of value
/// tables (first point most significant).
inline std::vector<SetFunction> all_functions(std::size_t m, std::size_t n) {
  std::vector<SetFunction> r;
  if (m > 0 && n == 0) return r;
  std::vector<std::size_t> vals(m, 0);
  while (true) {
    r.push_back({m, n, vals});
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++vals[i] < n) break;
      vals[i] = 0;
      if (i == 0) return r;
    }
    if (m == 0) return r;
  }
}

/// Every topology on n points sorted by the numeric value of the family
/// mask; the fibre index of a topology is its rank here.
inline std::vector<FiniteTopology> enumerate_topologies(std::size_t n) {
  FiniteTopology::check_points(n);
  if (n == 0) return {FiniteTopology(0, 1u)};
  const Subset full = FiniteTopology::full(n);
  // The empty and the full set are forced; every family of the remaining
  // proper nonempty subsets is a candidate.
  const std::size_t free_bits = full - 1;
  const std::uint32_t forced = 1u | (std::uint32_t{1} << full);
  std::vector<FiniteTopology> out;
  for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << free_bits); ++pick) {
    const FiniteTopology t(n, forced | (pick << 1));
    if (t.is_valid()) out.push_back(t);
  }
  std::sort(out.begin(), out.end(),
            [](const FiniteTopology& a, const FiniteTopology& b) { return a.family() < b.family(); });
  return out;
}

/// Open sets V with f^-1(V) open.
inline FiniteTopology final_topology(const SetFunction& f, const FiniteTopology& t) {
  f.validate();
  if (t.points() != f.domain) throw input_error("topology does not live on the function's domain");
  std::uint32_t fam = 0;
  for (Subset v = 0; v <= FiniteTopology::full(f.codomain); ++v)
    if (t.is_open(f.preimage(v))) fam |= std::uint32_t{1} << v;
  return FiniteTopology(f.codomain, fam);
}

/// {f^-1(V) : V open}.
inline FiniteTopology initial_topology(const SetFunction& f, const FiniteTopology& t) {
  f.validate();
  if (t.points() != f.codomain) throw input_error("topology does not live on the function's codomain");
  std::uint32_t fam = 0;
  for (Subset v = 0; v <= FiniteTopology::full(f.codomain); ++v)
    if (t.is_open(v)) fam |= std::uint32_t{1} << f.preimage(v);
  return FiniteTopology(f.domain, fam);
}

/// A is theta-open iff every x in A has an open O and a closed U with
/// x in O, O inside U, U inside A.
inline FiniteTopology theta_topology(const FiniteTopology& t) {
  const auto n = t.points();
  const Subset full = FiniteTopology::full(n);
  std::uint32_t fam = 0;
  for (Subset a = 0; a <= full; ++a) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      if (!((a >> x) & 1u)) continue;
      bool found = false;
      for (Subset o = 0; o <= full && !found; ++o) {
        if (!t.is_open(o) || !((o >> x) & 1u)) continue;
        for (Subset u = 0; u <= full && !found; ++u)
          found = t.is_closed(u) && (o & ~u) == 0 && (u & ~a) == 0;
      }
      ok = found;
    }
    if (ok) fam |= std::uint32_t{1} << a;
  }
  return FiniteTopology(n, fam);
}

/// A is b-open iff every x in A lies in some O intersect F inside A with O
/// open and F closed.
inline FiniteTopology b_topology(const FiniteTopology& t) {
  const auto n = t.points();
  const Subset full = FiniteTopology::full(n);
  std::uint32_t fam = 0;
  for (Subset a = 0; a <= full; ++a) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      if (!((a >> x) & 1u)) continue;
      bool found = false;
      for (Subset o = 0; o <= full && !found; ++o) {
        if (!t.is_open(o) || !((o >> x) & 1u)) continue;
        for (Subset c = 0; c <= full && !found; ++c)
          found = t.is_closed(c) && ((c >> x) & 1u) && ((o & c) & ~a) == 0;
      }
      ok = found;
    }
    if (ok) fam |= std::uint32_t{1} << a;
  }
  return FiniteTopology(n, fam);
}

/// Images of open sets are open and images of closed sets are closed.
inline bool is_clopen_map(const SetFunction& f, const FiniteTopology& dom, const FiniteTopology& cod) {
  f.validate();
  if (dom.points() != f.domain || cod.points() != f.codomain)
    throw input_error("topologies do not match the function's domain and codomain");
  for (Subset s = 0; s <= FiniteTopology::full(f.domain); ++s) {
    if (dom.is_open(s) && !cod.is_open(f.image(s))) return false;
    if (dom.is_closed(s) && !cod.is_closed(f.image(s))) return false;
  }
  return true;
}

/// All topologies on n points with the fibre order T <= T' iff T' is
/// contained in T (bottom = discrete, top = indiscrete).
struct TopologyFibre {
  std::size_t points = 0;
  std::vector<FiniteTopology> topologies;
  FiniteLattice lattice;

  std::size_t index_of(const FiniteTopology& t) const {
    auto it = std::lower_bound(topologies.begin(), topologies.end(), t,
                               [](const FiniteTopology& a, const FiniteTopology& b) {
                                 return a.family() < b.family();
                               });
    if (it == topologies.end() || !(*it == t)) throw input_error("not a topology of this fibre");
    return static_cast<std::size_t>(it - topologies.begin());
  }
};

inline std::string describe(const FiniteTopology& t) {
  std::string s = "{";
  bool first = true;
  for (Subset o : t.open_sets()) {
    if (!first) s += ",";
    first = false;
    s += "{";
    for (std::size_t x = 0; x < t.points(); ++x)
      if ((o >> x) & 1u) s += std::to_string(x);
    s += "}";
  }
  return s + "}";
}

inline TopologyFibre topology_fibre(std::size_t n) {
  TopologyFibre f;
  f.points = n;
  f.topologies = enumerate_topologies(n);
  std::vector<std::string> labels;
  for (const auto& t : f.topologies) labels.push_back(describe(t));
  const auto& ts = f.topologies;
  f.lattice = FiniteLattice::from_predicate(
      ts.size(), [&](std::size_t a, std::size_t b) { return ts[b].subset_of(ts[a]); },
      std::move(labels));
  return f;
}

/// A Top -> Set form together with the semantic objects behind its indices.
struct TopForm {
  FormInstance form;
  std::vector<std::size_t> sizes;              // carrier size per object
  std::vector<TopologyFibre> fibres;           // per object
  std::vector<SetFunction> functions;          // per morphism
};

inline constexpr std::size_t kDefaultMorphismBudget = 2000;

inline std::string function_name(const SetFunction& f) {
  std::string s = "S" + std::to_string(f.domain) + ">S" + std::to_string(f.codomain) + ":";
  for (auto v : f.values) s += static_cast<char>('0' + v);
  return s;
}

/// Objects are the given carrier sizes (distinct), morphisms all functions
/// between them, push the final and pull the initial topology.
inline TopForm build_top_form(const std::vector<std::size_t>& sizes,
                              std::size_t morphism_budget = kDefaultMorphismBudget) {
  TopForm tf;
  std::size_t total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    FiniteTopology::check_points(sizes[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (sizes[i] == sizes[j]) throw input_error("duplicate carrier size " + std::to_string(sizes[i]));
  }
  for (auto m : sizes)
    for (auto n : sizes) {
      double count = 1;
      for (std::size_t i = 0; i < m; ++i) count *= static_cast<double>(n);
      total += static_cast<std::size_t>(count);
    }
  if (total > morphism_budget)
    throw input_error("top form would have " + std::to_string(total) +
                      " morphisms, above the budget of " + std::to_string(morphism_budget));

  CategoryPresentation cat;
  tf.sizes = sizes;
  for (auto n : sizes) {
    cat.add_object("S" + std::to_string(n));
    tf.fibres.push_back(topology_fibre(n));
  }
  // morphism index by (dom object, cod object, value table rank)
  std::vector<std::vector<std::vector<MorphismId>>> ids(sizes.size(),
                                                         std::vector<std::vector<MorphismId>>(sizes.size()));
  std::vector<std::vector<Element>> push, pull;
  for (ObjectId x = 0; x < sizes.size(); ++x)
    for (ObjectId y = 0; y < sizes.size(); ++y)
      for (auto& f : all_functions(sizes[x], sizes[y])) {
        const auto id = cat.add_morphism(function_name(f), x, y);
        ids[x][y].push_back(id);
        const auto& fx = tf.fibres[x];
        const auto& fy = tf.fibres[y];
        std::vector<Element> ps(fx.topologies.size()), pl(fy.topologies.size());
        for (Element a = 0; a < ps.size(); ++a) ps[a] = fy.index_of(final_topology(f, fx.topologies[a]));
        for (Element b = 0; b < pl.size(); ++b) pl[b] = fx.index_of(initial_topology(f, fy.topologies[b]));
        push.push_back(std::move(ps));
        pull.push_back(std::move(pl));
        tf.functions.push_back(std::move(f));
      }

  auto rank = [&](const std::vector<std::size_t>& vals, std::size_t cod_size) {
    std::size_t r = 0;
    for (auto v : vals) r = r * cod_size + v;
    return r;
  };
  for (ObjectId x = 0; x < sizes.size(); ++x) {
    std::vector<std::size_t> idv(sizes[x]);
    for (std::size_t i = 0; i < idv.size(); ++i) idv[i] = i;
    cat.set_identity(x, ids[x][x][rank(idv, sizes[x])]);
  }
  for (MorphismId f = 0; f < cat.morphism_count(); ++f) {
    const auto& mf = cat.morphism(f);
    const auto& ff = tf.functions[f];
    for (MorphismId g : std::vector<MorphismId>(cat.out_of(mf.cod))) {
      const auto& gg = tf.functions[g];
      std::vector<std::size_t> vals(ff.domain);
      for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = gg(ff(i));
      const auto z = cat.morphism(g).cod;
      cat.set_composite(g, f, ids[mf.dom][z][rank(vals, sizes[z])]);
    }
  }
  std::vector<FiniteLattice> lattices;
  for (const auto& fib : tf.fibres) lattices.push_back(fib.lattice);
  tf.form = FormInstance(std::move(cat), std::move(lattices), std::move(push), std::move(pull));
  return tf;
}

/// Per-object theta and b tables, as fibre indices.
inline ClosureOperator theta_closure(const TopForm& tf) {
  ClosureOperator c;
  for (const auto& fib : tf.fibres) {
    std::vector<Element> m;
    for (const auto& t : fib.topologies) m.push_back(fib.index_of(theta_topology(t)));
    c.map.push_back(std::move(m));
  }
  return c;
}

inline InteriorOperator b_interior(const TopForm& tf) {
  InteriorOperator c;
  for (const auto& fib : tf.fibres) {
    std::vector<Element> m;
    for (const auto& t : fib.topologies) m.push_back(fib.index_of(b_topology(t)));
    c.map.push_back(std::move(m));
  }
  return c;
}

/// T < T' iff T' is contained in theta(T).
inline Relation theta_relation(const TopologyFibre& fib) {
  const auto n = fib.topologies.size();
  Relation r(n);
  for (Element a = 0; a < n; ++a) {
    const auto th = theta_topology(fib.topologies[a]);
    for (Element b = 0; b < n; ++b) r.set(a, b, fib.topologies[b].subset_of(th));
  }
  return r;
}

/// T < T' iff b(T') is contained in T.
inline Relation b_relation(const TopologyFibre& fib) {
  const auto n = fib.topologies.size();
  Relation r(n);
  for (Element b = 0; b < n; ++b) {
    const auto bt = b_topology(fib.topologies[b]);
    for (Element a = 0; a < n; ++a) r.set(a, b, bt.subset_of(fib.topologies[a]));
  }
  return r;
}

inline TopogenousOrder theta_order(const TopForm& tf) {
  TopogenousOrder t;
  for (const auto& fib : tf.fibres) t.rel.push_back(theta_relation(fib));
  return t;
}

inline TopogenousOrder b_order(const TopForm& tf) {
  TopogenousOrder t;
  for (const auto& fib : tf.fibres) t.rel.push_back(b_relation(fib));
  return t;
}

/// Strictness of a surjection under the theta order, with the clopen
/// hypothesis read two ways: globally (clopen for every pair of topologies)
/// and per pair (for each A < B.f with f clopen from A onto f.A, require
/// f.A < B).
struct ThetaStrictnessReading {
  bool surjective = false;
  bool clopen_for_all_pairs = false;
  bool strict = false;
  std::size_t per_pair_instances = 0;
  std::size_t per_pair_failures = 0;

  /// The literal implication: surjective and globally clopen => strict.
  bool literal_holds() const { return !(surjective && clopen_for_all_pairs) || strict; }
};

inline ThetaStrictnessReading theta_strictness_reading(const TopForm& tf, const TopogenousOrder& theta,
                                                       MorphismId f) {
  const auto& F = tf.form;
  const auto& fn = tf.functions.at(f);
  const auto& m = F.base().morphism(f);
  const auto& fx = tf.fibres[m.dom];
  const auto& fy = tf.fibres[m.cod];
  ThetaStrictnessReading r;
  r.surjective = fn.surjective();
  r.clopen_for_all_pairs = true;
  for (const auto& tx : fx.topologies)
    for (const auto& ty : fy.topologies)
      if (!is_clopen_map(fn, tx, ty)) {
        r.clopen_for_all_pairs = false;
        break;
      }
  r.strict = true;
  for (Element a = 0; a < fx.topologies.size(); ++a)
    for (Element b = 0; b < fy.topologies.size(); ++b) {
      const bool premise = theta.rel[m.dom](a, F.pull(f, b));
      const bool conclusion = theta.rel[m.cod](F.push(f, a), b);
      if (premise && !conclusion) r.strict = false;
      if (!r.surjective || !premise) continue;
      if (!is_clopen_map(fn, fx.topologies[a], fy.topologies[F.push(f, a)])) continue;
      ++r.per_pair_instances;
      if (!conclusion) ++r.per_pair_failures;
    }
  return r;
}

}  // namespace formkit::top
