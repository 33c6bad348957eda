#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "formkit/form.hpp"
#include "formkit/morphclass.hpp"
#include "formkit/parallel.hpp"
#include "formkit/topogenous.hpp"

/// Randomized counterexample search over small generated forms.
///
/// Every trial draws from its own generator seeded by (seed, trial), so a
/// single failing trial can be regenerated without replaying the others.
namespace formkit::search {

inline constexpr std::size_t kMaxFibre = 6;

inline const std::vector<std::string>& claims() {
  static const std::vector<std::string> ids = {"roundtrip-TM",  "roundtrip-TJ",  "strict-iff-push",
                                               "final-thick",   "transfer-laws", "cohereditary-operator"};
  return ids;
}

inline void check_claim(const std::string& claim) {
  if (std::find(claims().begin(), claims().end(), claim) == claims().end())
    throw input_error("unknown claim '" + claim + "'");
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
  }

  /// Uniform in [0, n); modulo reduction keeps the stream identical across
  /// standard library implementations.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// random lattices and adjoint pairs

/// A bounded poset with 0 at the bottom and size-1 at the top whose middle
/// order is a random DAG closed transitively; resampled until it is a
/// lattice. Falls back to a chain after 200 rejections.
inline FiniteLattice random_lattice(Rng& rng, std::size_t size) {
  if (size <= 2) return FiniteLattice::chain(size);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<std::uint8_t> m(size * size, 0);
    auto at = [&](std::size_t a, std::size_t b) -> std::uint8_t& { return m[a * size + b]; };
    for (std::size_t a = 0; a < size; ++a) {
      at(a, a) = 1;
      at(0, a) = 1;
      at(a, size - 1) = 1;
    }
    for (std::size_t a = 1; a + 1 < size; ++a)
      for (std::size_t b = a + 1; b + 1 < size; ++b)
        if (rng.chance(40)) at(a, b) = 1;
    for (std::size_t k = 0; k < size; ++k)
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b)
          if (at(a, k) && at(k, b)) at(a, b) = 1;
    FiniteLattice l(size, std::move(m));
    if (l.valid()) return l;
  }
  return FiniteLattice::chain(size);
}

/// A join-preserving map as the pointwise join of step maps
/// x |-> (x <= d ? 0 : q).
inline std::vector<Element> random_left_map(Rng& rng, const FiniteLattice& src, const FiniteLattice& dst) {
  std::vector<Element> map(src.size(), dst.bottom());
  const auto steps = rng.between(0, 3);
  for (std::size_t s = 0; s < steps; ++s) {
    const Element d = rng.below(src.size());
    const Element q = rng.below(dst.size());
    for (Element x = 0; x < src.size(); ++x)
      if (!src.le(x, d)) map[x] = dst.join(map[x], q);
  }
  return map;
}

inline std::vector<Element> compose_maps(const std::vector<Element>& g, const std::vector<Element>& f) {
  std::vector<Element> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
  return r;
}

inline std::vector<Element> identity_map(std::size_t n) {
  std::vector<Element> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

// ---------------------------------------------------------------------------
// random forms

struct Generated {
  FormInstance form;
  std::string shape;  // "dag" or "retract"
};

/// The free category on a random DAG over 1..3 objects; every path is a
/// morphism and push along a path is the composite of the generator pushes,
/// so functoriality holds by construction.
inline Generated random_dag_form(Rng& rng) {
  const auto objects = rng.between(1, 3);
  std::vector<FiniteLattice> fibres;
  for (std::size_t x = 0; x < objects; ++x) fibres.push_back(random_lattice(rng, rng.between(1, kMaxFibre)));

  struct Edge {
    std::size_t dom, cod;
    std::vector<Element> push;
  };
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < objects; ++x)
    for (std::size_t y = x + 1; y < objects; ++y) {
      const auto count = rng.between(0, 2);
      for (std::size_t k = 0; k < count; ++k) edges.push_back({x, y, random_left_map(rng, fibres[x], fibres[y])});
    }

  struct Path {
    std::size_t dom, cod;
    std::vector<std::size_t> edges;  // applied first to last
    std::vector<Element> push;
  };
  std::vector<Path> paths;
  for (std::size_t x = 0; x < objects; ++x) paths.push_back({x, x, {}, identity_map(fibres[x].size())});
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].dom == paths[i].cod) {
        Path p = paths[i];
        p.cod = edges[e].cod;
        p.edges.push_back(e);
        p.push = compose_maps(edges[e].push, paths[i].push);
        paths.push_back(std::move(p));
      }

  CategoryPresentation cat;
  for (std::size_t x = 0; x < objects; ++x) cat.add_object("X" + std::to_string(x));
  auto path_name = [&](const Path& p) {
    if (p.edges.empty()) return "id" + std::to_string(p.dom);
    std::string s;
    for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it)
      s += (s.empty() ? "e" : ".e") + std::to_string(*it);
    return s;
  };
  std::vector<std::vector<Element>> push, pull;
  for (const auto& p : paths) {
    cat.add_morphism(path_name(p), p.dom, p.cod);
    push.push_back(p.push);
    pull.push_back(right_adjoint(fibres[p.dom], fibres[p.cod], p.push));
  }
  for (std::size_t x = 0; x < objects; ++x) cat.set_identity(x, x);
  auto find_path = [&](std::size_t dom, const std::vector<std::size_t>& es) {
    for (std::size_t i = 0; i < paths.size(); ++i)
      if (paths[i].dom == dom && paths[i].edges == es) return i;
    throw std::logic_error("path closure is incomplete");
  };
  for (std::size_t f = 0; f < paths.size(); ++f)
    for (std::size_t g = 0; g < paths.size(); ++g)
      if (paths[g].dom == paths[f].cod) {
        auto es = paths[f].edges;
        es.insert(es.end(), paths[g].edges.begin(), paths[g].edges.end());
        cat.set_composite(g, f, find_path(paths[f].dom, es));
      }
  return {FormInstance(std::move(cat), std::move(fibres), std::move(push), std::move(pull)), "dag"};
}

/// X is a retract of Y = X x C: s(a) = (a, h(a)) for a random
/// join-preserving h, r(a, c) = a, and e = s o r. The base category is
/// {id_X, id_Y, s, r, e} with r s = id_X.
inline Generated random_retract_form(Rng& rng) {
  const auto nx = rng.between(1, 3);
  const auto nc = rng.between(1, kMaxFibre / nx);
  const auto lx = random_lattice(rng, nx);
  const auto lc = random_lattice(rng, nc);
  const auto ly = FiniteLattice::from_predicate(nx * nc, [&](std::size_t p, std::size_t q) {
    return lx.le(p / nc, q / nc) && lc.le(p % nc, q % nc);
  });
  const auto h = random_left_map(rng, lx, lc);
  std::vector<Element> s(nx), r(nx * nc);
  for (Element a = 0; a < nx; ++a) s[a] = a * nc + h[a];
  for (Element p = 0; p < nx * nc; ++p) r[p] = p / nc;
  const auto e = compose_maps(s, r);

  CategoryPresentation cat;
  const auto X = cat.add_object("X"), Y = cat.add_object("Y");
  const auto idx = cat.add_morphism("idX", X, X), idy = cat.add_morphism("idY", Y, Y);
  const auto ms = cat.add_morphism("s", X, Y), mr = cat.add_morphism("r", Y, X), me = cat.add_morphism("e", Y, Y);
  cat.set_identity(X, idx);
  cat.set_identity(Y, idy);
  for (auto f : {idx, ms}) cat.set_composite(f, idx, f);
  for (auto f : {idy, mr, me}) cat.set_composite(f, idy, f);
  for (auto g : {idy, me}) cat.set_composite(idy, g, g);
  cat.set_composite(idy, ms, ms);
  cat.set_composite(idx, mr, mr);
  cat.set_composite(mr, ms, idx);
  cat.set_composite(ms, mr, me);
  cat.set_composite(me, me, me);
  cat.set_composite(me, ms, ms);
  cat.set_composite(mr, me, mr);

  std::vector<FiniteLattice> fibres{lx, ly};
  std::vector<std::vector<Element>> push{identity_map(nx), identity_map(nx * nc), s, r, e};
  std::vector<std::vector<Element>> pull;
  for (MorphismId f = 0; f < cat.morphism_count(); ++f) {
    const auto& m = cat.morphism(f);
    pull.push_back(right_adjoint(fibres[m.dom], fibres[m.cod], push[f]));
  }
  return {FormInstance(std::move(cat), std::move(fibres), std::move(push), std::move(pull)), "retract"};
}

inline Generated random_form(Rng& rng) { return rng.chance(50) ? random_dag_form(rng) : random_retract_form(rng); }

// ---------------------------------------------------------------------------
// random orders

enum class OrderShape { plain, tm, tj };

/// Random seed pairs A <= B closed to the least relation containing them
/// that satisfies T2 and T3, and additionally TM or TJ when asked. Every
/// step keeps T1.
inline TopogenousOrder random_order(Rng& rng, const FormInstance& F, OrderShape shape) {
  TopogenousOrder t;
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& l = F.fibre(x);
    Relation r(l.size());
    for (Element a = 0; a < l.size(); ++a)
      for (Element b = 0; b < l.size(); ++b)
        if (l.le(a, b) && rng.chance(25)) r.set(a, b);
    t.rel.push_back(std::move(r));
  }
  bool changed = true;
  auto add = [&](ObjectId x, Element a, Element b) {
    if (!t.rel[x](a, b)) {
      t.rel[x].set(a, b);
      changed = true;
    }
  };
  while (changed) {
    changed = false;
    for (ObjectId x = 0; x < F.object_count(); ++x) {
      const auto& l = F.fibre(x);
      const auto n = l.size();
      if (shape == OrderShape::tm)
        for (Element a = 0; a < n; ++a) add(x, a, l.top());
      if (shape == OrderShape::tj)
        for (Element b = 0; b < n; ++b) add(x, l.bottom(), b);
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
          if (!t.rel[x](a, b)) continue;
          for (Element c = 0; c < n; ++c) {
            if (l.le(c, a)) add(x, c, b);
            if (l.le(b, c)) add(x, a, c);
            if (shape == OrderShape::tm && t.rel[x](a, c)) add(x, a, l.meet(b, c));
            if (shape == OrderShape::tj && t.rel[x](c, b)) add(x, l.join(a, c), b);
          }
        }
    }
    for (MorphismId f = 0; f < F.morphism_count(); ++f) {
      const auto& m = F.base().morphism(f);
      for (Element a = 0; a < F.fibre(m.dom).size(); ++a)
        for (Element b = 0; b < F.fibre(m.cod).size(); ++b)
          if (t.rel[m.cod](F.push(f, a), b)) add(m.dom, a, F.pull(f, b));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// claims

struct TrialOutcome {
  std::uint64_t trial = 0;
  std::string shape;
  std::size_t objects = 0;
  std::size_t morphisms = 0;
  bool vacuous = false;  // the claim's hypothesis never applied
  std::vector<std::string> failures;
};

inline OrderShape shape_for(const std::string& claim, Rng& rng) {
  if (claim == "roundtrip-TM" || claim == "cohereditary-operator" || claim == "final-thick") return OrderShape::tm;
  if (claim == "roundtrip-TJ") return OrderShape::tj;
  const auto k = rng.below(3);
  return k == 0 ? OrderShape::plain : k == 1 ? OrderShape::tm : OrderShape::tj;
}

/// Generates trial `trial` of a run seeded with `seed` and evaluates the
/// claim on it.
inline TrialOutcome run_trial(const std::string& claim, std::uint64_t seed, std::uint64_t trial) {
  check_claim(claim);
  Rng rng(seed, trial);
  const auto g = random_form(rng);
  const auto& F = g.form;
  const auto T = random_order(rng, F, shape_for(claim, rng));
  TrialOutcome out{trial, g.shape, F.object_count(), F.morphism_count(), false, {}};
  auto fail = [&](std::string what) { out.failures.push_back(std::move(what)); };

  if (auto rep = verify_form_laws(F); !rep.ok()) {
    fail("generator produced an invalid form: " + rep.violations.front().law);
    return out;
  }
  if (auto rep = verify_order(F, T); !rep.ok()) {
    fail("generator produced an invalid order: " + rep.violations.front().law);
    return out;
  }
  const auto cls = classify_order(F, T);

  if (claim == "roundtrip-TM" || claim == "roundtrip-TJ") {
    const bool tm = claim == "roundtrip-TM";
    if (tm ? !cls.is_tm : !cls.is_tj) {
      fail(std::string("generated order is not ") + (tm ? "TM" : "TJ"));
      return out;
    }
    auto rt = roundtrip_check(F, T);
    if (tm) rt.report.merge(roundtrip_check(F, closure_from_order(F, T)).report);
    else rt.report.merge(roundtrip_check(F, interior_from_order(F, T)).report);
    for (const auto& v : rt.report.violations) fail(v.law + ": " + v.detail);
  } else if (claim == "strict-iff-push") {
    for (MorphismId f = 0; f < F.morphism_count(); ++f)
      if (!strict_characterization(F, T, f).agree()) fail("disagreement at " + F.morphism_name(f));
  } else if (claim == "final-thick") {
    out.vacuous = true;
    for (MorphismId f = 0; f < F.morphism_count(); ++f) {
      const auto r = final_thick_check(F, T, f, cls.is_tm);
      if (r.is_final && r.hypothesis) out.vacuous = false;
      if (r.violated()) fail("final but not thick: " + F.morphism_name(f));
    }
  } else if (claim == "transfer-laws") {
    const auto tl = transfer_laws_check(F, T);
    out.vacuous = true;
    for (const auto& c : tl.clauses) {
      if (c.evaluated && c.instances) out.vacuous = false;
      for (const auto& w : c.failures) fail(c.name + ": " + w);
    }
  } else if (claim == "cohereditary-operator") {
    const auto r = cohereditary_operator_check(F, T, cls);
    out.vacuous = !r.evaluated;
    if (!r.agree())
      fail(std::string("cohereditary=") + (r.cohereditary ? "true" : "false") +
           " but operator identity=" + (r.operator_identity ? "true" : "false"));
  }
  return out;
}

struct SearchResult {
  std::string claim;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint64_t vacuous = 0;
  std::vector<TrialOutcome> counterexamples;  // in trial order
};

inline SearchResult run_search(const std::string& claim, std::uint64_t seed, std::uint64_t budget,
                               unsigned jobs = 1) {
  check_claim(claim);
  SearchResult res{claim, seed, budget, 0, {}};
  const auto outcomes = parallel_map(static_cast<std::size_t>(budget), jobs,
                                     [&](std::size_t t) { return run_trial(claim, seed, t); });
  for (const auto& o : outcomes) {
    if (o.vacuous) ++res.vacuous;
    if (!o.failures.empty()) res.counterexamples.push_back(o);
  }
  return res;
}

/// The generated form and order of one trial, for dumping a witness.
inline std::pair<FormInstance, TopogenousOrder> regenerate(const std::string& claim, std::uint64_t seed,
                                                           std::uint64_t trial) {
  check_claim(claim);
  Rng rng(seed, trial);
  auto g = random_form(rng);
  auto T = random_order(rng, g.form, shape_for(claim, rng));
  return {std::move(g.form), std::move(T)};
}

}  // namespace formkit::search
