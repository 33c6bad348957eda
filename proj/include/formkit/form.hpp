#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "formkit/lattice.hpp"
#include "formkit/parallel.hpp"
#include "formkit/report.hpp"

namespace formkit {

using ObjectId = std::size_t;
using MorphismId = std::size_t;

struct Morphism {
  std::string name;
  ObjectId dom = 0;
  ObjectId cod = 0;
};

struct MorphismKind {
  bool is_section = false;
  bool is_retraction = false;
  bool is_iso = false;
  std::optional<MorphismId> inverse;  // two-sided inverse when is_iso
};

/// A finite category given extensionally: named objects, named morphisms,
/// one identity per object and a composition table on composable pairs.
class CategoryPresentation {
 public:
  ObjectId add_object(const std::string& name) {
    if (object_index_.count(name)) throw input_error("duplicate object '" + name + "'");
    object_index_.emplace(name, objects_.size());
    objects_.push_back(name);
    identities_.push_back(kNone);
    out_.emplace_back();
    return objects_.size() - 1;
  }

  MorphismId add_morphism(const std::string& name, ObjectId dom, ObjectId cod) {
    check_object(dom);
    check_object(cod);
    if (morphism_index_.count(name)) throw input_error("duplicate morphism '" + name + "'");
    morphism_index_.emplace(name, morphisms_.size());
    morphisms_.push_back({name, dom, cod});
    out_[dom].push_back(morphisms_.size() - 1);
    return morphisms_.size() - 1;
  }

  void set_identity(ObjectId x, MorphismId id) {
    check_object(x);
    check_morphism(id);
    if (morphisms_[id].dom != x || morphisms_[id].cod != x)
      throw input_error("identity of '" + objects_[x] + "' must be an endomorphism of it");
    identities_[x] = id;
  }

  /// Records g o f = h. Throws when g and f are not composable or h has
  /// the wrong boundary.
  void set_composite(MorphismId g, MorphismId f, MorphismId h) {
    check_morphism(g);
    check_morphism(f);
    check_morphism(h);
    if (morphisms_[f].cod != morphisms_[g].dom)
      throw input_error("'" + morphisms_[g].name + "' o '" + morphisms_[f].name +
                        "' is not composable");
    if (morphisms_[h].dom != morphisms_[f].dom || morphisms_[h].cod != morphisms_[g].cod)
      throw input_error("composite '" + morphisms_[h].name + "' has the wrong boundary");
    compose_[key(g, f)] = h;
  }

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const std::string& object_name(ObjectId x) const { return objects_.at(x); }
  const Morphism& morphism(MorphismId f) const { return morphisms_.at(f); }
  const std::vector<Morphism>& morphisms() const { return morphisms_; }
  const std::vector<std::string>& objects() const { return objects_; }

  MorphismId identity(ObjectId x) const {
    check_object(x);
    if (identities_[x] == kNone) throw input_error("object '" + objects_[x] + "' has no identity");
    return identities_[x];
  }

  bool is_identity(MorphismId f) const {
    const auto& m = morphism(f);
    return m.dom == m.cod && identities_[m.dom] == f;
  }

  ObjectId object_id(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) throw input_error("unknown object '" + name + "'");
    return it->second;
  }

  MorphismId morphism_id(const std::string& name) const {
    auto it = morphism_index_.find(name);
    if (it == morphism_index_.end()) throw input_error("unknown morphism '" + name + "'");
    return it->second;
  }

  /// g o f, or nothing when the pair is not composable or the table has
  /// no entry.
  std::optional<MorphismId> compose(MorphismId g, MorphismId f) const {
    if (morphisms_.at(f).cod != morphisms_.at(g).dom) return std::nullopt;
    auto it = compose_.find(key(g, f));
    if (it == compose_.end()) return std::nullopt;
    return it->second;
  }

  /// Throws input_error when the composite is missing.
  MorphismId compose_or_throw(MorphismId g, MorphismId f) const {
    auto h = compose(g, f);
    if (!h)
      throw input_error("missing composite '" + morphisms_.at(g).name + "' o '" +
                        morphisms_.at(f).name + "'");
    return *h;
  }

  /// Morphisms with domain x, in insertion order.
  const std::vector<MorphismId>& out_of(ObjectId x) const { return out_.at(x); }

  std::vector<MorphismId> hom(ObjectId x, ObjectId y) const {
    std::vector<MorphismId> r;
    for (MorphismId f : out_.at(x))
      if (morphisms_[f].cod == y) r.push_back(f);
    return r;
  }

  /// All (g, f, g o f) entries, sorted by (g, f).
  std::vector<std::tuple<MorphismId, MorphismId, MorphismId>> composites() const {
    std::vector<std::tuple<MorphismId, MorphismId, MorphismId>> r;
    r.reserve(compose_.size());
    for (const auto& [k, h] : compose_) r.emplace_back(k / stride(), k % stride(), h);
    std::sort(r.begin(), r.end());
    return r;
  }

  void check_object(ObjectId x) const {
    if (x >= objects_.size()) throw input_error("object index out of range");
  }
  void check_morphism(MorphismId f) const {
    if (f >= morphisms_.size()) throw input_error("morphism index out of range");
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr std::uint64_t stride() { return std::uint64_t{1} << 32; }
  static std::uint64_t key(MorphismId g, MorphismId f) { return g * stride() + f; }

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorphismId> identities_;
  std::vector<std::vector<MorphismId>> out_;
  std::unordered_map<std::string, ObjectId> object_index_;
  std::unordered_map<std::string, MorphismId> morphism_index_;
  std::unordered_map<std::uint64_t, MorphismId> compose_;
};

/// Identities present and neutral, every composable pair composed,
/// associativity.
inline Report verify_category(const CategoryPresentation& c) {
  Report r;
  for (ObjectId x = 0; x < c.object_count(); ++x) {
    MorphismId id;
    try {
      id = c.identity(x);
    } catch (const input_error&) {
      r.add({"identity-missing", c.object_name(x), "", {}, ""});
      continue;
    }
    for (MorphismId f = 0; f < c.morphism_count(); ++f) {
      const auto& m = c.morphism(f);
      if (m.dom == x) {
        auto h = c.compose(f, id);
        if (!h || *h != f) r.add({"identity-neutral", c.object_name(x), m.name, {}, "f o id"});
      }
      if (m.cod == x) {
        auto h = c.compose(id, f);
        if (!h || *h != f) r.add({"identity-neutral", c.object_name(x), m.name, {}, "id o f"});
      }
    }
  }
  for (MorphismId f = 0; f < c.morphism_count(); ++f)
    for (MorphismId g : c.out_of(c.morphism(f).cod))
      if (!c.compose(g, f))
        r.add({"composition-total", "", c.morphism(g).name + " o " + c.morphism(f).name, {}, ""});
  if (!r.ok()) return r;
  for (MorphismId f = 0; f < c.morphism_count(); ++f)
    for (MorphismId g : c.out_of(c.morphism(f).cod)) {
      MorphismId gf = *c.compose(g, f);
      for (MorphismId h : c.out_of(c.morphism(g).cod)) {
        MorphismId left = *c.compose(*c.compose(h, g), f);
        MorphismId right = *c.compose(h, gf);
        if (left != right)
          r.add({"associativity", "",
                 c.morphism(h).name + " o " + c.morphism(g).name + " o " + c.morphism(f).name,
                 {}, ""});
      }
    }
  return r;
}

/// One-sided inverses found by enumerating the finite hom-sets.
inline MorphismKind morphism_kind(const CategoryPresentation& c, MorphismId f) {
  const auto& m = c.morphism(f);
  MorphismKind k;
  const MorphismId id_x = c.identity(m.dom);
  const MorphismId id_y = c.identity(m.cod);
  for (MorphismId g : c.hom(m.cod, m.dom)) {
    const bool left_inv = c.compose(g, f) == std::optional{id_x};
    const bool right_inv = c.compose(f, g) == std::optional{id_y};
    k.is_section = k.is_section || left_inv;
    k.is_retraction = k.is_retraction || right_inv;
    if (left_inv && right_inv && !k.inverse) k.inverse = g;
  }
  k.is_iso = k.inverse.has_value();
  return k;
}

/// A form presented finitely: a base category, a lattice over every object,
/// and for every morphism f the push f.(-) and pull (-).f tables.
class FormInstance {
 public:
  FormInstance() = default;
  FormInstance(CategoryPresentation base, std::vector<FiniteLattice> fibres,
               std::vector<std::vector<Element>> push, std::vector<std::vector<Element>> pull)
      : base_(std::move(base)),
        fibres_(std::move(fibres)),
        push_(std::move(push)),
        pull_(std::move(pull)) {
    if (fibres_.size() != base_.object_count())
      throw input_error("form needs exactly one fibre per object");
    if (push_.size() != base_.morphism_count() || pull_.size() != base_.morphism_count())
      throw input_error("form needs push and pull tables for every morphism");
    for (MorphismId f = 0; f < base_.morphism_count(); ++f) {
      const auto& m = base_.morphism(f);
      const auto& src = fibres_[m.dom];
      const auto& dst = fibres_[m.cod];
      if (push_[f].size() != src.size() || pull_[f].size() != dst.size())
        throw input_error("push/pull table of '" + m.name + "' has the wrong length");
      for (Element v : push_[f]) dst.check_index(v);
      for (Element v : pull_[f]) src.check_index(v);
    }
  }

  const CategoryPresentation& base() const { return base_; }

  const FiniteLattice& fibre(ObjectId x) const {
    base_.check_object(x);
    return fibres_[x];
  }
  const FiniteLattice& fibre(const std::string& name) const { return fibre(base_.object_id(name)); }

  const FiniteLattice& dom_fibre(MorphismId f) const { return fibres_[base_.morphism(f).dom]; }
  const FiniteLattice& cod_fibre(MorphismId f) const { return fibres_[base_.morphism(f).cod]; }

  Element push(MorphismId f, Element a) const {
    base_.check_morphism(f);
    dom_fibre(f).check_index(a);
    return push_[f][a];
  }
  Element pull(MorphismId f, Element b) const {
    base_.check_morphism(f);
    cod_fibre(f).check_index(b);
    return pull_[f][b];
  }

  const std::vector<Element>& push_table(MorphismId f) const { return push_.at(f); }
  const std::vector<Element>& pull_table(MorphismId f) const { return pull_.at(f); }

  MonotoneMap push_map(MorphismId f) const { return {dom_fibre(f), cod_fibre(f), push_.at(f)}; }
  MonotoneMap pull_map(MorphismId f) const { return {cod_fibre(f), dom_fibre(f), pull_.at(f)}; }
  GaloisPair galois_pair(MorphismId f) const { return {push_map(f), pull_map(f)}; }

  /// A <=_f B, decided both through push and through pull.
  bool leq_over(MorphismId f, Element a, Element b) const {
    const bool via_push = cod_fibre(f).leq(push(f, a), b);
    const bool via_pull = dom_fibre(f).leq(a, pull(f, b));
    if (via_push != via_pull)
      throw corrupted_form_error("push and pull of '" + base_.morphism(f).name +
                                 "' disagree at (" + std::to_string(a) + ", " +
                                 std::to_string(b) + ")");
    return via_push;
  }

  std::pair<Element, Element> bounds(ObjectId x) const {
    const auto& l = fibre(x);
    return {l.bottom(), l.top()};
  }

  /// f.1^X = 1^Y
  bool is_thick(MorphismId f) const { return push(f, dom_fibre(f).top()) == cod_fibre(f).top(); }

  std::size_t object_count() const { return base_.object_count(); }
  std::size_t morphism_count() const { return base_.morphism_count(); }
  const std::string& morphism_name(MorphismId f) const { return base_.morphism(f).name; }
  const std::string& object_name(ObjectId x) const { return base_.object_name(x); }

  /// Mutable access for fault injection in tests and hand-built
  /// counterexamples.
  std::vector<Element>& mutable_push_table(MorphismId f) { return push_.at(f); }
  std::vector<Element>& mutable_pull_table(MorphismId f) { return pull_.at(f); }

 private:
  CategoryPresentation base_;
  std::vector<FiniteLattice> fibres_;
  std::vector<std::vector<Element>> push_;
  std::vector<std::vector<Element>> pull_;
};

namespace detail {

inline Report check_morphism_laws(const FormInstance& F, MorphismId f) {
  Report r;
  const auto& c = F.base();
  const auto& m = c.morphism(f);
  const auto& src = F.dom_fibre(f);
  const auto& dst = F.cod_fibre(f);
  const auto& oname = c.object_name(m.dom);
  const auto& push = F.push_table(f);
  const auto& pull = F.pull_table(f);

  if (c.is_identity(f)) {
    for (Element a = 0; a < src.size(); ++a) {
      if (push[a] != a) r.add({"identity-push", oname, m.name, {a}, ""});
      if (pull[a] != a) r.add({"identity-pull", oname, m.name, {a}, ""});
    }
  }
  if (auto mc = is_monotone(F.push_map(f)); !mc.monotone)
    r.add({"monotone-push", oname, m.name, {mc.witness->first, mc.witness->second}, ""});
  if (auto mc = is_monotone(F.pull_map(f)); !mc.monotone)
    r.add({"monotone-pull", oname, m.name, {mc.witness->first, mc.witness->second}, ""});
  for (auto& v : check_galois(F.galois_pair(f)).violations) {
    v.object = oname;
    v.morphism = m.name;
    r.add(std::move(v));
  }
  for (Element a = 0; a < src.size(); ++a)
    if (!src.le(a, pull[push[a]])) r.add({"unit", oname, m.name, {a}, "A <= (f.A).f"});
  for (Element b = 0; b < dst.size(); ++b)
    if (!dst.le(push[pull[b]], b)) r.add({"counit", oname, m.name, {b}, "f.(B.f) <= B"});

  // functoriality for every g composable after f
  for (MorphismId g : c.out_of(m.cod)) {
    auto gf = c.compose(g, f);
    if (!gf) continue;
    const auto name = c.morphism(g).name + " o " + m.name;
    for (Element a = 0; a < src.size(); ++a)
      if (F.push_table(g)[push[a]] != F.push_table(*gf)[a])
        r.add({"functor-push", oname, name, {a}, "g.(f.A) = (g o f).A"});
    const auto& z = F.fibre(c.morphism(g).cod);
    for (Element b = 0; b < z.size(); ++b)
      if (pull[F.pull_table(g)[b]] != F.pull_table(*gf)[b])
        r.add({"functor-pull", oname, name, {b}, "(B.g).f = B.(g o f)"});
  }
  return r;
}

}  // namespace detail

/// Checks identity laws, functoriality of push and pull, monotonicity, the
/// Galois law and the unit/counit inequalities for every morphism. Also
/// includes the lattice and category checks.
inline Report verify_form_laws(const FormInstance& F, unsigned jobs = 1) {
  Report r;
  for (ObjectId x = 0; x < F.object_count(); ++x)
    for (auto& v : verify_lattice(F.fibre(x)).violations) {
      v.object = F.object_name(x);
      v.law = "lattice-" + v.law;
      r.add(std::move(v));
    }
  for (auto& v : verify_category(F.base()).violations) {
    v.law = "category-" + v.law;
    r.add(std::move(v));
  }
  if (!r.ok()) return r;
  auto parts = parallel_map(F.morphism_count(), jobs,
                            [&](std::size_t f) { return detail::check_morphism_laws(F, f); });
  for (auto& p : parts) r.merge(std::move(p));
  return r;
}

/// Lifting equalities forced on sections, retractions and isomorphisms:
/// (f.A).f = A for sections, f.(B.f) = B for retractions, f.A = A.g for an
/// isomorphism f with inverse g.
inline Report verify_lifting_iso_laws(const FormInstance& F) {
  Report r;
  const auto& c = F.base();
  for (MorphismId f = 0; f < F.morphism_count(); ++f) {
    const auto k = morphism_kind(c, f);
    const auto& m = c.morphism(f);
    const auto& oname = c.object_name(m.dom);
    const auto& src = F.dom_fibre(f);
    const auto& dst = F.cod_fibre(f);
    if (k.is_section)
      for (Element a = 0; a < src.size(); ++a)
        if (F.pull(f, F.push(f, a)) != a) r.add({"section-unit", oname, m.name, {a}, ""});
    if (k.is_retraction)
      for (Element b = 0; b < dst.size(); ++b)
        if (F.push(f, F.pull(f, b)) != b) r.add({"retraction-counit", oname, m.name, {b}, ""});
    if (k.is_iso)
      for (Element a = 0; a < src.size(); ++a)
        if (F.push(f, a) != F.pull(*k.inverse, a))
          r.add({"iso-transport", oname, m.name, {a}, "f.A = A.g"});
  }
  return r;
}

enum class ReflectKind { section, retraction, iso };

struct ReflectsResult {
  bool holds = true;
  std::optional<Violation> counterexample;
};

/// Fibre-level surrogate for "F reflects sections/retractions/isos": every
/// base morphism of the kind has the corresponding lifting equality.
inline ReflectsResult check_reflects(const FormInstance& F, ReflectKind kind) {
  const auto& c = F.base();
  for (MorphismId f = 0; f < F.morphism_count(); ++f) {
    const auto k = morphism_kind(c, f);
    const auto& m = c.morphism(f);
    const bool section_side = kind == ReflectKind::section || kind == ReflectKind::iso;
    const bool retraction_side = kind == ReflectKind::retraction || kind == ReflectKind::iso;
    const bool applies = kind == ReflectKind::iso ? k.is_iso
                         : kind == ReflectKind::section ? k.is_section
                                                        : k.is_retraction;
    if (!applies) continue;
    if (section_side)
      for (Element a = 0; a < F.dom_fibre(f).size(); ++a)
        if (F.pull(f, F.push(f, a)) != a)
          return {false, Violation{"reflects-section", c.object_name(m.dom), m.name, {a}, ""}};
    if (retraction_side)
      for (Element b = 0; b < F.cod_fibre(f).size(); ++b)
        if (F.push(f, F.pull(f, b)) != b)
          return {false, Violation{"reflects-retraction", c.object_name(m.cod), m.name, {b}, ""}};
  }
  return {};
}

/// Per-morphism kinds, computed once for sweeps.
inline std::vector<MorphismKind> morphism_kinds(const FormInstance& F) {
  std::vector<MorphismKind> r(F.morphism_count());
  for (MorphismId f = 0; f < F.morphism_count(); ++f) r[f] = morphism_kind(F.base(), f);
  return r;
}

}  // namespace formkit
