#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formkit/form.hpp"

namespace formkit {

/// A square boolean relation on the elements of one fibre.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n, bool value = false) : n_(n), bits_(n * n, value ? 1 : 0) {}

  std::size_t size() const { return n_; }
  bool operator()(Element a, Element b) const { return bits_[a * n_ + b] != 0; }
  void set(Element a, Element b, bool v = true) { bits_[a * n_ + b] = v ? 1 : 0; }

  std::size_t pair_count() const {
    std::size_t c = 0;
    for (auto v : bits_) c += v;
    return c;
  }

  /// Pointwise inclusion.
  bool subset_of(const Relation& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !o.bits_[i]) return false;
    return true;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// One relation per base object, on that object's fibre.
struct TopogenousOrder {
  std::vector<Relation> rel;

  const Relation& operator[](ObjectId x) const { return rel.at(x); }
  Relation& operator[](ObjectId x) { return rel.at(x); }

  bool subset_of(const TopogenousOrder& o) const {
    for (std::size_t x = 0; x < rel.size(); ++x)
      if (!rel[x].subset_of(o.rel[x])) return false;
    return true;
  }

  friend bool operator==(const TopogenousOrder&, const TopogenousOrder&) = default;
};

/// Per-object self-map of the fibre, table form.
struct FibreMaps {
  std::vector<std::vector<Element>> map;

  Element operator()(ObjectId x, Element a) const { return map.at(x).at(a); }

  friend bool operator==(const FibreMaps&, const FibreMaps&) = default;
};

struct ClosureOperator : FibreMaps {};
struct InteriorOperator : FibreMaps {};

inline void check_order_shape(const FormInstance& F, const TopogenousOrder& T) {
  if (T.rel.size() != F.object_count())
    throw input_error("order has " + std::to_string(T.rel.size()) + " relations for " +
                      std::to_string(F.object_count()) + " objects");
  for (ObjectId x = 0; x < F.object_count(); ++x)
    if (T.rel[x].size() != F.fibre(x).size())
      throw input_error("order relation on '" + F.object_name(x) + "' has the wrong size");
}

inline void check_maps_shape(const FormInstance& F, const FibreMaps& m) {
  if (m.map.size() != F.object_count()) throw input_error("operator needs one map per object");
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& l = F.fibre(x);
    if (m.map[x].size() != l.size())
      throw input_error("operator map on '" + F.object_name(x) + "' has the wrong length");
    for (Element v : m.map[x]) l.check_index(v);
  }
}

template <class Pred>
TopogenousOrder make_order(const FormInstance& F, Pred&& pred) {
  TopogenousOrder T;
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto n = F.fibre(x).size();
    Relation r(n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) r.set(a, b, pred(x, a, b));
    T.rel.push_back(std::move(r));
  }
  return T;
}

/// The fibre order itself, A < B iff A <= B.
inline TopogenousOrder leq_order(const FormInstance& F) {
  return make_order(F, [&](ObjectId x, Element a, Element b) { return F.fibre(x).le(a, b); });
}

/// Every pair related; violates T1 on any fibre with two elements.
inline TopogenousOrder full_order(const FormInstance& F) {
  return make_order(F, [](ObjectId, Element, Element) { return true; });
}

template <class Op>
Op identity_operator(const FormInstance& F) {
  Op op;
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    std::vector<Element> m(F.fibre(x).size());
    for (Element a = 0; a < m.size(); ++a) m[a] = a;
    op.map.push_back(std::move(m));
  }
  return op;
}

// ---------------------------------------------------------------------------
// axioms

namespace detail {

inline Report t1_t2(const FormInstance& F, const TopogenousOrder& T, ObjectId x) {
  Report r;
  const auto& l = F.fibre(x);
  const auto& rel = T.rel[x];
  const auto& name = F.object_name(x);
  const auto n = l.size();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!rel(a, b)) continue;
      if (!l.le(a, b)) r.add({"T1", name, "", {a, b}, ""});
      // down-closure in the first and up-closure in the second argument
      // together give the full T2 implication by transitivity.
      for (Element c = 0; c < n; ++c) {
        if (l.le(c, a) && !rel(c, b)) r.add({"T2", name, "", {c, a, b, b}, "A' <= A < B"});
        if (l.le(b, c) && !rel(a, c)) r.add({"T2", name, "", {a, a, b, c}, "A < B <= B'"});
      }
    }
  return r;
}

inline Report t3_on(const FormInstance& F, const TopogenousOrder& T, MorphismId f) {
  Report r;
  const auto& m = F.base().morphism(f);
  const auto& rx = T.rel[m.dom];
  const auto& ry = T.rel[m.cod];
  const auto& push = F.push_table(f);
  const auto& pull = F.pull_table(f);
  for (Element a = 0; a < push.size(); ++a)
    for (Element b = 0; b < pull.size(); ++b)
      if (ry(push[a], b) && !rx(a, pull[b]))
        r.add({"T3", F.object_name(m.dom), m.name, {a, b}, "f.A < B but not A < B.f"});
  return r;
}

inline Report pull_form_on(const FormInstance& F, const TopogenousOrder& T, MorphismId f) {
  Report r;
  const auto& m = F.base().morphism(f);
  const auto& rx = T.rel[m.dom];
  const auto& ry = T.rel[m.cod];
  const auto& pull = F.pull_table(f);
  for (Element a = 0; a < pull.size(); ++a)
    for (Element b = 0; b < pull.size(); ++b)
      if (ry(a, b) && !rx(pull[a], pull[b]))
        r.add({"T3-pull", F.object_name(m.cod), m.name, {a, b}, "A < B but not A.f < B.f"});
  return r;
}

}  // namespace detail

/// Every T1, T2 and T3 violation with witnesses. T2 witnesses are
/// (A', A, B, B').
inline Report verify_order(const FormInstance& F, const TopogenousOrder& T, unsigned jobs = 1) {
  check_order_shape(F, T);
  Report r;
  for (ObjectId x = 0; x < F.object_count(); ++x) r.merge(detail::t1_t2(F, T, x));
  auto parts = parallel_map(F.morphism_count(), jobs,
                            [&](std::size_t f) { return detail::t3_on(F, T, f); });
  for (auto& p : parts) r.merge(std::move(p));
  return r;
}

struct PullFormResult {
  Report t3;         // violations of T3 in push form
  Report pull_form;  // violations of A < B => A.f < B.f
  /// Morphisms where the two per-morphism verdicts differ.
  std::vector<MorphismId> disagreements;
  bool t1_t2_hold = true;

  bool agree() const { return disagreements.empty(); }
};

/// Evaluates T3 in its push form and in its pull form morphism by morphism
/// and records every morphism on which the two verdicts differ. Agreement is
/// only expected when T1 and T2 hold.
inline PullFormResult check_t3_pull_form(const FormInstance& F, const TopogenousOrder& T) {
  check_order_shape(F, T);
  PullFormResult res;
  for (ObjectId x = 0; x < F.object_count(); ++x)
    res.t1_t2_hold = res.t1_t2_hold && detail::t1_t2(F, T, x).ok();
  for (MorphismId f = 0; f < F.morphism_count(); ++f) {
    auto a = detail::t3_on(F, T, f);
    auto b = detail::pull_form_on(F, T, f);
    if (a.ok() != b.ok()) res.disagreements.push_back(f);
    res.t3.merge(std::move(a));
    res.pull_form.merge(std::move(b));
  }
  return res;
}

// ---------------------------------------------------------------------------
// classes of orders

struct OrderClass {
  bool is_tm = false;
  bool is_tj = false;
  bool is_interpolative = false;
  /// False when some fibre exceeded the exhaustive-subset limit and the
  /// meet/join conditions were checked on pairs plus the empty family.
  bool exhaustive = true;
  std::optional<Violation> tm_witness;
  std::optional<Violation> tj_witness;
  std::optional<Violation> interpolation_witness;
};

/// Fibres up to this size get every subset family checked for (TM)/(TJ).
inline constexpr std::size_t kExhaustiveSubsetLimit = 12;

namespace detail {

// Is `members` closed under meets (dual: joins) of arbitrary subfamilies?
// Returns a failing subfamily.
inline std::optional<std::vector<Element>> bound_closed(const FiniteLattice& l,
                                                        const std::vector<Element>& members,
                                                        const std::vector<std::uint8_t>& in,
                                                        BoundKind kind, bool exhaustive) {
  const Element empty = kind == BoundKind::meet ? l.top() : l.bottom();
  if (!in[empty]) return std::vector<Element>{};
  if (exhaustive && members.size() <= kExhaustiveSubsetLimit) {
    const std::size_t k = members.size();
    std::vector<Element> acc(std::size_t{1} << k);
    acc[0] = empty;
    for (std::size_t mask = 1; mask < acc.size(); ++mask) {
      const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
      const Element e = members[low];
      const Element prev = acc[mask & (mask - 1)];
      acc[mask] = kind == BoundKind::meet ? l.meet(prev, e) : l.join(prev, e);
      if (!in[acc[mask]]) {
        std::vector<Element> fam;
        for (std::size_t i = 0; i < k; ++i)
          if (mask >> i & 1) fam.push_back(members[i]);
        return fam;
      }
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Element b = kind == BoundKind::meet ? l.meet(members[i], members[j])
                                                : l.join(members[i], members[j]);
      if (!in[b]) return std::vector<Element>{members[i], members[j]};
    }
  std::vector<Element> all(members);
  if (!in[l.bound(kind, all)]) return all;
  return std::nullopt;
}

}  // namespace detail

/// (TM), (TJ) and interpolativity. Subfamilies are enumerated exhaustively
/// on fibres of at most kExhaustiveSubsetLimit elements; larger fibres use
/// pairs plus the empty and the full family, which decides closure under
/// all finite meets (joins) because those are iterated binary ones.
inline OrderClass classify_order(const FormInstance& F, const TopogenousOrder& T) {
  check_order_shape(F, T);
  OrderClass c;
  c.is_tm = c.is_tj = c.is_interpolative = true;
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& l = F.fibre(x);
    const auto& rel = T.rel[x];
    const auto n = l.size();
    const bool exhaustive = n <= kExhaustiveSubsetLimit;
    c.exhaustive = c.exhaustive && exhaustive;
    const auto& name = F.object_name(x);
    for (Element a = 0; a < n && c.is_tm; ++a) {
      std::vector<Element> members;
      std::vector<std::uint8_t> in(n, 0);
      for (Element b = 0; b < n; ++b)
        if (rel(a, b)) {
          members.push_back(b);
          in[b] = 1;
        }
      if (auto fam = detail::bound_closed(l, members, in, BoundKind::meet, exhaustive)) {
        c.is_tm = false;
        std::vector<Element> w{a};
        w.insert(w.end(), fam->begin(), fam->end());
        c.tm_witness = Violation{"TM", name, "", w, "A < B_i for all i but not A < meet"};
      }
    }
    for (Element b = 0; b < n && c.is_tj; ++b) {
      std::vector<Element> members;
      std::vector<std::uint8_t> in(n, 0);
      for (Element a = 0; a < n; ++a)
        if (rel(a, b)) {
          members.push_back(a);
          in[a] = 1;
        }
      if (auto fam = detail::bound_closed(l, members, in, BoundKind::join, exhaustive)) {
        c.is_tj = false;
        std::vector<Element> w{b};
        w.insert(w.end(), fam->begin(), fam->end());
        c.tj_witness = Violation{"TJ", name, "", w, "A_i < B for all i but not join < B"};
      }
    }
    for (Element a = 0; a < n && c.is_interpolative; ++a)
      for (Element b = 0; b < n && c.is_interpolative; ++b) {
        if (!rel(a, b)) continue;
        bool found = false;
        for (Element m = 0; m < n && !found; ++m) found = rel(a, m) && rel(m, b);
        if (!found) {
          c.is_interpolative = false;
          c.interpolation_witness = Violation{"interpolative", name, "", {a, b}, ""};
        }
      }
  }
  return c;
}

/// Pointwise conjunction of a nonempty list of orders.
inline TopogenousOrder intersect_orders(const FormInstance& F,
                                        std::span<const TopogenousOrder> orders) {
  if (orders.empty()) throw input_error("intersect_orders needs at least one order");
  for (const auto& T : orders) check_order_shape(F, T);
  return make_order(F, [&](ObjectId x, Element a, Element b) {
    for (const auto& T : orders)
      if (!T.rel[x](a, b)) return false;
    return true;
  });
}

// ---------------------------------------------------------------------------
// operators <-> orders

/// C(A) = meet{B : A < B}. Produced for any order; only TM orders are
/// guaranteed to give a closure operator.
inline ClosureOperator closure_from_order(const FormInstance& F, const TopogenousOrder& T) {
  check_order_shape(F, T);
  ClosureOperator C;
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& l = F.fibre(x);
    std::vector<Element> m(l.size());
    for (Element a = 0; a < l.size(); ++a) {
      Element acc = l.top();
      for (Element b = 0; b < l.size(); ++b)
        if (T.rel[x](a, b)) acc = l.meet(acc, b);
      m[a] = acc;
    }
    C.map.push_back(std::move(m));
  }
  return C;
}

/// A < B iff C(A) <= B.
inline TopogenousOrder order_from_closure(const FormInstance& F, const ClosureOperator& C) {
  check_maps_shape(F, C);
  return make_order(F, [&](ObjectId x, Element a, Element b) {
    return F.fibre(x).le(C.map[x][a], b);
  });
}

/// I(B) = join{A : A < B}.
inline InteriorOperator interior_from_order(const FormInstance& F, const TopogenousOrder& T) {
  check_order_shape(F, T);
  InteriorOperator I;
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& l = F.fibre(x);
    std::vector<Element> m(l.size());
    for (Element b = 0; b < l.size(); ++b) {
      Element acc = l.bottom();
      for (Element a = 0; a < l.size(); ++a)
        if (T.rel[x](a, b)) acc = l.join(acc, a);
      m[b] = acc;
    }
    I.map.push_back(std::move(m));
  }
  return I;
}

/// A < B iff A <= I(B).
inline TopogenousOrder order_from_interior(const FormInstance& F, const InteriorOperator& I) {
  check_maps_shape(F, I);
  return make_order(F, [&](ObjectId x, Element a, Element b) {
    return F.fibre(x).le(a, I.map[x][b]);
  });
}

// ---------------------------------------------------------------------------
// operator axioms

struct ClosureFormsVerdict {
  bool c2 = true;
  bool c3 = true;
  bool c4 = true;
  bool c2_prime = true;
  bool c2_double_prime = true;

  bool agree() const {
    const bool split = c2_prime && c2_double_prime;
    return c2 == c3 && c3 == c4 && c4 == split;
  }
};

/// C1 plus the compatibility condition in four equivalent shapes:
///   C2   A <=_f B  =>  C(A) <=_f C(B)
///   C3   f.A <= B  =>  f.C(A) <= C(B)
///   C4   A <= B.f  =>  C(A) <= C(B).f
///   C2'  A <= B  =>  C(A) <= C(B),  C2''  f.C(A) <= C(f.A)
/// A "C2-forms" violation is added when the verdicts do not coincide.
inline Report verify_closure(const FormInstance& F, const ClosureOperator& C,
                             ClosureFormsVerdict* verdict_out = nullptr) {
  check_maps_shape(F, C);
  Report r;
  ClosureFormsVerdict v;
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& l = F.fibre(x);
    const auto& c = C.map[x];
    for (Element a = 0; a < l.size(); ++a) {
      if (!l.le(a, c[a])) r.add({"C1", F.object_name(x), "", {a}, "A <= C(A)"});
      for (Element b = 0; b < l.size(); ++b)
        if (l.le(a, b) && !l.le(c[a], c[b])) {
          v.c2_prime = false;
          r.add({"C2'", F.object_name(x), "", {a, b}, ""});
        }
    }
  }
  for (MorphismId f = 0; f < F.morphism_count(); ++f) {
    const auto& m = F.base().morphism(f);
    const auto& src = F.fibre(m.dom);
    const auto& dst = F.fibre(m.cod);
    const auto& cx = C.map[m.dom];
    const auto& cy = C.map[m.cod];
    const auto& push = F.push_table(f);
    const auto& pull = F.pull_table(f);
    const auto& oname = F.object_name(m.dom);
    for (Element a = 0; a < src.size(); ++a) {
      if (!dst.le(push[cx[a]], cy[push[a]])) {
        v.c2_double_prime = false;
        r.add({"C2''", oname, m.name, {a}, "f.C(A) <= C(f.A)"});
      }
      for (Element b = 0; b < dst.size(); ++b) {
        if (F.leq_over(f, a, b) && !F.leq_over(f, cx[a], cy[b])) {
          v.c2 = false;
          r.add({"C2", oname, m.name, {a, b}, ""});
        }
        if (dst.le(push[a], b) && !dst.le(push[cx[a]], cy[b])) {
          v.c3 = false;
          r.add({"C3", oname, m.name, {a, b}, ""});
        }
        if (src.le(a, pull[b]) && !src.le(cx[a], pull[cy[b]])) {
          v.c4 = false;
          r.add({"C4", oname, m.name, {a, b}, ""});
        }
      }
    }
  }
  if (!v.agree()) r.add({"C2-forms", "", "", {}, "equivalent forms of C2 disagree"});
  if (verdict_out) *verdict_out = v;
  return r;
}

/// I1 contractive, I2 monotone, I3 (I(B)).f <= I(B.f).
inline Report verify_interior(const FormInstance& F, const InteriorOperator& I) {
  check_maps_shape(F, I);
  Report r;
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& l = F.fibre(x);
    const auto& i = I.map[x];
    for (Element a = 0; a < l.size(); ++a) {
      if (!l.le(i[a], a)) r.add({"I1", F.object_name(x), "", {a}, "I(A) <= A"});
      for (Element b = 0; b < l.size(); ++b)
        if (l.le(a, b) && !l.le(i[a], i[b])) r.add({"I2", F.object_name(x), "", {a, b}, ""});
    }
  }
  for (MorphismId f = 0; f < F.morphism_count(); ++f) {
    const auto& m = F.base().morphism(f);
    const auto& src = F.fibre(m.dom);
    const auto& ix = I.map[m.dom];
    const auto& iy = I.map[m.cod];
    const auto& pull = F.pull_table(f);
    for (Element b = 0; b < pull.size(); ++b)
      if (!src.le(pull[iy[b]], ix[pull[b]]))
        r.add({"I3", F.object_name(m.cod), m.name, {b}, "I(B).f <= I(B.f)"});
  }
  return r;
}

inline bool is_idempotent(const FibreMaps& op) {
  for (const auto& m : op.map)
    for (Element a = 0; a < m.size(); ++a)
      if (m[m[a]] != m[a]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// round trips

struct RoundtripResult {
  Report report;
  bool closure_branch = false;   // ran the MTORD <-> Clo checks
  bool interior_branch = false;  // ran the JTORD <-> Int checks
};

namespace detail {

inline void expect(Report& r, bool ok, const std::string& law, const std::string& detail) {
  if (!ok) r.add({law, "", "", {}, detail});
}

}  // namespace detail

/// For a TM order: C^T is a closure, T^{C^T} = T, T < C^T(A) holds for A, and
/// idempotency of C^T matches interpolativity of T. Dually for TJ with the
/// interior. A branch whose class does not hold is skipped with a note.
inline RoundtripResult roundtrip_check(const FormInstance& F, const TopogenousOrder& T) {
  RoundtripResult res;
  auto& r = res.report;
  if (!verify_order(F, T).ok()) {
    r.note("skipped: input is not a topogenous order");
    return res;
  }
  const auto cls = classify_order(F, T);
  if (cls.is_tm) {
    res.closure_branch = true;
    const auto C = closure_from_order(F, T);
    detail::expect(r, verify_closure(F, C).ok(), "closure-valid", "C^T is a closure operator");
    detail::expect(r, order_from_closure(F, C) == T, "order-roundtrip", "T^{C^T} = T");
    bool attains = true;
    for (ObjectId x = 0; x < F.object_count(); ++x)
      for (Element a = 0; a < F.fibre(x).size(); ++a) attains = attains && T.rel[x](a, C.map[x][a]);
    detail::expect(r, attains, "closure-attained", "A < C^T(A)");
    detail::expect(r, is_idempotent(C) == cls.is_interpolative, "idempotent-interpolative",
                   "C^T idempotent iff T interpolative");
  } else {
    r.note("closure branch skipped: order is not TM");
  }
  if (cls.is_tj) {
    res.interior_branch = true;
    const auto I = interior_from_order(F, T);
    detail::expect(r, verify_interior(F, I).ok(), "interior-valid", "I^T is an interior operator");
    detail::expect(r, order_from_interior(F, I) == T, "order-roundtrip-interior", "T^{I^T} = T");
    bool attains = true;
    for (ObjectId x = 0; x < F.object_count(); ++x)
      for (Element b = 0; b < F.fibre(x).size(); ++b) attains = attains && T.rel[x](I.map[x][b], b);
    detail::expect(r, attains, "interior-attained", "I^T(B) < B");
    detail::expect(r, is_idempotent(I) == cls.is_interpolative, "idempotent-interpolative-interior",
                   "I^T idempotent iff T interpolative");
  } else {
    r.note("interior branch skipped: order is not TJ");
  }
  return res;
}

/// For a closure C: T^C is a TM topogenous order and C^{T^C} = C, with
/// idempotency of C matching interpolativity of T^C.
inline RoundtripResult roundtrip_check(const FormInstance& F, const ClosureOperator& C) {
  RoundtripResult res;
  auto& r = res.report;
  if (!verify_closure(F, C).ok()) {
    r.note("skipped: input is not a closure operator");
    return res;
  }
  res.closure_branch = true;
  const auto T = order_from_closure(F, C);
  detail::expect(r, verify_order(F, T).ok(), "order-valid", "T^C is topogenous");
  const auto cls = classify_order(F, T);
  detail::expect(r, cls.is_tm, "order-tm", "T^C satisfies TM");
  detail::expect(r, closure_from_order(F, T) == C, "closure-roundtrip", "C^{T^C} = C");
  detail::expect(r, is_idempotent(C) == cls.is_interpolative, "idempotent-interpolative",
                 "C idempotent iff T^C interpolative");
  return res;
}

inline RoundtripResult roundtrip_check(const FormInstance& F, const InteriorOperator& I) {
  RoundtripResult res;
  auto& r = res.report;
  if (!verify_interior(F, I).ok()) {
    r.note("skipped: input is not an interior operator");
    return res;
  }
  res.interior_branch = true;
  const auto T = order_from_interior(F, I);
  detail::expect(r, verify_order(F, T).ok(), "order-valid", "T^I is topogenous");
  const auto cls = classify_order(F, T);
  detail::expect(r, cls.is_tj, "order-tj", "T^I satisfies TJ");
  detail::expect(r, interior_from_order(F, T) == I, "interior-roundtrip", "I^{T^I} = I");
  detail::expect(r, is_idempotent(I) == cls.is_interpolative, "idempotent-interpolative",
                 "I idempotent iff T^I interpolative");
  return res;
}

/// Pointwise order on operators: op(A) <= op'(A) everywhere.
inline bool operator_leq(const FormInstance& F, const FibreMaps& a, const FibreMaps& b) {
  for (ObjectId x = 0; x < F.object_count(); ++x)
    for (Element e = 0; e < F.fibre(x).size(); ++e)
      if (!F.fibre(x).le(a.map[x][e], b.map[x][e])) return false;
  return true;
}

/// How the two order/operator assignments act on a supplied pair of orders
/// T <= T' (inclusion) and on the derived operators.
///
/// The closure side is order-reversing: a larger order has more B with
/// A < B, hence a smaller meet. The interior side is order-preserving.
struct AssignmentMonotonicity {
  bool applicable = false;            // T is included in T'
  bool closure_reversing = true;      // C^{T'} <= C^T
  bool closure_preserving = true;     // C^T <= C^{T'}
  bool interior_preserving = true;    // I^T <= I^{T'}
};

inline AssignmentMonotonicity check_assignment_monotonicity(const FormInstance& F,
                                                            const TopogenousOrder& T,
                                                            const TopogenousOrder& T2) {
  AssignmentMonotonicity m;
  m.applicable = T.subset_of(T2);
  if (!m.applicable) return m;
  const auto c1 = closure_from_order(F, T), c2 = closure_from_order(F, T2);
  const auto i1 = interior_from_order(F, T), i2 = interior_from_order(F, T2);
  m.closure_reversing = operator_leq(F, c2, c1);
  m.closure_preserving = operator_leq(F, c1, c2);
  m.interior_preserving = operator_leq(F, i1, i2);
  return m;
}

}  // namespace formkit
