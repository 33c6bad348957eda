#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formkit/form.hpp"
#include "formkit/topogenous.hpp"

namespace formkit {

using ElementPair = std::pair<Element, Element>;

/// A < B.f  =>  f.A < B, first failing (A, B).
inline std::optional<ElementPair> strict_witness(const FormInstance& F, const TopogenousOrder& T,
                                                 MorphismId f) {
  const auto& m = F.base().morphism(f);
  const auto& rx = T.rel.at(m.dom);
  const auto& ry = T.rel.at(m.cod);
  const auto& push = F.push_table(f);
  const auto& pull = F.pull_table(f);
  for (Element a = 0; a < push.size(); ++a)
    for (Element b = 0; b < pull.size(); ++b)
      if (rx(a, pull[b]) && !ry(push[a], b)) return ElementPair{a, b};
  return std::nullopt;
}

inline bool is_strict(const FormInstance& F, const TopogenousOrder& T, MorphismId f) {
  return !strict_witness(F, T, f);
}

/// B.f < B'.f  =>  B < B', first failing (B, B').
inline std::optional<ElementPair> final_witness(const FormInstance& F, const TopogenousOrder& T,
                                                MorphismId f) {
  const auto& m = F.base().morphism(f);
  const auto& rx = T.rel.at(m.dom);
  const auto& ry = T.rel.at(m.cod);
  const auto& pull = F.pull_table(f);
  for (Element b = 0; b < pull.size(); ++b)
    for (Element b2 = 0; b2 < pull.size(); ++b2)
      if (rx(pull[b], pull[b2]) && !ry(b, b2)) return ElementPair{b, b2};
  return std::nullopt;
}

inline bool is_final(const FormInstance& F, const TopogenousOrder& T, MorphismId f) {
  return !final_witness(F, T, f);
}

/// A < B  =>  f.A < f.B, first failing (A, B).
inline std::optional<ElementPair> push_preservation_witness(const FormInstance& F,
                                                            const TopogenousOrder& T,
                                                            MorphismId f) {
  const auto& m = F.base().morphism(f);
  const auto& rx = T.rel.at(m.dom);
  const auto& ry = T.rel.at(m.cod);
  const auto& push = F.push_table(f);
  for (Element a = 0; a < push.size(); ++a)
    for (Element b = 0; b < push.size(); ++b)
      if (rx(a, b) && !ry(push[a], push[b])) return ElementPair{a, b};
  return std::nullopt;
}

struct StrictCharacterization {
  bool strict = true;
  bool push_preserving = true;
  std::optional<ElementPair> strict_witness;
  std::optional<ElementPair> push_witness;

  bool agree() const { return strict == push_preserving; }
};

/// Computes strictness and preservation of the push images independently.
inline StrictCharacterization strict_characterization(const FormInstance& F,
                                                      const TopogenousOrder& T, MorphismId f) {
  StrictCharacterization s;
  s.strict_witness = strict_witness(F, T, f);
  s.push_witness = push_preservation_witness(F, T, f);
  s.strict = !s.strict_witness;
  s.push_preserving = !s.push_witness;
  return s;
}

struct FinalThickResult {
  bool is_final = false;
  bool hypothesis = false;  // T is TM or 1^Y < 1^Y
  bool is_thick = false;

  bool violated() const { return is_final && hypothesis && !is_thick; }
};

inline FinalThickResult final_thick_check(const FormInstance& F, const TopogenousOrder& T,
                                          MorphismId f, bool order_is_tm) {
  FinalThickResult r;
  const auto y = F.base().morphism(f).cod;
  const auto top = F.fibre(y).top();
  r.is_final = is_final(F, T, f);
  r.hypothesis = order_is_tm || T.rel.at(y)(top, top);
  r.is_thick = F.is_thick(f);
  return r;
}

inline FinalThickResult final_thick_check(const FormInstance& F, const TopogenousOrder& T,
                                          MorphismId f) {
  return final_thick_check(F, T, f, classify_order(F, T).is_tm);
}

/// Strictness, finality, thickness and base kind of every morphism, computed
/// once for the sweeps below.
struct MorphismProfile {
  std::vector<std::uint8_t> strict, final, thick, push_preserving;
  std::vector<MorphismKind> kind;
};

inline MorphismProfile profile_morphisms(const FormInstance& F, const TopogenousOrder& T,
                                         unsigned jobs = 1) {
  check_order_shape(F, T);
  struct Row {
    std::uint8_t strict, final, thick, push;
    MorphismKind kind;
  };
  auto rows = parallel_map(F.morphism_count(), jobs, [&](std::size_t f) {
    return Row{static_cast<std::uint8_t>(is_strict(F, T, f)),
               static_cast<std::uint8_t>(is_final(F, T, f)),
               static_cast<std::uint8_t>(F.is_thick(f)),
               static_cast<std::uint8_t>(!push_preservation_witness(F, T, f)),
               morphism_kind(F.base(), f)};
  });
  MorphismProfile p;
  for (auto& r : rows) {
    p.strict.push_back(r.strict);
    p.final.push_back(r.final);
    p.thick.push_back(r.thick);
    p.push_preserving.push_back(r.push);
    p.kind.push_back(r.kind);
  }
  return p;
}

// ---------------------------------------------------------------------------
// transfer laws

struct ClauseResult {
  std::string name;
  std::string statement;
  bool evaluated = false;  // false when the reflection hypothesis fails
  std::size_t instances = 0;
  std::vector<std::string> failures;  // morphism names (composites as "g o f")

  bool passed() const { return failures.empty(); }
};

struct TransferLawsResult {
  bool reflects_sections = false;
  bool reflects_retractions = false;
  bool reflects_isos = false;
  std::vector<ClauseResult> clauses;

  const ClauseResult& clause(const std::string& name) const {
    for (const auto& c : clauses)
      if (c.name == name) return c;
    throw input_error("unknown clause '" + name + "'");
  }
};

/// Evaluates the iso, composition, retraction/section transfer and
/// cancellation laws over every morphism (and composable pair) of F.
///
/// The section-side cancellation law is evaluated in three readings since
/// its hypothesis is ambiguous: "g retraction" as printed, "f section", and
/// "g section".
inline TransferLawsResult transfer_laws_check(const FormInstance& F, const MorphismProfile& p) {
  TransferLawsResult res;
  const auto& c = F.base();
  res.reflects_sections = check_reflects(F, ReflectKind::section).holds;
  res.reflects_retractions = check_reflects(F, ReflectKind::retraction).holds;
  res.reflects_isos = check_reflects(F, ReflectKind::iso).holds;

  auto clause = [&](std::string name, std::string statement, bool evaluated) -> ClauseResult& {
    res.clauses.push_back({std::move(name), std::move(statement), evaluated, 0, {}});
    return res.clauses.back();
  };
  const auto n = F.morphism_count();

  {
    auto& cl = clause("retraction-final-strict", "retraction and final => strict",
                      res.reflects_retractions);
    for (MorphismId f = 0; cl.evaluated && f < n; ++f)
      if (p.kind[f].is_retraction && p.final[f]) {
        ++cl.instances;
        if (!p.strict[f]) cl.failures.push_back(c.morphism(f).name);
      }
  }
  {
    auto& cl = clause("section-strict-final", "section and strict => final", res.reflects_sections);
    for (MorphismId f = 0; cl.evaluated && f < n; ++f)
      if (p.kind[f].is_section && p.strict[f]) {
        ++cl.instances;
        if (!p.final[f]) cl.failures.push_back(c.morphism(f).name);
      }
  }
  {
    auto& cl = clause("iso-strict-final", "isomorphism => strict and final", res.reflects_isos);
    for (MorphismId f = 0; cl.evaluated && f < n; ++f)
      if (p.kind[f].is_iso) {
        ++cl.instances;
        if (!p.strict[f] || !p.final[f]) cl.failures.push_back(c.morphism(f).name);
      }
  }

  auto composite_name = [&](MorphismId g, MorphismId f) {
    return c.morphism(g).name + " o " + c.morphism(f).name;
  };
  // One sweep over composable pairs feeds the composition and cancellation
  // clauses; clauses are addressed by index since the vector grows.
  const std::size_t comp_s_idx = res.clauses.size();
  clause("compose-strict", "g, f strict => g o f strict", true);
  const std::size_t comp_f_idx = res.clauses.size();
  clause("compose-final", "g, f final => g o f final", true);
  enum class Select { f_retraction, g_retraction, f_section, g_section };
  struct Cancel {
    std::string name, statement;
    bool evaluated;
    Select which;
  };
  const std::vector<Cancel> cancels = {
      {"cancel-retraction", "g o f strict/final, f retraction => g strict/final",
       res.reflects_retractions, Select::f_retraction},
      {"cancel-section-printed", "g o f strict/final, g retraction => f strict/final",
       res.reflects_sections, Select::g_retraction},
      {"cancel-section-f", "g o f strict/final, f section => f strict/final",
       res.reflects_sections, Select::f_section},
      {"cancel-section-g", "g o f strict/final, g section => f strict/final",
       res.reflects_sections, Select::g_section},
  };
  std::vector<std::size_t> cancel_idx;
  for (const auto& k : cancels) {
    cancel_idx.push_back(res.clauses.size());
    clause(k.name, k.statement, k.evaluated);
  }

  for (MorphismId f = 0; f < n; ++f)
    for (MorphismId g : c.out_of(c.morphism(f).cod)) {
      const auto gf_opt = c.compose(g, f);
      if (!gf_opt) continue;
      const MorphismId gf = *gf_opt;
      auto& cs = res.clauses[comp_s_idx];
      auto& cf = res.clauses[comp_f_idx];
      if (p.strict[f] && p.strict[g]) {
        ++cs.instances;
        if (!p.strict[gf]) cs.failures.push_back(composite_name(g, f));
      }
      if (p.final[f] && p.final[g]) {
        ++cf.instances;
        if (!p.final[gf]) cf.failures.push_back(composite_name(g, f));
      }
      for (std::size_t i = 0; i < cancels.size(); ++i) {
        auto& cl = res.clauses[cancel_idx[i]];
        if (!cl.evaluated) continue;
        bool selects = false;
        switch (cancels[i].which) {
          case Select::f_retraction: selects = p.kind[f].is_retraction; break;
          case Select::g_retraction: selects = p.kind[g].is_retraction; break;
          case Select::f_section: selects = p.kind[f].is_section; break;
          case Select::g_section: selects = p.kind[g].is_section; break;
        }
        if (!selects) continue;
        // the conclusion is about g for the retraction clause, f otherwise
        const MorphismId target = cancels[i].which == Select::f_retraction ? g : f;
        if (p.strict[gf]) {
          ++cl.instances;
          if (!p.strict[target]) cl.failures.push_back("strict: " + composite_name(g, f));
        }
        if (p.final[gf]) {
          ++cl.instances;
          if (!p.final[target]) cl.failures.push_back("final: " + composite_name(g, f));
        }
      }
    }
  return res;
}

inline TransferLawsResult transfer_laws_check(const FormInstance& F, const TopogenousOrder& T) {
  return transfer_laws_check(F, profile_morphisms(F, T));
}

// ---------------------------------------------------------------------------
// strictness through the derived operators

struct StrictViaOperators {
  bool closure_branch = false;   // T is TM
  bool interior_branch = false;  // T is TJ
  bool strict = false;
  bool closure_commutes = false;   // f.C(A) = C(f.A) for all A
  bool interior_commutes = false;  // I(B).f = I(B.f) for all B

  /// TM: strict iff closure commutes. TJ: interior commutes => strict.
  bool consistent() const {
    if (closure_branch && strict != closure_commutes) return false;
    if (interior_branch && interior_commutes && !strict) return false;
    return true;
  }
};

inline StrictViaOperators strict_via_operators(const FormInstance& F, const TopogenousOrder& T,
                                               MorphismId f, const OrderClass& cls,
                                               const ClosureOperator* C = nullptr,
                                               const InteriorOperator* I = nullptr) {
  StrictViaOperators s;
  s.strict = is_strict(F, T, f);
  const auto& m = F.base().morphism(f);
  if (cls.is_tm) {
    s.closure_branch = true;
    const auto own = C ? ClosureOperator{} : closure_from_order(F, T);
    const auto& cl = C ? *C : own;
    s.closure_commutes = true;
    for (Element a = 0; a < F.fibre(m.dom).size() && s.closure_commutes; ++a)
      s.closure_commutes = F.push(f, cl.map[m.dom][a]) == cl.map[m.cod][F.push(f, a)];
  }
  if (cls.is_tj) {
    s.interior_branch = true;
    const auto own = I ? InteriorOperator{} : interior_from_order(F, T);
    const auto& in = I ? *I : own;
    s.interior_commutes = true;
    for (Element b = 0; b < F.fibre(m.cod).size() && s.interior_commutes; ++b)
      s.interior_commutes = F.pull(f, in.map[m.cod][b]) == in.map[m.dom][F.pull(f, b)];
  }
  return s;
}

inline StrictViaOperators strict_via_operators(const FormInstance& F, const TopogenousOrder& T,
                                               MorphismId f) {
  return strict_via_operators(F, T, f, classify_order(F, T));
}

// ---------------------------------------------------------------------------
// cohereditary orders

/// Every retraction of the base is final.
inline bool is_cohereditary(const FormInstance& F, const TopogenousOrder& T) {
  for (MorphismId f = 0; f < F.morphism_count(); ++f)
    if (morphism_kind(F.base(), f).is_retraction && !is_final(F, T, f)) return false;
  return true;
}

struct CohereditaryOperatorResult {
  bool evaluated = false;  // T is TM
  bool cohereditary = false;
  bool operator_identity = false;  // C(B) = f.C(B.f) for every retraction f
  std::optional<Violation> operator_witness;

  bool agree() const { return !evaluated || cohereditary == operator_identity; }
};

inline CohereditaryOperatorResult cohereditary_operator_check(const FormInstance& F,
                                                              const TopogenousOrder& T,
                                                              const OrderClass& cls) {
  CohereditaryOperatorResult r;
  if (!cls.is_tm) return r;
  r.evaluated = true;
  r.cohereditary = is_cohereditary(F, T);
  const auto C = closure_from_order(F, T);
  r.operator_identity = true;
  for (MorphismId f = 0; f < F.morphism_count() && r.operator_identity; ++f) {
    if (!morphism_kind(F.base(), f).is_retraction) continue;
    const auto& m = F.base().morphism(f);
    for (Element b = 0; b < F.fibre(m.cod).size(); ++b) {
      const Element rhs = F.push(f, C.map[m.dom][F.pull(f, b)]);
      if (C.map[m.cod][b] != rhs) {
        r.operator_identity = false;
        r.operator_witness = Violation{"cohereditary-operator", F.object_name(m.cod), m.name, {b}, ""};
        break;
      }
    }
  }
  return r;
}

inline CohereditaryOperatorResult cohereditary_operator_check(const FormInstance& F,
                                                              const TopogenousOrder& T) {
  return cohereditary_operator_check(F, T, classify_order(F, T));
}

// ---------------------------------------------------------------------------
// per-morphism report

struct MorphismReport {
  MorphismId id = 0;
  std::string name;
  bool strict = false;
  bool final = false;
  bool thick = false;
  MorphismKind kind;
  std::optional<ElementPair> strict_witness;
  std::optional<ElementPair> final_witness;
};

inline MorphismReport classify_morphism(const FormInstance& F, const TopogenousOrder& T,
                                        MorphismId f) {
  MorphismReport r;
  r.id = f;
  r.name = F.morphism_name(f);
  r.strict_witness = strict_witness(F, T, f);
  r.final_witness = final_witness(F, T, f);
  r.strict = !r.strict_witness;
  r.final = !r.final_witness;
  r.thick = F.is_thick(f);
  r.kind = morphism_kind(F.base(), f);
  return r;
}

inline std::vector<MorphismReport> classify_morphisms(const FormInstance& F,
                                                      const TopogenousOrder& T) {
  check_order_shape(F, T);
  std::vector<MorphismReport> out;
  for (MorphismId f = 0; f < F.morphism_count(); ++f) out.push_back(classify_morphism(F, T, f));
  return out;
}

// ---------------------------------------------------------------------------
// whole-form theorem sweep

struct TheoremCheck {
  std::string name;
  bool skipped = false;
  std::size_t instances = 0;
  std::vector<std::string> failures;
  std::string note;

  bool passed() const { return failures.empty(); }
};

struct TheoremSweep {
  OrderClass order_class;
  bool order_valid = false;
  std::vector<TheoremCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return order_valid;
  }
  const TheoremCheck& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw input_error("unknown theorem check '" + name + "'");
  }
};

/// Runs every structural theorem over the whole form: T3 push/pull
/// equivalence, strict iff push-preserving, final => thick, the transfer
/// laws, strictness via operators, the cohereditary operator identity and the
/// order/operator round trip.
inline TheoremSweep check_theorems(const FormInstance& F, const TopogenousOrder& T,
                                   unsigned jobs = 1) {
  TheoremSweep s;
  check_order_shape(F, T);
  const auto verify = verify_order(F, T, jobs);
  s.order_valid = verify.ok();
  {
    TheoremCheck c{"order-valid", false, 1, {}, ""};
    for (std::size_t i = 0; i < verify.violations.size() && i < 10; ++i) {
      const auto& v = verify.violations[i];
      c.failures.push_back(v.law + " at " + v.object + (v.morphism.empty() ? "" : " / " + v.morphism));
    }
    s.checks.push_back(std::move(c));
  }
  if (!s.order_valid) return s;
  s.order_class = classify_order(F, T);
  const auto& cls = s.order_class;
  const auto p = profile_morphisms(F, T, jobs);
  const auto n = F.morphism_count();

  {
    TheoremCheck c{"t3-pull-form", false, n, {}, ""};
    const auto pf = check_t3_pull_form(F, T);
    for (MorphismId f : pf.disagreements) c.failures.push_back(F.morphism_name(f));
    s.checks.push_back(std::move(c));
  }
  {
    TheoremCheck c{"strict-iff-push", false, n, {}, ""};
    for (MorphismId f = 0; f < n; ++f)
      if (p.strict[f] != p.push_preserving[f]) c.failures.push_back(F.morphism_name(f));
    s.checks.push_back(std::move(c));
  }
  {
    TheoremCheck c{"final-thick", false, 0, {}, ""};
    for (MorphismId f = 0; f < n; ++f) {
      const auto y = F.base().morphism(f).cod;
      const auto top = F.fibre(y).top();
      const bool hyp = cls.is_tm || T.rel[y](top, top);
      if (!(p.final[f] && hyp)) continue;
      ++c.instances;
      if (!p.thick[f]) c.failures.push_back(F.morphism_name(f));
    }
    s.checks.push_back(std::move(c));
  }
  {
    const auto tl = transfer_laws_check(F, p);
    for (const auto& cl : tl.clauses) {
      TheoremCheck c{"transfer:" + cl.name, !cl.evaluated, cl.instances, cl.failures,
                     cl.evaluated ? cl.statement : "skipped: reflection hypothesis fails"};
      s.checks.push_back(std::move(c));
    }
  }
  {
    TheoremCheck c{"strict-via-operators", !(cls.is_tm || cls.is_tj), n, {}, ""};
    if (!c.skipped) {
      const auto C = cls.is_tm ? closure_from_order(F, T) : ClosureOperator{};
      const auto I = cls.is_tj ? interior_from_order(F, T) : InteriorOperator{};
      for (MorphismId f = 0; f < n; ++f) {
        const auto sv = strict_via_operators(F, T, f, cls, cls.is_tm ? &C : nullptr,
                                             cls.is_tj ? &I : nullptr);
        if (!sv.consistent()) c.failures.push_back(F.morphism_name(f));
      }
    } else {
      c.note = "skipped: order is neither TM nor TJ";
    }
    s.checks.push_back(std::move(c));
  }
  {
    const auto co = cohereditary_operator_check(F, T, cls);
    TheoremCheck c{"cohereditary-operator", !co.evaluated, 1, {}, ""};
    if (!co.evaluated) c.note = "skipped: order is not TM";
    else {
      c.note = co.cohereditary ? "order is cohereditary" : "order is not cohereditary";
      if (!co.agree()) c.failures.push_back(co.operator_witness ? co.operator_witness->morphism
                                                                 : std::string("cohereditary"));
    }
    s.checks.push_back(std::move(c));
  }
  {
    const auto rt = roundtrip_check(F, T);
    TheoremCheck c{"roundtrip", !(rt.closure_branch || rt.interior_branch), 1, {}, ""};
    for (const auto& v : rt.report.violations) c.failures.push_back(v.law);
    if (c.skipped) c.note = "skipped: order is neither TM nor TJ";
    s.checks.push_back(std::move(c));
  }
  return s;
}

}  // namespace formkit
