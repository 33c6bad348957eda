// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "formkit/grp.hpp"
#include "formkit/json_io.hpp"
#include "formkit/morphclass.hpp"
#include "formkit/parallel.hpp"
#include "formkit/quot.hpp"
#include "formkit/search.hpp"
#include "formkit/top.hpp"
#include "formkit/topogenous.hpp"
#include "oracles.hpp"

using namespace formkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

const top::TopForm& top123() {
  static const auto tf = top::build_top_form({1, 2, 3});
  return tf;
}

const grp::GrpForm& corpus() {
  static const auto gf = grp::build_grp_form(grp::standard_corpus(8));
  return gf;
}

const quot::QuotForm& quot1234() {
  static const auto qf = quot::build_quot_form({1, 2, 3, 4});
  return qf;
}

struct Case {
  std::string name;
  const FormInstance* form;
  TopogenousOrder order;
};

const std::vector<Case>& sweep() {
  static const std::vector<Case> cases = [] {
    std::vector<Case> c;
    c.push_back({"top/leq", &top123().form, leq_order(top123().form)});
    c.push_back({"top/theta", &top123().form, top::theta_order(top123())});
    c.push_back({"top/b", &top123().form, top::b_order(top123())});
    c.push_back({"grp/leq", &corpus().form, leq_order(corpus().form)});
    c.push_back({"grp/normal", &corpus().form, grp::normal_interval_order(corpus())});
    c.push_back({"quot/leq", &quot1234().form, leq_order(quot1234().form)});
    return c;
  }();
  return cases;
}

void note_failure(Outcome& o, const std::string& what) {
  o.pass = false;
  if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + what;
}

std::string laws_of(const Report& r) {
  std::string s;
  for (const auto& v : r.violations)
    if (s.find(v.law) == std::string::npos) s += (s.empty() ? "" : ",") + v.law;
  return s;
}

Outcome form_laws() {
  Outcome o;
  std::size_t morphisms = 0;
  for (const auto* F : {&top123().form, &corpus().form, &quot1234().form}) {
    const auto r = verify_form_laws(*F, jobs());
    morphisms += F->morphism_count();
    if (!r.ok()) note_failure(o, std::to_string(r.violations.size()) + " violation(s): " + laws_of(r));
  }
  o.detail = o.pass ? std::to_string(morphisms) + " morphisms, 0 violations" : o.detail;
  return o;
}

Outcome closure_roundtrip() {
  Outcome o;
  auto run = [&](const std::string& what, const RoundtripResult& r, bool want_closure) {
    if (!r.report.ok()) note_failure(o, what + ": " + laws_of(r.report));
    if (want_closure && !r.closure_branch) note_failure(o, what + ": closure branch not evaluated");
  };
  const auto& tf = top123();
  const auto theta = top::theta_order(tf);
  run("theta order", roundtrip_check(tf.form, theta), true);
  run("theta closure", roundtrip_check(tf.form, top::theta_closure(tf)), true);
  if (!(closure_from_order(tf.form, theta) == top::theta_closure(tf))) note_failure(o, "theta closure table differs");

  const auto& gf = corpus();
  const auto normal = grp::normal_interval_order(gf);
  run("normal interval order", roundtrip_check(gf.form, normal), true);
  run("normal closure", roundtrip_check(gf.form, grp::normal_closure_operator(gf)), true);
  if (!(closure_from_order(gf.form, normal) == grp::normal_closure_operator(gf)))
    note_failure(o, "normal closure table differs");

  for (const auto* F : {&tf.form, &gf.form, &quot1234().form})
    run("identity closure", roundtrip_check(*F, identity_operator<ClosureOperator>(*F)), true);
  if (o.pass) o.detail = "theta, normal-interval and identity: exact";
  return o;
}

Outcome interior_roundtrip() {
  Outcome o;
  const auto& tf = top123();
  const auto b = top::b_order(tf);
  const auto rt = roundtrip_check(tf.form, b);
  if (!rt.report.ok()) note_failure(o, "b order: " + laws_of(rt.report));
  if (!rt.interior_branch) note_failure(o, "b order is not TJ");
  const auto ri = roundtrip_check(tf.form, top::b_interior(tf));
  if (!ri.report.ok()) note_failure(o, "b interior: " + laws_of(ri.report));
  if (!(interior_from_order(tf.form, b) == top::b_interior(tf))) note_failure(o, "b interior table differs");
  if (!(order_from_interior(tf.form, top::b_interior(tf)) == b)) note_failure(o, "b order table differs");
  if (o.pass) o.detail = "b order <-> b interior exact on 1..3 points";
  return o;
}

Outcome t3_pull() {
  Outcome o;
  std::size_t disagreements = 0, checks = 0;
  for (const auto& c : sweep()) {
    const auto r = check_t3_pull_form(*c.form, c.order);
    checks += c.form->morphism_count();
    disagreements += r.disagreements.size();
    if (!r.agree()) note_failure(o, c.name + ": " + std::to_string(r.disagreements.size()) + " disagreement(s)");
  }
  if (o.pass) o.detail = std::to_string(sweep().size()) + " form/order pairs, 0 disagreements";
  return o;
}

Outcome strict_iff_push() {
  Outcome o;
  std::size_t total = 0;
  for (const auto& c : sweep()) {
    const auto& F = *c.form;
    const auto agree = parallel_map(F.morphism_count(), jobs(), [&](std::size_t f) {
      return static_cast<int>(strict_characterization(F, c.order, f).agree());
    });
    total += agree.size();
    for (std::size_t f = 0; f < agree.size(); ++f)
      if (!agree[f]) note_failure(o, c.name + ": " + F.morphism_name(f));
  }
  if (o.pass) o.detail = std::to_string(total) + " morphism checks, 0 disagreements";
  return o;
}

Outcome final_thick() {
  Outcome o;
  std::size_t final_with_hypothesis = 0;
  for (const auto& c : sweep()) {
    const auto& F = *c.form;
    const bool tm = classify_order(F, c.order).is_tm;
    const auto res = parallel_map(F.morphism_count(), jobs(),
                                  [&](std::size_t f) { return final_thick_check(F, c.order, f, tm); });
    for (std::size_t f = 0; f < res.size(); ++f) {
      if (res[f].is_final && res[f].hypothesis) ++final_with_hypothesis;
      if (res[f].violated()) note_failure(o, c.name + ": " + F.morphism_name(f));
    }
  }
  if (o.pass) o.detail = std::to_string(final_with_hypothesis) + " final morphisms under the hypothesis, all thick";
  return o;
}

Outcome set_examples() {
  Outcome o;
  const auto& tf = top123();
  const auto theta = top::theta_order(tf);
  const auto b = top::b_order(tf);
  std::size_t theta_bad = 0, b_strict_bad = 0, b_final_bad = 0;
  std::string first_b_final;
  for (MorphismId f = 0; f < tf.form.morphism_count(); ++f) {
    if (tf.functions[f].surjective() && !is_final(tf.form, theta, f)) ++theta_bad;
    if (!is_strict(tf.form, b, f)) ++b_strict_bad;
    if (!is_final(tf.form, b, f)) {
      if (!b_final_bad++) first_b_final = tf.form.morphism_name(f);
    }
  }
  o.pass = theta_bad == 0 && b_strict_bad == 0 && b_final_bad == 0;
  o.detail = "theta-final exceptions among surjections: " + std::to_string(theta_bad) +
             "; b-strict exceptions: " + std::to_string(b_strict_bad) +
             "; b-final exceptions: " + std::to_string(b_final_bad) + " of " +
             std::to_string(tf.form.morphism_count());
  if (b_final_bad) o.detail += " (first: " + first_b_final + ")";
  return o;
}

Outcome group_examples() {
  Outcome o;
  const auto& gf = corpus();
  const auto T = grp::normal_interval_order(gf);
  const auto bad = parallel_map(gf.form.morphism_count(), jobs(), [&](std::size_t f) {
    const auto& h = gf.homs[f];
    const auto& g = gf.group(h.source);
    const auto& k = gf.group(h.target);
    int r = 0;
    if (is_strict(gf.form, T, f) != grp::preserves_normals(g, k, h.values)) r |= 1;
    if (is_final(gf.form, T, f) != grp::surjective(k, h.values)) r |= 2;
    return r;
  });
  for (std::size_t f = 0; f < bad.size(); ++f) {
    if (bad[f] & 1) note_failure(o, "strict mismatch " + gf.form.morphism_name(f));
    if (bad[f] & 2) note_failure(o, "final mismatch " + gf.form.morphism_name(f));
  }
  if (o.pass) o.detail = std::to_string(bad.size()) + " homomorphisms, 0 exceptions";
  return o;
}

Outcome enumerations() {
  Outcome o;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto tops = top::enumerate_topologies(n).size();
    const auto parts = quot::enumerate_partitions(n).size();
    if (tops != oracles::naive_topology_count(n) || tops != oracles::preorder_count(n))
      note_failure(o, "topologies on " + std::to_string(n) + " points: " + std::to_string(tops));
    if (parts != oracles::kernel_count(n))
      note_failure(o, "partitions of " + std::to_string(n) + " points: " + std::to_string(parts));
    o.detail += (n > 1 ? " " : "") + std::to_string(tops) + "/" + std::to_string(parts);
  }
  if (o.pass) o.detail = "topologies/partitions for n = 1..4: " + o.detail;
  return o;
}

Outcome random_search() {
  Outcome o;
  constexpr std::uint64_t kSeed = 1, kBudget = 1000;
  std::size_t vacuous = 0;
  for (const std::string claim : {"roundtrip-TM", "roundtrip-TJ", "strict-iff-push", "final-thick"}) {
    const auto r = search::run_search(claim, kSeed, kBudget, jobs());
    vacuous += r.vacuous;
    for (const auto& cx : r.counterexamples) {
      const auto path = "acceptance-witness-" + claim + "-" + std::to_string(cx.trial) + ".json";
      json_io::save_file(path, {{"schema", "formkit.witness/1"},
                                {"claim", claim},
                                {"seed", kSeed},
                                {"trial", cx.trial},
                                {"failures", cx.failures}});
      note_failure(o, claim + " trial " + std::to_string(cx.trial) + " (replay: formkit search --replay " + path + ")");
    }
  }
  if (o.pass)
    o.detail = "4 claims x " + std::to_string(kBudget) + " forms, 0 counterexamples (" + std::to_string(vacuous) +
               " vacuous final-thick trials)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"form laws on the three built forms", form_laws},
      {"closure round trip", closure_roundtrip},
      {"interior round trip", interior_roundtrip},
      {"T3 agrees with its pull form", t3_pull},
      {"strict iff push-preserving", strict_iff_push},
      {"final implies thick", final_thick},
      {"theta and b examples over finite sets", set_examples},
      {"strict and final homomorphisms", group_examples},
      {"enumeration counts against naive oracles", enumerations},
      {"randomized counterexample search", random_search},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
