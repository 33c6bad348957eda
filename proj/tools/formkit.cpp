// formkit: verify, derive, classify and search over finite forms.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "formkit/form.hpp"
#include "formkit/grp.hpp"
#include "formkit/json_io.hpp"
#include "formkit/lattice.hpp"
#include "formkit/morphclass.hpp"
#include "formkit/quot.hpp"
#include "formkit/search.hpp"
#include "formkit/top.hpp"
#include "formkit/topogenous.hpp"

namespace {

using namespace formkit;
using json_io::json;

constexpr const char* kVersion = "0.3.0";
constexpr const char* kSchema = "formkit.run-report/1";

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

json violation_json(const Violation& v) {
  json j = {{"law", v.law}, {"elements", v.elements}};
  if (!v.object.empty()) j["object"] = v.object;
  if (!v.morphism.empty()) j["morphism"] = v.morphism;
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

/// Accumulates checks and payload for one invocation. Nothing
/// time-dependent goes in here, so identical runs print identical bytes.
class RunReport {
 public:
  explicit RunReport(std::vector<std::string> command) : command_(std::move(command)) {}

  void input(const std::string& path, const std::string& bytes) {
    inputs_.push_back({{"path", path}, {"digest", json_io::digest(bytes)}});
  }

  void check(const std::string& name, bool pass, json witnesses = json::array(), const std::string& detail = "") {
    json c = {{"name", name}, {"status", pass ? "pass" : "fail"}};
    if (!detail.empty()) c["detail"] = detail;
    if (!witnesses.empty()) c["witnesses"] = std::move(witnesses);
    checks_.push_back(std::move(c));
    failed_ = failed_ || !pass;
  }

  void skip(const std::string& name, const std::string& detail) {
    checks_.push_back({{"name", name}, {"status", "skipped"}, {"detail", detail}});
  }

  /// One check per law in `laws` plus one for any other law that shows up.
  void laws(const Report& r, const std::vector<std::string>& laws, const std::string& prefix = "") {
    std::map<std::string, json> by_law;
    for (const auto& v : r.violations) {
      auto& w = by_law[v.law];
      if (!w.is_array()) w = json::array();
      if (w.size() < kMaxWitnesses) w.push_back(violation_json(v));
    }
    for (const auto& law : laws) {
      auto it = by_law.find(law);
      check(prefix + law, it == by_law.end(), it == by_law.end() ? json::array() : it->second,
            it == by_law.end() ? "" : std::to_string(r.count(law)) + " violation(s)");
      if (it != by_law.end()) by_law.erase(it);
    }
    for (auto& [law, w] : by_law) check(prefix + law, false, w, std::to_string(r.count(law)) + " violation(s)");
    for (const auto& n : r.notes) notes_.push_back(n);
  }

  void note(const std::string& n) { notes_.push_back(n); }
  json& result() { return result_; }
  bool failed() const { return failed_; }

  json to_json() const {
    json j = {{"schema", kSchema},
              {"tool", {{"name", "formkit"}, {"version", kVersion}}},
              {"command", command_},
              {"inputs", inputs_},
              {"status", failed_ ? "fail" : "pass"},
              {"checks", checks_}};
    if (!notes_.empty()) j["notes"] = notes_;
    if (!result_.is_null()) j["result"] = result_;
    return j;
  }

  static constexpr std::size_t kMaxWitnesses = 20;

 private:
  std::vector<std::string> command_;
  json inputs_ = json::array();
  json checks_ = json::array();
  std::vector<std::string> notes_;
  json result_;
  bool failed_ = false;
};

void print_text(const json& r, std::ostream& out) {
  std::string cmd;
  for (const auto& a : r["command"]) cmd += " " + a.get<std::string>();
  out << "formkit" << cmd << "\n";
  for (const auto& in : r["inputs"]) out << "input " << in["path"].get<std::string>() << " " << in["digest"].get<std::string>() << "\n";
  for (const auto& c : r["checks"]) {
    auto status = c["status"].get<std::string>();
    for (auto& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    out << "  " << status << " " << c["name"].get<std::string>();
    if (c.contains("detail")) out << "  (" << c["detail"].get<std::string>() << ")";
    out << "\n";
    if (c.contains("witnesses"))
      for (std::size_t i = 0; i < c["witnesses"].size() && i < 5; ++i) out << "      " << c["witnesses"][i].dump() << "\n";
  }
  if (r.contains("notes"))
    for (const auto& n : r["notes"]) out << "note: " << n.get<std::string>() << "\n";
  if (r.contains("result")) {
    const auto body = r["result"].dump(2);
    if (body.size() <= 20000) out << "result:\n" << body << "\n";
    else out << "result: " << body.size() << " bytes, use --format json\n";
  }
  out << "status: " << r["status"].get<std::string>() << "\n";
}

// ---------------------------------------------------------------------------
// inputs

struct Loader {
  RunReport& report;

  json load(const std::string& path) {
    const auto bytes = json_io::read_file(path);
    report.input(path, bytes);
    return json_io::parse_text(bytes, path);
  }

  FormInstance form(const std::string& path) {
    try {
      return json_io::form_from_json(load(path));
    } catch (const input_error& e) {
      throw input_error(path + ": " + e.what());
    }
  }

  template <class Fn>
  auto parse(const std::string& path, Fn&& fn) {
    const auto j = load(path);
    try {
      return fn(j);
    } catch (const input_error& e) {
      throw input_error(path + ": " + e.what());
    }
  }
};

struct Options {
  std::string format = "json";
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool timing = false;
};

// ---------------------------------------------------------------------------
// built-in instances

struct Instance {
  FormInstance form;
  std::optional<top::TopForm> top;
  std::optional<grp::GrpForm> grp;
  std::optional<quot::QuotForm> quot;
};

Instance build_instance(const std::string& kind, const std::vector<std::size_t>& sizes, const std::string& corpus,
                        std::size_t max_order, const std::vector<std::string>& group_files, Loader& loader) {
  Instance in;
  if (kind == "top") {
    in.top = top::build_top_form(sizes);
    in.form = in.top->form;
  } else if (kind == "quot") {
    in.quot = quot::build_quot_form(sizes);
    in.form = in.quot->form;
  } else if (kind == "grp") {
    std::vector<grp::FiniteGroup> groups;
    if (corpus == "standard") groups = grp::standard_corpus(max_order);
    else if (!corpus.empty()) throw input_error("unknown corpus '" + corpus + "' (expected 'standard')");
    for (const auto& f : group_files)
      groups.push_back(loader.parse(f, [](const json& j) { return json_io::group_from_json(j); }));
    if (groups.empty()) throw input_error("no groups given: use --corpus standard or --group <file>");
    in.grp = grp::build_grp_form(groups);
    in.form = in.grp->form;
  } else {
    throw input_error("unknown instance '" + kind + "'");
  }
  return in;
}

TopogenousOrder named_order(const Instance& in, const std::string& name) {
  if (name == "leq") return leq_order(in.form);
  if (name == "full") return full_order(in.form);
  if (name == "theta" || name == "b") {
    if (!in.top) throw input_error("order '" + name + "' needs the top instance");
    return name == "theta" ? top::theta_order(*in.top) : top::b_order(*in.top);
  }
  if (name == "normal") {
    if (!in.grp) throw input_error("order 'normal' needs the grp instance");
    return grp::normal_interval_order(*in.grp);
  }
  throw input_error("unknown order '" + name + "' (expected leq, full, theta, b or normal)");
}

// ---------------------------------------------------------------------------
// report fragments

json pair_json(const std::optional<ElementPair>& p) {
  if (!p) return nullptr;
  return json::array({p->first, p->second});
}

json class_json(const OrderClass& c) {
  json j = {{"tm", c.is_tm}, {"tj", c.is_tj}, {"interpolative", c.is_interpolative}, {"exhaustive", c.exhaustive}};
  if (c.tm_witness) j["tm_witness"] = violation_json(*c.tm_witness);
  if (c.tj_witness) j["tj_witness"] = violation_json(*c.tj_witness);
  if (c.interpolation_witness) j["interpolation_witness"] = violation_json(*c.interpolation_witness);
  return j;
}

json morphism_report_json(const MorphismReport& m) {
  return {{"id", m.id},
          {"name", m.name},
          {"strict", m.strict},
          {"final", m.final},
          {"thick", m.thick},
          {"section", m.kind.is_section},
          {"retraction", m.kind.is_retraction},
          {"iso", m.kind.is_iso},
          {"strict_witness", pair_json(m.strict_witness)},
          {"final_witness", pair_json(m.final_witness)}};
}

json names_json(const std::vector<std::string>& names) {
  json w = json::array();
  for (std::size_t i = 0; i < names.size() && i < RunReport::kMaxWitnesses; ++i) w.push_back(names[i]);
  return w;
}

void theorem_checks(RunReport& rep, const FormInstance& F, const TopogenousOrder& T, unsigned jobs) {
  const auto sweep = check_theorems(F, T, jobs);
  for (const auto& c : sweep.checks) {
    if (c.skipped) {
      rep.skip(c.name, c.note);
      continue;
    }
    std::string detail = std::to_string(c.instances) + " instance(s)";
    if (!c.failures.empty()) detail += ", " + std::to_string(c.failures.size()) + " failure(s)";
    if (!c.note.empty()) detail += "; " + c.note;
    rep.check(c.name, c.passed(), names_json(c.failures), detail);
  }
  if (sweep.order_valid) rep.result()["order_class"] = class_json(sweep.order_class);
}

/// The example-specific propositions for the built-in orders.
void example_checks(RunReport& rep, const Instance& in, const std::string& order, const TopogenousOrder& T) {
  const auto& F = in.form;
  if (in.top && order == "theta") {
    std::vector<std::string> not_final, literal, per_pair;
    std::size_t surjections = 0, pair_instances = 0;
    for (MorphismId f = 0; f < F.morphism_count(); ++f) {
      if (!in.top->functions[f].surjective()) continue;
      ++surjections;
      if (!is_final(F, T, f)) not_final.push_back(F.morphism_name(f));
      const auto r = top::theta_strictness_reading(*in.top, T, f);
      if (!r.literal_holds()) literal.push_back(F.morphism_name(f));
      pair_instances += r.per_pair_instances;
      if (r.per_pair_failures) per_pair.push_back(F.morphism_name(f));
    }
    rep.check("theta:surjections-final", not_final.empty(), names_json(not_final),
              std::to_string(surjections) + " surjection(s)");
    rep.check("theta:clopen-surjections-strict", literal.empty(), names_json(literal),
              "surjective and clopen for every pair of topologies => strict");
    rep.check("theta:clopen-pairs-strict", per_pair.empty(), names_json(per_pair),
              std::to_string(pair_instances) + " pair(s) where f is clopen");
  }
  if (in.top && order == "b") {
    std::vector<std::string> not_strict, not_final;
    for (MorphismId f = 0; f < F.morphism_count(); ++f) {
      if (!is_strict(F, T, f)) not_strict.push_back(F.morphism_name(f));
      if (!is_final(F, T, f)) not_final.push_back(F.morphism_name(f));
    }
    const auto n = std::to_string(F.morphism_count()) + " function(s)";
    rep.check("b:all-strict", not_strict.empty(), names_json(not_strict), n);
    rep.check("b:all-final", not_final.empty(), names_json(not_final), n);
  }
  if (in.grp && order == "normal") {
    std::vector<std::string> strict_bad, final_bad;
    for (MorphismId f = 0; f < F.morphism_count(); ++f) {
      const auto& h = in.grp->homs[f];
      const auto& G = in.grp->group(h.source);
      const auto& H = in.grp->group(h.target);
      if (is_strict(F, T, f) != grp::preserves_normals(G, H, h.values)) strict_bad.push_back(F.morphism_name(f));
      if (is_final(F, T, f) != grp::surjective(H, h.values)) final_bad.push_back(F.morphism_name(f));
    }
    const auto n = std::to_string(F.morphism_count()) + " homomorphism(s)";
    rep.check("normal:strict-iff-preserves-normals", strict_bad.empty(), names_json(strict_bad), n);
    rep.check("normal:final-iff-surjective", final_bad.empty(), names_json(final_bad), n);
  }
}

const std::vector<std::string> kLatticeLaws = {"nonempty",  "reflexive", "antisymmetric", "transitive",
                                               "bottom",    "top",       "meet",          "join"};
const std::vector<std::string> kFormLaws = {"identity-push", "identity-pull", "monotone-push", "monotone-pull",
                                            "galois",        "unit",          "counit",        "functor-push",
                                            "functor-pull"};
const std::vector<std::string> kOrderLaws = {"T1", "T2", "T3"};
const std::vector<std::string> kClosureLaws = {"C1", "C2", "C3", "C4", "C2'", "C2''", "C2-forms"};
const std::vector<std::string> kInteriorLaws = {"I1", "I2", "I3"};

// ---------------------------------------------------------------------------
// search

json witness_json(const search::TrialOutcome& o, const std::string& claim, std::uint64_t seed) {
  const auto [F, T] = search::regenerate(claim, seed, o.trial);
  json failures = json::array();
  for (std::size_t i = 0; i < o.failures.size() && i < RunReport::kMaxWitnesses; ++i) failures.push_back(o.failures[i]);
  return {{"schema", "formkit.witness/1"},
          {"claim", claim},
          {"seed", seed},
          {"trial", o.trial},
          {"shape", o.shape},
          {"form_digest", json_io::digest(json_io::to_json(F).dump())},
          {"order_digest", json_io::digest(json_io::to_json(F, T).dump())},
          {"failures", failures}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formkit: forms, topogenous orders and their morphism classes on finite instances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options opt;
  app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", opt.seed, "random seed (search)");
  app.add_option("--jobs", opt.jobs, "worker threads for sweeps")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", opt.timing, "print elapsed time on stderr");
  app.fallthrough();

  std::string file, form_file, order_file, op_file, emit, emit_order, morphism, instance_kind, order_name = "leq";
  std::string corpus, group_name, claim, replay, dump_dir;
  std::vector<std::size_t> sizes;
  std::vector<std::string> group_files;
  std::size_t n = 0, max_order = 8;
  std::uint64_t budget = 1000;

  auto* verify = app.add_subcommand("verify", "check laws of a descriptor")->require_subcommand(1);
  auto* v_lattice = verify->add_subcommand("lattice", "lattice axioms");
  v_lattice->add_option("--file", file, "lattice descriptor")->required();
  auto* v_form = verify->add_subcommand("form", "form laws");
  v_form->add_option("--file,--form", file, "form descriptor")->required();
  auto* v_order = verify->add_subcommand("order", "T1-T3 and the order class");
  v_order->add_option("--form", form_file, "form descriptor")->required();
  v_order->add_option("--order", order_file, "order descriptor")->required();
  auto* v_closure = verify->add_subcommand("closure", "closure operator laws");
  auto* v_interior = verify->add_subcommand("interior", "interior operator laws");
  for (auto* s : {v_closure, v_interior}) {
    s->add_option("--form", form_file, "form descriptor")->required();
    s->add_option("--op,--operator", op_file, "operator descriptor")->required();
  }

  auto* derive = app.add_subcommand("derive", "derive operators and orders")->require_subcommand(1);
  auto* d_closure = derive->add_subcommand("closure", "closure operator of an order");
  auto* d_interior = derive->add_subcommand("interior", "interior operator of an order");
  for (auto* s : {d_closure, d_interior}) {
    s->add_option("--form", form_file, "form descriptor")->required();
    s->add_option("--order", order_file, "order descriptor")->required();
  }
  auto* d_ofc = derive->add_subcommand("order-from-closure", "order of a closure operator");
  auto* d_ofi = derive->add_subcommand("order-from-interior", "order of an interior operator");
  for (auto* s : {d_ofc, d_ofi}) {
    s->add_option("--form", form_file, "form descriptor")->required();
    s->add_option("--op,--operator", op_file, "operator descriptor")->required();
  }
  auto* d_theta = derive->add_subcommand("theta", "theta topologies");
  auto* d_b = derive->add_subcommand("b", "b topologies");
  for (auto* s : {d_theta, d_b}) {
    s->add_option("--n", n, "number of points (every topology)");
    s->add_option("--topology", file, "single topology descriptor");
  }

  auto* classify = app.add_subcommand("classify", "strict/final/thick classification of morphisms");
  classify->add_option("--form", form_file, "form descriptor")->required();
  classify->add_option("--order", order_file, "order descriptor")->required();
  classify->add_option("--morphism", morphism, "only this morphism (name or index)");

  auto* theorems = app.add_subcommand("check-theorems", "run every theorem check over a form and order");
  theorems->add_option("--form", form_file, "form descriptor");
  theorems->add_option("--order", order_name, "order descriptor file, or leq|full|theta|b|normal with --instance");
  theorems->add_option("--instance", instance_kind, "built-in instance")->check(CLI::IsMember({"top", "grp", "quot"}));
  theorems->add_option("--sizes", sizes, "carrier sizes (top, quot)")->delimiter(',');
  theorems->add_option("--corpus", corpus, "group corpus (grp)");
  theorems->add_option("--max-order", max_order, "largest corpus group order");
  theorems->add_option("--group", group_files, "group descriptor (grp, repeatable)");

  auto* enumerate = app.add_subcommand("enumerate", "enumerate instance fibres")->require_subcommand(1);
  auto* e_top = enumerate->add_subcommand("topologies", "topologies on n points");
  auto* e_part = enumerate->add_subcommand("partitions", "partitions of n points");
  for (auto* s : {e_top, e_part}) s->add_option("--n", n, "number of points")->required();
  auto* e_sub = enumerate->add_subcommand("subgroups", "subgroups of a group");
  e_sub->add_option("--name", group_name, "corpus group name");
  e_sub->add_option("--group", file, "group descriptor");

  auto* instance = app.add_subcommand("instance", "build a built-in form")->require_subcommand(1);
  auto* i_top = instance->add_subcommand("top", "topologies over finite sets");
  auto* i_quot = instance->add_subcommand("quot", "partitions over finite sets");
  auto* i_grp = instance->add_subcommand("grp", "subgroups over finite groups");
  for (auto* s : {i_top, i_quot}) s->add_option("--sizes", sizes, "carrier sizes")->delimiter(',')->required();
  i_grp->add_option("--corpus", corpus, "group corpus ('standard')");
  i_grp->add_option("--max-order", max_order, "largest corpus group order");
  i_grp->add_option("--group", group_files, "group descriptor (repeatable)");
  for (auto* s : {i_top, i_quot, i_grp}) {
    s->add_option("--emit", emit, "write the form descriptor here");
    s->add_option("--emit-order", emit_order, "write the order named by --order here");
    s->add_option("--order", order_name, "leq|full|theta|b|normal");
  }

  auto* search_cmd = app.add_subcommand("search", "randomized counterexample search");
  search_cmd->add_option("--claim", claim, "claim id");
  search_cmd->add_option("--budget", budget, "number of random forms");
  search_cmd->add_option("--replay", replay, "witness file to replay");
  search_cmd->add_option("--dump-dir", dump_dir, "write form/order descriptors of counterexamples here");

  std::vector<std::string> command(argv + 1, argv + argc);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  RunReport rep(command);
  Loader loader{rep};
  try {
    if (v_lattice->parsed()) {
      const auto L = loader.parse(file, [](const json& j) { return json_io::lattice_from_json(j); });
      rep.laws(verify_lattice(L), kLatticeLaws);
    } else if (v_form->parsed()) {
      const auto F = loader.form(file);
      const auto laws = verify_form_laws(F, opt.jobs);
      rep.laws(laws, kFormLaws);
      if (laws.ok()) {
        rep.laws(verify_lifting_iso_laws(F), {});
        json refl = json::object();
        for (auto [k, name] : {std::pair{ReflectKind::section, "sections"}, std::pair{ReflectKind::retraction, "retractions"},
                               std::pair{ReflectKind::iso, "isos"}})
          refl[name] = check_reflects(F, k).holds;
        rep.result() = {{"objects", F.object_count()}, {"morphisms", F.morphism_count()}, {"reflects", refl}};
      }
    } else if (v_order->parsed()) {
      const auto F = loader.form(form_file);
      const auto T = loader.parse(order_file, [&](const json& j) { return json_io::order_from_json(F, j); });
      const auto r = verify_order(F, T, opt.jobs);
      rep.laws(r, kOrderLaws);
      if (r.ok()) rep.result() = {{"class", class_json(classify_order(F, T))}};
    } else if (v_closure->parsed()) {
      const auto F = loader.form(form_file);
      const auto C = loader.parse(op_file, [&](const json& j) { return json_io::operator_from_json<ClosureOperator>(F, j); });
      ClosureFormsVerdict verdict;
      rep.laws(verify_closure(F, C, &verdict), kClosureLaws);
      rep.result() = {{"idempotent", is_idempotent(C)}};
    } else if (v_interior->parsed()) {
      const auto F = loader.form(form_file);
      const auto I = loader.parse(op_file, [&](const json& j) { return json_io::operator_from_json<InteriorOperator>(F, j); });
      rep.laws(verify_interior(F, I), kInteriorLaws);
      rep.result() = {{"idempotent", is_idempotent(I)}};
    } else if (d_closure->parsed() || d_interior->parsed()) {
      const auto F = loader.form(form_file);
      const auto T = loader.parse(order_file, [&](const json& j) { return json_io::order_from_json(F, j); });
      rep.laws(verify_order(F, T, opt.jobs), kOrderLaws, "order:");
      if (!rep.failed()) {
        const auto cls = classify_order(F, T);
        const bool closure = d_closure->parsed();
        const bool applies = closure ? cls.is_tm : cls.is_tj;
        rep.check(closure ? "order:TM" : "order:TJ", applies,
                  json::array(), applies ? "" : "the derived operator only corresponds to the order under this condition");
        if (applies) {
          if (closure) {
            const auto C = closure_from_order(F, T);
            rep.laws(verify_closure(F, C), kClosureLaws, "closure:");
            rep.result() = json_io::to_json(F, C);
          } else {
            const auto I = interior_from_order(F, T);
            rep.laws(verify_interior(F, I), kInteriorLaws, "interior:");
            rep.result() = json_io::to_json(F, I);
          }
        }
      }
    } else if (d_ofc->parsed() || d_ofi->parsed()) {
      const auto F = loader.form(form_file);
      const bool closure = d_ofc->parsed();
      TopogenousOrder T;
      if (closure) {
        const auto C = loader.parse(op_file, [&](const json& j) { return json_io::operator_from_json<ClosureOperator>(F, j); });
        rep.laws(verify_closure(F, C), kClosureLaws, "closure:");
        T = order_from_closure(F, C);
      } else {
        const auto I = loader.parse(op_file, [&](const json& j) { return json_io::operator_from_json<InteriorOperator>(F, j); });
        rep.laws(verify_interior(F, I), kInteriorLaws, "interior:");
        T = order_from_interior(F, I);
      }
      rep.laws(verify_order(F, T, opt.jobs), kOrderLaws, "order:");
      rep.result() = json_io::to_json(F, T);
    } else if (d_theta->parsed() || d_b->parsed()) {
      const bool theta = d_theta->parsed();
      std::vector<top::FiniteTopology> ts;
      if (!file.empty()) ts.push_back(loader.parse(file, [](const json& j) { return json_io::topology_from_json(j); }));
      else ts = top::enumerate_topologies(n);
      json rows = json::array();
      for (const auto& t : ts) {
        const auto d = theta ? top::theta_topology(t) : top::b_topology(t);
        rows.push_back({{"topology", json_io::to_json(t)}, {theta ? "theta" : "b", json_io::to_json(d)}});
      }
      rep.result() = std::move(rows);
    } else if (classify->parsed()) {
      const auto F = loader.form(form_file);
      const auto T = loader.parse(order_file, [&](const json& j) { return json_io::order_from_json(F, j); });
      rep.laws(verify_order(F, T, opt.jobs), kOrderLaws, "order:");
      if (!rep.failed()) {
        json out = json::array();
        if (!morphism.empty()) {
          MorphismId f;
          if (morphism.find_first_not_of("0123456789") == std::string::npos) f = std::stoul(morphism);
          else f = F.base().morphism_id(morphism);
          F.base().check_morphism(f);
          out.push_back(morphism_report_json(classify_morphism(F, T, f)));
        } else {
          for (const auto& m : classify_morphisms(F, T)) out.push_back(morphism_report_json(m));
        }
        rep.result() = std::move(out);
      }
    } else if (theorems->parsed()) {
      if (!instance_kind.empty()) {
        if (!form_file.empty()) throw input_error("use either --form or --instance");
        const auto in = build_instance(instance_kind, sizes, corpus, max_order, group_files, loader);
        const auto T = named_order(in, order_name);
        theorem_checks(rep, in.form, T, opt.jobs);
        if (verify_order(in.form, T).ok()) example_checks(rep, in, order_name, T);
      } else {
        if (form_file.empty()) throw input_error("check-theorems needs --form or --instance");
        const auto F = loader.form(form_file);
        const auto T = loader.parse(order_name, [&](const json& j) { return json_io::order_from_json(F, j); });
        theorem_checks(rep, F, T, opt.jobs);
      }
    } else if (e_top->parsed()) {
      const auto fib = top::topology_fibre(n);
      json rows = json::array();
      for (const auto& t : fib.topologies) rows.push_back(json_io::to_json(t));
      rep.result() = {{"n", n}, {"count", fib.topologies.size()}, {"topologies", rows}};
    } else if (e_part->parsed()) {
      const auto ps = quot::enumerate_partitions(n);
      json rows = json::array();
      for (const auto& p : ps) rows.push_back(json_io::to_json(p));
      rep.result() = {{"n", n}, {"count", ps.size()}, {"partitions", rows}};
    } else if (e_sub->parsed()) {
      grp::FiniteGroup g;
      if (!file.empty()) g = loader.parse(file, [](const json& j) { return json_io::group_from_json(j); });
      else if (!group_name.empty()) g = grp::corpus_group(group_name);
      else throw input_error("enumerate subgroups needs --name or --group");
      const auto subs = grp::enumerate_subgroups(g);
      json rows = json::array();
      for (auto m : subs) {
        json elems = json::array();
        for (std::size_t a = 0; a < g.order(); ++a)
          if ((m >> a) & 1u) elems.push_back(a);
        rows.push_back({{"elements", elems}, {"normal", grp::is_normal(g, m)}});
      }
      rep.result() = {{"group", g.name()}, {"order", g.order()}, {"count", subs.size()}, {"subgroups", rows}};
    } else if (i_top->parsed() || i_quot->parsed() || i_grp->parsed()) {
      const auto kind = i_top->parsed() ? "top" : i_quot->parsed() ? "quot" : "grp";
      const auto in = build_instance(kind, sizes, corpus, max_order, group_files, loader);
      const auto fj = json_io::to_json(in.form);
      const auto T = named_order(in, order_name);
      const auto oj = json_io::to_json(in.form, T);
      if (!emit.empty()) json_io::save_file(emit, fj);
      if (!emit_order.empty()) json_io::save_file(emit_order, oj);
      json fibres = json::object();
      for (ObjectId x = 0; x < in.form.object_count(); ++x) fibres[in.form.object_name(x)] = in.form.fibre(x).size();
      rep.result() = {{"objects", in.form.object_count()},
                      {"morphisms", in.form.morphism_count()},
                      {"fibre_sizes", fibres},
                      {"form_digest", json_io::digest(fj.dump())},
                      {"order", order_name},
                      {"order_digest", json_io::digest(oj.dump())}};
      if (emit.empty()) rep.note("form not written; pass --emit <file>");
    } else if (search_cmd->parsed()) {
      std::uint64_t seed = opt.seed;
      std::vector<std::uint64_t> trials;
      if (!replay.empty()) {
        const auto w = loader.load(replay);
        try {
          claim = json_io::detail::text(json_io::detail::field(w, "claim", ""), "/claim");
          seed = json_io::detail::field(w, "seed", "").get<std::uint64_t>();
          trials.push_back(json_io::detail::field(w, "trial", "").get<std::uint64_t>());
        } catch (const nlohmann::json::exception& e) {
          throw input_error(replay + ": " + e.what());
        }
      }
      if (claim.empty()) throw input_error("search needs --claim or --replay");
      search::check_claim(claim);
      json found = json::array();
      std::uint64_t vacuous = 0, total = 0;
      std::vector<search::TrialOutcome> cex;
      if (!trials.empty()) {
        const auto o = search::run_trial(claim, seed, trials.front());
        total = 1;
        vacuous = o.vacuous;
        if (!o.failures.empty()) cex.push_back(o);
      } else {
        const auto r = search::run_search(claim, seed, budget, opt.jobs);
        total = budget;
        vacuous = r.vacuous;
        cex = r.counterexamples;
      }
      for (std::size_t i = 0; i < cex.size() && i < RunReport::kMaxWitnesses; ++i) {
        found.push_back(witness_json(cex[i], claim, seed));
        if (!dump_dir.empty()) {
          std::filesystem::create_directories(dump_dir);
          const auto stem = dump_dir + "/" + claim + "-" + std::to_string(cex[i].trial);
          const auto [F, T] = search::regenerate(claim, seed, cex[i].trial);
          json_io::save_file(stem + "-witness.json", found.back());
          json_io::save_file(stem + "-form.json", json_io::to_json(F));
          json_io::save_file(stem + "-order.json", json_io::to_json(F, T));
        }
      }
      rep.check(claim, cex.empty(), found,
                std::to_string(cex.size()) + " counterexample(s) in " + std::to_string(total) + " trial(s)");
      rep.result() = {{"claim", claim},   {"seed", seed},           {"trials", total},
                      {"vacuous", vacuous}, {"counterexamples", cex.size()}};
    }
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const corrupted_form_error& e) {
    std::cerr << "error: corrupted form: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  const auto j = rep.to_json();
  if (opt.format == "text") print_text(j, std::cout);
  else std::cout << j.dump(2) << "\n";
  if (opt.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    std::cerr << "elapsed: " << ms << " ms\n";
  }
  return rep.failed() ? kFail : kPass;
}
