#include <functional>

#include "catch_amalgamated.hpp"
#include "formkit/json_io.hpp"
#include "support.hpp"

using namespace formkit;
using namespace formkit::json_io;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const input_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("lattice round trip") {
  const auto l = FiniteLattice::chain(3);
  const auto back = lattice_from_json(to_json(l));
  CHECK(back.size() == 3);
  for (Element a = 0; a < 3; ++a)
    for (Element b = 0; b < 3; ++b) CHECK(back.le(a, b) == l.le(a, b));

  const auto fib = top::topology_fibre(2);
  CHECK(lattice_from_json(to_json(fib.lattice)).labels() == fib.lattice.labels());
}

TEST_CASE("lattice schema errors carry a location") {
  CHECK(error_of([] { lattice_from_json(json{{"size", 2}}); }).find("leq") != std::string::npos);
  CHECK(error_of([] { lattice_from_json(json{{"size", 0}, {"leq", json::array()}}); }).rfind("/size", 0) == 0);
  const auto bad_row = json::parse(R"({"size": 2, "leq": [[true, true], [false]]})");
  CHECK(error_of([&] { lattice_from_json(bad_row); }).rfind("/leq/1", 0) == 0);
  const auto labels = json::parse(R"({"size": 1, "leq": [[true]], "labels": ["a", "b"]})");
  CHECK(error_of([&] { lattice_from_json(labels); }).rfind("/labels", 0) == 0);
}

TEST_CASE("form round trip") {
  for (const FormInstance& F : {top::build_top_form({1, 2}).form, grp::build_grp_form({grp::cyclic(2), grp::symmetric3()}).form,
                                quot::build_quot_form({2, 3}).form}) {
    const auto j = to_json(F);
    const auto back = form_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(verify_form_laws(back).ok());
    CHECK(back.morphism_count() == F.morphism_count());
    for (MorphismId f = 0; f < F.morphism_count(); ++f) {
      const auto g = back.base().morphism_id(F.morphism_name(f));
      CHECK(back.push_table(g) == F.push_table(f));
      CHECK(back.pull_table(g) == F.pull_table(f));
    }
  }
}

TEST_CASE("form schema errors carry a location") {
  auto j = to_json(top::build_top_form({2}).form);
  auto broken = j;
  broken["push"]["S2>S2:01"][2] = 9;
  CHECK(error_of([&] { form_from_json(broken); }).rfind("/push/S2>S2:01/2", 0) == 0);
  broken = j;
  broken["compose"]["S2>S2:01,S2>S2:99"] = "S2>S2:01";
  CHECK(error_of([&] { form_from_json(broken); }).find("unknown morphism") != std::string::npos);
  broken = j;
  broken["homs"]["S2,S7"] = json::array();
  CHECK(error_of([&] { form_from_json(broken); }).rfind("/homs/S2,S7", 0) == 0);
  broken = j;
  broken.erase("fibres");
  CHECK(error_of([&] { form_from_json(broken); }).find("fibres") != std::string::npos);
  broken = j;
  broken["pull"]["S2>S2:00"] = json::array({0});
  CHECK(error_of([&] { form_from_json(broken); }).rfind("/pull/S2>S2:00", 0) == 0);
}

TEST_CASE("malformed text reports the byte offset") {
  const auto msg = error_of([] { parse_text("{\"size\": 2,,}", "bad.json"); });
  CHECK(msg.rfind("bad.json: malformed JSON at byte", 0) == 0);
  CHECK_THROWS_AS(load_file("/nonexistent/file.json"), input_error);
}

TEST_CASE("order and operator round trip") {
  auto tf = top::build_top_form({1, 2});
  const auto T = top::theta_order(tf);
  CHECK(order_from_json(tf.form, to_json(tf.form, T)) == T);
  const auto C = top::theta_closure(tf);
  CHECK(operator_from_json<ClosureOperator>(tf.form, to_json(tf.form, C)) == C);
  auto bad = to_json(tf.form, C);
  bad["map"]["S2"][1] = 7;
  CHECK(error_of([&] { operator_from_json<ClosureOperator>(tf.form, bad); }).rfind("/map/S2/1", 0) == 0);
  auto short_rel = to_json(tf.form, T);
  short_rel["rel"]["S2"].erase(0);
  CHECK_THROWS_AS(order_from_json(tf.form, short_rel), input_error);
}

TEST_CASE("instance structures") {
  const auto sier = support::topo(2, {0, 2, 3});
  CHECK(to_json(sier) == json::parse(R"({"n": 2, "opens": [0, 2, 3]})"));
  CHECK(topology_from_json(to_json(sier)) == sier);
  CHECK_THROWS_AS(topology_from_json(json::parse(R"({"n": 2, "opens": [0, 1, 2, 3, 4]})")), input_error);
  CHECK_THROWS_AS(topology_from_json(json::parse(R"({"n": 2, "opens": [0, 1, 2]})")), input_error);

  const quot::Partition p({0, 0, 1});
  CHECK(to_json(p) == json::parse(R"({"n": 3, "blocks": [0, 0, 1]})"));
  CHECK(partition_from_json(to_json(p)) == p);
  CHECK_THROWS_AS(partition_from_json(json::parse(R"({"n": 3, "blocks": [1, 0, 0]})")), input_error);
  CHECK_THROWS_AS(partition_from_json(json::parse(R"({"n": 2, "blocks": [0, 0, 1]})")), input_error);

  for (const auto& g : grp::standard_corpus()) CHECK(group_from_json(to_json(g)) == g);
  CHECK(group_from_json(to_json(grp::symmetric3())).name() == "S3");
  const auto not_group = json::parse(R"({"order": 2, "cayley": [[0, 1], [1, 1]]})");
  CHECK(error_of([&] { group_from_json(not_group); }).rfind("/cayley", 0) == 0);
  CHECK_THROWS_AS(group_from_json(json::parse(R"({"order": 2, "cayley": [[0, 1], [1, 2]]})")), input_error);
}

TEST_CASE("digests") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
  CHECK(digest("ab") != digest("ba"));
}
