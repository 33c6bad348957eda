#include "catch_amalgamated.hpp"
#include "formkit/form.hpp"
#include "formkit/grp.hpp"
#include "formkit/quot.hpp"
#include "formkit/top.hpp"
#include "support.hpp"

using namespace formkit;
using support::morphism;

namespace {

const top::TopForm& top12() {
  static const auto tf = top::build_top_form({1, 2});
  return tf;
}

const grp::GrpForm& z2z4s3() {
  static const auto gf = grp::build_grp_form({grp::cyclic(2), grp::cyclic(4), grp::symmetric3()});
  return gf;
}

constexpr grp::Mask kA3 = 0b011001;  // identity and the two 3-cycles

// Idempotent monoid {id, e} on one object with e o e = e; the fibre is a
// 2-chain, e pushes everything to the bottom and pulls everything to the top.
FormInstance idempotent_form(bool associative_table = true) {
  CategoryPresentation c;
  c.add_object("X");
  auto id = c.add_morphism("id", 0, 0);
  auto e = c.add_morphism("e", 0, 0);
  c.set_identity(0, id);
  c.set_composite(id, id, id);
  c.set_composite(id, e, e);
  c.set_composite(e, id, e);
  c.set_composite(e, e, associative_table ? e : id);
  return FormInstance(std::move(c), {FiniteLattice::chain(2)}, {{0, 1}, {0, 0}}, {{0, 1}, {1, 1}});
}

}  // namespace

TEST_CASE("fibres have the enumerated sizes") {
  CHECK(top12().form.fibre("S1").size() == 1);
  CHECK(top12().form.fibre("S2").size() == 4);
  CHECK(z2z4s3().form.fibre("S3").size() == 6);
  CHECK_THROWS_AS(top12().form.fibre("S9"), input_error);
}

TEST_CASE("identity push and pull") {
  const auto& F = top12().form;
  const auto id = F.base().identity(F.base().object_id("S2"));
  for (Element a = 0; a < 4; ++a) {
    CHECK(F.push(id, a) == a);
    CHECK(F.pull(id, a) == a);
    CHECK(F.leq_over(id, a, a));
  }
}

TEST_CASE("push and pull in the topological form") {
  const auto& tf = top12();
  const auto& F = tf.form;
  const auto& fib = tf.fibres[1];
  const auto disc = fib.index_of(top::FiniteTopology::discrete(2));
  const auto indisc = fib.index_of(top::FiniteTopology::indiscrete(2));
  const auto sier = support::index_of(fib, {0, 2, 3});

  CHECK(F.push(morphism(F, "S2>S2:00"), disc) == disc);
  CHECK(F.pull(morphism(F, "S2>S2:11"), sier) == indisc);

  // every f: the discrete source is below every target
  for (MorphismId f = 0; f < F.morphism_count(); ++f) {
    const auto bottom = F.dom_fibre(f).bottom();
    for (Element b = 0; b < F.cod_fibre(f).size(); ++b) CHECK(F.leq_over(f, bottom, b));
  }

  // bounds: discrete at the bottom, indiscrete at the top
  CHECK(F.bounds(1) == std::pair<Element, Element>{disc, indisc});
}

TEST_CASE("push and pull in the subgroup form") {
  const auto& gf = z2z4s3();
  const auto& F = gf.form;
  const auto sign = morphism(F, "S3>Z2:011001");
  const auto& s3 = gf.fibres[2];
  const auto& z2 = gf.fibres[0];
  CHECK(F.push(sign, s3.index_of(kA3)) == z2.index_of(1));
  CHECK(F.pull(sign, z2.index_of(1)) == s3.index_of(kA3));

  const auto incl = morphism(F, "Z2>S3:02");
  CHECK_FALSE(F.leq_over(incl, z2.index_of(0b11), s3.index_of(kA3)));
  CHECK(F.leq_over(incl, z2.index_of(0b11), s3.index_of(0b000101)));

  const auto [lo, hi] = F.bounds(2);
  CHECK(s3.subgroups[lo] == 1);
  CHECK(s3.subgroups[hi] == 0b111111);
}

TEST_CASE("partition form bounds") {
  auto qf = quot::build_quot_form({3});
  const auto [lo, hi] = qf.form.bounds(0);
  CHECK(qf.fibres[0].partitions[lo] == quot::Partition::singletons(3));
  CHECK(qf.fibres[0].partitions[hi] == quot::Partition::one_block(3));
}

TEST_CASE("verify_form_laws on built forms") {
  CHECK(verify_form_laws(top12().form).ok());
  CHECK(verify_form_laws(z2z4s3().form, 4).ok());
  CHECK(verify_form_laws(idempotent_form()).ok());
}

TEST_CASE("a swapped push table is reported as a Galois failure") {
  auto F = top::build_top_form({2}).form;
  const auto f = morphism(F, "S2>S2:01");
  auto& push = F.mutable_push_table(f);
  std::swap(push[0], push[3]);
  auto r = verify_form_laws(F);
  REQUIRE(r.has("galois"));
  for (const auto& v : r.violations)
    if (v.law == "galois") {
      CHECK(v.morphism == "S2>S2:01");
      CHECK_THROWS_AS(F.leq_over(f, v.elements[0], v.elements[1]), corrupted_form_error);
    }
}

TEST_CASE("category defects are reported") {
  // e o e = id is a valid category, but push and pull no longer compose
  auto bad = idempotent_form(false);
  CHECK(verify_category(bad.base()).ok());
  CHECK(verify_form_laws(bad).has("functor-push"));

  CategoryPresentation m;
  m.add_object("X");
  const auto id = m.add_morphism("id", 0, 0), a = m.add_morphism("a", 0, 0), b = m.add_morphism("b", 0, 0);
  m.set_identity(0, id);
  for (auto x : {id, a, b}) {
    m.set_composite(id, x, x);
    m.set_composite(x, id, x);
  }
  m.set_composite(a, a, b);
  m.set_composite(a, b, a);
  m.set_composite(b, a, b);
  m.set_composite(b, b, b);
  CHECK(verify_category(m).has("associativity"));

  CategoryPresentation c;
  c.add_object("X");
  c.add_morphism("f", 0, 0);
  CHECK(verify_category(c).has("identity-missing"));
  CHECK_THROWS_AS(c.add_object("X"), input_error);
  CHECK_THROWS_AS(c.add_morphism("g", 0, 3), input_error);
}

TEST_CASE("form construction rejects malformed tables") {
  CategoryPresentation c;
  c.add_object("X");
  c.set_identity(0, c.add_morphism("id", 0, 0));
  c.set_composite(0, 0, 0);
  CHECK_THROWS_AS(FormInstance(c, {}, {{0}}, {{0}}), input_error);
  CHECK_THROWS_AS(FormInstance(c, {FiniteLattice::chain(2)}, {{0}}, {{0, 1}}), input_error);
  CHECK_THROWS_AS(FormInstance(c, {FiniteLattice::chain(2)}, {{0, 2}}, {{0, 1}}), input_error);
}

TEST_CASE("morphism kinds") {
  const auto& F = top12().form;
  auto id = morphism_kind(F.base(), F.base().identity(0));
  CHECK(id.is_iso);
  auto collapse = morphism_kind(F.base(), morphism(F, "S2>S1:00"));
  CHECK(collapse.is_retraction);
  CHECK_FALSE(collapse.is_section);
  auto point = morphism_kind(F.base(), morphism(F, "S1>S2:1"));
  CHECK(point.is_section);
  CHECK_FALSE(point.is_retraction);
  auto swap = morphism_kind(F.base(), morphism(F, "S2>S2:10"));
  REQUIRE(swap.is_iso);
  CHECK(*swap.inverse == morphism(F, "S2>S2:10"));

  const auto& G = z2z4s3().form;
  auto sign = morphism_kind(G.base(), morphism(G, "S3>Z2:011001"));
  CHECK(sign.is_retraction);
  CHECK_FALSE(sign.is_section);
  CHECK(G.base().compose(morphism(G, "S3>Z2:011001"), morphism(G, "Z2>S3:02")) ==
        std::optional{G.base().identity(0)});
}

TEST_CASE("lifting equalities and reflection") {
  CHECK(verify_lifting_iso_laws(top12().form).ok());
  CHECK(check_reflects(top12().form, ReflectKind::section).holds);
  CHECK(check_reflects(top12().form, ReflectKind::iso).holds);

  // subgroup form: surjective homs recover every subgroup from its preimage
  const auto& gf = z2z4s3();
  bool oracle = true;
  for (MorphismId f = 0; f < gf.form.morphism_count(); ++f) {
    if (!morphism_kind(gf.form.base(), f).is_retraction) continue;
    const auto& h = gf.homs[f];
    for (auto b : gf.fibres[h.target].subgroups) oracle = oracle && grp::image(h.values, grp::preimage(h.values, b)) == b;
  }
  CHECK(oracle);
  CHECK(check_reflects(gf.form, ReflectKind::retraction).holds == oracle);

  auto qf = quot::build_quot_form({2, 3});
  const auto& Q = qf.form;
  const auto r = morphism(Q, "S3>S2:001");
  for (Element d = 0; d < 2; ++d) CHECK(Q.push(r, Q.pull(r, d)) == d);
  CHECK(check_reflects(Q, ReflectKind::retraction).holds);
  CHECK(verify_lifting_iso_laws(Q).ok() == check_reflects(Q, ReflectKind::section).holds);
}

TEST_CASE("thickness") {
  const auto& tf = top12();
  const auto& F = tf.form;
  CHECK(F.is_thick(F.base().identity(1)));
  CHECK(F.is_thick(morphism(F, "S2>S2:10")));
  CHECK(F.is_thick(morphism(F, "S2>S1:00")));
  // all preimages under a point inclusion are empty or everything, so the
  // final topology is discrete, not indiscrete
  const auto pt = morphism(F, "S1>S2:0");
  CHECK(F.push(pt, 0) == tf.fibres[1].index_of(top::FiniteTopology::discrete(2)));
  CHECK_FALSE(F.is_thick(pt));
}

TEST_CASE("push preserves joins and pull preserves meets") {
  for (const FormInstance* F : {&top12().form, &z2z4s3().form}) {
    for (MorphismId f = 0; f < F->morphism_count(); ++f) {
      const auto& src = F->dom_fibre(f);
      const auto& dst = F->cod_fibre(f);
      for (Element a = 0; a < src.size(); ++a)
        for (Element b = 0; b < src.size(); ++b)
          REQUIRE(F->push(f, src.join(a, b)) == dst.join(F->push(f, a), F->push(f, b)));
      for (Element a = 0; a < dst.size(); ++a)
        for (Element b = 0; b < dst.size(); ++b)
          REQUIRE(F->pull(f, dst.meet(a, b)) == src.meet(F->pull(f, a), F->pull(f, b)));
      REQUIRE(F->push(f, src.bottom()) == dst.bottom());
      REQUIRE(F->pull(f, dst.top()) == src.top());
    }
  }
}

TEST_CASE("functoriality checked directly") {
  const auto& F = z2z4s3().form;
  const auto& c = F.base();
  for (MorphismId f = 0; f < F.morphism_count(); ++f)
    for (MorphismId g : c.out_of(c.morphism(f).cod)) {
      const auto gf = c.compose_or_throw(g, f);
      for (Element a = 0; a < F.dom_fibre(f).size(); ++a) REQUIRE(F.push(g, F.push(f, a)) == F.push(gf, a));
      for (Element b = 0; b < F.cod_fibre(g).size(); ++b) REQUIRE(F.pull(f, F.pull(g, b)) == F.pull(gf, b));
    }
}
