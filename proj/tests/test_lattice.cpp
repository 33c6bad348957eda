#include <array>
#include <set>

#include "catch_amalgamated.hpp"
#include "formkit/lattice.hpp"
#include "formkit/top.hpp"
#include "formkit/grp.hpp"
#include "support.hpp"

using namespace formkit;

namespace {

FiniteLattice antichain2() { return FiniteLattice(2, {1, 0, 0, 1}); }

// diamond 0 < 1,2,3 < 4
FiniteLattice m3() {
  return FiniteLattice::from_predicate(5, [](Element a, Element b) {
    return a == b || a == 0 || b == 4;
  });
}

void check_bounds_by_triple_loop(const FiniteLattice& l) {
  const auto n = l.size();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      const Element m = l.meet(a, b), j = l.join(a, b);
      REQUIRE(l.le(m, a));
      REQUIRE(l.le(m, b));
      REQUIRE(l.le(a, j));
      REQUIRE(l.le(b, j));
      for (Element c = 0; c < n; ++c) {
        if (l.le(c, a) && l.le(c, b)) REQUIRE(l.le(c, m));
        if (l.le(a, c) && l.le(b, c)) REQUIRE(l.le(j, c));
      }
    }
}

// topology generated by a family of open sets, by naive closure
std::uint32_t generated_family(std::size_t n, std::uint32_t fam) {
  const top::Subset full = top::FiniteTopology::full(n);
  fam |= 1u | (1u << full);
  bool grew = true;
  while (grew) {
    grew = false;
    for (top::Subset a = 0; a <= full; ++a)
      for (top::Subset b = 0; b <= full; ++b) {
        if (!((fam >> a) & 1u) || !((fam >> b) & 1u)) continue;
        for (top::Subset c : {a | b, a & b})
          if (!((fam >> c) & 1u)) {
            fam |= 1u << c;
            grew = true;
          }
      }
  }
  return fam;
}

}  // namespace

TEST_CASE("chain order and reflexivity") {
  auto c = FiniteLattice::chain(3);
  CHECK(c.leq(0, 2));
  CHECK_FALSE(c.leq(2, 0));
  for (Element a = 0; a < 3; ++a) CHECK(c.leq(a, a));
  CHECK(c.bottom() == 0);
  CHECK(c.top() == 2);
  CHECK_THROWS_AS(c.leq(0, 3), input_error);
}

TEST_CASE("empty and singleton bounds") {
  auto l = m3();
  REQUIRE(l.valid());
  std::vector<Element> none;
  CHECK(l.meet(none) == l.top());
  CHECK(l.join(none) == l.bottom());
  std::vector<Element> one{2};
  CHECK(l.join(one) == 2);
  CHECK(l.meet(one) == 2);
  std::vector<Element> pair{1, 2};
  CHECK(l.meet(pair) == 0);
  CHECK(l.join(pair) == 4);
}

TEST_CASE("bound is associative in sets") {
  auto l = m3();
  const auto n = l.size();
  for (unsigned s = 0; s < (1u << n); ++s)
    for (unsigned t = 0; t < (1u << n); ++t) {
      std::vector<Element> S, T, U;
      for (Element e = 0; e < n; ++e) {
        if ((s >> e) & 1u) S.push_back(e);
        if ((t >> e) & 1u) T.push_back(e);
        if (((s | t) >> e) & 1u) U.push_back(e);
      }
      CHECK(l.meet(U) == l.meet(l.meet(S), l.meet(T)));
      CHECK(l.join(U) == l.join(l.join(S), l.join(T)));
    }
}

TEST_CASE("verify_lattice accepts lattices and rejects antichains") {
  CHECK(verify_lattice(FiniteLattice::chain(2)).ok());
  CHECK(verify_lattice(m3()).ok());
  auto r = verify_lattice(antichain2());
  CHECK(r.has("bottom"));
  CHECK(r.has("top"));
  CHECK_FALSE(antichain2().valid());
  CHECK_THROWS_AS(antichain2().top(), input_error);

  // a cycle 0 <= 1 <= 0
  auto cyc = FiniteLattice(2, {1, 1, 1, 1});
  CHECK(verify_lattice(cyc).has("antisymmetric"));

  // two maximal upper bounds for {1, 2}: 0 < 1,2 < 3,4 < 5
  auto bowtie = FiniteLattice::from_predicate(6, [](Element a, Element b) {
    if (a == b || a == 0 || b == 5) return true;
    return (a == 1 || a == 2) && (b == 3 || b == 4);
  });
  CHECK(verify_lattice(bowtie).has("join"));
  CHECK(verify_lattice(bowtie).has("meet"));
}

TEST_CASE("meet and join agree with triple loops on instance lattices") {
  check_bounds_by_triple_loop(FiniteLattice::chain(4));
  check_bounds_by_triple_loop(m3());
  for (std::size_t n = 1; n <= 3; ++n) check_bounds_by_triple_loop(top::topology_fibre(n).lattice);
  auto s3 = grp::subgroups(grp::symmetric3());
  CHECK(s3.lattice.size() == 6);
  CHECK(verify_lattice(s3.lattice).ok());
  check_bounds_by_triple_loop(s3.lattice);
}

TEST_CASE("topology fibre order is reverse inclusion") {
  auto fib = top::topology_fibre(2);
  const auto disc = fib.index_of(top::FiniteTopology::discrete(2));
  const auto sier = support::index_of(fib, {0, 2, 3});
  CHECK(fib.lattice.leq(disc, sier));
  CHECK_FALSE(fib.lattice.leq(sier, disc));
}

TEST_CASE("meet in the 3-point topology fibre is the generated topology") {
  auto fib = top::topology_fibre(3);
  REQUIRE(fib.topologies.size() == 29);
  for (Element a = 0; a < 29; ++a)
    for (Element b = 0; b < 29; ++b) {
      const auto fam = generated_family(3, fib.topologies[a].family() | fib.topologies[b].family());
      CHECK(fib.topologies[fib.lattice.meet(a, b)].family() == fam);
      CHECK(fib.topologies[fib.lattice.join(a, b)].family() ==
            (fib.topologies[a].family() & fib.topologies[b].family()));
    }
}

TEST_CASE("monotone maps") {
  auto l = m3();
  std::vector<Element> id{0, 1, 2, 3, 4};
  CHECK(is_monotone({l, l, id}).monotone);
  CHECK(is_monotone({l, l, std::vector<Element>(5, 0)}).monotone);
  auto bad = is_monotone({l, l, {4, 1, 2, 3, 0}});
  CHECK_FALSE(bad.monotone);
  REQUIRE(bad.witness);
  CHECK(l.le(bad.witness->first, bad.witness->second));
  CHECK_THROWS_AS(is_monotone({l, l, {0, 1}}), input_error);

  auto fib = top::topology_fibre(2);
  std::vector<Element> theta;
  for (const auto& t : fib.topologies) theta.push_back(fib.index_of(top::theta_topology(t)));
  CHECK(is_monotone({fib.lattice, fib.lattice, theta}).monotone);
}

TEST_CASE("Galois pairs") {
  auto l = m3();
  std::vector<Element> id{0, 1, 2, 3, 4};
  CHECK(check_galois({{l, l, id}, {l, l, id}}).ok());

  auto c2 = FiniteLattice::chain(2);
  auto r = check_galois({{c2, c2, {1, 1}}, {c2, c2, {0, 1}}});
  // only A = B = bottom disagrees: top <= bottom fails while bottom <= bottom holds
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].elements == std::vector<Element>{0, 0});

  auto c3 = FiniteLattice::chain(3);
  CHECK_THROWS_AS(check_galois({{c2, c3, {0, 1}}, {c2, c2, {0, 1}}}), input_error);
}

TEST_CASE("final and initial topologies form Galois pairs between 2-point sets") {
  auto fib = top::topology_fibre(2);
  for (const auto& f : top::all_functions(2, 2)) {
    std::vector<Element> push, pull;
    for (const auto& t : fib.topologies) push.push_back(fib.index_of(top::final_topology(f, t)));
    for (const auto& t : fib.topologies) pull.push_back(fib.index_of(top::initial_topology(f, t)));
    CHECK(check_galois({{fib.lattice, fib.lattice, push}, {fib.lattice, fib.lattice, pull}}).ok());
  }
}

TEST_CASE("adjoints of join-preserving maps") {
  auto l = m3();
  auto c2 = FiniteLattice::chain(2);
  // 0 stays at the bottom, every atom and the top go to the top
  std::vector<Element> left{0, 1, 1, 1, 1};
  auto right = right_adjoint(l, c2, left);
  CHECK(right == std::vector<Element>{0, 4});
  REQUIRE(check_galois({{l, c2, left}, {c2, l, right}}).ok());
  CHECK(left_adjoint(l, c2, right) == left);
  for (Element a = 0; a < 5; ++a)
    for (Element b = 0; b < 5; ++b) CHECK(left[l.join(a, b)] == c2.join(left[a], left[b]));
  for (Element a = 0; a < 2; ++a)
    for (Element b = 0; b < 2; ++b) CHECK(right[c2.meet(a, b)] == l.meet(right[a], right[b]));
}
