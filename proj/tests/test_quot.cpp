#include "catch_amalgamated.hpp"
#include "formkit/morphclass.hpp"
#include "formkit/quot.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace formkit;
using namespace formkit::quot;
using support::morphism;

namespace {

// Equivalence closure by repeated transitive steps over a boolean matrix.
Partition naive_push(const SetFunction& f, const Partition& e) {
  const auto n = f.codomain;
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t y = 0; y < n; ++y) r[y][y] = true;
  for (std::size_t a = 0; a < f.domain; ++a)
    for (std::size_t b = 0; b < f.domain; ++b)
      if (e.same(a, b)) r[f(a)][f(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  std::vector<std::size_t> blocks(n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z <= y; ++z)
      if (r[y][z]) {
        blocks[y] = z;
        break;
      }
  return Partition(blocks);
}

}  // namespace

TEST_CASE("partition counts are Bell numbers") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(enumerate_partitions(n).size() == bell[n]);
    CHECK(oracles::kernel_count(n) == bell[n]);
    CHECK(partition_lattice(n).size() == bell[n]);
  }
  CHECK(enumerate_partitions(0).size() == 1);
  CHECK_THROWS_AS(enumerate_partitions(6), input_error);
}

TEST_CASE("partition lattice bounds and refinement") {
  auto fib = partition_fibre(3);
  CHECK(fib.partitions[fib.lattice.bottom()] == Partition::singletons(3));
  CHECK(fib.partitions[fib.lattice.top()] == Partition::one_block(3));
  CHECK(verify_lattice(fib.lattice).ok());
  const Partition a({0, 0, 1}), b({0, 1, 1});
  CHECK_FALSE(a.refines(b));
  CHECK(fib.partitions[fib.lattice.join(fib.index_of(a), fib.index_of(b))] == Partition::one_block(3));
  CHECK(fib.partitions[fib.lattice.meet(fib.index_of(a), fib.index_of(b))] == Partition::singletons(3));
  CHECK_THROWS_AS(a.refines(Partition::singletons(2)), input_error);
}

TEST_CASE("canonical labelling") {
  CHECK(Partition({5, 5, 2}).blocks() == std::vector<std::size_t>{0, 0, 1});
  CHECK(Partition({1, 0, 1}) == Partition({0, 1, 0}));
  CHECK(Partition({2, 0, 1}).block_count() == 3);
  CHECK(Partition::parse({0, 1, 0}).block_count() == 2);
  CHECK_THROWS_AS(Partition::parse({1, 0, 1}), input_error);
  CHECK(Partition({0, 1, 0}).describe() == "{{02},{1}}");
}

TEST_CASE("push and pull examples") {
  const SetFunction f{3, 2, {0, 0, 1}};
  CHECK(push_partition(f, Partition::singletons(3)) == Partition::singletons(2));
  CHECK(push_partition(f, Partition({0, 1, 0})) == Partition::one_block(2));
  CHECK(pull_partition(f, Partition::singletons(2)) == Partition({0, 0, 1}));
  CHECK(pull_partition(f, Partition::one_block(2)) == Partition::one_block(3));
  const SetFunction id{3, 3, {0, 1, 2}};
  for (const auto& e : enumerate_partitions(3)) {
    CHECK(push_partition(id, e) == e);
    CHECK(pull_partition(id, e) == e);
  }
  CHECK_THROWS_AS(push_partition(f, Partition::singletons(2)), input_error);
  CHECK_THROWS_AS(pull_partition(f, Partition::singletons(3)), input_error);
}

TEST_CASE("union-find pushout agrees with matrix closure") {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n)
      for (const auto& f : top::all_functions(m, n))
        for (const auto& e : enumerate_partitions(m)) REQUIRE(push_partition(f, e) == naive_push(f, e));
}

TEST_CASE("push and pull form a Galois pair up to four points") {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto ps = enumerate_partitions(m), qs = enumerate_partitions(n);
      for (const auto& f : top::all_functions(m, n)) {
        for (const auto& e : ps)
          for (const auto& d : qs) REQUIRE(push_partition(f, e).refines(d) == e.refines(pull_partition(f, d)));
        if (f.surjective())
          for (const auto& d : qs) REQUIRE(push_partition(f, pull_partition(f, d)) == d);
      }
    }
}

TEST_CASE("union-find") {
  UnionFind uf(5);
  uf.unite(3, 4);
  uf.unite(1, 4);
  CHECK(uf.find(3) == 1);
  CHECK(uf.find(0) == 0);
  CHECK(uf.find(1) == uf.find(4));
  CHECK(uf.find(2) != uf.find(4));
}

TEST_CASE("building quotient forms") {
  auto two = build_quot_form({2});
  CHECK(two.form.fibre(0).size() == 2);
  CHECK(verify_form_laws(two.form).ok());
  auto three = build_quot_form({3});
  CHECK(three.form.fibre(0).size() == 5);
  CHECK(verify_form_laws(three.form).ok());
  auto both = build_quot_form({2, 3});
  CHECK(both.form.morphism_count() == 4 + 8 + 9 + 27);
  CHECK(verify_form_laws(both.form, 4).ok());
  CHECK(both.functions[morphism(both.form, "S3>S2:001")].values == std::vector<std::size_t>{0, 0, 1});
  CHECK_THROWS_AS(build_quot_form({3, 3}), input_error);
  CHECK_THROWS_AS(build_quot_form({6}), input_error);
  CHECK_THROWS_AS(build_quot_form({5, 4}, 100), input_error);
}

TEST_CASE("the refinement order is cohereditary") {
  auto qf = build_quot_form({1, 2, 3});
  const auto T = leq_order(qf.form);
  CHECK(check_reflects(qf.form, ReflectKind::retraction).holds);
  CHECK(is_cohereditary(qf.form, T));
  const auto r = cohereditary_operator_check(qf.form, T);
  CHECK(r.evaluated);
  CHECK(r.cohereditary);
  CHECK(r.agree());
}
