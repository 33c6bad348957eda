#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "formkit/form.hpp"
#include "formkit/top.hpp"

/// The quotient form over finite sets: fibres are partition lattices ordered
/// by refinement, push is the pushout and pull the kernel of the composite.
namespace formkit::quot {

using top::SetFunction;

inline constexpr std::size_t kMaxPoints = 5;

/// A partition as block ids per point, labelled by first occurrence.
class Partition {
 public:
  Partition() = default;

  /// Relabels arbitrary block ids canonically.
  explicit Partition(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) { canonicalize(); }

  static Partition singletons(std::size_t n) {
    std::vector<std::size_t> b(n);
    std::iota(b.begin(), b.end(), std::size_t{0});
    return Partition(std::move(b));
  }
  static Partition one_block(std::size_t n) { return Partition(std::vector<std::size_t>(n, 0)); }

  /// Throws unless the ids are already canonical.
  static Partition parse(std::vector<std::size_t> blocks) {
    Partition p(blocks);
    if (p.blocks_ != blocks) throw input_error("partition block ids are not in first-occurrence form");
    return p;
  }

  std::size_t size() const { return blocks_.size(); }
  std::size_t block(std::size_t x) const { return blocks_.at(x); }
  const std::vector<std::size_t>& blocks() const { return blocks_; }
  std::size_t block_count() const {
    return blocks_.empty() ? 0 : *std::max_element(blocks_.begin(), blocks_.end()) + 1;
  }
  bool same(std::size_t a, std::size_t b) const { return blocks_.at(a) == blocks_.at(b); }

  /// Every block of *this lies inside a block of `other`.
  bool refines(const Partition& other) const {
    if (other.size() != size()) throw input_error("partitions of different sets");
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = a + 1; b < size(); ++b)
        if (same(a, b) && !other.same(a, b)) return false;
    return true;
  }

  std::string describe() const {
    std::string s = "{";
    for (std::size_t k = 0; k < block_count(); ++k) {
      s += k ? ",{" : "{";
      for (std::size_t x = 0; x < size(); ++x)
        if (blocks_[x] == k) s += std::to_string(x);
      s += "}";
    }
    return s + "}";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  void canonicalize() {
    std::vector<std::size_t> seen;
    for (auto& b : blocks_) {
      auto it = std::find(seen.begin(), seen.end(), b);
      if (it == seen.end()) {
        seen.push_back(b);
        b = seen.size() - 1;
      } else {
        b = static_cast<std::size_t>(it - seen.begin());
      }
    }
  }

  std::vector<std::size_t> blocks_;
};

inline void check_points(std::size_t n) {
  if (n > kMaxPoints)
    throw input_error("partition lattices are capped at " + std::to_string(kMaxPoints) + " points");
}

/// Restricted growth strings of length n in lexicographic order.
inline std::vector<Partition> enumerate_partitions(std::size_t n) {
  check_points(n);
  std::vector<Partition> out;
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_used) -> void {
    if (i == n) {
      out.push_back(Partition(rgs));
      return;
    }
    for (std::size_t b = 0; b <= max_used + 1 && b <= i; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(max_used, b));
    }
  };
  if (n == 0) return {Partition()};
  rgs[0] = 0;
  rec(rec, 1, 0);
  return out;
}

struct PartitionFibre {
  std::size_t points = 0;
  std::vector<Partition> partitions;
  FiniteLattice lattice;

  std::size_t index_of(const Partition& p) const {
    auto it = std::find(partitions.begin(), partitions.end(), p);
    if (it == partitions.end()) throw input_error("partition is not on " + std::to_string(points) + " points");
    return static_cast<std::size_t>(it - partitions.begin());
  }
};

inline PartitionFibre partition_fibre(std::size_t n) {
  PartitionFibre f{n, enumerate_partitions(n), {}};
  std::vector<std::string> labels;
  for (const auto& p : f.partitions) labels.push_back(p.describe());
  const auto& ps = f.partitions;
  f.lattice = FiniteLattice::from_predicate(
      ps.size(), [&](std::size_t a, std::size_t b) { return ps[a].refines(ps[b]); }, std::move(labels));
  return f;
}

inline FiniteLattice partition_lattice(std::size_t n) { return partition_fibre(n).lattice; }

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Smallest equivalence on the codomain identifying f(a) and f(b) whenever
/// a and b share a block of e.
inline Partition push_partition(const SetFunction& f, const Partition& e) {
  f.validate();
  if (e.size() != f.domain) throw input_error("partition size does not match the function domain");
  UnionFind uf(f.codomain);
  std::vector<std::size_t> rep(e.block_count(), f.codomain);
  for (std::size_t a = 0; a < f.domain; ++a) {
    auto& r = rep[e.block(a)];
    if (r == f.codomain) r = f(a);
    else uf.unite(r, f(a));
  }
  std::vector<std::size_t> b(f.codomain);
  for (std::size_t y = 0; y < f.codomain; ++y) b[y] = uf.find(y);
  return Partition(std::move(b));
}

/// a ~ b iff f(a) and f(b) share a block of d.
inline Partition pull_partition(const SetFunction& f, const Partition& d) {
  f.validate();
  if (d.size() != f.codomain) throw input_error("partition size does not match the function codomain");
  std::vector<std::size_t> b(f.domain);
  for (std::size_t a = 0; a < f.domain; ++a) b[a] = d.block(f(a));
  return Partition(std::move(b));
}

struct QuotForm {
  FormInstance form;
  std::vector<std::size_t> sizes;
  std::vector<PartitionFibre> fibres;
  std::vector<SetFunction> functions;  // per morphism
};

inline constexpr std::size_t kDefaultMorphismBudget = 2000;

/// Objects are finite sets of the given (distinct) sizes, morphisms all
/// functions between them.
inline QuotForm build_quot_form(const std::vector<std::size_t>& sizes,
                                std::size_t morphism_budget = kDefaultMorphismBudget) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    check_points(sizes[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (sizes[i] == sizes[j]) throw input_error("duplicate carrier size " + std::to_string(sizes[i]));
  }
  for (auto m : sizes)
    for (auto n : sizes) {
      std::size_t c = 1;
      for (std::size_t i = 0; i < m; ++i) c *= n;
      total += c;
    }
  if (total > morphism_budget)
    throw input_error("quotient form would have " + std::to_string(total) +
                      " morphisms, above the budget of " + std::to_string(morphism_budget));

  QuotForm qf;
  qf.sizes = sizes;
  CategoryPresentation cat;
  for (auto n : sizes) {
    cat.add_object("S" + std::to_string(n));
    qf.fibres.push_back(partition_fibre(n));
  }
  // first morphism id of each (dom, cod) block; within it, ids follow the
  // lexicographic rank of the value table
  std::vector<std::vector<MorphismId>> first(sizes.size(), std::vector<MorphismId>(sizes.size()));
  std::vector<std::vector<Element>> push, pull;
  for (std::size_t x = 0; x < sizes.size(); ++x)
    for (std::size_t y = 0; y < sizes.size(); ++y) {
      first[x][y] = cat.morphism_count();
      for (auto& f : top::all_functions(sizes[x], sizes[y])) {
        cat.add_morphism(top::function_name(f), x, y);
        std::vector<Element> ps, pl;
        for (const auto& e : qf.fibres[x].partitions) ps.push_back(qf.fibres[y].index_of(push_partition(f, e)));
        for (const auto& d : qf.fibres[y].partitions) pl.push_back(qf.fibres[x].index_of(pull_partition(f, d)));
        push.push_back(std::move(ps));
        pull.push_back(std::move(pl));
        qf.functions.push_back(std::move(f));
      }
    }
  auto rank = [&](std::size_t x, std::size_t y, const std::vector<std::size_t>& v) {
    std::size_t r = 0;
    for (auto d : v) r = r * sizes[y] + d;
    return first[x][y] + r;
  };
  for (std::size_t x = 0; x < sizes.size(); ++x) {
    std::vector<std::size_t> id(sizes[x]);
    std::iota(id.begin(), id.end(), std::size_t{0});
    cat.set_identity(x, rank(x, x, id));
  }
  for (MorphismId f = 0; f < cat.morphism_count(); ++f) {
    const auto x = cat.morphism(f).dom, y = cat.morphism(f).cod;
    for (MorphismId g : std::vector<MorphismId>(cat.out_of(y))) {
      const auto z = cat.morphism(g).cod;
      std::vector<std::size_t> v(sizes[x]);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = qf.functions[g](qf.functions[f](i));
      cat.set_composite(g, f, rank(x, z, v));
    }
  }
  std::vector<FiniteLattice> lattices;
  for (const auto& fib : qf.fibres) lattices.push_back(fib.lattice);
  qf.form = FormInstance(std::move(cat), std::move(lattices), std::move(push), std::move(pull));
  return qf;
}

}  // namespace formkit::quot
