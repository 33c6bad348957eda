#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "formkit/report.hpp"

namespace formkit {

enum class BoundKind { meet, join };

/// A finite poset on the dense indices 0..size-1 given by its order matrix.
///
/// Construction never throws on a non-lattice relation so that malformed
/// descriptors can still be inspected with verify_lattice(). Meets, joins and
/// the bounds are only available when valid() holds; binary meet/join tables
/// are filled once at construction in that case.
class FiniteLattice {
 public:
  FiniteLattice() : FiniteLattice(1, std::vector<std::uint8_t>{1}) {}

  FiniteLattice(std::size_t size, std::vector<std::uint8_t> leq,
                std::vector<std::string> labels = {})
      : size_(size), leq_(std::move(leq)), labels_(std::move(labels)) {
    if (leq_.size() != size_ * size_)
      throw input_error("lattice order matrix must be size x size");
    if (!labels_.empty() && labels_.size() != size_)
      throw input_error("lattice labels must have one entry per element");
    build_tables();
  }

  template <class Pred>
  static FiniteLattice from_predicate(std::size_t size, Pred&& le,
                                      std::vector<std::string> labels = {}) {
    std::vector<std::uint8_t> m(size * size);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b) m[a * size + b] = le(a, b) ? 1 : 0;
    return FiniteLattice(size, std::move(m), std::move(labels));
  }

  /// The chain 0 < 1 < ... < size-1.
  static FiniteLattice chain(std::size_t size) {
    return from_predicate(size, [](std::size_t a, std::size_t b) { return a <= b; });
  }

  std::size_t size() const { return size_; }

  bool leq(Element a, Element b) const {
    check_index(a);
    check_index(b);
    return leq_[a * size_ + b] != 0;
  }

  /// Unchecked variant for inner loops whose indices are known to be valid.
  bool le(Element a, Element b) const { return leq_[a * size_ + b] != 0; }

  bool valid() const { return valid_; }

  Element bottom() const {
    require_valid();
    return bottom_;
  }
  Element top() const {
    require_valid();
    return top_;
  }

  Element meet(Element a, Element b) const {
    require_valid();
    check_index(a);
    check_index(b);
    return meet_[a * size_ + b];
  }
  Element join(Element a, Element b) const {
    require_valid();
    check_index(a);
    check_index(b);
    return join_[a * size_ + b];
  }

  /// Greatest lower bound (meet) or least upper bound (join) of a subset.
  /// The empty meet is top and the empty join is bottom.
  Element bound(BoundKind kind, std::span<const Element> subset) const {
    require_valid();
    Element acc = kind == BoundKind::meet ? top_ : bottom_;
    for (Element e : subset) acc = kind == BoundKind::meet ? meet(acc, e) : join(acc, e);
    return acc;
  }
  Element meet(std::span<const Element> subset) const { return bound(BoundKind::meet, subset); }
  Element join(std::span<const Element> subset) const { return bound(BoundKind::join, subset); }

  const std::vector<std::string>& labels() const { return labels_; }

  std::string label(Element a) const {
    check_index(a);
    return labels_.empty() ? std::to_string(a) : labels_[a];
  }

  const std::vector<std::uint8_t>& matrix() const { return leq_; }

  void check_index(Element a) const {
    if (a >= size_)
      throw input_error("element " + std::to_string(a) + " out of range for lattice of size " +
                        std::to_string(size_));
  }

  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
    return a.size_ == b.size_ && a.leq_ == b.leq_;
  }

 private:
  void require_valid() const {
    if (!valid_) throw input_error("relation is not a finite lattice");
  }

  bool is_partial_order() const {
    for (std::size_t a = 0; a < size_; ++a) {
      if (!le(a, a)) return false;
      for (std::size_t b = 0; b < size_; ++b) {
        if (a != b && le(a, b) && le(b, a)) return false;
        if (!le(a, b)) continue;
        for (std::size_t c = 0; c < size_; ++c)
          if (le(b, c) && !le(a, c)) return false;
      }
    }
    return true;
  }

  // Greatest element among those satisfying `below`, if it exists.
  template <class Pred>
  std::optional<Element> greatest(Pred&& keep, bool dual) const {
    std::optional<Element> best;
    for (Element c = 0; c < size_; ++c) {
      if (!keep(c)) continue;
      if (!best || (dual ? le(c, *best) : le(*best, c))) best = c;
    }
    if (!best) return std::nullopt;
    for (Element c = 0; c < size_; ++c)
      if (keep(c) && !(dual ? le(*best, c) : le(c, *best))) return std::nullopt;
    return best;
  }

  void build_tables() {
    valid_ = false;
    if (size_ == 0 || !is_partial_order()) return;
    auto bot = greatest([](Element) { return true; }, true);
    auto tp = greatest([](Element) { return true; }, false);
    if (!bot || !tp) return;
    std::vector<Element> meets(size_ * size_), joins(size_ * size_);
    for (Element a = 0; a < size_; ++a) {
      for (Element b = a; b < size_; ++b) {
        auto m = greatest([&](Element c) { return le(c, a) && le(c, b); }, false);
        auto j = greatest([&](Element c) { return le(a, c) && le(b, c); }, true);
        if (!m || !j) return;
        meets[a * size_ + b] = meets[b * size_ + a] = *m;
        joins[a * size_ + b] = joins[b * size_ + a] = *j;
      }
    }
    bottom_ = *bot;
    top_ = *tp;
    meet_ = std::move(meets);
    join_ = std::move(joins);
    valid_ = true;
  }

  std::size_t size_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<std::string> labels_;
  bool valid_ = false;
  Element bottom_ = 0;
  Element top_ = 0;
  std::vector<Element> meet_;
  std::vector<Element> join_;
};

/// Lists violated poset axioms and missing bounds; empty report means the
/// relation is a finite (hence complete) lattice.
inline Report verify_lattice(const FiniteLattice& lat) {
  Report r;
  const std::size_t n = lat.size();
  if (n == 0) {
    r.add({"nonempty", "", "", {}, "a lattice needs at least one element"});
    return r;
  }
  for (Element a = 0; a < n; ++a) {
    if (!lat.le(a, a)) r.add({"reflexive", "", "", {a}, ""});
    for (Element b = a + 1; b < n; ++b)
      if (lat.le(a, b) && lat.le(b, a)) r.add({"antisymmetric", "", "", {a, b}, ""});
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!lat.le(a, b)) continue;
      for (Element c = 0; c < n; ++c)
        if (lat.le(b, c) && !lat.le(a, c)) r.add({"transitive", "", "", {a, b, c}, ""});
    }
  if (!r.ok()) return r;

  auto count_extremal = [&](bool want_bottom) {
    std::size_t found = 0;
    for (Element c = 0; c < n; ++c) {
      bool ok = true;
      for (Element d = 0; d < n && ok; ++d) ok = want_bottom ? lat.le(c, d) : lat.le(d, c);
      found += ok ? 1 : 0;
    }
    return found;
  };
  if (count_extremal(true) != 1) r.add({"bottom", "", "", {}, "no least element"});
  if (count_extremal(false) != 1) r.add({"top", "", "", {}, "no greatest element"});

  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) {
      for (int pass = 0; pass < 2; ++pass) {
        const bool is_meet = pass == 0;
        std::vector<Element> cands;
        for (Element c = 0; c < n; ++c) {
          bool bound = is_meet ? (lat.le(c, a) && lat.le(c, b)) : (lat.le(a, c) && lat.le(b, c));
          if (bound) cands.push_back(c);
        }
        bool found = false;
        for (Element c : cands) {
          bool extremal = true;
          for (Element d : cands) extremal = extremal && (is_meet ? lat.le(d, c) : lat.le(c, d));
          found = found || extremal;
        }
        if (!found) r.add({is_meet ? "meet" : "join", "", "", {a, b}, "no bound for pair"});
      }
    }
  return r;
}

/// A map between two lattices given by its table. The lattices are
/// referenced, not owned.
struct MonotoneMap {
  std::reference_wrapper<const FiniteLattice> source;
  std::reference_wrapper<const FiniteLattice> target;
  std::vector<Element> table;

  Element operator()(Element a) const { return table.at(a); }
};

struct MonotoneCheck {
  bool monotone = true;
  std::optional<std::pair<Element, Element>> witness;  // a <= b with m(a) !<= m(b)
};

inline void check_map_shape(const MonotoneMap& m) {
  if (m.table.size() != m.source.get().size())
    throw input_error("map table size " + std::to_string(m.table.size()) +
                      " does not match source lattice size " +
                      std::to_string(m.source.get().size()));
  for (Element v : m.table) m.target.get().check_index(v);
}

inline MonotoneCheck is_monotone(const MonotoneMap& m) {
  check_map_shape(m);
  const auto& src = m.source.get();
  const auto& dst = m.target.get();
  for (Element a = 0; a < src.size(); ++a)
    for (Element b = 0; b < src.size(); ++b)
      if (src.le(a, b) && !dst.le(m.table[a], m.table[b])) return {false, std::pair{a, b}};
  return {};
}

/// A pair of maps left: P -> Q, right: Q -> P intended to be adjoint.
struct GaloisPair {
  MonotoneMap left;
  MonotoneMap right;
};

/// Every (A, B) where left(A) <= B and A <= right(B) disagree. The witness
/// elements are {A, B}.
inline Report check_galois(const GaloisPair& p) {
  if (&p.left.source.get() != &p.right.target.get() ||
      &p.left.target.get() != &p.right.source.get()) {
    if (!(p.left.source.get() == p.right.target.get()) ||
        !(p.left.target.get() == p.right.source.get()))
      throw input_error("Galois pair wiring mismatch");
  }
  check_map_shape(p.left);
  check_map_shape(p.right);
  const auto& src = p.left.source.get();
  const auto& dst = p.left.target.get();
  Report r;
  for (Element a = 0; a < src.size(); ++a)
    for (Element b = 0; b < dst.size(); ++b)
      if (dst.le(p.left.table[a], b) != src.le(a, p.right.table[b]))
        r.add({"galois", "", "", {a, b}, ""});
  return r;
}

/// The upper adjoint of a join-preserving map: B |-> join{A : left(A) <= B}.
inline std::vector<Element> right_adjoint(const FiniteLattice& src, const FiniteLattice& dst,
                                          std::span<const Element> left) {
  std::vector<Element> right(dst.size());
  for (Element b = 0; b < dst.size(); ++b) {
    Element acc = src.bottom();
    for (Element a = 0; a < src.size(); ++a)
      if (dst.le(left[a], b)) acc = src.join(acc, a);
    right[b] = acc;
  }
  return right;
}

/// The lower adjoint of a meet-preserving map: A |-> meet{B : A <= right(B)}.
inline std::vector<Element> left_adjoint(const FiniteLattice& src, const FiniteLattice& dst,
                                         std::span<const Element> right) {
  std::vector<Element> left(src.size());
  for (Element a = 0; a < src.size(); ++a) {
    Element acc = dst.top();
    for (Element b = 0; b < dst.size(); ++b)
      if (src.le(a, right[b])) acc = dst.meet(acc, b);
    left[a] = acc;
  }
  return left;
}

}  // namespace formkit
