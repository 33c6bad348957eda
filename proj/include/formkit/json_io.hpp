#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "formkit/form.hpp"
#include "formkit/grp.hpp"
#include "formkit/quot.hpp"
#include "formkit/top.hpp"
#include "formkit/topogenous.hpp"

/// Reading and writing the JSON descriptors of lattices, forms, orders,
/// operators and the instance structures. Every schema error raises
/// input_error carrying a JSON pointer to the offending value.
namespace formkit::json_io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw input_error((path.empty() ? "/" : path) + ": " + what);
}

inline std::string escape(const std::string& key) {
  std::string s;
  for (char c : key) {
    if (c == '~') s += "~0";
    else if (c == '/') s += "~1";
    else s += c;
  }
  return s;
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

inline const json& object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline std::size_t index(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline bool flag(const json& j, const std::string& path) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v == 0 || v == 1) return v == 1;
  }
  fail(path, "expected a boolean (or 0/1)");
}

inline std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<std::size_t> indices(const json& j, const std::string& path) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < array(j, path).size(); ++i)
    v.push_back(index(j[i], path + "/" + std::to_string(i)));
  return v;
}

inline std::vector<std::vector<bool>> matrix(const json& j, std::size_t n, const std::string& path) {
  if (array(j, path).size() != n) fail(path, "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    const auto rp = path + "/" + std::to_string(a);
    if (array(j[a], rp).size() != n) fail(rp, "expected " + std::to_string(n) + " columns");
    for (std::size_t b = 0; b < n; ++b) m[a][b] = flag(j[a][b], rp + "/" + std::to_string(b));
  }
  return m;
}

inline std::pair<std::string, std::string> split_pair(const std::string& key, const std::string& path) {
  const auto comma = key.find(',');
  if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos)
    fail(path, "key '" + key + "' must have the form \"a,b\"");
  return {key.substr(0, comma), key.substr(comma + 1)};
}

}  // namespace detail

inline json parse_text(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json load_file(const std::string& path) { return parse_text(read_file(path), path); }

inline void save_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << j.dump(1) << '\n';
}

/// FNV-1a, 64 bit, as 16 hex digits.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return s;
}

// ---------------------------------------------------------------------------
// lattices

inline json to_json(const FiniteLattice& l) {
  json leq = json::array();
  for (Element a = 0; a < l.size(); ++a) {
    json row = json::array();
    for (Element b = 0; b < l.size(); ++b) row.push_back(l.le(a, b));
    leq.push_back(std::move(row));
  }
  json j = {{"size", l.size()}, {"leq", std::move(leq)}};
  if (!l.labels().empty()) j["labels"] = l.labels();
  return j;
}

/// Accepts any square relation; whether it is a lattice is left to
/// verify_lattice().
inline FiniteLattice lattice_from_json(const json& j, const std::string& path = "") {
  const auto n = detail::index(detail::field(j, "size", path), path + "/size");
  if (n == 0) detail::fail(path + "/size", "a lattice needs at least one element");
  const auto m = detail::matrix(detail::field(j, "leq", path), n, path + "/leq");
  std::vector<std::uint8_t> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = m[a][b] ? 1 : 0;
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    const auto lp = path + "/labels";
    if (detail::array(*it, lp).size() != n) detail::fail(lp, "expected one label per element");
    for (std::size_t i = 0; i < n; ++i) labels.push_back(detail::text((*it)[i], lp + "/" + std::to_string(i)));
  }
  return FiniteLattice(n, std::move(flat), std::move(labels));
}

// ---------------------------------------------------------------------------
// forms

inline json to_json(const FormInstance& F) {
  const auto& c = F.base();
  json objects = json::array();
  for (ObjectId x = 0; x < c.object_count(); ++x) objects.push_back(c.object_name(x));
  json homs = json::object();
  for (ObjectId x = 0; x < c.object_count(); ++x)
    for (ObjectId y = 0; y < c.object_count(); ++y) {
      const auto hs = c.hom(x, y);
      if (hs.empty()) continue;
      json names = json::array();
      for (auto f : hs) names.push_back(c.morphism(f).name);
      homs[c.object_name(x) + "," + c.object_name(y)] = std::move(names);
    }
  json compose = json::object();
  for (const auto& [g, f, h] : c.composites())
    compose[c.morphism(g).name + "," + c.morphism(f).name] = c.morphism(h).name;
  json identities = json::object();
  for (ObjectId x = 0; x < c.object_count(); ++x)
    identities[c.object_name(x)] = c.morphism(c.identity(x)).name;
  json fibres = json::object();
  for (ObjectId x = 0; x < c.object_count(); ++x) fibres[c.object_name(x)] = to_json(F.fibre(x));
  json push = json::object(), pull = json::object();
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    push[c.morphism(f).name] = F.push_table(f);
    pull[c.morphism(f).name] = F.pull_table(f);
  }
  return {{"objects", std::move(objects)}, {"homs", std::move(homs)},       {"compose", std::move(compose)},
          {"identities", std::move(identities)}, {"fibres", std::move(fibres)}, {"push", std::move(push)},
          {"pull", std::move(pull)}};
}

/// Morphism ids follow the "homs" keys in sorted order, then list order.
/// Shape errors are reported with their location; law violations are left
/// to verify_form_laws().
inline FormInstance form_from_json(const json& j, const std::string& path = "") {
  using namespace detail;
  CategoryPresentation cat;
  const auto op = path + "/objects";
  const auto& objs = array(field(j, "objects", path), op);
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const auto name = text(objs[i], op + "/" + std::to_string(i));
    try {
      cat.add_object(name);
    } catch (const input_error& e) {
      fail(op + "/" + std::to_string(i), e.what());
    }
  }
  auto object_at = [&](const std::string& name, const std::string& p) {
    try {
      return cat.object_id(name);
    } catch (const input_error&) {
      fail(p, "unknown object '" + name + "'");
    }
  };
  auto morphism_at = [&](const std::string& name, const std::string& p) {
    try {
      return cat.morphism_id(name);
    } catch (const input_error&) {
      fail(p, "unknown morphism '" + name + "'");
    }
  };

  const auto hp = path + "/homs";
  for (const auto& [key, names] : object(field(j, "homs", path), hp).items()) {
    const auto kp = hp + "/" + escape(key);
    const auto [xs, ys] = split_pair(key, kp);
    const auto x = object_at(xs, kp), y = object_at(ys, kp);
    for (std::size_t i = 0; i < array(names, kp).size(); ++i) {
      const auto ip = kp + "/" + std::to_string(i);
      try {
        cat.add_morphism(text(names[i], ip), x, y);
      } catch (const input_error& e) {
        fail(ip, e.what());
      }
    }
  }
  const auto ip = path + "/identities";
  for (const auto& [key, name] : object(field(j, "identities", path), ip).items()) {
    const auto kp = ip + "/" + escape(key);
    const auto x = object_at(key, kp);
    try {
      cat.set_identity(x, morphism_at(text(name, kp), kp));
    } catch (const input_error& e) {
      fail(kp, e.what());
    }
  }
  const auto cp = path + "/compose";
  for (const auto& [key, name] : object(field(j, "compose", path), cp).items()) {
    const auto kp = cp + "/" + escape(key);
    const auto [gs, fs] = split_pair(key, kp);
    try {
      cat.set_composite(morphism_at(gs, kp), morphism_at(fs, kp), morphism_at(text(name, kp), kp));
    } catch (const input_error& e) {
      fail(kp, e.what());
    }
  }

  std::vector<FiniteLattice> fibres;
  const auto fp = path + "/fibres";
  const auto& fib = object(field(j, "fibres", path), fp);
  for (ObjectId x = 0; x < cat.object_count(); ++x) {
    const auto& name = cat.object_name(x);
    fibres.push_back(lattice_from_json(field(fib, name, fp), fp + "/" + escape(name)));
  }
  std::vector<std::vector<Element>> push, pull;
  const auto pp = path + "/push", qp = path + "/pull";
  const auto& pj = object(field(j, "push", path), pp);
  const auto& qj = object(field(j, "pull", path), qp);
  for (MorphismId f = 0; f < cat.morphism_count(); ++f) {
    const auto& m = cat.morphism(f);
    const auto mp = "/" + escape(m.name);
    auto p = indices(field(pj, m.name, pp), pp + mp);
    auto q = indices(field(qj, m.name, qp), qp + mp);
    if (p.size() != fibres[m.dom].size()) fail(pp + mp, "push table needs one entry per domain fibre element");
    if (q.size() != fibres[m.cod].size()) fail(qp + mp, "pull table needs one entry per codomain fibre element");
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] >= fibres[m.cod].size()) fail(pp + mp + "/" + std::to_string(i), "index outside the codomain fibre");
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i] >= fibres[m.dom].size()) fail(qp + mp + "/" + std::to_string(i), "index outside the domain fibre");
    push.push_back(std::move(p));
    pull.push_back(std::move(q));
  }
  return FormInstance(std::move(cat), std::move(fibres), std::move(push), std::move(pull));
}

// ---------------------------------------------------------------------------
// orders and operators

inline json to_json(const FormInstance& F, const TopogenousOrder& T) {
  check_order_shape(F, T);
  json rel = json::object();
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto n = F.fibre(x).size();
    json m = json::array();
    for (Element a = 0; a < n; ++a) {
      json row = json::array();
      for (Element b = 0; b < n; ++b) row.push_back(T.rel[x](a, b));
      m.push_back(std::move(row));
    }
    rel[F.object_name(x)] = std::move(m);
  }
  return {{"rel", std::move(rel)}};
}

inline TopogenousOrder order_from_json(const FormInstance& F, const json& j, const std::string& path = "") {
  using namespace detail;
  TopogenousOrder t;
  const auto rp = path + "/rel";
  const auto& rel = object(field(j, "rel", path), rp);
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& name = F.object_name(x);
    const auto n = F.fibre(x).size();
    const auto m = matrix(field(rel, name, rp), n, rp + "/" + escape(name));
    Relation r(n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (m[a][b]) r.set(a, b);
    t.rel.push_back(std::move(r));
  }
  return t;
}

inline json to_json(const FormInstance& F, const FibreMaps& op) {
  check_maps_shape(F, op);
  json map = json::object();
  for (ObjectId x = 0; x < F.object_count(); ++x) map[F.object_name(x)] = op.map[x];
  return {{"map", std::move(map)}};
}

template <class Op>
Op operator_from_json(const FormInstance& F, const json& j, const std::string& path = "") {
  using namespace detail;
  Op op;
  const auto mp = path + "/map";
  const auto& map = object(field(j, "map", path), mp);
  for (ObjectId x = 0; x < F.object_count(); ++x) {
    const auto& name = F.object_name(x);
    const auto xp = mp + "/" + escape(name);
    auto v = indices(field(map, name, mp), xp);
    if (v.size() != F.fibre(x).size()) fail(xp, "expected one entry per fibre element");
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] >= F.fibre(x).size()) fail(xp + "/" + std::to_string(i), "index outside the fibre");
    op.map.push_back(std::move(v));
  }
  return op;
}

// ---------------------------------------------------------------------------
// instance structures

inline json to_json(const top::FiniteTopology& t) {
  return {{"n", t.points()}, {"opens", t.open_sets()}};
}

inline top::FiniteTopology topology_from_json(const json& j, const std::string& path = "") {
  using namespace detail;
  const auto n = index(field(j, "n", path), path + "/n");
  if (n > top::kMaxPoints) fail(path + "/n", "at most " + std::to_string(top::kMaxPoints) + " points");
  std::vector<top::Subset> opens;
  const auto op = path + "/opens";
  for (auto v : indices(field(j, "opens", path), op)) {
    if (v > top::FiniteTopology::full(n)) fail(op, "open set " + std::to_string(v) + " is not a subset");
    opens.push_back(static_cast<top::Subset>(v));
  }
  try {
    return top::FiniteTopology::from_opens(n, opens);
  } catch (const input_error& e) {
    fail(op, e.what());
  }
}

inline json to_json(const quot::Partition& p) { return {{"n", p.size()}, {"blocks", p.blocks()}}; }

inline quot::Partition partition_from_json(const json& j, const std::string& path = "") {
  using namespace detail;
  const auto n = index(field(j, "n", path), path + "/n");
  auto blocks = indices(field(j, "blocks", path), path + "/blocks");
  if (blocks.size() != n) fail(path + "/blocks", "expected one block id per point");
  try {
    return quot::Partition::parse(std::move(blocks));
  } catch (const input_error& e) {
    fail(path + "/blocks", e.what());
  }
}

inline json to_json(const grp::FiniteGroup& g) {
  json rows = json::array();
  for (std::size_t a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    rows.push_back(std::move(row));
  }
  return {{"order", g.order()}, {"cayley", std::move(rows)}, {"name", g.name()}};
}

inline grp::FiniteGroup group_from_json(const json& j, const std::string& path = "") {
  using namespace detail;
  const auto n = index(field(j, "order", path), path + "/order");
  if (n == 0) fail(path + "/order", "group order must be positive");
  const auto cp = path + "/cayley";
  const auto& rows = array(field(j, "cayley", path), cp);
  if (rows.size() != n) fail(cp, "expected " + std::to_string(n) + " rows");
  std::vector<std::size_t> table;
  for (std::size_t a = 0; a < n; ++a) {
    auto row = indices(rows[a], cp + "/" + std::to_string(a));
    if (row.size() != n) fail(cp + "/" + std::to_string(a), "expected " + std::to_string(n) + " columns");
    for (auto v : row)
      if (v >= n) fail(cp + "/" + std::to_string(a), "entry outside the group");
    table.insert(table.end(), row.begin(), row.end());
  }
  std::string name = "G";
  if (auto it = j.find("name"); it != j.end()) name = text(*it, path + "/name");
  grp::FiniteGroup g(name, n, std::move(table));
  if (auto p = g.problems(); !p.empty()) fail(cp, p.front());
  return g;
}

}  // namespace formkit::json_io
