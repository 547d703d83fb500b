#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "coverlab/blocks.hpp"
#include "coverlab/congruence.hpp"
#include "coverlab/covers.hpp"
#include "coverlab/cycles.hpp"
#include "coverlab/error.hpp"
#include "coverlab/library.hpp"

namespace coverlab {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

inline bool is_index(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

inline std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!is_index(v))
    throw ParseError(std::string("json: field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace detail

inline json permutations_to_json(const std::vector<Permutation>& gens) {
  json out = json::array();
  for (const auto& g : gens) out.push_back(format_cycles(g));
  return out;
}

inline std::vector<Permutation> permutations_from_json(const json& j, std::size_t degree) {
  if (!j.is_array()) throw ParseError("json: generators must be an array of cycle strings");
  std::vector<Permutation> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw ParseError("json: generator must be a cycle string");
    out.push_back(parse_cycles(s.get<std::string>(), degree));
  }
  return out;
}

inline json to_json(const BlockSystem& b) { return json{{"classes", b.classes()}}; }

inline BlockSystem block_system_from_json(const json& j, std::size_t size) {
  const json& c = detail::field(j, "classes");
  if (!c.is_array()) throw ParseError("json: classes must be an array");
  std::vector<std::vector<Point>> classes;
  for (const auto& cls : c) {
    if (!cls.is_array()) throw ParseError("json: each class must be an array of points");
    std::vector<Point> pts;
    for (const auto& p : cls) {
      if (!detail::is_index(p)) throw ParseError("json: class entries must be non-negative integers");
      pts.push_back(p.get<Point>());
    }
    classes.push_back(std::move(pts));
  }
  return BlockSystem::from_classes(std::move(classes), size);
}

inline json to_json(const CongruenceSpec& s) {
  json out{{"n", s.arity}};
  switch (s.kind) {
    case CongruenceSpec::Kind::Finite:
      out["kind"] = "finite";
      out["H"] = permutations_to_json(s.group.generators());
      break;
    case CongruenceSpec::Kind::Infinite:
      out["kind"] = "infinite";
      out["P"] = s.positions;
      out["L"] = permutations_to_json(s.group.generators());
      break;
    case CongruenceSpec::Kind::Universal:
      out["kind"] = "universal";
      break;
  }
  return out;
}

// `arity` is used when the object carries no "n".
inline CongruenceSpec congruence_spec_from_json(const json& j, std::size_t arity = 0) {
  if (j.is_object() && j.contains("n")) arity = detail::size_field(j, "n");
  if (arity == 0) throw ParseError("json: congruence spec needs an arity");
  const json& k = detail::field(j, "kind");
  if (!k.is_string()) throw ParseError("json: kind must be a string");
  const std::string kind = k.get<std::string>();
  if (kind == "universal") return CongruenceSpec::universal(arity);
  if (kind == "finite") return CongruenceSpec::finite(GeneratedGroup(arity, permutations_from_json(detail::field(j, "H"), arity)));
  if (kind == "infinite") {
    const json& p = detail::field(j, "P");
    if (!p.is_array()) throw ParseError("json: P must be an array of positions");
    std::vector<Point> pos;
    for (const auto& x : p) {
      if (!detail::is_index(x)) throw ParseError("json: positions must be non-negative integers");
      pos.push_back(x.get<Point>());
    }
    return CongruenceSpec::infinite(std::move(pos), GeneratedGroup(arity, permutations_from_json(detail::field(j, "L"), arity)));
  }
  throw ParseError("json: unknown congruence kind '" + kind + "'");
}

inline json to_json(const BaseStructure& b) {
  if (b.kind == BaseStructure::Kind::Tuples) return json{{"kind", "tuples"}, {"omega", b.omega}, {"n", b.arity}};
  return json{{"kind", "set"}, {"size", b.size}};
}

inline BaseStructure base_from_json(const json& j) {
  const json& k = detail::field(j, "kind");
  if (k == "tuples") {
    std::size_t omega = detail::size_field(j, "omega");
    std::size_t n = detail::size_field(j, "n");
    if (n == 0 || n > omega || omega > 12) throw ParseError("json: tuple base needs 0 < n <= omega <= 12");
    return BaseStructure::tuples(omega, n);
  }
  if (k == "set") {
    std::size_t size = detail::size_field(j, "size");
    if (size == 0) throw ParseError("json: set base must be nonempty");
    return BaseStructure::set(size);
  }
  throw ParseError("json: W.kind must be 'tuples' or 'set'");
}

inline json to_json(const Cover& c) {
  return json{{"delta", c.domain().delta},
              {"W", to_json(c.domain().base)},
              {"generators", permutations_to_json(c.autgroup().generators())},
              {"upsilon", permutations_to_json(c.upsilon().generators())}};
}

inline Cover cover_from_json(const json& j) {
  FibredDomain dom{detail::size_field(j, "delta"), base_from_json(detail::field(j, "W"))};
  if (dom.delta == 0) throw ParseError("json: delta must be positive");
  auto gens = permutations_from_json(detail::field(j, "generators"), dom.size());
  GeneratedGroup upsilon(dom.w_size(), permutations_from_json(detail::field(j, "upsilon"), dom.w_size()));
  return make_cover(dom, std::move(gens), std::move(upsilon));
}

}  // namespace coverlab
