#pragma once

#include <vector>

#include "coverlab/blocks.hpp"
#include "coverlab/caps.hpp"
#include "coverlab/group.hpp"
#include "coverlab/small_groups.hpp"

namespace coverlab {

inline bool is_transitive(const GeneratedGroup& g) {
  if (g.degree() <= 1) return true;
  return orbit(0, g.generators(), g.degree()).size() == g.degree();
}

inline bool is_regular(const GeneratedGroup& g) { return is_transitive(g) && g.order() == g.degree(); }

inline bool is_abelian(const GeneratedGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

// Transitive, and the minimal block through 0 and any other point is the
// whole domain.
inline bool is_primitive(const GeneratedGroup& g) {
  if (!is_transitive(g)) return false;
  for (Point b = 1; b < g.degree(); ++b) {
    Point pts[2] = {0, b};
    if (minimal_block(g, pts).size() != g.degree()) return false;
  }
  return true;
}

// Nontrivial and the normal closure of every non-identity element is G.
// One element per conjugacy class suffices.
inline bool is_simple(const GeneratedGroup& g) {
  check_cap(static_cast<std::size_t>(g.order()), caps().subgroup_order, "is_simple");
  MultiplicationTable t(g, caps().subgroup_order);
  if (t.size() == 1) return false;
  std::vector<Point> gens;
  for (const auto& x : g.generators()) gens.push_back(t.of(x));
  std::vector<bool> done(t.size(), false);
  for (Point x = 0; x < t.size(); ++x) {
    if (x == t.identity() || done[x]) continue;
    std::vector<Point> cls;
    for (Point y = 0; y < t.size(); ++y) {
      Point c = t.mul(t.mul(y, x), t.inv(y));
      if (!done[c]) {
        done[c] = true;
        cls.push_back(c);
      }
    }
    if (t.closure(cls).size() != t.size()) return false;
  }
  return true;
}

struct GroupPredicates {
  bool is_transitive = false;
  bool is_primitive = false;
  bool is_regular = false;
  bool is_abelian = false;
  bool is_simple = false;
};

inline GroupPredicates predicates(const GeneratedGroup& g) {
  GroupPredicates p;
  p.is_transitive = is_transitive(g);
  p.is_primitive = p.is_transitive && is_primitive(g);
  p.is_regular = p.is_transitive && is_regular(g);
  p.is_abelian = is_abelian(g);
  p.is_simple = is_simple(g);
  return p;
}

}  // namespace coverlab
