#pragma once

#include <algorithm>
#include <vector>

#include "coverlab/chain.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"

namespace coverlab {

namespace detail {

inline std::vector<Point> sorted_unique(std::vector<Point> s, std::size_t degree) {
  for (Point p : s)
    if (p >= degree) throw DomainError("point outside the group's domain");
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace detail

// G_(S): elements fixing every point of S.
inline GeneratedGroup pointwise_stabilizer(const GeneratedGroup& g, std::vector<Point> s) {
  s = detail::sorted_unique(std::move(s), g.degree());
  if (s.empty()) return g;
  StabilizerChain c = StabilizerChain::build(g.degree(), g.generators(), s);
  StabilizerChain t = c.tail(s.size());
  std::vector<Permutation> gens = t.strong_generators();
  return GeneratedGroup::from_chain(std::move(t), std::move(gens));
}

// G_{S}: elements mapping S onto itself. Backtracks over the first |S| levels
// of a chain based on S; each surviving branch is a coset representative of
// G_(S) in G_{S}.
inline GeneratedGroup setwise_stabilizer(const GeneratedGroup& g, std::vector<Point> s) {
  s = detail::sorted_unique(std::move(s), g.degree());
  if (s.empty() || s.size() == g.degree()) return g;
  StabilizerChain c = StabilizerChain::build(g.degree(), g.generators(), s);
  std::vector<bool> in_s(g.degree(), false);
  for (Point p : s) in_s[p] = true;

  std::vector<Permutation> gens;
  StabilizerChain tail = c.tail(s.size());
  for (const auto& x : tail.strong_generators()) gens.push_back(x);
  const auto& levels = c.levels();
  const std::size_t k = s.size();
  auto search = [&](auto&& self, std::size_t l, const Permutation& prefix) -> void {
    if (l == k) {
      if (!prefix.is_identity()) gens.push_back(prefix);
      return;
    }
    for (const auto& u : levels[l].transversal) {
      Permutation q = prefix * u;
      if (in_s[q(levels[l].base)]) self(self, l + 1, q);
    }
  };
  search(search, 0, Permutation(g.degree()));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return GeneratedGroup(g.degree(), std::move(gens));
}

}  // namespace coverlab
