#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "coverlab/cycles.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"
#include "coverlab/wreath.hpp"

namespace coverlab {

// Built-in groups used by tests, suites and the CLI.
namespace library {

inline Permutation cycle(std::size_t degree, std::vector<Point> points) {
  std::vector<Point> img(degree);
  for (Point i = 0; i < degree; ++i) img[i] = i;
  for (std::size_t k = 0; k < points.size(); ++k) img[points[k]] = points[(k + 1) % points.size()];
  return Permutation(std::move(img));
}

inline std::vector<Point> range_points(Point from, Point to) {
  std::vector<Point> pts;
  for (Point i = from; i < to; ++i) pts.push_back(i);
  return pts;
}

inline GeneratedGroup symmetric(std::size_t k) {
  if (k < 2) return GeneratedGroup(k);
  if (k == 2) return GeneratedGroup(2, {cycle(2, {0, 1})});
  return GeneratedGroup(k, {cycle(k, {0, 1}), cycle(k, range_points(0, static_cast<Point>(k)))});
}

inline GeneratedGroup alternating(std::size_t k) {
  if (k < 3) return GeneratedGroup(k);
  if (k == 3) return GeneratedGroup(3, {cycle(3, {0, 1, 2})});
  Permutation big = (k % 2 == 1) ? cycle(k, range_points(0, static_cast<Point>(k)))
                                 : cycle(k, range_points(1, static_cast<Point>(k)));
  return GeneratedGroup(k, {cycle(k, {0, 1, 2}), big});
}

inline GeneratedGroup cyclic(std::size_t k) {
  if (k < 2) return GeneratedGroup(k);
  return GeneratedGroup(k, {cycle(k, range_points(0, static_cast<Point>(k)))});
}

// Sym(points) inside Sym(degree), fixing everything else.
inline GeneratedGroup symmetric_on(std::size_t degree, const std::vector<Point>& points) {
  std::vector<Permutation> gens;
  if (points.size() >= 2) gens.push_back(cycle(degree, {points[0], points[1]}));
  if (points.size() >= 3) gens.push_back(cycle(degree, points));
  return GeneratedGroup(degree, std::move(gens));
}

// A permutation group together with the sorted list of its elements, so that
// the group can act on its own element indices.
struct ElementTable {
  std::vector<Permutation> elements;
  std::map<Permutation, Point> index;

  explicit ElementTable(const GeneratedGroup& g) : elements(g.elements()) {
    for (Point i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  }
  std::size_t size() const { return elements.size(); }
  Point of(const Permutation& p) const {
    auto it = index.find(p);
    if (it == index.end()) throw DomainError("element not in table");
    return it->second;
  }
  // Index of the identity element.
  Point identity() const { return of(Permutation(elements.front().degree())); }
};

// x -> g x on element indices.
inline Permutation left_multiplication(const ElementTable& t, const Permutation& g) {
  std::vector<Point> img(t.size());
  for (Point i = 0; i < t.size(); ++i) img[i] = t.of(g * t.elements[i]);
  return Permutation(std::move(img));
}

// x -> g x g^{-1} on element indices.
inline Permutation conjugation(const ElementTable& t, const Permutation& g) {
  Permutation ginv = g.inverse();
  std::vector<Point> img(t.size());
  for (Point i = 0; i < t.size(); ++i) img[i] = t.of(g * t.elements[i] * ginv);
  return Permutation(std::move(img));
}

inline GeneratedGroup regular_action(const GeneratedGroup& g) {
  ElementTable t(g);
  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) gens.push_back(left_multiplication(t, x));
  return GeneratedGroup(t.size(), std::move(gens));
}

inline GeneratedGroup conjugation_action(const GeneratedGroup& g) {
  ElementTable t(g);
  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) gens.push_back(conjugation(t, x));
  return GeneratedGroup(t.size(), std::move(gens));
}

inline GeneratedGroup a5_regular() { return regular_action(alternating(5)); }
inline GeneratedGroup a5_conjugation() { return conjugation_action(alternating(5)); }

// Sym(k) on the 2-subsets of {0..k-1}, listed in lexicographic order.
inline GeneratedGroup symmetric_on_pairs(std::size_t k) {
  std::vector<std::pair<Point, Point>> pairs;
  for (Point a = 0; a < k; ++a)
    for (Point b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
  auto index = [&](Point a, Point b) {
    if (a > b) std::swap(a, b);
    return static_cast<Point>(std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, b)) - pairs.begin());
  };
  GeneratedGroup s = symmetric(k);
  std::vector<Permutation> gens;
  for (const auto& x : s.generators()) {
    std::vector<Point> img(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) img[i] = index(x(pairs[i].first), x(pairs[i].second));
    gens.push_back(Permutation(std::move(img)));
  }
  return GeneratedGroup(pairs.size(), std::move(gens));
}

// Keywords: a5-regular, a5-conjugation, sym:k, alt:k, c:k, pairs:k and
// wreath:A/B for the imprimitive wreath product of A by B.
inline GeneratedGroup from_keyword(const std::string& key) {
  if (key == "a5-regular") return a5_regular();
  if (key == "a5-conjugation") return a5_conjugation();
  if (key.rfind("wreath:", 0) == 0) {
    std::string rest = key.substr(7);
    auto slash = rest.find('/');
    if (slash == std::string::npos) throw ParseError("group keyword: wreath needs A/B in '" + key + "'");
    return imprimitive_wreath(from_keyword(rest.substr(0, slash)), from_keyword(rest.substr(slash + 1)));
  }
  auto colon = key.find(':');
  if (colon != std::string::npos) {
    std::string kind = key.substr(0, colon);
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoull(key.substr(colon + 1), &used);
      if (used != key.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("group keyword: bad degree in '" + key + "'");
    }
    if (k == 0) throw ParseError("group keyword: degree must be positive");
    if (k > 64) throw ParseError("group keyword: degree above 64 in '" + key + "'");
    if (kind == "sym") return symmetric(k);
    if (kind == "alt") return alternating(k);
    if (kind == "c") return cyclic(k);
    if (kind == "pairs") return symmetric_on_pairs(k);
  }
  throw ParseError("unknown group keyword '" + key + "' (expected a5-regular, a5-conjugation, sym:k, alt:k, c:k, pairs:k, wreath:A/B)");
}

}  // namespace library
}  // namespace coverlab
