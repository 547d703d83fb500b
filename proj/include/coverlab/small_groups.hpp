#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "coverlab/caps.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"

namespace coverlab {

// Cayley table of a small group over its sorted element list.
class MultiplicationTable {
 public:
  explicit MultiplicationTable(const GeneratedGroup& g, std::size_t cap)
      : group_(g), elements_(g.elements(cap)) {
    for (Point i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
    const std::size_t n = elements_.size();
    table_.resize(n * n);
    inverse_.resize(n);
    for (Point a = 0; a < n; ++a) {
      for (Point b = 0; b < n; ++b) table_[a * n + b] = of(elements_[a] * elements_[b]);
      inverse_[a] = of(elements_[a].inverse());
    }
    identity_ = of(Permutation(g.degree()));
  }

  const GeneratedGroup& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(Point i) const { return elements_[i]; }
  Point identity() const noexcept { return identity_; }
  Point mul(Point a, Point b) const noexcept { return table_[a * elements_.size() + b]; }
  Point inv(Point a) const noexcept { return inverse_[a]; }

  Point of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw DomainError("element not in group");
    return it->second;
  }

  // Subgroup generated by the given elements, as a sorted index list.
  std::vector<Point> closure(const std::vector<Point>& gens) const {
    std::vector<bool> seen(size(), false);
    std::vector<Point> out{identity_};
    seen[identity_] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (Point s : gens) {
        Point y = mul(s, out[i]);
        if (!seen[y]) {
          seen[y] = true;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  GeneratedGroup group_;
  std::vector<Permutation> elements_;
  std::map<Permutation, Point> index_;
  std::vector<Point> table_;
  std::vector<Point> inverse_;
  Point identity_ = 0;
};

// A subgroup of a small group: its element indices and a generating set.
struct SmallSubgroup {
  std::vector<Point> elements;
  std::vector<Point> generators;
};

// Every subgroup of G, by cyclic extension: each subgroup found is extended
// by every element outside it. Sorted by (order, element index list).
inline std::vector<SmallSubgroup> subgroup_table(const MultiplicationTable& t) {
  std::map<std::vector<Point>, std::vector<Point>> found;
  std::vector<std::vector<Point>> queue;
  std::vector<Point> trivial{t.identity()};
  found.emplace(trivial, std::vector<Point>{});
  queue.push_back(trivial);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::vector<Point> h = queue[qi];
    const std::vector<Point> hgens = found.at(h);
    std::vector<bool> in_h(t.size(), false);
    for (Point x : h) in_h[x] = true;
    for (Point x = 0; x < t.size(); ++x) {
      if (in_h[x]) continue;
      std::vector<Point> gens = hgens;
      gens.push_back(x);
      std::vector<Point> k = t.closure(gens);
      if (found.emplace(k, gens).second) queue.push_back(std::move(k));
    }
  }
  std::vector<SmallSubgroup> out;
  for (auto& [elts, gens] : found) out.push_back({elts, gens});
  std::sort(out.begin(), out.end(), [](const SmallSubgroup& a, const SmallSubgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

inline GeneratedGroup to_group(const MultiplicationTable& t, const SmallSubgroup& h) {
  std::vector<Permutation> gens;
  for (Point i : h.generators) gens.push_back(t.element(i));
  return GeneratedGroup(t.group().degree(), std::move(gens));
}

// All subgroups of G (|G| capped), in the order of subgroup_table().
inline std::vector<GeneratedGroup> subgroups(const GeneratedGroup& g) {
  check_cap(static_cast<std::size_t>(g.order()), caps().subgroup_order, "subgroups");
  MultiplicationTable t(g, caps().subgroup_order);
  std::vector<GeneratedGroup> out;
  for (const auto& h : subgroup_table(t)) out.push_back(to_group(t, h));
  return out;
}

// Aut(G) acting on the element indices of `table`.
struct AutomorphismGroup {
  MultiplicationTable table;
  GeneratedGroup aut;
  GeneratedGroup inner;
  Order outer_order() const { return aut.order() / inner.order(); }
};

namespace detail {

// A short generating list: drops generators already in the span of earlier ones.
inline std::vector<Point> reduce_generators(const MultiplicationTable& t, const std::vector<Point>& gens) {
  std::vector<Point> kept;
  std::vector<Point> span{t.identity()};
  for (Point g : gens) {
    if (std::binary_search(span.begin(), span.end(), g)) continue;
    kept.push_back(g);
    span = t.closure(kept);
  }
  return kept;
}

// Greedy generating set for the group of the given permutations.
inline std::vector<Permutation> greedy_generators(std::size_t degree, const std::vector<Permutation>& elements) {
  std::vector<Permutation> gens;
  GeneratedGroup span(degree);
  for (const auto& x : elements) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = GeneratedGroup(degree, gens);
  }
  return gens;
}

}  // namespace detail

// Brute force over images of a generating set: each candidate image tuple is
// extended along the Cayley graph and kept if it is a consistent bijection.
inline AutomorphismGroup automorphism_group(const GeneratedGroup& g) {
  check_cap(static_cast<std::size_t>(g.order()), caps().automorphism_order, "automorphism_group");
  MultiplicationTable t(g, caps().automorphism_order);
  const std::size_t n = t.size();
  std::vector<Point> raw;
  for (const auto& x : g.generators()) raw.push_back(t.of(x));
  std::vector<Point> gens = detail::reduce_generators(t, raw);

  std::vector<std::size_t> gen_order;
  for (Point s : gens) gen_order.push_back(t.element(s).order());

  std::vector<Permutation> autos;
  std::vector<Point> images(gens.size(), 0);
  std::vector<std::int64_t> phi(n);
  auto try_extend = [&]() -> bool {
    std::fill(phi.begin(), phi.end(), -1);
    std::vector<bool> hit(n, false);
    phi[t.identity()] = t.identity();
    hit[t.identity()] = true;
    std::vector<Point> queue{t.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Point x = queue[i];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Point y = t.mul(gens[k], x);
        Point fy = t.mul(images[k], static_cast<Point>(phi[x]));
        if (phi[y] < 0) {
          if (hit[fy]) return false;
          hit[fy] = true;
          phi[y] = fy;
          queue.push_back(y);
        } else if (phi[y] != fy) {
          return false;
        }
      }
    }
    return queue.size() == n;
  };
  auto search = [&](auto&& self, std::size_t k) -> void {
    if (k == gens.size()) {
      if (try_extend()) {
        std::vector<Point> img(n);
        for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(phi[i]);
        autos.push_back(Permutation::unchecked(std::move(img)));
      }
      return;
    }
    for (Point c = 0; c < n; ++c) {
      if (t.element(c).order() != gen_order[k]) continue;
      images[k] = c;
      self(self, k + 1);
    }
  };
  search(search, 0);

  std::vector<Permutation> inner_gens;
  for (const auto& x : g.generators()) {
    Permutation xinv = x.inverse();
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = t.of(x * t.element(i) * xinv);
    inner_gens.push_back(Permutation::unchecked(std::move(img)));
  }
  GeneratedGroup aut(n, detail::greedy_generators(n, autos));
  if (aut.order() != autos.size()) throw InternalError("automorphism_group: automorphisms do not form a group");
  GeneratedGroup inner(n, std::move(inner_gens));
  return {std::move(t), std::move(aut), std::move(inner)};
}

namespace detail {

// For G regular on its domain: the element of G sending point 0 to p, for
// every p, as indices into `t`.
inline std::vector<Point> regular_labels(const MultiplicationTable& t) {
  const std::size_t n = t.group().degree();
  std::vector<std::int64_t> label(n, -1);
  for (Point i = 0; i < t.size(); ++i) {
    Point p = t.element(i)(0);
    if (label[p] >= 0) throw PreconditionError("group is not regular");
    label[p] = i;
  }
  std::vector<Point> out(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (label[p] < 0) throw PreconditionError("group is not regular");
    out[p] = static_cast<Point>(label[p]);
  }
  return out;
}

}  // namespace detail

// The permutation m of the domain with m(x(0)) = theta(x)(0), where theta is
// an automorphism given on element indices. It satisfies m x m^{-1} = theta(x).
inline Permutation transport_automorphism(const MultiplicationTable& t, const std::vector<Point>& labels,
                                          const Permutation& theta) {
  std::vector<Point> img(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) img[p] = t.element(theta(labels[p]))(0);
  return Permutation(std::move(img));
}

// Holomorph of a regular G: <G, Aut(G) transported to the domain>.
inline GeneratedGroup normalizer_in_sym_regular(const GeneratedGroup& g) {
  if (g.degree() == 0) return g;
  if (g.order() != g.degree()) throw PreconditionError("normalizer_in_sym_regular: group is not regular");
  if (g.degree() == 1) return GeneratedGroup(1);
  AutomorphismGroup a = automorphism_group(g);
  std::vector<Point> labels = detail::regular_labels(a.table);
  std::vector<Permutation> gens = g.generators();
  for (const auto& theta : a.aut.generators()) gens.push_back(transport_automorphism(a.table, labels, theta));
  GeneratedGroup n(g.degree(), std::move(gens));
  if (n.order() != g.order() * a.aut.order()) throw InternalError("holomorph has the wrong order");
  for (const auto& x : n.generators())
    if (!normalizes(x, g)) throw InternalError("holomorph element does not normalize the group");
  return n;
}

}  // namespace coverlab
