#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "coverlab/caps.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"
#include "coverlab/stabilizers.hpp"

namespace coverlab {

// A partition of {0..size-1}. Classes are sorted and listed by their
// smallest point, so equal partitions compare equal.
class BlockSystem {
 public:
  BlockSystem() = default;

  static BlockSystem from_classes(std::vector<std::vector<Point>> classes, std::size_t size) {
    BlockSystem b;
    b.class_of_.assign(size, static_cast<Point>(-1));
    for (auto& c : classes) {
      if (c.empty()) throw DomainError("block system: empty class");
      std::sort(c.begin(), c.end());
      for (Point p : c) {
        if (p >= size) throw DomainError("block system: point outside the domain");
        if (b.class_of_[p] != static_cast<Point>(-1)) throw DomainError("block system: classes overlap");
        b.class_of_[p] = 0;
      }
    }
    for (Point p = 0; p < size; ++p)
      if (b.class_of_[p] == static_cast<Point>(-1)) throw DomainError("block system: classes do not cover the domain");
    std::sort(classes.begin(), classes.end());
    for (Point i = 0; i < classes.size(); ++i)
      for (Point p : classes[i]) b.class_of_[p] = i;
    b.classes_ = std::move(classes);
    return b;
  }

  // From a labelling point -> arbitrary label.
  static BlockSystem from_labels(std::span<const Point> labels) {
    std::vector<std::vector<Point>> classes;
    std::vector<std::int64_t> slot;
    for (Point p = 0; p < labels.size(); ++p) {
      if (labels[p] >= slot.size()) slot.resize(labels[p] + 1, -1);
      if (slot[labels[p]] < 0) {
        slot[labels[p]] = static_cast<std::int64_t>(classes.size());
        classes.emplace_back();
      }
      classes[static_cast<std::size_t>(slot[labels[p]])].push_back(p);
    }
    return from_classes(std::move(classes), labels.size());
  }

  static BlockSystem equality(std::size_t size) {
    std::vector<std::vector<Point>> c(size);
    for (Point p = 0; p < size; ++p) c[p] = {p};
    return from_classes(std::move(c), size);
  }

  static BlockSystem universal(std::size_t size) {
    if (size == 0) return BlockSystem();
    std::vector<Point> all(size);
    std::iota(all.begin(), all.end(), Point{0});
    return from_classes({all}, size);
  }

  std::size_t size() const noexcept { return class_of_.size(); }
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<std::vector<Point>>& classes() const noexcept { return classes_; }
  Point class_of(Point p) const { return class_of_.at(p); }
  const std::vector<Point>& class_containing(Point p) const { return classes_[class_of(p)]; }
  bool related(Point a, Point b) const { return class_of(a) == class_of(b); }

  bool is_equality() const noexcept { return classes_.size() == class_of_.size(); }
  bool is_universal() const noexcept { return classes_.size() <= 1; }

  // Every generator maps every class onto a class.
  bool is_invariant(std::span<const Permutation> gens) const {
    for (const auto& g : gens) {
      if (g.degree() != size()) throw DomainError("block system: generator on a different domain");
      for (const auto& c : classes_) {
        Point target = class_of_[g(c.front())];
        if (classes_[target].size() != c.size()) return false;
        for (Point p : c)
          if (class_of_[g(p)] != target) return false;
      }
    }
    return true;
  }

  friend bool operator==(const BlockSystem& a, const BlockSystem& b) { return a.classes_ == b.classes_; }
  friend auto operator<=>(const BlockSystem& a, const BlockSystem& b) { return a.classes_ <=> b.classes_; }

 private:
  std::vector<std::vector<Point>> classes_;
  std::vector<Point> class_of_;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Point{0}); }
  Point find(Point x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Returns false if already joined. The smaller root survives.
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }
  std::vector<Point> labels() {
    std::vector<Point> out(parent_.size());
    for (Point i = 0; i < out.size(); ++i) out[i] = find(i);
    return out;
  }

 private:
  std::vector<Point> parent_;
};

inline void require_transitive(const GeneratedGroup& g, const char* what) {
  if (g.degree() == 0) return;
  if (orbit(0, g.generators(), g.degree()).size() != g.degree())
    throw PreconditionError(std::string(what) + ": group is not transitive");
}

}  // namespace detail

// Finest G-invariant partition in which the given points share a class
// (Atkinson's union-find refinement).
inline BlockSystem principal_congruence(const GeneratedGroup& g, std::span<const Point> points) {
  const std::size_t n = g.degree();
  detail::UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (uf.unite(points[0], points[i])) queue.emplace_back(points[0], points[i]);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [a, b] = queue[i];
    for (const auto& s : g.generators()) {
      Point x = s(a), y = s(b);
      if (uf.unite(x, y)) queue.emplace_back(x, y);
    }
  }
  std::vector<Point> labels = uf.labels();
  return BlockSystem::from_labels(labels);
}

// Smallest block containing `points`.
inline std::vector<Point> minimal_block(const GeneratedGroup& g, std::span<const Point> points) {
  detail::require_transitive(g, "minimal_block");
  if (points.empty()) throw PreconditionError("minimal_block: no points given");
  for (Point p : points)
    if (p >= g.degree()) throw DomainError("minimal_block: point outside the domain");
  return principal_congruence(g, points).class_containing(points[0]);
}

// The block system formed by the G-translates of Delta, or nullopt if two
// translates overlap without being equal.
inline std::optional<BlockSystem> block_system_of(const GeneratedGroup& g, std::vector<Point> delta) {
  const std::size_t n = g.degree();
  if (delta.empty()) throw PreconditionError("block: empty set");
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  for (Point p : delta)
    if (p >= n) throw DomainError("block: point outside the domain");
  std::vector<std::int64_t> label(n, -1);
  std::vector<std::vector<Point>> translates{delta};
  for (Point p : delta) label[p] = 0;
  for (std::size_t i = 0; i < translates.size(); ++i) {
    for (const auto& s : g.generators()) {
      std::vector<Point> img = s.apply(translates[i]);
      std::sort(img.begin(), img.end());
      std::int64_t k = label[img.front()];
      if (k < 0) {
        for (Point p : img)
          if (label[p] >= 0) return std::nullopt;
        for (Point p : img) label[p] = static_cast<std::int64_t>(translates.size());
        translates.push_back(std::move(img));
      } else if (translates[static_cast<std::size_t>(k)] != img) {
        return std::nullopt;
      }
    }
  }
  for (Point p = 0; p < n; ++p)
    if (label[p] < 0) throw PreconditionError("block: group is not transitive");
  return BlockSystem::from_classes(std::move(translates), n);
}

inline bool is_block(const GeneratedGroup& g, std::vector<Point> delta) {
  detail::require_transitive(g, "is_block");
  return block_system_of(g, std::move(delta)).has_value();
}

// G_{Delta} for a block Delta containing alpha: generated by G_alpha and one
// element carrying alpha to each point of Delta.
inline GeneratedGroup block_to_subgroup(const GeneratedGroup& g, const std::vector<Point>& delta, Point alpha) {
  if (std::find(delta.begin(), delta.end(), alpha) == delta.end())
    throw PreconditionError("block_to_subgroup: alpha is not in the block");
  if (!is_block(g, delta)) throw PreconditionError("block_to_subgroup: not a block");
  std::vector<Point> prefix{alpha};
  StabilizerChain c = StabilizerChain::build(g.degree(), g.generators(), prefix);
  std::vector<Permutation> gens = c.tail(1).strong_generators();
  const auto& top = c.levels().front();
  for (Point beta : delta)
    if (beta != alpha) gens.push_back(top.transversal[static_cast<std::size_t>(top.slot[beta])]);
  return GeneratedGroup(g.degree(), std::move(gens));
}

// alpha^H, for G_alpha <= H <= G.
inline std::vector<Point> subgroup_to_block(const GeneratedGroup& g, const GeneratedGroup& h, Point alpha) {
  if (!g.contains_group(h)) throw PreconditionError("subgroup_to_block: H is not a subgroup of G");
  GeneratedGroup stab = pointwise_stabilizer(g, {alpha});
  if (!h.contains_group(stab)) throw PreconditionError("subgroup_to_block: H does not contain the point stabilizer");
  std::vector<Point> out = orbit(alpha, h.generators(), g.degree());
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline BlockSystem join(const BlockSystem& a, const BlockSystem& b) {
  UnionFind uf(a.size());
  for (const auto* sys : {&a, &b})
    for (const auto& c : sys->classes())
      for (Point p : c) uf.unite(c.front(), p);
  std::vector<Point> labels = uf.labels();
  return BlockSystem::from_labels(labels);
}

}  // namespace detail

// Every G-invariant equivalence relation, as the join closure of the
// principal congruences. Sorted by decreasing class count, then by classes.
inline std::vector<BlockSystem> all_congruences_bruteforce(const GeneratedGroup& g) {
  const std::size_t n = g.degree();
  check_cap(n, caps().bruteforce_points, "all_congruences_bruteforce");
  std::set<BlockSystem> found;
  if (n > 0) found.insert(BlockSystem::equality(n));
  std::vector<BlockSystem> principal;
  for (Point a = 0; a < n; ++a)
    for (Point b = a + 1; b < n; ++b) {
      Point pts[2] = {a, b};
      BlockSystem p = principal_congruence(g, pts);
      if (found.insert(p).second) principal.push_back(std::move(p));
    }
  std::vector<BlockSystem> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<BlockSystem> next;
    for (const auto& x : frontier)
      for (const auto& p : principal) {
        BlockSystem j = detail::join(x, p);
        if (found.insert(j).second) next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  std::vector<BlockSystem> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const BlockSystem& a, const BlockSystem& b) {
    if (a.class_count() != b.class_count()) return a.class_count() > b.class_count();
    return a < b;
  });
  return out;
}

}  // namespace coverlab
