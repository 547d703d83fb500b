#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coverlab/error.hpp"
#include "coverlab/permutation.hpp"

namespace coverlab {

using Order = boost::multiprecision::cpp_int;

// Base and strong generating set with explicit transversals, built by the
// deterministic Schreier-Sims algorithm.
//
// Level i stabilizes base points 0..i-1; its transversal holds, for every
// point beta of the basic orbit, an element u with u(base[i]) == beta.
// Every element of the group factors uniquely as u_0 * u_1 * ... * u_{k-1}.
class StabilizerChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<std::size_t> gens;  // indices into strong generators
    std::vector<Point> orbit;
    std::vector<std::int32_t> slot;  // point -> orbit index, or -1
    std::vector<Permutation> transversal;
    std::vector<Permutation> inverse_transversal;
    // Bookkeeping for the Schreier generator scan.
    std::vector<std::uint32_t> tested;
    std::vector<std::pair<std::int32_t, std::int32_t>> parent;

    std::size_t orbit_size() const noexcept { return orbit.size(); }
    bool in_orbit(Point p) const noexcept { return slot[p] >= 0; }
  };

  StabilizerChain() = default;

  // Builds a chain for <generators>. The base starts with `base_prefix` (in
  // the given order, duplicates dropped); further base points are the
  // smallest points moved by residues as they are discovered.
  static StabilizerChain build(std::size_t degree, std::span<const Permutation> generators,
                               std::span<const Point> base_prefix = {}) {
    StabilizerChain c;
    c.degree_ = degree;
    for (const auto& g : generators) {
      if (g.degree() != degree) throw DomainError("generator degree differs from group degree");
    }
    std::vector<bool> in_base(degree, false);
    for (Point b : base_prefix) {
      if (b >= degree) throw DomainError("base point outside domain");
      if (in_base[b]) continue;
      in_base[b] = true;
      c.add_level(b);
    }
    for (const auto& g : generators) {
      if (g.is_identity()) continue;
      if (std::find(c.strong_.begin(), c.strong_.end(), g) != c.strong_.end()) continue;
      bool fixes_base = true;
      for (const auto& lvl : c.levels_)
        if (!g.fixes(lvl.base)) {
          fixes_base = false;
          break;
        }
      if (fixes_base) c.add_level(static_cast<Point>(g.first_moved()));
      c.strong_.push_back(g);
    }
    for (std::size_t s = 0; s < c.strong_.size(); ++s) {
      for (std::size_t l = 0; l < c.levels_.size(); ++l) {
        c.levels_[l].gens.push_back(s);
        if (!c.strong_[s].fixes(c.levels_[l].base)) break;
      }
    }
    for (auto& lvl : c.levels_) c.extend_orbit(lvl, 0);
    c.schreier_sims();
    return c;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t length() const noexcept { return levels_.size(); }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const std::vector<Permutation>& strong_generators() const noexcept { return strong_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  Order order() const {
    Order o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }

  // Strips `p` through levels start.. . Returns the residue and the level at
  // which stripping stopped (length() if it passed every level).
  std::pair<Permutation, std::size_t> sift(const Permutation& p, std::size_t start = 0) const {
    Permutation h = p;
    Permutation scratch;
    std::size_t l = sift_in_place(h, scratch, start);
    return {std::move(h), l};
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) throw DomainError("membership test on a different degree");
    Permutation h = p;
    Permutation scratch;
    std::size_t l = sift_in_place(h, scratch, 0);
    return l == levels_.size() && h.is_identity();
  }

  // Strong generators lying in the stabilizer of the first `level` base points.
  std::vector<Permutation> generators_at(std::size_t level) const {
    std::vector<Permutation> out;
    if (level >= levels_.size()) return out;
    for (std::size_t s : levels_[level].gens) out.push_back(strong_[s]);
    return out;
  }

  // Chain of the stabilizer of the first `level` base points.
  StabilizerChain tail(std::size_t level) const {
    StabilizerChain c;
    c.degree_ = degree_;
    if (level >= levels_.size()) return c;
    std::vector<std::int64_t> remap(strong_.size(), -1);
    for (std::size_t s : levels_[level].gens) {
      remap[s] = static_cast<std::int64_t>(c.strong_.size());
      c.strong_.push_back(strong_[s]);
    }
    for (std::size_t l = level; l < levels_.size(); ++l) {
      Level lv = levels_[l];
      for (auto& g : lv.gens) g = static_cast<std::size_t>(remap[g]);
      c.levels_.push_back(std::move(lv));
    }
    return c;
  }

  // Chain for the group restricted to the invariant window [offset, offset+size)
  // of the domain. Valid only when every element fixes all points outside the
  // window, e.g. the tail of a chain whose prefix fixed those points.
  StabilizerChain restricted_window(std::size_t offset, std::size_t size) const {
    std::vector<Point> window(size);
    for (std::size_t i = 0; i < size; ++i) window[i] = static_cast<Point>(offset + i);
    auto cut = [&](const Permutation& p) { return restrict_to(p, window); };
    StabilizerChain c;
    c.degree_ = size;
    for (const auto& s : strong_) c.strong_.push_back(cut(s));
    for (const auto& lv : levels_) {
      if (lv.base < offset || lv.base >= offset + size) {
        if (lv.orbit.size() != 1) throw InternalError("restricted_window: level moves points outside window");
        continue;
      }
      Level n;
      n.base = static_cast<Point>(lv.base - offset);
      n.gens = lv.gens;
      n.slot.assign(size, -1);
      for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
        n.orbit.push_back(static_cast<Point>(lv.orbit[i] - offset));
        n.slot[n.orbit.back()] = static_cast<std::int32_t>(i);
        n.transversal.push_back(cut(lv.transversal[i]));
        n.inverse_transversal.push_back(cut(lv.inverse_transversal[i]));
      }
      n.tested = lv.tested;
      n.parent = lv.parent;
      c.levels_.push_back(std::move(n));
    }
    return c;
  }

  // Chain of n^{-1} G n, obtained by relabelling through n^{-1}.
  StabilizerChain conjugated(const Permutation& n) const {
    if (n.degree() != degree_) throw DomainError("conjugating chain by a permutation of another degree");
    Permutation ninv = n.inverse();
    auto conj = [&](const Permutation& p) { return ninv * p * n; };
    StabilizerChain c;
    c.degree_ = degree_;
    for (const auto& s : strong_) c.strong_.push_back(conj(s));
    for (const auto& lv : levels_) {
      Level m;
      m.base = ninv(lv.base);
      m.gens = lv.gens;
      m.slot.assign(degree_, -1);
      for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
        m.orbit.push_back(ninv(lv.orbit[i]));
        m.slot[m.orbit.back()] = static_cast<std::int32_t>(i);
        m.transversal.push_back(conj(lv.transversal[i]));
        m.inverse_transversal.push_back(conj(lv.inverse_transversal[i]));
      }
      m.tested = lv.tested;
      m.parent = lv.parent;
      c.levels_.push_back(std::move(m));
    }
    return c;
  }

  // Calls f(element) for every group element, in transversal order.
  void for_each_element(const std::function<void(const Permutation&)>& f) const {
    Permutation id(degree_);
    walk(0, id, f);
  }

  template <class Rng>
  Permutation random_element(Rng& rng) const {
    Permutation g(degree_);
    for (const auto& lv : levels_) {
      std::size_t i = static_cast<std::size_t>(rng() % lv.orbit.size());
      g = g * lv.transversal[i];
    }
    return g;
  }

 private:
  void add_level(Point b) {
    Level lv;
    lv.base = b;
    lv.slot.assign(degree_, -1);
    lv.orbit.push_back(b);
    lv.slot[b] = 0;
    lv.transversal.emplace_back(degree_);
    lv.inverse_transversal.emplace_back(degree_);
    lv.tested.push_back(0);
    lv.parent.emplace_back(-1, -1);
    levels_.push_back(std::move(lv));
  }

  // Applies generators [from_gen, end) to every orbit point, then closes.
  void extend_orbit(Level& lv, std::size_t from_gen) {
    auto try_add = [&](std::size_t oi, std::size_t gi) {
      const Permutation& s = strong_[lv.gens[gi]];
      Point gamma = s(lv.orbit[oi]);
      if (lv.slot[gamma] >= 0) return;
      lv.slot[gamma] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(gamma);
      Permutation u = s * lv.transversal[oi];
      lv.inverse_transversal.push_back(u.inverse());
      lv.transversal.push_back(std::move(u));
      lv.tested.push_back(0);
      lv.parent.emplace_back(static_cast<std::int32_t>(oi), static_cast<std::int32_t>(gi));
    };
    const std::size_t existing = lv.orbit.size();
    for (std::size_t oi = 0; oi < existing; ++oi)
      for (std::size_t gi = from_gen; gi < lv.gens.size(); ++gi) try_add(oi, gi);
    for (std::size_t oi = existing; oi < lv.orbit.size(); ++oi)
      for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) try_add(oi, gi);
  }

  std::size_t sift_in_place(Permutation& h, Permutation& scratch, std::size_t start) const {
    for (std::size_t l = start; l < levels_.size(); ++l) {
      const Level& lv = levels_[l];
      Point beta = h(lv.base);
      std::int32_t idx = lv.slot[beta];
      if (idx < 0) return l;
      if (idx == 0) continue;
      Permutation::multiply_into(scratch, lv.inverse_transversal[static_cast<std::size_t>(idx)], h);
      std::swap(h, scratch);
    }
    return levels_.size();
  }

  void schreier_sims() {
    Permutation tmp, h, scratch;
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool added = false;
      // Copy the level index; levels_ may grow (reallocate) inside the loop.
      const std::size_t li = static_cast<std::size_t>(i);
      for (std::size_t oi = 0; oi < levels_[li].orbit.size() && !added; ++oi) {
        while (levels_[li].tested[oi] < levels_[li].gens.size()) {
          Level& lv = levels_[li];
          const std::size_t gi = lv.tested[oi]++;
          const Permutation& s = strong_[lv.gens[gi]];
          const Point gamma = s(lv.orbit[oi]);
          const auto gidx = static_cast<std::size_t>(lv.slot[gamma]);
          if (lv.parent[gidx] == std::pair<std::int32_t, std::int32_t>(static_cast<std::int32_t>(oi), static_cast<std::int32_t>(gi)))
            continue;
          Permutation::multiply_into(tmp, s, lv.transversal[oi]);
          Permutation::multiply_into(h, lv.inverse_transversal[gidx], tmp);
          std::size_t j = sift_in_place(h, scratch, li + 1);
          if (j == levels_.size()) {
            if (h.is_identity()) continue;
            add_level(static_cast<Point>(h.first_moved()));
          }
          const std::size_t sidx = strong_.size();
          strong_.push_back(h);
          for (std::size_t l = li + 1; l <= j; ++l) {
            Level& target = levels_[l];
            target.gens.push_back(sidx);
            extend_orbit(target, target.gens.size() - 1);
          }
          i = static_cast<std::ptrdiff_t>(j);
          added = true;
          break;
        }
      }
      if (!added) --i;
    }
  }

  void walk(std::size_t l, const Permutation& prefix, const std::function<void(const Permutation&)>& f) const {
    if (l == levels_.size()) {
      f(prefix);
      return;
    }
    for (const auto& u : levels_[l].transversal) walk(l + 1, prefix * u, f);
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> strong_;
  std::vector<Level> levels_;
};

}  // namespace coverlab
