#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "coverlab/caps.hpp"
#include "coverlab/chain.hpp"
#include "coverlab/error.hpp"
#include "coverlab/permutation.hpp"

namespace coverlab {

// A permutation group given by generators. The stabilizer chain is built on
// first use and then shared read-only between copies.
class GeneratedGroup {
 public:
  explicit GeneratedGroup(std::size_t degree = 0, std::vector<Permutation> generators = {},
                          std::vector<Point> base_prefix = {})
      : state_(std::make_shared<State>()) {
    for (const auto& g : generators)
      if (g.degree() != degree) throw DomainError("generator degree differs from group degree");
    state_->degree = degree;
    state_->generators = std::move(generators);
    state_->base_prefix = std::move(base_prefix);
  }

  // Wraps a chain that is already known to belong to <generators>.
  static GeneratedGroup from_chain(StabilizerChain chain, std::vector<Permutation> generators) {
    GeneratedGroup g(chain.degree(), std::move(generators));
    std::call_once(g.state_->once, [&] {
      g.state_->chain = std::move(chain);
      g.state_->ready.store(true, std::memory_order_release);
    });
    return g;
  }

  static GeneratedGroup trivial(std::size_t degree) { return GeneratedGroup(degree); }

  std::size_t degree() const noexcept { return state_->degree; }
  const std::vector<Permutation>& generators() const noexcept { return state_->generators; }

  const StabilizerChain& chain() const {
    std::call_once(state_->once, [this] {
      state_->chain = StabilizerChain::build(state_->degree, state_->generators, state_->base_prefix);
      state_->ready.store(true, std::memory_order_release);
    });
    return *state_->chain;
  }

  Order order() const { return chain().order(); }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree()) throw DomainError("membership test on a different degree");
    return chain().contains(p);
  }

  bool is_trivial() const {
    for (const auto& g : generators())
      if (!g.is_identity()) return false;
    return true;
  }

  // True iff every generator of `other` lies in this group.
  bool contains_group(const GeneratedGroup& other) const {
    if (other.degree() != degree()) throw DomainError("subgroup test on a different degree");
    for (const auto& g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  // Every element, sorted. Throws CapExceeded above `cap`.
  std::vector<Permutation> elements(std::size_t cap = caps().enumerate_order) const {
    Order o = order();
    if (o > cap) throw CapExceeded("element enumeration: group order " + o.str() + " exceeds cap " + std::to_string(cap));
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(o));
    chain().for_each_element([&](const Permutation& p) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    return out;
  }

  // Group conjugated by n: n^{-1} G n. Reuses the chain if already built.
  GeneratedGroup conjugated(const Permutation& n) const {
    std::vector<Permutation> gens;
    gens.reserve(generators().size());
    Permutation ninv = n.inverse();
    for (const auto& g : generators()) gens.push_back(ninv * g * n);
    if (state_->ready.load(std::memory_order_acquire)) return from_chain(state_->chain->conjugated(n), std::move(gens));
    return GeneratedGroup(degree(), std::move(gens));
  }

 private:
  struct State {
    std::size_t degree = 0;
    std::vector<Permutation> generators;
    std::vector<Point> base_prefix;
    std::once_flag once;
    std::optional<StabilizerChain> chain;
    std::atomic<bool> ready{false};
  };
  std::shared_ptr<State> state_;
};

// Equality of groups by mutual generator membership.
inline bool same_group(const GeneratedGroup& a, const GeneratedGroup& b) {
  if (a.degree() != b.degree()) return false;
  return a.contains_group(b) && b.contains_group(a);
}

inline bool normalizes(const Permutation& n, const GeneratedGroup& g) {
  Permutation ninv = n.inverse();
  for (const auto& x : g.generators())
    if (!g.contains(ninv * x * n)) return false;
  return true;
}

// H normal in G (H assumed a subgroup of G): conjugates of H-generators by
// G-generators stay in H.
inline bool is_normal_subgroup(const GeneratedGroup& h, const GeneratedGroup& g) {
  if (!g.contains_group(h)) return false;
  for (const auto& x : g.generators())
    if (!normalizes(x, h)) return false;
  return true;
}

// Orbit of `p` under the group generated by `gens`, in discovery order.
inline std::vector<Point> orbit(Point p, std::span<const Permutation> gens, std::size_t degree) {
  std::vector<Point> out{p};
  std::vector<bool> seen(degree, false);
  seen[p] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Point q = g(out[i]);
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  return out;
}

// Orbits of the group, each sorted, listed by smallest point.
inline std::vector<std::vector<Point>> orbits(std::span<const Permutation> gens, std::size_t degree) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree, false);
  for (Point p = 0; p < degree; ++p) {
    if (seen[p]) continue;
    auto o = orbit(p, gens, degree);
    for (Point q : o) seen[q] = true;
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace coverlab
