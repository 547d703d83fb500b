#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "coverlab/blocks.hpp"
#include "coverlab/caps.hpp"
#include "coverlab/cycles.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"
#include "coverlab/library.hpp"
#include "coverlab/small_groups.hpp"
#include "coverlab/tuple_space.hpp"

namespace coverlab {

// Symbolic Sym(omega)-congruence on the n-tuples. Positions are 0-based;
// `group` permutes positions {0..n-1}.
//   Finite:    the class of alpha is {alpha o h : h in H}.
//   Infinite:  the class of alpha is the set of tuples that agree with
//              alpha o l on the positions P, for some l in L (L moves only P).
//   Universal: one class.
struct CongruenceSpec {
  enum class Kind { Finite, Infinite, Universal };

  Kind kind = Kind::Universal;
  std::size_t arity = 0;
  std::vector<Point> positions;
  GeneratedGroup group;

  static CongruenceSpec finite(GeneratedGroup h) {
    CongruenceSpec s;
    s.kind = Kind::Finite;
    s.arity = h.degree();
    s.positions.resize(s.arity);
    for (Point i = 0; i < s.arity; ++i) s.positions[i] = i;
    s.group = std::move(h);
    return s;
  }

  static CongruenceSpec infinite(std::vector<Point> p, GeneratedGroup l) {
    CongruenceSpec s;
    s.kind = Kind::Infinite;
    s.arity = l.degree();
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.empty() || p.size() >= s.arity) throw DomainError("infinite congruence: P must be a nonempty proper position set");
    for (Point i : p)
      if (i >= s.arity) throw DomainError("infinite congruence: position out of range");
    std::vector<bool> in_p(s.arity, false);
    for (Point i : p) in_p[i] = true;
    for (const auto& g : l.generators())
      for (Point i = 0; i < s.arity; ++i)
        if (!in_p[i] && !g.fixes(i)) throw DomainError("infinite congruence: L moves a position outside P");
    s.positions = std::move(p);
    s.group = std::move(l);
    return s;
  }

  static CongruenceSpec universal(std::size_t n) {
    CongruenceSpec s;
    s.kind = Kind::Universal;
    s.arity = n;
    s.group = GeneratedGroup(n);
    return s;
  }

  std::string describe() const {
    std::string gens;
    for (const auto& g : group.generators()) {
      if (!gens.empty()) gens += ",";
      gens += format_cycles(g);
    }
    if (gens.empty()) gens = "()";
    switch (kind) {
      case Kind::Finite:
        return "finite H=<" + gens + "> |H|=" + group.order().str();
      case Kind::Infinite: {
        std::string p;
        for (Point i : positions) p += (p.empty() ? "" : ",") + std::to_string(i);
        return "infinite P={" + p + "} L=<" + gens + "> |L|=" + group.order().str();
      }
      case Kind::Universal:
        break;
    }
    return "universal";
  }
};

inline const char* kind_name(CongruenceSpec::Kind k) {
  switch (k) {
    case CongruenceSpec::Kind::Finite:
      return "finite";
    case CongruenceSpec::Kind::Infinite:
      return "infinite";
    case CongruenceSpec::Kind::Universal:
      break;
  }
  return "universal";
}

inline bool same_spec(const CongruenceSpec& a, const CongruenceSpec& b) {
  if (a.kind != b.kind || a.arity != b.arity) return false;
  if (a.kind == CongruenceSpec::Kind::Universal) return true;
  return a.positions == b.positions && same_group(a.group, b.group);
}

namespace detail {

// Positions-permutations applied to a tuple: (t o h)_i = t_{h(i)}.
inline Tuple compose(const Tuple& t, const Permutation& h) {
  Tuple u(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) u[i] = t[h(static_cast<Point>(i))];
  return u;
}

inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i) img[i] = i;
  std::vector<Permutation> out;
  do out.push_back(Permutation::unchecked(img));
  while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace detail

// Class of `alpha` under the spec, as sorted tuple indices.
inline std::vector<Point> spec_class(const CongruenceSpec& spec, const TupleSpace& space, Point alpha) {
  if (spec.arity != space.arity()) throw DomainError("congruence spec arity differs from the tuple space");
  const Tuple& a = space.tuple(alpha);
  std::vector<Point> out;
  switch (spec.kind) {
    case CongruenceSpec::Kind::Universal:
      for (Point i = 0; i < space.size(); ++i) out.push_back(i);
      return out;
    case CongruenceSpec::Kind::Finite: {
      for (const auto& h : spec.group.elements()) out.push_back(space.index_of(detail::compose(a, h)));
      break;
    }
    case CongruenceSpec::Kind::Infinite: {
      std::set<Tuple> patterns;
      for (const auto& l : spec.group.elements()) {
        Tuple full = detail::compose(a, l);
        Tuple pat;
        for (Point i : spec.positions) pat.push_back(full[i]);
        patterns.insert(pat);
      }
      for (Point i = 0; i < space.size(); ++i) {
        const Tuple& b = space.tuple(i);
        Tuple pat;
        for (Point p : spec.positions) pat.push_back(b[p]);
        if (patterns.count(pat)) out.push_back(i);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// System of Sym(omega)-translates of the spec's class of the first tuple.
inline BlockSystem realize_congruence(const CongruenceSpec& spec, const TupleSpace& space) {
  if (spec.arity != space.arity()) throw DomainError("congruence spec arity differs from the tuple space");
  if (space.omega() < space.arity() + 1) throw PreconditionError("realize_congruence: need omega >= n+1");
  std::vector<Point> cls = spec_class(spec, space, 0);
  auto sys = block_system_of(space.symmetric_group(), cls);
  if (!sys)
    throw TheoremViolation("realized class is not a block",
                           "spec=" + spec.describe() + " omega=" + std::to_string(space.omega()));
  return *sys;
}

// Every Finite(H), H <= Sym_n; every Infinite(P, L) with P a nonempty proper
// position set and L <= Sym(P); Universal. Duplicates (same class of the
// first tuple at omega = n+2) are dropped.
inline std::vector<CongruenceSpec> predicted_congruences(std::size_t n) {
  if (n == 0) throw DomainError("predicted_congruences: arity must be positive");
  check_cap(n, caps().predicted_arity, "predicted_congruences");
  std::vector<CongruenceSpec> all;
  for (auto& h : subgroups(library::symmetric(n))) all.push_back(CongruenceSpec::finite(GeneratedGroup(n, h.generators())));
  std::vector<std::vector<Point>> position_sets;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<Point> p;
    for (Point i = 0; i < n; ++i)
      if (mask & (1u << i)) p.push_back(i);
    position_sets.push_back(std::move(p));
  }
  std::stable_sort(position_sets.begin(), position_sets.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& p : position_sets)
    for (auto& l : subgroups(library::symmetric_on(n, p))) all.push_back(CongruenceSpec::infinite(p, GeneratedGroup(n, l.generators())));
  all.push_back(CongruenceSpec::universal(n));

  TupleSpace ref(n + 2, n);
  std::set<std::vector<Point>> seen;
  std::vector<CongruenceSpec> out;
  for (auto& s : all)
    if (seen.insert(spec_class(s, ref, 0)).second) out.push_back(std::move(s));
  return out;
}

struct ClassifiedBlock {
  CongruenceSpec spec;
  std::vector<Point> gamma;  // letters, sorted
  Point alpha = 0;
};

// Reads off the spec of a block Delta: the unique minimal set Gamma of
// letters of alpha with Sym(omega \ Gamma) inside the stabilizer of Delta.
inline ClassifiedBlock classify_block(const TupleSpace& space, std::vector<Point> delta) {
  const std::size_t omega = space.omega();
  const std::size_t n = space.arity();
  if (delta.empty()) throw PreconditionError("classify_block: empty set");
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  GeneratedGroup ups = space.symmetric_group();
  if (!block_system_of(ups, delta)) throw PreconditionError("classify_block: not a block");

  const Point alpha = delta.front();
  const Tuple& a = space.tuple(alpha);
  const std::string where = "alpha=" + std::to_string(alpha) + " omega=" + std::to_string(omega);

  // Letter permutation carrying the tuple a to b, extended monotonically.
  auto carry = [&](const Tuple& b) {
    std::vector<Point> img(omega, 0);
    std::vector<bool> src(omega, false), dst(omega, false);
    for (std::size_t i = 0; i < n; ++i) {
      img[a[i]] = b[i];
      src[a[i]] = true;
      dst[b[i]] = true;
    }
    Point next = 0;
    for (Point x = 0; x < omega; ++x) {
      if (src[x]) continue;
      while (dst[next]) ++next;
      img[x] = next++;
    }
    return Permutation(std::move(img));
  };
  auto complement = [&](std::uint32_t mask) {
    std::vector<bool> in(omega, false);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) in[a[i]] = true;
    std::vector<Point> rest;
    for (Point x = 0; x < omega; ++x)
      if (!in[x]) rest.push_back(x);
    return rest;
  };

  const std::uint32_t full = (1u << n) - 1;
  std::vector<Permutation> stab_gens = library::symmetric_on(omega, complement(full)).generators();
  for (Point b : delta)
    if (b != alpha) stab_gens.push_back(carry(space.tuple(b)));
  GeneratedGroup stab(omega, stab_gens);

  std::vector<std::uint32_t> valid;
  for (std::uint32_t mask = 0; mask <= full; ++mask)
    if (stab.contains_group(library::symmetric_on(omega, complement(mask)))) valid.push_back(mask);
  std::vector<std::uint32_t> minimal;
  for (auto m : valid) {
    bool is_min = true;
    for (auto o : valid)
      if (o != m && (o & m) == o) is_min = false;
    if (is_min) minimal.push_back(m);
  }
  if (minimal.size() != 1)
    throw TheoremViolation("classify_block: no unique minimal letter set", where + " minimal=" + std::to_string(minimal.size()));
  const std::uint32_t gmask = minimal.front();

  std::vector<bool> in_gamma(omega, false);
  std::vector<Point> gamma, positions;
  for (Point i = 0; i < n; ++i)
    if (gmask & (1u << i)) {
      in_gamma[a[i]] = true;
      gamma.push_back(a[i]);
      positions.push_back(i);
    }
  std::sort(gamma.begin(), gamma.end());
  for (const auto& s : stab.generators())
    for (Point x : gamma)
      if (!in_gamma[s(x)]) throw TheoremViolation("classify_block: block stabilizer does not fix Gamma setwise", where);

  std::vector<bool> in_delta(space.size(), false);
  for (Point b : delta) in_delta[b] = true;
  ClassifiedBlock out;
  out.alpha = alpha;
  out.gamma = gamma;
  if (gmask == full) {
    std::vector<Permutation> h;
    for (const auto& p : detail::all_permutations(n))
      if (in_delta[space.index_of(detail::compose(a, p))]) h.push_back(p);
    out.spec = CongruenceSpec::finite(GeneratedGroup(n, detail::greedy_generators(n, h)));
  } else if (gmask == 0) {
    out.spec = CongruenceSpec::universal(n);
  } else {
    std::set<Permutation> ls;
    for (Point b : delta) {
      const Tuple& t = space.tuple(b);
      std::vector<Point> img(n);
      for (Point i = 0; i < n; ++i) img[i] = i;
      for (Point i : positions) {
        auto it = std::find(a.begin(), a.end(), t[i]);
        if (it == a.end() || !in_gamma[t[i]])
          throw TheoremViolation("classify_block: class member leaves Gamma on P", where);
        img[i] = static_cast<Point>(it - a.begin());
      }
      ls.insert(Permutation(std::move(img)));
    }
    std::vector<Permutation> elems(ls.begin(), ls.end());
    out.spec = CongruenceSpec::infinite(positions, GeneratedGroup(n, detail::greedy_generators(n, elems)));
  }

  if (spec_class(out.spec, space, alpha) != delta)
    throw TheoremViolation("classify_block: spec does not reproduce the block", where + " spec=" + out.spec.describe());
  TupleSpace bigger(omega + 1, n);
  const bool grows = spec_class(out.spec, bigger, 0).size() > delta.size();
  if (grows == (out.spec.kind == CongruenceSpec::Kind::Finite))
    throw TheoremViolation("classify_block: class growth disagrees with the kind", where + " spec=" + out.spec.describe());
  return out;
}

}  // namespace coverlab
