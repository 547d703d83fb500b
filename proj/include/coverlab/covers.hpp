#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coverlab/blocks.hpp"
#include "coverlab/caps.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"
#include "coverlab/homomorphism.hpp"
#include "coverlab/parallel.hpp"
#include "coverlab/stabilizers.hpp"
#include "coverlab/tuple_space.hpp"
#include "coverlab/wreath.hpp"

namespace coverlab {

// What the base W is: injective tuples over omega letters, or a bare set
// whose automorphism group is given explicitly.
struct BaseStructure {
  enum class Kind { Tuples, Set };
  Kind kind = Kind::Set;
  std::size_t omega = 0;
  std::size_t arity = 0;
  std::size_t size = 0;

  static BaseStructure tuples(std::size_t omega, std::size_t n) {
    BaseStructure b;
    b.kind = Kind::Tuples;
    b.omega = omega;
    b.arity = n;
    b.size = TupleSpace(omega, n).size();
    return b;
  }
  static BaseStructure set(std::size_t size) {
    BaseStructure b;
    b.size = size;
    return b;
  }
  friend bool operator==(const BaseStructure&, const BaseStructure&) = default;
};

// Delta x W with flat index w * |Delta| + delta.
struct FibredDomain {
  std::size_t delta = 0;
  BaseStructure base;

  std::size_t w_size() const noexcept { return base.size; }
  std::size_t size() const noexcept { return delta * base.size; }
  Point index(Point w, Point d) const noexcept { return fibre_index(delta, w, d); }
  Point fibre_of(Point p) const noexcept { return static_cast<Point>(p / delta); }
  Point offset_of(Point p) const noexcept { return static_cast<Point>(p % delta); }
};

// The permutation of the flat points over the fibres in `s`, in the local
// layout i * d + delta for the i-th listed fibre. Every generator must
// preserve each listed fibre.
inline Permutation restrict_to_fibres(const Permutation& g, std::size_t d, const std::vector<Point>& s) {
  std::vector<Point> img(s.size() * d);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (Point a = 0; a < d; ++a) {
      Point q = g(fibre_index(d, s[i], a));
      if (q / d != s[i]) throw DomainError("restriction: element does not fix the fibre over " + std::to_string(s[i]));
      img[i * d + a] = static_cast<Point>(i * d + q % d);
    }
  return Permutation::unchecked(std::move(img));
}

// Restrictions K(S) of a kernel to finite sets of fibres, with memoized orders.
// Safe to query from several threads.
class KernelRestrictions {
 public:
  KernelRestrictions(std::vector<Permutation> generators, std::size_t delta, std::size_t w_size)
      : generators_(std::move(generators)), delta_(delta), w_size_(w_size) {}

  std::size_t delta() const noexcept { return delta_; }
  std::size_t w_size() const noexcept { return w_size_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  // K(S) on |S| * delta points; S in the given order.
  GeneratedGroup group(const std::vector<Point>& s) const {
    check_cap(s.size() * delta_, caps().restriction_points, "kernel restriction");
    for (Point w : s)
      if (w >= w_size_) throw DomainError("restriction: point outside W");
    std::vector<Permutation> gens;
    for (const auto& g : generators_) {
      Permutation r = restrict_to_fibres(g, delta_, s);
      if (!r.is_identity()) gens.push_back(std::move(r));
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return GeneratedGroup(s.size() * delta_, std::move(gens));
  }

  Order order(std::vector<Point> s) const {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) return 1;
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      auto it = cache_->orders.find(s);
      if (it != cache_->orders.end()) return it->second;
    }
    Order o = group(s).order();
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->orders.emplace(std::move(s), o);
    return o;
  }

  // The value on w is determined by the values on S.
  bool depends(Point w, std::vector<Point> s) const {
    Order base = order(s);
    s.push_back(w);
    return order(std::move(s)) == base;
  }

  std::vector<Point> closure(const std::vector<Point>& s) const {
    std::vector<Point> out;
    for (Point w = 0; w < w_size_; ++w)
      if (depends(w, s)) out.push_back(w);
    return out;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::vector<Point>, Order> orders;
  };
  std::vector<Permutation> generators_;
  std::size_t delta_;
  std::size_t w_size_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// The induced permutation of W, or FibrePreservationError naming the fibre
// the element splits.
inline Permutation collapse_fibres(const FibredDomain& dom, const Permutation& g) {
  if (g.degree() != dom.size()) throw DomainError("cover generator has the wrong degree");
  std::vector<Point> img(dom.w_size());
  for (Point w = 0; w < dom.w_size(); ++w) {
    Point target = dom.fibre_of(g(dom.index(w, 0)));
    for (Point a = 1; a < dom.delta; ++a)
      if (dom.fibre_of(g(dom.index(w, a))) != target)
        throw FibrePreservationError("generator splits the fibre over " + std::to_string(w));
    img[w] = target;
  }
  return Permutation(std::move(img));
}

// A fibre-preserving group on Delta x W with its induced map onto Upsilon.
class Cover {
 public:
  const FibredDomain& domain() const noexcept { return domain_; }
  const GeneratedGroup& autgroup() const noexcept { return autgroup_; }
  const GeneratedGroup& upsilon() const noexcept { return upsilon_; }
  const ActionHom& mu() const noexcept { return *mu_; }
  const GeneratedGroup& kernel() const noexcept { return kernel_; }
  const KernelRestrictions& restrictions() const noexcept { return *restrictions_; }

  // Same cover with the kernel presented by other generators; they must
  // generate the same group.
  Cover with_kernel_generators(const GeneratedGroup& k) const {
    if (!same_group(k, kernel_)) throw InternalError("replacement kernel generators generate a different group");
    Cover c = *this;
    c.kernel_ = k;
    c.restrictions_ = std::make_shared<KernelRestrictions>(k.generators(), domain_.delta, domain_.w_size());
    return c;
  }

  // B(w): the kernel restricted to the fibre over w.
  GeneratedGroup binding_group(Point w) const { return restrictions_->group({w}); }

  // F(w): preimages of the stabilizer of w, restricted to the fibre over w.
  GeneratedGroup fibre_group(Point w) const {
    std::vector<Point> fibre{w};
    std::vector<Permutation> gens = binding_group(w).generators();
    GeneratedGroup stab = pointwise_stabilizer(upsilon_, {w});
    for (const auto& y : stab.generators()) {
      Permutation r = restrict_to_fibres(mu_->preimage(y), domain_.delta, fibre);
      if (!r.is_identity()) gens.push_back(std::move(r));
    }
    return GeneratedGroup(domain_.delta, std::move(gens));
  }

  friend Cover make_cover(FibredDomain domain, std::vector<Permutation> generators, GeneratedGroup upsilon);

 private:
  FibredDomain domain_;
  GeneratedGroup autgroup_;
  GeneratedGroup upsilon_;
  std::shared_ptr<const ActionHom> mu_;
  GeneratedGroup kernel_;
  std::shared_ptr<KernelRestrictions> restrictions_;
};

// Validates fibre preservation and that the induced group is Upsilon.
inline Cover make_cover(FibredDomain domain, std::vector<Permutation> generators, GeneratedGroup upsilon) {
  if (domain.delta == 0) throw DomainError("cover: empty fibres");
  if (upsilon.degree() != domain.w_size()) throw DomainError("cover: Upsilon acts on a different base");
  std::vector<Permutation> images;
  for (const auto& g : generators) images.push_back(collapse_fibres(domain, g));
  Cover c;
  c.domain_ = domain;
  c.autgroup_ = GeneratedGroup(domain.size(), std::move(generators));
  c.upsilon_ = std::move(upsilon);
  c.mu_ = std::make_shared<const ActionHom>(induced_action(c.autgroup_, std::move(images), domain.w_size()));
  const GeneratedGroup& im = c.mu_->image();
  if (!c.upsilon_.contains_group(im) || !im.contains_group(c.upsilon_) || im.order() != c.upsilon_.order())
    throw ImageMismatchError("cover: induced group on W differs from Upsilon");
  c.kernel_ = c.mu_->kernel();
  c.restrictions_ = std::make_shared<KernelRestrictions>(c.kernel_.generators(), domain.delta, domain.w_size());
  return c;
}

struct RestrictionProfile {
  std::vector<Point> points;
  GeneratedGroup group;
  std::vector<GeneratedGroup> projections;  // group induced on each listed fibre
};

inline RestrictionProfile restrict_kernel(const Cover& cover, std::vector<Point> s) {
  RestrictionProfile p;
  p.group = cover.restrictions().group(s);
  for (Point w : s) p.projections.push_back(cover.binding_group(w));
  p.points = std::move(s);
  return p;
}

// |K(S)| = |G| with every projection onto G: for simple G the restriction is
// then a diagonal isomorphic to G.
inline bool is_iso_to_G(const RestrictionProfile& profile, const GeneratedGroup& g) {
  for (std::size_t i = 0; i < profile.projections.size(); ++i)
    if (profile.projections[i].order() != g.order())
      throw PreconditionError("is_iso_to_G: projection onto the fibre over " + std::to_string(profile.points[i]) +
                              " is not onto G");
  return profile.group.order() == g.order();
}

inline bool dependence(const Cover& cover, Point w, const std::vector<Point>& s) {
  return cover.restrictions().depends(w, s);
}

inline std::vector<Point> closure(const Cover& cover, const std::vector<Point>& s) {
  return cover.restrictions().closure(s);
}

namespace detail {

// Order of the common binding group, or PreconditionError if it varies.
inline Order common_binding_order(const KernelRestrictions& r) {
  Order g = r.order({0});
  for (Point w = 1; w < r.w_size(); ++w)
    if (r.order({w}) != g)
      throw PreconditionError("binding groups differ in order (at " + std::to_string(w) + ")");
  return g;
}

// w_i ~ w_j iff |K(w_i, w_j)| = g. Throws TheoremViolation unless the
// relation is an equivalence.
inline BlockSystem pairwise_relation(const KernelRestrictions& r, const Order& g, std::size_t jobs) {
  const std::size_t n = r.w_size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  std::vector<std::pair<Point, Point>> pairs;
  for (Point i = 0; i < n; ++i) {
    rel[i][i] = 1;
    for (Point j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<char> result(pairs.size(), 0);
  parallel_for(jobs, pairs.size(), [&](std::size_t k) {
    result[k] = r.order({pairs[k].first, pairs[k].second}) == g ? 1 : 0;
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) rel[pairs[k].first][pairs[k].second] = rel[pairs[k].second][pairs[k].first] = result[k];
  std::vector<Point> labels(n);
  for (Point i = 0; i < n; ++i) {
    Point first = i;
    for (Point j = 0; j < n; ++j)
      if (rel[i][j]) {
        first = j;
        break;
      }
    labels[i] = first;
    if (rel[i] != rel[first]) {
      for (Point k = 0; k < n; ++k)
        if (rel[i][k] != rel[first][k])
          throw TheoremViolation("restriction relation is not transitive",
                                 "pair=" + std::to_string(i) + "," + std::to_string(first) + " third=" + std::to_string(k));
    }
  }
  return BlockSystem::from_labels(labels);
}

}  // namespace detail

// rho_K: w_i ~ w_j iff K(w_i, w_j) is a single copy of G. Failure of
// equivalence or Upsilon-invariance is a TheoremViolation.
inline BlockSystem extract_congruence(const Cover& cover, std::size_t jobs = 1) {
  const auto& r = cover.restrictions();
  Order g = detail::common_binding_order(r);
  BlockSystem rho = detail::pairwise_relation(r, g, jobs);
  if (!rho.is_invariant(cover.upsilon().generators())) {
    for (const auto& u : cover.upsilon().generators())
      for (const auto& c : rho.classes())
        for (Point p : c)
          if (rho.class_of(u(p)) != rho.class_of(u(c.front())))
            throw TheoremViolation("extracted relation is not Upsilon-invariant",
                                   "pair=" + std::to_string(c.front()) + "," + std::to_string(p));
  }
  return rho;
}

struct AlmostFreeReport {
  bool passed = true;
  std::string witness;
  std::size_t classes_checked = 0;
  std::size_t pairs_checked = 0;
};

// K([w]) is one copy of G for every class, and K(w1, w2) = G x G across
// classes. Cross-class pairs: one per Upsilon-orbit unless exhaustive.
inline AlmostFreeReport almost_free_check(const Cover& cover, const BlockSystem& rho, bool exhaustive = false) {
  const auto& r = cover.restrictions();
  const std::size_t n = r.w_size();
  if (rho.size() != n) throw DomainError("almost_free_check: partition on a different base");
  AlmostFreeReport rep;
  Order g = detail::common_binding_order(r);
  for (const auto& c : rho.classes()) {
    ++rep.classes_checked;
    if (r.order(c) != g) {
      rep.passed = false;
      rep.witness = "class of " + std::to_string(c.front()) + " restricts to order " + r.order(c).str();
      return rep;
    }
  }
  std::vector<std::pair<Point, Point>> pairs;
  if (exhaustive) {
    for (Point a = 0; a < n; ++a)
      for (Point b = a + 1; b < n; ++b)
        if (!rho.related(a, b)) pairs.emplace_back(a, b);
  } else {
    detail::UnionFind uf(n * n);
    for (const auto& u : cover.upsilon().generators())
      for (Point a = 0; a < n; ++a)
        for (Point b = 0; b < n; ++b) uf.unite(a * n + b, u(a) * n + u(b));
    for (Point a = 0; a < n; ++a)
      for (Point b = 0; b < n; ++b)
        if (a != b && !rho.related(a, b) && uf.find(a * n + b) == a * n + b) pairs.emplace_back(a, b);
  }
  const Order g2 = g * g;
  for (auto [a, b] : pairs) {
    ++rep.pairs_checked;
    Order o = r.order({a, b});
    if (o != g2) {
      rep.passed = false;
      rep.witness = "pair=" + std::to_string(a) + "," + std::to_string(b) + " order=" + o.str();
      return rep;
    }
  }
  return rep;
}

struct PregeometryReport {
  bool passed = true;
  std::size_t subsets_checked = 0;
  std::size_t violation_count = 0;
  std::vector<std::string> violations;  // first few, as witnesses
};

// Exhaustive check of the closure axioms over subsets of size <= max_size.
// With `rho`, also checks cl(S) = union of the rho-classes meeting S.
inline PregeometryReport pregeometry_check(const Cover& cover, std::size_t max_size,
                                           const std::optional<BlockSystem>& rho = std::nullopt) {
  const auto& r = cover.restrictions();
  const std::size_t n = r.w_size();
  check_cap(n, std::min<std::size_t>(caps().pregeometry_points, 63), "pregeometry_check");
  using Mask = std::uint64_t;
  auto points_of = [&](Mask m) {
    std::vector<Point> s;
    for (Point w = 0; w < n; ++w)
      if (m >> w & 1) s.push_back(w);
    return s;
  };
  auto to_mask = [](const std::vector<Point>& s) {
    Mask m = 0;
    for (Point w : s) m |= Mask{1} << w;
    return m;
  };
  std::unordered_map<Mask, Mask> memo;
  auto cl = [&](Mask m) {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    Mask c = to_mask(r.closure(points_of(m)));
    memo.emplace(m, c);
    return c;
  };

  PregeometryReport rep;
  auto violation = [&](const std::string& what, Mask s) {
    rep.passed = false;
    ++rep.violation_count;
    if (rep.violations.size() < 20) {
      std::string pts;
      for (Point w : points_of(s)) pts += (pts.empty() ? "" : ",") + std::to_string(w);
      rep.violations.push_back(what + " S={" + pts + "}");
    }
  };

  std::vector<Mask> subsets{0};
  for (std::size_t k = 1; k <= max_size && k <= n; ++k) {
    std::vector<Point> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<Point>(i);
    for (;;) {
      subsets.push_back(to_mask(idx));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (Mask s : subsets) {
    ++rep.subsets_checked;
    const Mask c = cl(s);
    const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(s));
    if ((s & c) != s) violation("reflexivity", s);
    if (cl(c) != c) violation("transitivity", s);
    for (Point x = 0; x < n; ++x) {
      const Mask bit = Mask{1} << x;
      if (s & bit) continue;
      if (size + 1 <= max_size && (c & cl(s | bit)) != c) violation("extension x=" + std::to_string(x), s);
      if (size + 1 <= max_size && !(c & bit)) {
        Mask gained = cl(s | bit) & ~c & all;
        for (Point w = 0; w < n; ++w)
          if ((gained >> w & 1) && !(cl(s | (Mask{1} << w)) & bit))
            violation("exchange v=" + std::to_string(x) + " w=" + std::to_string(w), s);
      }
    }
    for (const auto& u : cover.upsilon().generators()) {
      Mask us = 0, uc = 0;
      for (Point w = 0; w < n; ++w) {
        if (s >> w & 1) us |= Mask{1} << u(w);
        if (c >> w & 1) uc |= Mask{1} << u(w);
      }
      if (cl(us) != uc) violation("invariance", s);
    }
    if (rho) {
      Mask u = 0;
      for (Point w : points_of(s))
        for (Point v : rho->class_containing(w)) u |= Mask{1} << v;
      if (u != c) violation("class union", s);
    }
  }
  return rep;
}

}  // namespace coverlab
