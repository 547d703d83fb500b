#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coverlab/blocks.hpp"
#include "coverlab/congruence.hpp"
#include "coverlab/covers.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"
#include "coverlab/homomorphism.hpp"
#include "coverlab/small_groups.hpp"
#include "coverlab/tuple_space.hpp"
#include "coverlab/wreath.hpp"

namespace coverlab {

// K_rho: functions W -> G constant on every rho-class. One generator per
// class and generator of G.
inline GeneratedGroup kernel_from_congruence(const BlockSystem& rho, const GeneratedGroup& g) {
  const std::size_t d = g.degree();
  const std::size_t nw = rho.size();
  std::vector<Permutation> gens;
  for (const auto& cls : rho.classes())
    for (const auto& x : g.generators()) {
      if (x.is_identity()) continue;
      std::vector<Point> img(d * nw);
      for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<Point>(i);
      for (Point w : cls)
        for (Point a = 0; a < d; ++a) img[fibre_index(d, w, a)] = fibre_index(d, w, x(a));
      gens.push_back(Permutation::unchecked(std::move(img)));
    }
  return GeneratedGroup(d * nw, std::move(gens));
}

// <K, Upsilon acting on fibre labels only>. Throws NormalizationError if a
// lifted generator does not normalize K.
inline Cover cover_from_kernel(const GeneratedGroup& k, const GeneratedGroup& upsilon, const FibredDomain& domain) {
  if (k.degree() != domain.size()) throw DomainError("cover_from_kernel: kernel on a different domain");
  std::vector<Permutation> gens = k.generators();
  for (const auto& u : upsilon.generators()) {
    Permutation lift = permute_fibres(u, domain.delta);
    if (!normalizes(lift, k)) throw NormalizationError("cover_from_kernel: a base generator does not normalize the kernel");
    gens.push_back(std::move(lift));
  }
  Cover c = make_cover(domain, std::move(gens), upsilon);
  return c.with_kernel_generators(k);
}

// The imprimitive wreath product G Wr_W Upsilon, whose kernel is G^W.
inline Cover principal_cover(const GeneratedGroup& upsilon, const GeneratedGroup& g, const FibredDomain& domain) {
  if (g.degree() != domain.delta || upsilon.degree() != domain.w_size())
    throw DomainError("principal_cover: groups do not match the domain");
  GeneratedGroup wr = imprimitive_wreath(g, upsilon);
  Cover c = make_cover(domain, wr.generators(), upsilon);
  return c.with_kernel_generators(kernel_from_congruence(BlockSystem::equality(domain.w_size()), g));
}

// One normalizer element per point of W.
struct FibrewiseTwist {
  std::vector<Permutation> n;

  static FibrewiseTwist identity(std::size_t delta, std::size_t w_size) {
    return {std::vector<Permutation>(w_size, Permutation(delta))};
  }

  // The permutation of Delta x W acting as n_w on the fibre over w.
  Permutation flat() const {
    if (n.empty()) return Permutation();
    const std::size_t d = n.front().degree();
    std::vector<Point> img(d * n.size());
    for (Point w = 0; w < n.size(); ++w)
      for (Point a = 0; a < d; ++a) img[fibre_index(d, w, a)] = fibre_index(d, w, n[w](a));
    return Permutation::unchecked(std::move(img));
  }
};

namespace detail {

inline void check_twist(const FibrewiseTwist& t, const GeneratedGroup& g, std::size_t w_size) {
  if (t.n.size() != w_size) throw DomainError("twist: one element per point of W required");
  for (std::size_t w = 0; w < t.n.size(); ++w) {
    if (t.n[w].degree() != g.degree()) throw DomainError("twist: element on the wrong degree");
    if (!normalizes(t.n[w], g)) throw NormalizationError("twist: element at " + std::to_string(w) + " does not normalize G");
  }
}

}  // namespace detail

// N^{-1} K N for the fibrewise N.
inline GeneratedGroup twist_kernel(const GeneratedGroup& k, const FibrewiseTwist& t, const GeneratedGroup& g) {
  detail::check_twist(t, g, k.degree() / std::max<std::size_t>(g.degree(), 1));
  return k.conjugated(t.flat());
}

// The cover conjugated by the fibrewise N; its kernel is twist_kernel(K, t).
inline Cover twist_cover(const Cover& cover, const FibrewiseTwist& t, const GeneratedGroup& g) {
  detail::check_twist(t, g, cover.domain().w_size());
  Permutation nn = t.flat();
  Permutation ninv = nn.inverse();
  std::vector<Permutation> gens;
  for (const auto& x : cover.autgroup().generators()) gens.push_back(ninv * x * nn);
  Cover c = make_cover(cover.domain(), std::move(gens), cover.upsilon());
  return c.with_kernel_generators(cover.kernel().conjugated(nn));
}

// Independent uniform draws from `normalizer`, one per point.
template <class Rng>
FibrewiseTwist random_twist(const GeneratedGroup& normalizer, std::size_t w_size, Rng& rng) {
  FibrewiseTwist t;
  for (std::size_t w = 0; w < w_size; ++w) t.n.push_back(normalizer.chain().random_element(rng));
  return t;
}

struct NormalizedKernel {
  BlockSystem rho;
  FibrewiseTwist twist;
};

// For a kernel K with every binding group equal to the regular group G:
// rho = rho_K, and a twist t with twist_kernel(K, t) = K_rho. On each class
// the restriction K(w0, w) is the graph of an automorphism theta of G; the
// twist at w conjugates theta away.
inline NormalizedKernel normalize_kernel(const GeneratedGroup& k, const GeneratedGroup& g, std::size_t w_size,
                                         const GeneratedGroup* holomorph = nullptr, std::size_t jobs = 1) {
  const std::size_t d = g.degree();
  if (k.degree() != d * w_size) throw DomainError("normalize_kernel: kernel on a different domain");
  if (g.order() != d) throw PreconditionError("normalize_kernel: G is not regular");
  KernelRestrictions r(k.generators(), d, w_size);
  for (Point w = 0; w < w_size; ++w)
    if (!same_group(r.group({w}), g)) throw PreconditionError("normalize_kernel: binding group at " + std::to_string(w) + " is not G");
  NormalizedKernel out;
  out.rho = detail::pairwise_relation(r, g.order(), jobs);
  out.twist = FibrewiseTwist::identity(d, w_size);
  for (const auto& cls : out.rho.classes()) {
    const Point w0 = cls.front();
    for (Point w : cls) {
      if (w == w0) continue;
      std::vector<std::int64_t> img(d, -1);
      r.group({w0, w}).chain().for_each_element([&](const Permutation& e) {
        img[e(0)] = static_cast<std::int64_t>(e(static_cast<Point>(d)) - d);
      });
      std::vector<Point> m(d);
      for (std::size_t p = 0; p < d; ++p) {
        if (img[p] < 0) throw InternalError("normalize_kernel: restriction is not a graph over G");
        m[p] = static_cast<Point>(img[p]);
      }
      Permutation mw(std::move(m));
      if (!normalizes(mw, g) || (holomorph && !holomorph->contains(mw)))
        throw InternalError("normalize_kernel: graph is not realized in the holomorph");
      out.twist.n[w] = std::move(mw);
    }
  }
  GeneratedGroup untwisted = twist_kernel(k, out.twist, g);
  GeneratedGroup target = kernel_from_congruence(out.rho, g);
  if (!same_group(untwisted, target)) throw InternalError("normalize_kernel: untwisted kernel differs from K_rho");
  return out;
}

// Input of almost_free_cover. F acts on X = [w0] x Delta laid out as
// i * |Delta| + delta for the i-th point of [w0] (sorted); B is the kernel of
// the induced map T: F -> Sym([w0]); chi sends the a_i (permutations of the
// local indices of [w0]) to cosets f_i B.
struct CoverData {
  GeneratedGroup f;
  GeneratedGroup b;
  std::vector<Permutation> chi_domain;
  std::vector<Permutation> chi_images;
};

// The group induced on [w0] (local indices) by its setwise stabilizer.
inline GeneratedGroup class_group(const GeneratedGroup& upsilon, const BlockSystem& rho, Point w0 = 0) {
  const auto& cls = rho.class_containing(w0);
  if (cls.size() == upsilon.degree()) return upsilon;
  GeneratedGroup stab = block_to_subgroup(upsilon, cls, w0);
  std::vector<Permutation> gens;
  for (const auto& s : stab.generators()) {
    Permutation r = restrict_to(s, cls);
    if (!r.is_identity()) gens.push_back(std::move(r));
  }
  return GeneratedGroup(cls.size(), std::move(gens));
}

// F = diag(G) x| A on [w0] x Delta, B = diag(G), chi = lift trivially.
inline CoverData diagonal_data(const GeneratedGroup& upsilon, const BlockSystem& rho, const GeneratedGroup& g) {
  GeneratedGroup a = class_group(upsilon, rho);
  const std::size_t k = a.degree();
  const std::size_t d = g.degree();
  std::vector<Permutation> bgens;
  for (const auto& x : g.generators()) {
    std::vector<Point> img(k * d);
    for (Point i = 0; i < k; ++i)
      for (Point p = 0; p < d; ++p) img[i * d + p] = static_cast<Point>(i * d + x(p));
    bgens.push_back(Permutation::unchecked(std::move(img)));
  }
  CoverData data;
  data.b = GeneratedGroup(k * d, bgens);
  std::vector<Permutation> fgens = bgens;
  for (const auto& s : a.generators()) {
    data.chi_domain.push_back(s);
    data.chi_images.push_back(permute_fibres(s, d));
    fgens.push_back(data.chi_images.back());
  }
  data.f = GeneratedGroup(k * d, std::move(fgens));
  return data;
}

namespace detail {

// Lexicographically smallest element g of U (images g(0), g(1), ...) with
// g(from) = to as sets.
inline Permutation lexmin_set_map(const StabilizerChain& c, std::size_t degree, const std::vector<Point>& from,
                                  const std::vector<Point>& to) {
  std::vector<bool> in_from(degree, false), in_to(degree, false);
  for (Point p : from) in_from[p] = true;
  for (Point p : to) in_to[p] = true;
  const auto& levels = c.levels();
  std::optional<Permutation> found;
  auto search = [&](auto&& self, std::size_t l, const Permutation& prefix) -> void {
    if (found) return;
    if (l == levels.size()) {
      for (Point p = 0; p < degree; ++p)
        if (in_from[p] != in_to[prefix(p)]) return;
      found = prefix;
      return;
    }
    const auto& lv = levels[l];
    std::vector<std::pair<Point, std::size_t>> order;
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) order.emplace_back(prefix(lv.orbit[i]), i);
    std::sort(order.begin(), order.end());
    for (auto [image, i] : order) {
      if (in_from[lv.base] != in_to[image]) continue;
      self(self, l + 1, prefix * lv.transversal[i]);
      if (found) return;
    }
  };
  search(search, 0, Permutation(degree));
  if (!found) throw PreconditionError("no element maps the class onto the base class");
  return *found;
}

}  // namespace detail

struct AlmostFreeResult {
  Cover cover;
  std::vector<Permutation> sections;  // per class (in rho order): maps the class onto [w0]
  bool m_injective = false;           // Upsilon acts faithfully on W/rho
};

// The almost-free cover with respect to rho built from (F, B, chi): each
// class r is a copy of X transported by the section element g_r, the kernel
// is B on every class, and a base generator u acts on class r through an
// F-preimage of g_{u r} u g_r^{-1} restricted to [w0].
inline AlmostFreeResult almost_free_cover(const GeneratedGroup& upsilon, const FibredDomain& domain,
                                          const BlockSystem& rho, const CoverData& data) {
  const std::size_t nw = domain.w_size();
  const std::size_t d = domain.delta;
  if (upsilon.degree() != nw || rho.size() != nw) throw DomainError("almost_free_cover: base sizes differ");
  if (!rho.is_invariant(upsilon.generators())) throw PreconditionError("almost_free_cover: rho is not Upsilon-invariant");
  const auto& r0 = rho.class_containing(0);
  const std::size_t k = r0.size();
  if (data.f.degree() != k * d || data.b.degree() != k * d) throw DomainError("almost_free_cover: X has the wrong size");

  // T: F -> Sym([w0]) and the checks on (F, B, chi).
  FibredDomain xdom{d, BaseStructure::set(k)};
  std::vector<Permutation> timg;
  for (const auto& x : data.f.generators()) timg.push_back(collapse_fibres(xdom, x));
  ActionHom t = induced_action(data.f, timg, k);
  GeneratedGroup a = class_group(upsilon, rho);
  if (!same_group(t.image(), a)) throw PreconditionError("almost_free_cover: T(F) is not the group induced on [w0]");
  if (!is_normal_subgroup(data.b, data.f)) throw PreconditionError("almost_free_cover: B is not normal in F");
  if (!same_group(t.kernel(), data.b)) throw PreconditionError("almost_free_cover: B is not the kernel of T");
  if (data.chi_domain.size() != data.chi_images.size()) throw DomainError("almost_free_cover: chi needs one image per generator");
  std::vector<Permutation> cover_gens = data.b.generators();
  for (std::size_t i = 0; i < data.chi_domain.size(); ++i) {
    if (!data.f.contains(data.chi_images[i])) throw PreconditionError("almost_free_cover: chi image outside F");
    if (collapse_fibres(xdom, data.chi_images[i]) != data.chi_domain[i])
      throw PreconditionError("almost_free_cover: chi image does not lie over its argument");
    cover_gens.push_back(data.chi_images[i]);
  }
  if (!same_group(GeneratedGroup(k, data.chi_domain), a)) throw PreconditionError("almost_free_cover: chi is not defined on all of A");
  if (GeneratedGroup(k * d, cover_gens).order() != data.f.order()) throw PreconditionError("almost_free_cover: chi is not surjective");
  std::vector<Point> first_block(d);
  for (Point p = 0; p < d; ++p) first_block[p] = p;
  GeneratedGroup b0(d);
  {
    std::vector<Permutation> gens;
    for (const auto& x : data.b.generators()) gens.push_back(restrict_to(x, first_block));
    b0 = GeneratedGroup(d, std::move(gens));
  }
  if (b0.order() != data.b.order()) throw PreconditionError("almost_free_cover: B is not faithful on one fibre");

  // Sections g_r.
  std::vector<Point> full_base(nw);
  for (Point p = 0; p < nw; ++p) full_base[p] = p;
  StabilizerChain uc = StabilizerChain::build(nw, upsilon.generators(), full_base);
  AlmostFreeResult out;
  std::vector<Permutation> section_inv;
  for (const auto& cls : rho.classes()) {
    Permutation s = rho.class_of(cls.front()) == rho.class_of(0) ? Permutation(nw) : detail::lexmin_set_map(uc, nw, cls, r0);
    section_inv.push_back(s.inverse());
    out.sections.push_back(std::move(s));
  }
  std::vector<std::int64_t> local(nw, -1);
  for (Point i = 0; i < k; ++i) local[r0[i]] = i;

  // Cover point (w, delta) is x = local(g_r w) * d + delta in the copy of X over r.
  auto to_x = [&](Point w, Point a) {
    Point cr = rho.class_of(w);
    return static_cast<Point>(local[out.sections[cr](w)] * d + a);
  };
  auto from_x = [&](Point cr, Point x) {
    Point w = section_inv[cr](r0[x / d]);
    return domain.index(w, static_cast<Point>(x % d));
  };

  std::vector<Permutation> gens;
  for (const auto& b : data.b.generators())
    for (Point cr = 0; cr < rho.class_count(); ++cr) {
      std::vector<Point> img(domain.size());
      for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<Point>(i);
      for (Point w : rho.classes()[cr])
        for (Point a = 0; a < d; ++a) img[domain.index(w, a)] = from_x(cr, b(to_x(w, a)));
      gens.push_back(Permutation(std::move(img)));
    }
  for (const auto& u : upsilon.generators()) {
    std::vector<Point> img(domain.size());
    for (Point cr = 0; cr < rho.class_count(); ++cr) {
      const Point cr2 = rho.class_of(u(rho.classes()[cr].front()));
      Permutation z = out.sections[cr2] * u * section_inv[cr];
      Permutation fz = t.preimage(restrict_to(z, r0));
      for (Point w : rho.classes()[cr])
        for (Point a = 0; a < d; ++a) img[domain.index(w, a)] = from_x(cr2, fz(to_x(w, a)));
    }
    gens.push_back(Permutation(std::move(img)));
  }

  std::vector<Permutation> on_classes;
  for (const auto& u : upsilon.generators()) {
    std::vector<Point> img(rho.class_count());
    for (Point cr = 0; cr < rho.class_count(); ++cr) img[cr] = rho.class_of(u(rho.classes()[cr].front()));
    on_classes.push_back(Permutation(std::move(img)));
  }
  out.m_injective = GeneratedGroup(rho.class_count(), std::move(on_classes)).order() == upsilon.order();
  out.cover = make_cover(domain, std::move(gens), upsilon);
  return out;
}

struct FibreProductResult {
  Cover fibre_product;
  Cover diagonal;
  bool kernels_equal = false;
  bool kernel_is_k_rho = false;
  bool groups_differ = false;
  std::size_t twists_searched = 0;
  bool conjugating_twist_found = false;
};

// G = T acting on itself by conjugation, H = Aut(T) on the same points.
// F2 = {(s, h) : s in A, h in H, hG = S(s)} for the surjection S of A onto
// H/G ~ C2 given by an index-2 subgroup of A. With trivial_s the outer part
// is dropped and the construction collapses to the diagonal one.
inline FibreProductResult fibre_product_cover(const GeneratedGroup& upsilon, const FibredDomain& domain,
                                              const BlockSystem& rho, const GeneratedGroup& t,
                                              bool trivial_s = false, std::size_t twist_budget = 64) {
  AutomorphismGroup aut = automorphism_group(t);
  const std::size_t d = aut.table.size();
  if (domain.delta != d) throw DomainError("fibre_product_cover: fibres must be the elements of T");
  const GeneratedGroup& g = aut.inner;
  std::optional<Permutation> outer;
  for (const auto& h : aut.aut.generators())
    if (!g.contains(h)) {
      outer = h;
      break;
    }
  if (!outer) throw PreconditionError("fibre_product_cover: T has no outer automorphism");

  GeneratedGroup a = class_group(upsilon, rho);
  const std::size_t k = a.degree();
  GeneratedGroup a_plus(k);
  bool have_plus = false;
  if (a.order() % 2 == 0 && a.order() <= caps().subgroup_order) {
    for (const auto& h : subgroups(a))
      if (h.order() * 2 == a.order()) {
        a_plus = h;
        have_plus = true;
        break;
      }
  }
  if (!have_plus) throw PreconditionError("fibre_product_cover: A has no subgroup of index 2");

  CoverData data;
  std::vector<Permutation> bgens;
  for (const auto& x : g.generators()) {
    std::vector<Point> img(k * d);
    for (Point i = 0; i < k; ++i)
      for (Point p = 0; p < d; ++p) img[i * d + p] = static_cast<Point>(i * d + x(p));
    bgens.push_back(Permutation::unchecked(std::move(img)));
  }
  data.b = GeneratedGroup(k * d, bgens);
  std::vector<Permutation> fgens = bgens;
  for (const auto& s : a.generators()) {
    const bool odd = !trivial_s && !a_plus.contains(s);
    std::vector<Point> img(k * d);
    for (Point i = 0; i < k; ++i)
      for (Point p = 0; p < d; ++p) img[i * d + p] = static_cast<Point>(s(i) * d + (odd ? (*outer)(p) : p));
    data.chi_domain.push_back(s);
    data.chi_images.push_back(Permutation(std::move(img)));
    fgens.push_back(data.chi_images.back());
  }
  data.f = GeneratedGroup(k * d, std::move(fgens));

  FibreProductResult out{almost_free_cover(upsilon, domain, rho, data).cover,
                         almost_free_cover(upsilon, domain, rho, diagonal_data(upsilon, rho, g)).cover};
  out.kernels_equal = same_group(out.fibre_product.kernel(), out.diagonal.kernel());
  out.kernel_is_k_rho = same_group(out.fibre_product.kernel(), kernel_from_congruence(rho, g));
  out.groups_differ = !same_group(out.fibre_product.autgroup(), out.diagonal.autgroup());

  // Bounded search for a class-constant outer twist conjugating one cover
  // onto the other.
  const std::size_t classes = rho.class_count();
  const std::size_t total = classes >= 20 ? twist_budget : std::min<std::size_t>(twist_budget, std::size_t{1} << classes);
  for (std::size_t mask = 0; mask < total && !out.conjugating_twist_found; ++mask) {
    ++out.twists_searched;
    FibrewiseTwist tw = FibrewiseTwist::identity(d, domain.w_size());
    for (Point w = 0; w < domain.w_size(); ++w)
      if (mask >> rho.class_of(w) & 1) tw.n[w] = *outer;
    GeneratedGroup moved = out.diagonal.autgroup().conjugated(tw.flat());
    out.conjugating_twist_found = same_group(moved, out.fibre_product.autgroup());
  }
  return out;
}

struct LiftResult {
  Cover cover;
  std::size_t m = 0;
  BlockSystem rho;        // on the n-tuples
  BlockSystem lifted_rho; // on the m-tuples
  std::size_t class_size = 0;
  CongruenceSpec lifted_spec;
  bool kernel_iso = false;
  bool binding_equals_fibre = false;
  bool class_correspondence = false;
  bool beta_bijective = false;
};

// M2 = Delta x Omega^(m), acted on by pairs (mu1(f), f): the fibre over an
// m-tuple is a copy of the fibre over its n-prefix.
inline LiftResult biinterp_lift(const Cover& base, std::size_t m, std::size_t jobs = 1) {
  const auto& b = base.domain().base;
  if (b.kind != BaseStructure::Kind::Tuples) throw PreconditionError("biinterp_lift: base is not a tuple space");
  const std::size_t n = b.arity;
  const std::size_t omega = b.omega;
  const std::size_t d = base.domain().delta;
  if (m <= n) throw PreconditionError("biinterp_lift: m must exceed n");
  if (omega < m + 1) throw PreconditionError("biinterp_lift: need omega >= m+1");
  TupleSpace s1(omega, n), s2(omega, m);

  LiftResult out;
  out.m = m;
  out.rho = extract_congruence(base, jobs);
  ClassifiedBlock cls = classify_block(s1, out.rho.class_containing(0));
  if (cls.spec.kind != CongruenceSpec::Kind::Finite) throw PreconditionError("biinterp_lift: rho_K is not of finite kind");

  std::vector<Point> prefix(s2.size());
  for (Point i = 0; i < s2.size(); ++i) {
    Tuple t(s2.tuple(i).begin(), s2.tuple(i).begin() + static_cast<std::ptrdiff_t>(n));
    prefix[i] = s1.index_of(t);
  }
  FibredDomain dom2{d, BaseStructure::tuples(omega, m)};
  const auto& fgens = base.autgroup().generators();
  std::vector<Permutation> lgens;
  for (const auto& f : fgens) {
    Permutation sigma = s1.letters_of(collapse_fibres(base.domain(), f));
    Permutation on_w2 = s2.act(sigma);
    std::vector<Point> img(dom2.size());
    for (Point w = 0; w < s2.size(); ++w)
      for (Point a = 0; a < d; ++a) img[dom2.index(w, a)] = dom2.index(on_w2(w), base.domain().offset_of(f(base.domain().index(prefix[w], a))));
    lgens.push_back(Permutation(std::move(img)));
  }
  out.cover = make_cover(dom2, lgens, s2.symmetric_group());

  // K2 -> K1 by reading each element on one m-tuple above every n-tuple.
  std::vector<std::int64_t> above(s1.size(), -1);
  for (Point w = 0; w < s2.size(); ++w)
    if (above[prefix[w]] < 0) above[prefix[w]] = w;
  const FibredDomain& dom1 = base.domain();
  bool consistent = true;
  std::vector<Permutation> k1_images;
  for (const auto& k2 : out.cover.kernel().generators()) {
    std::vector<Point> img(dom1.size());
    for (Point w1 = 0; w1 < s1.size(); ++w1)
      for (Point a = 0; a < d; ++a)
        img[dom1.index(w1, a)] = dom1.index(w1, dom2.offset_of(k2(dom2.index(static_cast<Point>(above[w1]), a))));
    Permutation k1(std::move(img));
    for (Point w = 0; w < s2.size() && consistent; ++w)
      for (Point a = 0; a < d; ++a)
        if (dom2.offset_of(k2(dom2.index(w, a))) != dom1.offset_of(k1(dom1.index(prefix[w], a)))) {
          consistent = false;
          break;
        }
    k1_images.push_back(std::move(k1));
  }
  out.kernel_iso = consistent && out.cover.kernel().order() == base.kernel().order() &&
                   same_group(GeneratedGroup(dom1.size(), k1_images), base.kernel());

  const Order g = base.restrictions().order({0});
  out.binding_equals_fibre = true;
  for (Point w = 0; w < s2.size() && out.binding_equals_fibre; ++w) {
    GeneratedGroup bw = out.cover.binding_group(w);
    GeneratedGroup fw = out.cover.fibre_group(w);
    out.binding_equals_fibre = bw.order() == g && same_group(bw, fw);
  }

  out.lifted_rho = extract_congruence(out.cover, jobs);
  out.class_correspondence = true;
  for (Point i = 0; i < s2.size() && out.class_correspondence; ++i)
    for (Point j = 0; j < s2.size(); ++j)
      if (out.lifted_rho.related(i, j) != out.rho.related(prefix[i], prefix[j])) {
        out.class_correspondence = false;
        break;
      }
  out.class_size = out.lifted_rho.class_containing(0).size();
  out.lifted_spec = classify_block(s2, out.lifted_rho.class_containing(0)).spec;

  ActionHom beta = induced_action(out.cover.autgroup(), fgens, dom1.size());
  out.beta_bijective = beta.kernel().order() == 1 && same_group(beta.image(), base.autgroup());
  return out;
}

}  // namespace coverlab
