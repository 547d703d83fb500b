#include <catch_amalgamated.hpp>

#include <random>

#include "coverlab/coverlab.hpp"
#include "oracles.hpp"

using namespace coverlab;

namespace {

// |K(S)| by restricting generators by hand and closing.
std::size_t oracle_restriction_order(const Cover& c, const std::vector<Point>& s) {
  const std::size_t d = c.domain().delta;
  std::vector<Permutation> gens;
  for (const auto& k : c.kernel().generators()) {
    std::vector<Point> img(s.size() * d);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (Point a = 0; a < d; ++a) img[i * d + a] = static_cast<Point>(i * d + k(c.domain().index(s[i], a)) % d);
    gens.emplace_back(std::move(img));
  }
  return oracle::closure(s.size() * d, gens).size();
}

std::size_t classes_meeting(const BlockSystem& rho, const std::vector<Point>& s) {
  std::set<Point> cls;
  for (Point w : s) cls.insert(rho.class_of(w));
  return cls.size();
}

Cover k_rho_cover(const TupleInstance& inst, const BlockSystem& rho, const GeneratedGroup& g) {
  return cover_from_kernel(kernel_from_congruence(rho, g), inst.upsilon, inst.domain);
}

}  // namespace

TEST_CASE("make_cover validates fibres and the induced group") {
  GeneratedGroup g = library::cyclic(3);
  GeneratedGroup ups = library::symmetric(3);
  FibredDomain dom{3, BaseStructure::set(3)};
  GeneratedGroup wr = imprimitive_wreath(g, ups);
  Cover c = make_cover(dom, wr.generators(), ups);
  CHECK(c.autgroup().order() == 27 * 6);
  CHECK(c.kernel().order() == 27);

  std::vector<Permutation> split = wr.generators();
  split.push_back(library::cycle(9, {0, 3}));
  CHECK_THROWS_AS(make_cover(dom, split, ups), FibrePreservationError);

  GeneratedGroup small = imprimitive_wreath(g, library::cyclic(3));
  CHECK_THROWS_AS(make_cover(dom, small.generators(), ups), ImageMismatchError);
  CHECK_THROWS_AS(make_cover(dom, wr.generators(), library::symmetric(4)), DomainError);
  CHECK_THROWS_AS(make_cover(FibredDomain{0, BaseStructure::set(3)}, {}, ups), DomainError);
}

TEST_CASE("kernel restrictions match a direct closure") {
  GeneratedGroup g = library::cyclic(3);
  TupleInstance inst(4, 2, g.degree());
  std::mt19937_64 rng(5);
  for (const auto& spec : predicted_congruences(2)) {
    BlockSystem rho = realize_congruence(spec, inst.space);
    Cover c = k_rho_cover(inst, rho, g);
    INFO(spec.describe());
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Point> s;
      const std::size_t k = 1 + rng() % 3;
      while (s.size() < k) {
        Point w = static_cast<Point>(rng() % inst.space.size());
        if (std::find(s.begin(), s.end(), w) == s.end()) s.push_back(w);
      }
      const std::size_t expected = oracle_restriction_order(c, s);
      CHECK(c.restrictions().order(s) == expected);
      std::uint64_t pow = 1;
      for (std::size_t i = 0; i < classes_meeting(rho, s); ++i) pow *= 3;
      CHECK(expected == pow);
    }
  }
}

TEST_CASE("restrictions reject points outside W and respect caps") {
  TupleInstance inst(4, 1, 3);
  Cover c = principal_cover(inst.upsilon, library::cyclic(3), inst.domain);
  CHECK_THROWS_AS(c.restrictions().group({7}), DomainError);
  Caps saved = caps();
  Caps tight = saved;
  tight.restriction_points = 5;
  set_caps(tight);
  CHECK_THROWS_AS(c.restrictions().group({0, 1}), CapExceeded);
  set_caps(saved);
}

TEST_CASE("extracted congruences") {
  SECTION("principal cover gives equality") {
    TupleInstance inst(5, 2, 5);
    Cover c = principal_cover(inst.upsilon, library::cyclic(5), inst.domain);
    CHECK(extract_congruence(c).is_equality());
  }
  SECTION("diagonal kernel gives the universal relation") {
    TupleInstance inst(5, 1, 60);
    GeneratedGroup g = library::a5_regular();
    Cover c = k_rho_cover(inst, BlockSystem::universal(5), g);
    CHECK(extract_congruence(c).is_universal());
    CHECK(c.kernel().order() == 60);
  }
  SECTION("every predicted congruence is recovered, serially and in parallel") {
    GeneratedGroup g = library::cyclic(3);
    TupleInstance inst(5, 2, 3);
    for (const auto& spec : predicted_congruences(2)) {
      BlockSystem rho = realize_congruence(spec, inst.space);
      Cover c = k_rho_cover(inst, rho, g);
      CHECK(extract_congruence(c) == rho);
      CHECK(extract_congruence(c, 4) == rho);
    }
  }
  SECTION("a kernel that is not normalized by the base is rejected") {
    GeneratedGroup ups = library::symmetric(2);
    FibredDomain dom{2, BaseStructure::set(2)};
    GeneratedGroup k(4, {library::cycle(4, {0, 1})});
    CHECK_THROWS_AS(cover_from_kernel(k, ups, dom), NormalizationError);
    Cover c = make_cover(dom, {library::cycle(4, {0, 1}), library::cycle(4, {0, 2}) * library::cycle(4, {1, 3})}, ups);
    CHECK(c.kernel().order() == 4);
    CHECK(extract_congruence(c).is_equality());
  }
  SECTION("binding groups of different orders are rejected") {
    FibredDomain dom{2, BaseStructure::set(2)};
    Cover c = make_cover(dom, {library::cycle(4, {0, 1})}, GeneratedGroup(2));
    CHECK_THROWS_AS(extract_congruence(c), PreconditionError);
  }
}

TEST_CASE("binding and fibre groups") {
  TupleInstance inst(5, 2, 3);
  GeneratedGroup g = library::cyclic(3);
  Cover c = principal_cover(inst.upsilon, g, inst.domain);
  for (Point w : {Point{0}, Point{7}}) {
    CHECK(same_group(c.binding_group(w), g));
    CHECK(same_group(c.fibre_group(w), g));
  }
  RestrictionProfile p = restrict_kernel(c, {0, 1});
  CHECK(p.group.order() == 9);
  CHECK_FALSE(is_iso_to_G(p, g));
  Cover u = k_rho_cover(inst, BlockSystem::universal(inst.space.size()), g);
  CHECK(is_iso_to_G(restrict_kernel(u, {0, 1, 2}), g));
}

TEST_CASE("dependence and closure") {
  GeneratedGroup g = library::cyclic(3);
  TupleInstance inst(4, 2, 3);
  Cover principal = principal_cover(inst.upsilon, g, inst.domain);
  CHECK(closure(principal, {0, 5}) == std::vector<Point>{0, 5});
  CHECK_FALSE(dependence(principal, 1, {0}));
  CHECK(dependence(principal, 0, {0}));

  BlockSystem rho = realize_congruence(CongruenceSpec::infinite({0}, GeneratedGroup(2)), inst.space);
  Cover c = k_rho_cover(inst, rho, g);
  CHECK(closure(c, {0}) == rho.class_containing(0));
  CHECK(closure(c, {}) == std::vector<Point>{});
  Cover u = k_rho_cover(inst, BlockSystem::universal(inst.space.size()), g);
  CHECK(closure(u, {3}).size() == inst.space.size());
}

TEST_CASE("almost-free check") {
  GeneratedGroup g = library::a5_regular();
  TupleInstance inst(4, 2, g.degree());
  for (const auto& spec : predicted_congruences(2)) {
    BlockSystem rho = realize_congruence(spec, inst.space);
    Cover c = k_rho_cover(inst, rho, g);
    INFO(spec.describe());
    AlmostFreeReport rep = almost_free_check(c, rho);
    CHECK(rep.passed);
    CHECK(rep.classes_checked == rho.class_count());
    if (!rho.is_universal()) CHECK(rep.pairs_checked > 0);
  }
  BlockSystem pairs = realize_congruence(predicted_congruences(2)[1], inst.space);
  Cover principal = principal_cover(inst.upsilon, g, inst.domain);
  AlmostFreeReport bad = almost_free_check(principal, pairs);
  CHECK_FALSE(bad.passed);
  CHECK(bad.witness.find("class of") != std::string::npos);

  Cover coarse = k_rho_cover(inst, BlockSystem::universal(inst.space.size()), g);
  AlmostFreeReport cross = almost_free_check(coarse, BlockSystem::equality(inst.space.size()), true);
  CHECK_FALSE(cross.passed);
  CHECK(cross.witness.find("pair=") == 0);
  CHECK_THROWS_AS(almost_free_check(coarse, BlockSystem::equality(3)), DomainError);
}

TEST_CASE("pregeometry check on K_rho covers") {
  GeneratedGroup g = library::cyclic(3);
  TupleInstance inst(4, 2, 3);
  for (const auto& spec : predicted_congruences(2)) {
    BlockSystem rho = realize_congruence(spec, inst.space);
    Cover c = k_rho_cover(inst, rho, g);
    INFO(spec.describe());
    PregeometryReport rep = pregeometry_check(c, 2, rho);
    CHECK(rep.passed);
    CHECK(rep.violations.empty());
    // 1 + 12 + 66 subsets of size at most 2
    CHECK(rep.subsets_checked == 79);
  }
  // Against the wrong partition the class-union check must fail.
  Cover c = k_rho_cover(inst, BlockSystem::universal(inst.space.size()), g);
  PregeometryReport rep = pregeometry_check(c, 1, BlockSystem::equality(inst.space.size()));
  CHECK_FALSE(rep.passed);
  CHECK(rep.violations.front().find("class union") == 0);
}

TEST_CASE("cover JSON round trip") {
  GeneratedGroup g = library::cyclic(3);
  TupleInstance inst(4, 2, 3);
  BlockSystem rho = realize_congruence(predicted_congruences(2)[1], inst.space);
  Cover c = k_rho_cover(inst, rho, g);
  json j = to_json(c);
  Cover back = cover_from_json(j);
  CHECK(back.domain().delta == 3);
  CHECK(back.domain().base == c.domain().base);
  CHECK(same_group(back.autgroup(), c.autgroup()));
  CHECK(same_group(back.upsilon(), c.upsilon()));
  CHECK(same_group(back.kernel(), c.kernel()));
  CHECK(to_json(back) == j);

  json broken = j;
  broken["delta"] = 4;
  CHECK_THROWS_AS(cover_from_json(broken), Error);
  json missing = j;
  missing.erase("generators");
  CHECK_THROWS_AS(cover_from_json(missing), ParseError);
}
