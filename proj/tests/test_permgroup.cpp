#include <catch_amalgamated.hpp>

#include <random>
#include <unordered_map>

#include "coverlab/coverlab.hpp"
#include "oracles.hpp"

using namespace coverlab;

namespace {

GeneratedGroup wreath_c2_s3() { return imprimitive_wreath(library::cyclic(2), library::symmetric(3)); }

std::vector<Permutation> chain_elements(const GeneratedGroup& g) {
  std::vector<Permutation> out;
  g.chain().for_each_element([&](const Permutation& p) { out.push_back(p); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("permutations compose left to right as functions") {
  Permutation a({1, 2, 0});
  Permutation b({1, 0, 2});
  CHECK((a * b)(0) == a(b(0)));
  CHECK(a * a.inverse() == Permutation(3));
  CHECK(a.order() == 3);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), DomainError);
  CHECK_THROWS_AS(a * Permutation(4), DomainError);
}

TEST_CASE("random permutations satisfy p * p^-1 = id") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Permutation p = oracle::random_permutation(1 + rng() % 30, rng);
    CHECK(p * p.inverse() == Permutation(p.degree()));
    CHECK(p.inverse() * p == Permutation(p.degree()));
  }
}

TEST_CASE("cycle notation round-trips") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    Permutation p = oracle::random_permutation(12, rng);
    CHECK(parse_cycles(format_cycles(p), 12) == p);
  }
  CHECK(format_cycles(Permutation(4)) == "()");
  CHECK(parse_cycles("(0,1)(1,2)", 3) == Permutation({1, 2, 0}));
  CHECK_THROWS_AS(parse_cycles("(0 5)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(0 1", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(0 0)", 3), ParseError);
  GroupSpec spec = parse_group_spec("# Sym_3\ndegree: 3\n(0 1 2)\n(0 1)\n");
  CHECK(spec.degree == 3);
  CHECK(spec.generators.size() == 2);
  CHECK(parse_group_spec(format_group_spec(spec)).generators == spec.generators);
  CHECK_THROWS_AS(parse_group_spec("(0 1)\n"), ParseError);
}

TEST_CASE("group orders") {
  CHECK(library::symmetric(4).order() == 24);
  CHECK(library::a5_regular().order() == 60);
  CHECK(library::a5_regular().degree() == 60);
  CHECK(GeneratedGroup(7).order() == 1);
  CHECK(library::alternating(6).order() == 360);
  CHECK(library::cyclic(9).order() == 9);
}

TEST_CASE("membership") {
  CHECK(library::symmetric(3).contains(Permutation({1, 2, 0})));
  CHECK_FALSE(library::alternating(4).contains(Permutation({1, 0, 2, 3})));
  GeneratedGroup stab = pointwise_stabilizer(library::symmetric(5), {0});
  CHECK_FALSE(stab.contains(Permutation({1, 0, 2, 3, 4})));
  CHECK(stab.contains(Permutation({0, 2, 1, 3, 4})));
}

TEST_CASE("membership agrees with parity over all of Sym_5") {
  GeneratedGroup a5 = library::alternating(5);
  for (const auto& p : oracle::all_permutations(5)) CHECK(a5.contains(p) == oracle::is_even(p));
}

TEST_CASE("chain invariants hold for a spread of groups") {
  std::vector<GeneratedGroup> groups{library::symmetric(6),  library::alternating(7), wreath_c2_s3(),
                                     library::a5_regular(), library::a5_conjugation(), library::symmetric_on_pairs(5),
                                     library::cyclic(12)};
  for (const auto& g : groups) {
    const auto& c = g.chain();
    const auto& levels = c.levels();
    Order prod = 1;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      prod *= levels[i].orbit.size();
      for (std::size_t s : levels[i].gens)
        for (std::size_t j = 0; j < i; ++j) CHECK(c.strong_generators()[s](levels[j].base) == levels[j].base);
    }
    CHECK(prod == g.order());
    for (const auto& x : g.generators()) CHECK(g.contains(x));
  }
}

TEST_CASE("enumeration matches an independent closure at small order") {
  std::vector<GeneratedGroup> groups{library::symmetric(5), wreath_c2_s3(), library::symmetric_on_pairs(4),
                                     library::alternating(4)};
  for (const auto& g : groups) {
    auto ref = oracle::closure(g.degree(), g.generators());
    std::vector<Permutation> expected(ref.begin(), ref.end());
    CHECK(chain_elements(g) == expected);
    CHECK(g.elements() == expected);
    for (const auto& p : oracle::all_permutations(g.degree())) CHECK(g.contains(p) == (ref.count(p) == 1));
  }
}

TEST_CASE("pointwise stabilizers") {
  CHECK(pointwise_stabilizer(library::symmetric(5), {0}).order() == 24);
  GeneratedGroup s4 = library::symmetric(4);
  CHECK(same_group(pointwise_stabilizer(s4, {}), s4));
  // Sym(7) on 7 letters fixing the letters of a 3-tuple.
  CHECK(pointwise_stabilizer(library::symmetric(7), {2, 4, 5}).order() == 24);
}

TEST_CASE("setwise stabilizers") {
  CHECK(setwise_stabilizer(library::symmetric(5), {0, 1}).order() == 12);
  CHECK(setwise_stabilizer(library::symmetric(7), {1, 3, 6}).order() == 144);
  GeneratedGroup a4 = library::alternating(4);
  std::size_t count = 0;
  for (const auto& p : oracle::closure(4, a4.generators())) {
    const bool keeps = (p(0) == 0 || p(0) == 1) && (p(1) == 0 || p(1) == 1);
    count += keeps;
  }
  CHECK(setwise_stabilizer(a4, {0, 1}).order() == count);
  CHECK(count == 2);
}

TEST_CASE("stabilizer sandwich and index bound") {
  std::mt19937_64 rng(3);
  std::vector<GeneratedGroup> groups{library::symmetric(6), wreath_c2_s3(), library::symmetric_on_pairs(5),
                                     library::alternating(6)};
  for (const auto& g : groups)
    for (int t = 0; t < 10; ++t) {
      std::vector<Point> s;
      for (Point p = 0; p < g.degree(); ++p)
        if (rng() % 3 == 0) s.push_back(p);
      GeneratedGroup pw = pointwise_stabilizer(g, s);
      GeneratedGroup sw = setwise_stabilizer(g, s);
      CHECK(sw.contains_group(pw));
      CHECK(g.contains_group(sw));
      CHECK(Order(oracle::factorial(s.size())) % (sw.order() / pw.order()) == 0);
      for (const auto& x : sw.generators())
        for (Point p : s) CHECK(std::find(s.begin(), s.end(), x(p)) != s.end());
    }
}

TEST_CASE("induced action: wreath product collapsing fibres") {
  GeneratedGroup g = library::a5_regular();
  GeneratedGroup u = library::symmetric(5);
  GeneratedGroup w = imprimitive_wreath(g, u);
  FibredDomain dom{60, BaseStructure::set(5)};
  std::vector<Permutation> images;
  for (const auto& x : w.generators()) images.push_back(collapse_fibres(dom, x));
  ActionHom h = induced_action(w, images, 5);
  CHECK(same_group(h.image(), u));
  CHECK(h.kernel().order() == pow(Order(60), 5));
  CHECK(w.order() == h.image().order() * h.kernel().order());
}

TEST_CASE("induced action: trivial action has the whole group as kernel") {
  GeneratedGroup g = library::symmetric(4);
  std::vector<Permutation> images(g.generators().size(), Permutation(3));
  ActionHom h = induced_action(g, images, 3);
  CHECK(h.image().order() == 1);
  CHECK(same_group(h.kernel(), g));
}

TEST_CASE("induced action: diagonal A5 with a swap on two fibres") {
  GeneratedGroup g = library::a5_regular();
  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) {
    std::vector<Point> img(120);
    for (Point p = 0; p < 60; ++p) {
      img[p] = x(p);
      img[60 + p] = 60 + x(p);
    }
    gens.emplace_back(std::move(img));
  }
  gens.push_back(permute_fibres(Permutation({1, 0}), 60));
  GeneratedGroup f(120, gens);
  FibredDomain dom{60, BaseStructure::set(2)};
  std::vector<Permutation> images;
  for (const auto& x : gens) images.push_back(collapse_fibres(dom, x));
  ActionHom h = induced_action(f, images, 2);
  CHECK(h.kernel().order() == 60);
  CHECK(h.image().order() == 2);
  CHECK(f.order() == 120);
}

TEST_CASE("induced action is well defined and its kernel acts trivially") {
  // Sym_4 acting on the three ways to split {0,1,2,3} into two pairs.
  GeneratedGroup s4 = library::symmetric(4);
  auto split_of = [](const Permutation& x, Point k) {
    const std::array<std::array<Point, 4>, 3> splits{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    std::array<Point, 4> img{x(splits[k][0]), x(splits[k][1]), x(splits[k][2]), x(splits[k][3])};
    for (Point j = 0; j < 3; ++j) {
      auto pair_of = [&](Point a) {
        for (int t = 0; t < 4; ++t)
          if (splits[j][t] == a) return t / 2;
        return -1;
      };
      if (pair_of(img[0]) == pair_of(img[1])) return j;
    }
    return Point{99};
  };
  auto act = [&](const Permutation& x) {
    std::vector<Point> img(3);
    for (Point k = 0; k < 3; ++k) img[k] = split_of(x, k);
    return Permutation(std::move(img));
  };
  std::vector<Permutation> images;
  for (const auto& x : s4.generators()) images.push_back(act(x));
  ActionHom h = induced_action(s4, images, 3);
  CHECK(h.kernel().order() == 4);
  CHECK(h.image().order() == 6);
  for (const auto& k : h.kernel().elements()) CHECK(act(k).is_identity());

  std::mt19937_64 rng(4);
  std::map<Permutation, Permutation> seen;
  for (int t = 0; t < 2000; ++t) {
    Permutation src(4), dst(3);
    for (int len = 1 + rng() % 8; len > 0; --len) {
      std::size_t i = rng() % s4.generators().size();
      src = src * s4.generators()[i];
      dst = dst * images[i];
    }
    auto [it, fresh] = seen.emplace(src, dst);
    if (!fresh) CHECK(it->second == dst);
    CHECK(act(src) == dst);
    Permutation lift = h.preimage(dst);
    CHECK(act(lift) == dst);
  }
  CHECK_THROWS_AS(h.preimage(Permutation(4)), DomainError);
}

TEST_CASE("induced action rejects maps that are not homomorphisms") {
  GeneratedGroup s3 = library::symmetric(3);
  std::vector<Permutation> images;
  for (std::size_t i = 0; i < s3.generators().size(); ++i) images.push_back(i == 0 ? Permutation({1, 0}) : Permutation(2));
  bool consistent = true;
  try {
    induced_action(s3, images, 2);
  } catch (const PreconditionError&) {
    consistent = false;
  }
  // Sym_3 -> C2 sending the first generator to the swap is a homomorphism
  // only if that generator is odd.
  CHECK(consistent == !oracle::is_even(s3.generators()[0]));
  GeneratedGroup c3(3, {Permutation({1, 2, 0})});
  CHECK_THROWS_AS(induced_action(c3, {Permutation({1, 0})}, 2), PreconditionError);
}

TEST_CASE("imprimitive wreath orders") {
  CHECK(wreath_c2_s3().order() == 48);
  CHECK(imprimitive_wreath(library::a5_regular(), library::symmetric(5)).order() == pow(Order(60), 5) * 120);
  CHECK(imprimitive_wreath(library::cyclic(3), GeneratedGroup(4)).order() == 81);
}

TEST_CASE("subgroup counts against closure oracles") {
  auto s3 = library::symmetric(3);
  auto ref3 = oracle::subgroups_by_subsets(oracle::closure(3, s3.generators()));
  CHECK(subgroups(s3).size() == ref3.size());
  CHECK(ref3.size() == 6);
  auto s4 = library::symmetric(4);
  auto ref4 = oracle::two_generated_subgroups(oracle::closure(4, s4.generators()));
  auto mine = subgroups(s4);
  CHECK(mine.size() == ref4.size());
  CHECK(ref4.size() == 30);
  std::set<std::set<Permutation>> as_sets;
  for (const auto& h : mine) {
    auto el = h.elements();
    as_sets.insert(std::set<Permutation>(el.begin(), el.end()));
  }
  CHECK(as_sets == ref4);
  CHECK(subgroups(library::cyclic(2)).size() == 2);
}

TEST_CASE("subgroup list is closed under conjugation") {
  for (const auto& g : {library::symmetric(4), wreath_c2_s3()}) {
    auto subs = subgroups(g);
    std::set<std::vector<Permutation>> sets;
    for (const auto& h : subs) sets.insert(h.elements());
    for (const auto& h : subs)
      for (const auto& x : g.generators()) CHECK(sets.count(h.conjugated(x).elements()) == 1);
  }
}

TEST_CASE("subgroup enumeration respects its cap") {
  CHECK_THROWS_AS(subgroups(library::symmetric(6)), CapExceeded);
}

TEST_CASE("automorphism groups against a generator-image search") {
  auto a5 = library::alternating(5);
  AutomorphismGroup aut = automorphism_group(a5);
  CHECK(aut.aut.order() == oracle::automorphism_count(5, a5.generators()));
  CHECK(aut.aut.order() == 120);
  CHECK(aut.outer_order() == 2);
  auto s3 = library::symmetric(3);
  AutomorphismGroup a3 = automorphism_group(s3);
  CHECK(a3.aut.order() == oracle::automorphism_count(3, s3.generators()));
  CHECK(a3.outer_order() == 1);
  CHECK(automorphism_group(library::cyclic(2)).aut.order() == 1);
  CHECK(automorphism_group(library::cyclic(5)).aut.order() == oracle::automorphism_count(5, library::cyclic(5).generators()));
}

TEST_CASE("holomorphs of regular groups") {
  CHECK(normalizer_in_sym_regular(library::regular_action(library::cyclic(3))).order() == 6);
  GeneratedGroup a5 = library::a5_regular();
  GeneratedGroup hol = normalizer_in_sym_regular(a5);
  CHECK(hol.order() == 60 * automorphism_group(library::alternating(5)).aut.order());
  CHECK(is_normal_subgroup(a5, hol));
  CHECK(normalizer_in_sym_regular(GeneratedGroup(1)).order() == 1);
}

TEST_CASE("holomorph equals the brute-force normalizer at small order") {
  std::vector<GeneratedGroup> regs{library::regular_action(library::cyclic(4)),
                                   library::regular_action(GeneratedGroup(4, {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})})),
                                   library::regular_action(library::symmetric(3)), library::regular_action(library::cyclic(5))};
  for (const auto& g : regs) {
    GeneratedGroup n = normalizer_in_sym_regular(g);
    CHECK(n.order() == oracle::normalizer_order(g.degree(), g.generators()));
    CHECK(is_normal_subgroup(g, n));
  }
}

TEST_CASE("holomorph needs a regular group") {
  CHECK_THROWS_AS(normalizer_in_sym_regular(library::symmetric(3)), PreconditionError);
}

TEST_CASE("predicates") {
  GroupPredicates s5 = predicates(library::symmetric(5));
  CHECK(s5.is_transitive);
  CHECK(s5.is_primitive);
  CHECK_FALSE(s5.is_simple);
  CHECK_FALSE(predicates(wreath_c2_s3()).is_primitive);
  GroupPredicates a5 = predicates(library::a5_regular());
  CHECK(a5.is_simple);
  CHECK_FALSE(a5.is_abelian);
  CHECK(a5.is_regular);
  CHECK_FALSE(a5.is_primitive);
  CHECK_FALSE(predicates(library::alternating(4)).is_simple);
  CHECK(predicates(library::cyclic(7)).is_simple);
  CHECK(predicates(library::cyclic(7)).is_abelian);
  CHECK(predicates(library::alternating(5)).is_primitive);
}

TEST_CASE("group keywords") {
  CHECK(library::from_keyword("a5-regular").order() == 60);
  CHECK(library::from_keyword("a5-conjugation").degree() == 60);
  CHECK(library::from_keyword("alt:5").order() == 60);
  CHECK(library::from_keyword("pairs:4").degree() == 6);
  CHECK(library::from_keyword("wreath:c:2/sym:3").order() == 48);
  CHECK(library::from_keyword("wreath:sym:3/sym:2").order() == 72);
  CHECK_THROWS_AS(library::from_keyword("sym:x"), ParseError);
  CHECK_THROWS_AS(library::from_keyword("sym:3x"), ParseError);
  CHECK_THROWS_AS(library::from_keyword("foo"), ParseError);
  CHECK_THROWS_AS(library::from_keyword("wreath:c:2"), ParseError);
}

TEST_CASE("caps parse and reject unknown keys") {
  Caps c = Caps::from_string("subgroup_order=720,bruteforce_points=256");
  CHECK(c.subgroup_order == 720);
  CHECK(c.bruteforce_points == 256);
  CHECK_THROWS_AS(Caps::from_string("nope=1"), ParseError);
  CHECK_THROWS_AS(Caps::from_string("subgroup_order"), ParseError);
}
