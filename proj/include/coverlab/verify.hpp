#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coverlab/json_io.hpp"
#include "coverlab/parallel.hpp"
#include "coverlab/recipes.hpp"
#include "coverlab/small_groups.hpp"

namespace coverlab {

enum class Status { Pass, Fail, Unverified };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Unverified:
      break;
  }
  return "unverified";
}

struct Verdict {
  std::string suite;
  json instance;
  std::string check;
  Status status = Status::Pass;
  json witness;
  std::string replay;
};

inline json to_json(const Verdict& v) {
  return json{{"suite", v.suite},   {"instance", v.instance}, {"check", v.check},
              {"status", status_name(v.status)}, {"witness", v.witness}, {"replay", v.replay}};
}

inline json report_json(const std::vector<Verdict>& verdicts) {
  json out = json::array();
  for (const auto& v : verdicts) out.push_back(to_json(v));
  return out;
}

inline bool any_fail(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts)
    if (v.status == Status::Fail) return true;
  return false;
}

struct SuiteConfig {
  std::string suite;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::vector<std::size_t> omega_sizes;
  std::string group = "a5-regular";
  std::string upsilon;
  std::uint64_t seed = 7;
  std::size_t twists = 20;
  std::size_t pregeometry_twists = 1;
  std::size_t subset_bound = 3;
  bool exhaustive = false;
  std::size_t jobs = 1;
  std::string fault;
  std::vector<std::string> test_groups = {"pairs:4", "wreath:sym:3/sym:2", "wreath:c:2/sym:3"};
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"main-theorem", "primitive-corollary", "pregeometry", "blocks",
                                                 "constructions"};
  return names;
}

inline const std::vector<std::string>& fault_names() {
  static const std::vector<std::string> names = {"drop-kernel-generator"};
  return names;
}

namespace detail {

inline std::size_t default_n(const std::string& suite) {
  return suite == "primitive-corollary" ? 1 : 2;
}

inline std::string replay_command(const SuiteConfig& cfg, std::size_t n, std::optional<std::size_t> omega) {
  std::string s = "coverlab verify --suite " + cfg.suite + " --n " + std::to_string(n);
  if (omega) s += " --omega " + std::to_string(*omega);
  if (cfg.m) s += " --m " + std::to_string(*cfg.m);
  s += " --group " + cfg.group;
  if (!cfg.upsilon.empty()) s += " --upsilon " + cfg.upsilon;
  s += " --seed " + std::to_string(cfg.seed) + " --twists " + std::to_string(cfg.twists);
  if (cfg.exhaustive) s += " --exhaustive";
  if (!cfg.fault.empty()) s += " --inject-fault " + cfg.fault;
  return s;
}

inline std::mt19937_64 instance_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint64_t> words{seed};
  words.insert(words.end(), tags.begin(), tags.end());
  std::vector<std::uint32_t> halves;
  for (auto w : words) {
    halves.push_back(static_cast<std::uint32_t>(w));
    halves.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  std::seed_seq seq(halves.begin(), halves.end());
  return std::mt19937_64(seq);
}

// Collects verdicts for one instance.
struct Recorder {
  std::string suite;
  json instance;
  std::string replay;
  std::vector<Verdict> out;

  void add(std::string check, Status s, json witness = json::object()) {
    out.push_back({suite, instance, std::move(check), s, std::move(witness), replay});
  }
  void check(std::string name, bool ok, json witness = json::object()) {
    add(std::move(name), ok ? Status::Pass : Status::Fail, std::move(witness));
  }
};

// First pair on which two partitions disagree.
inline std::optional<std::pair<Point, Point>> first_difference(const BlockSystem& a, const BlockSystem& b) {
  for (Point i = 0; i < a.size(); ++i)
    for (Point j = i + 1; j < a.size(); ++j)
      if (a.related(i, j) != b.related(i, j)) return std::make_pair(i, j);
  return std::nullopt;
}

inline std::vector<Permutation> maybe_corrupt(std::vector<Permutation> gens, const std::string& fault) {
  if (fault == "drop-kernel-generator" && !gens.empty()) gens.pop_back();
  return gens;
}

// Phi on a kernel given by generators: compares rho_K with `expected` and
// reports the first disagreement as a witness.
inline std::pair<bool, json> phi_matches(const std::vector<Permutation>& kgens, const GeneratedGroup& g, std::size_t w_size,
                                         const BlockSystem& expected, std::size_t jobs) {
  KernelRestrictions r(kgens, g.degree(), w_size);
  for (Point w = 0; w < w_size; ++w)
    if (!same_group(r.group({w}), g))
      return {false, json{{"reason", "binding group is not G"}, {"point", w}, {"binding_order", r.order({w}).str()}}};
  BlockSystem rho;
  try {
    rho = pairwise_relation(r, g.order(), jobs);
  } catch (const TheoremViolation& e) {
    return {false, json{{"reason", e.what()}, {"pair", e.witness()}}};
  }
  if (auto d = first_difference(rho, expected))
    return {false, json{{"reason", "extracted relation differs"},
                        {"pair", {d->first, d->second}},
                        {"expected_related", expected.related(d->first, d->second)}}};
  return {true, json{{"classes", rho.class_count()}}};
}

inline json precondition_witness(const std::string& why) { return json{{"precondition", why}}; }

inline void main_theorem_instance(const SuiteConfig& cfg, std::size_t n, std::size_t omega, Recorder& rec) {
  GeneratedGroup g = library::from_keyword(cfg.group);
  GroupPredicates p = predicates(g);
  if (!p.is_regular || !p.is_simple || p.is_abelian) {
    rec.add("precondition", Status::Unverified, precondition_witness("G must be simple, non-abelian and regular"));
    return;
  }
  TupleInstance inst(omega, n, g.degree());
  GeneratedGroup hol = normalizer_in_sym_regular(g);
  auto specs = predicted_congruences(n);
  rec.add("predicted congruences", Status::Pass, json{{"count", specs.size()}});
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const std::string name = specs[i].describe();
    BlockSystem rho = realize_congruence(specs[i], inst.space);
    GeneratedGroup k_rho = kernel_from_congruence(rho, g);
    Cover cover = psi_cover(inst.upsilon, inst.domain, rho, g);
    if (!same_group(cover.kernel(), k_rho)) {
      rec.check("roundtrip " + name, false, json{{"reason", "kernel of Psi(rho) is not K_rho"}});
      continue;
    }
    auto [ok, witness] = phi_matches(maybe_corrupt(cover.kernel().generators(), cfg.fault), g, inst.domain.w_size(), rho, cfg.jobs);
    rec.check("roundtrip " + name, ok, witness);

    auto rng = instance_rng(cfg.seed, {n, omega, i});
    std::vector<Permutation> base_gens = maybe_corrupt(k_rho.generators(), cfg.fault);
    GeneratedGroup base(k_rho.degree(), base_gens);
    json twist_witness = json{{"twists", cfg.twists}};
    bool twists_ok = true;
    for (std::size_t t = 0; t < cfg.twists && twists_ok; ++t) {
      FibrewiseTwist tw = random_twist(hol, inst.domain.w_size(), rng);
      GeneratedGroup twisted = twist_kernel(base, tw, g);
      try {
        NormalizedKernel nk = normalize_kernel(twisted, g, inst.domain.w_size(), &hol, cfg.jobs);
        if (auto d = first_difference(nk.rho, rho)) {
          twists_ok = false;
          twist_witness = json{{"twist", t}, {"pair", {d->first, d->second}}};
        } else if (!same_group(twist_kernel(twisted, nk.twist, g), k_rho)) {
          twists_ok = false;
          twist_witness = json{{"twist", t}, {"reason", "untwisted kernel differs from K_rho"}};
        }
      } catch (const Error& e) {
        twists_ok = false;
        twist_witness = json{{"twist", t}, {"reason", e.what()}};
      }
    }
    rec.check("twists " + name, twists_ok, twist_witness);
  }
}

inline void primitive_corollary_instance(const SuiteConfig& cfg, std::size_t n, std::optional<std::size_t> omega,
                                         Recorder& rec) {
  GeneratedGroup g = library::from_keyword(cfg.group);
  GeneratedGroup upsilon;
  FibredDomain domain;
  if (!cfg.upsilon.empty()) {
    upsilon = library::from_keyword(cfg.upsilon);
    domain = FibredDomain{g.degree(), BaseStructure::set(upsilon.degree())};
  } else {
    TupleInstance inst(*omega, n, g.degree());
    upsilon = inst.upsilon;
    domain = inst.domain;
  }
  if (!is_primitive(upsilon)) {
    rec.add("precondition", Status::Unverified, precondition_witness("Upsilon is not primitive"));
    return;
  }
  GroupPredicates p = predicates(g);
  if (!p.is_regular || !p.is_simple || p.is_abelian) {
    rec.add("precondition", Status::Unverified, precondition_witness("G must be simple, non-abelian and regular"));
    return;
  }
  const std::size_t nw = domain.w_size();
  auto systems = all_congruences_bruteforce(upsilon);
  BlockSystem eq = BlockSystem::equality(nw), un = BlockSystem::universal(nw);
  const bool only_trivial = systems.size() == (nw > 1 ? 2u : 1u) &&
                            std::find(systems.begin(), systems.end(), eq) != systems.end() &&
                            std::find(systems.begin(), systems.end(), un) != systems.end();
  rec.check("congruences are trivial", only_trivial, json{{"count", systems.size()}});

  const Order full = pow(Order(g.order()), static_cast<unsigned>(nw));
  std::set<std::string> orders;
  bool ok = true;
  json witness = json::object();
  GeneratedGroup hol = normalizer_in_sym_regular(g);
  auto rng = instance_rng(cfg.seed, {n, omega.value_or(0), 0xC0});
  for (const auto& rho : systems) {
    Cover cover = psi_cover(upsilon, domain, rho, g);
    std::vector<Cover> variants{cover};
    for (std::size_t t = 0; t < cfg.twists; ++t) variants.push_back(twist_cover(cover, random_twist(hol, nw, rng), g));
    for (std::size_t v = 0; v < variants.size() && ok; ++v) {
      std::vector<Permutation> kg = maybe_corrupt(variants[v].kernel().generators(), cfg.fault);
      GeneratedGroup k(domain.size(), kg);
      Order o = k.order();
      orders.insert(o.str());
      auto [same, w] = phi_matches(kg, g, nw, rho, cfg.jobs);
      if (!same || (o != g.order() && o != full)) {
        ok = false;
        witness = json{{"classes", rho.class_count()}, {"variant", v}, {"kernel_order", o.str()}, {"phi", w}};
      }
    }
  }
  if (ok) witness = json{{"kernel_orders", std::vector<std::string>(orders.begin(), orders.end())}};
  rec.check("kernels are diagonal or full", ok, witness);
}

inline void pregeometry_instance(const SuiteConfig& cfg, std::size_t n, std::size_t omega, Recorder& rec) {
  GeneratedGroup g = library::from_keyword(cfg.group);
  TupleInstance inst(omega, n, g.degree());
  if (inst.domain.w_size() > 30) {
    rec.add("precondition", Status::Unverified, precondition_witness("|W| must be at most 30"));
    return;
  }
  GroupPredicates p = predicates(g);
  const bool class_union = p.is_simple && !p.is_abelian;
  std::optional<GeneratedGroup> hol;
  if (p.is_regular) hol = normalizer_in_sym_regular(g);
  auto specs = predicted_congruences(n);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    BlockSystem rho = realize_congruence(specs[i], inst.space);
    Cover cover = psi_cover(inst.upsilon, inst.domain, rho, g);
    std::vector<std::pair<std::string, Cover>> variants{{"", cover}};
    auto rng = instance_rng(cfg.seed, {n, omega, i, 0x9E});
    for (std::size_t t = 0; hol && t < cfg.pregeometry_twists; ++t)
      variants.emplace_back(" twist " + std::to_string(t), twist_cover(cover, random_twist(*hol, inst.domain.w_size(), rng), g));
    for (const auto& [label, c] : variants) {
      PregeometryReport rep = pregeometry_check(c, cfg.subset_bound, class_union ? std::optional<BlockSystem>(rho) : std::nullopt);
      json w{{"subsets", rep.subsets_checked}, {"violations", rep.violation_count}};
      if (!rep.violations.empty()) w["first"] = rep.violations;
      rec.check("pregeometry " + specs[i].describe() + label, rep.passed, w);
    }
  }
}

// Subgroups of `g` as element-index sets, found as closures of all pairs of
// elements. Complete whenever every subgroup is 2-generated (Sym_n, n <= 4).
inline std::size_t two_generated_subgroup_count(const GeneratedGroup& g) {
  MultiplicationTable t(g, caps().subgroup_order);
  std::set<std::vector<Point>> seen;
  for (Point a = 0; a < t.size(); ++a)
    for (Point b = a; b < t.size(); ++b) seen.insert(t.closure({a, b}));
  return seen.size();
}

inline void blocks_instance(const SuiteConfig& cfg, std::size_t n, Recorder& rec) {
  if (n > 4) {
    rec.add("precondition", Status::Unverified, precondition_witness("n must be at most 4"));
    return;
  }
  auto specs = predicted_congruences(n);
  std::size_t finite = 0;
  for (const auto& s : specs) finite += s.kind == CongruenceSpec::Kind::Finite;
  const std::size_t oracle = two_generated_subgroup_count(library::symmetric(n));
  rec.check("finite-kind count = #subgroups(Sym_n)", finite == oracle, json{{"finite", finite}, {"subgroups", oracle}});

  TupleSpace space(n + 2, n);
  bool sizes_ok = true;
  json sizes = json::array();
  std::set<std::size_t> size_set;
  for (const auto& s : specs) {
    if (s.kind != CongruenceSpec::Kind::Finite) continue;
    BlockSystem rho = realize_congruence(s, space);
    const auto h = static_cast<std::size_t>(s.group.order());
    size_set.insert(h);
    for (const auto& c : rho.classes())
      if (c.size() != h) {
        sizes_ok = false;
        sizes.push_back(json{{"spec", s.describe()}, {"class_size", c.size()}, {"order", h}});
        break;
      }
  }
  rec.check("finite class sizes = subgroup orders", sizes_ok,
            sizes_ok ? json{{"sizes", std::vector<std::size_t>(size_set.begin(), size_set.end())}} : json{{"mismatches", sizes}});

  std::vector<std::size_t> omegas = cfg.omega_sizes;
  if (omegas.empty())
    for (std::size_t w = n + 2; w <= 7; ++w)
      if (TupleSpace(w, n).size() <= caps().bruteforce_points) omegas.push_back(w);
  json surplus = json::array();
  std::size_t exact_from = 0;  // 0: not exact at the last size seen
  bool last_exact = false;
  for (std::size_t w : omegas) {
    TupleSpace sp(w, n);
    if (sp.size() > caps().bruteforce_points) {
      rec.add("containment omega=" + std::to_string(w), Status::Unverified,
              precondition_witness("|W| above bruteforce_points cap"));
      continue;
    }
    auto brute = all_congruences_bruteforce(sp.symmetric_group());
    std::size_t missing = 0;
    std::set<std::vector<std::vector<Point>>> predicted;
    for (const auto& s : specs) {
      BlockSystem r = realize_congruence(s, sp);
      predicted.insert(r.classes());
      if (std::find(brute.begin(), brute.end(), r) == brute.end()) ++missing;
    }
    const std::size_t extra = brute.size() - (predicted.size() - missing);
    rec.check("containment omega=" + std::to_string(w), missing == 0,
              json{{"brute_force", brute.size()}, {"predicted", predicted.size()}, {"missing", missing}, {"surplus", extra}});
    last_exact = missing == 0 && extra == 0;
    if (extra > 0) {
      json cls = json::array();
      for (const auto& b : brute)
        if (!predicted.count(b.classes())) cls.push_back(json{{"class_count", b.class_count()}, {"class_size", b.classes().front().size()}});
      surplus.push_back(json{{"omega", w}, {"surplus", extra}, {"systems", cls}});
      exact_from = 0;
    } else if (exact_from == 0) {
      exact_from = w;
    }
  }
  if (!omegas.empty()) {
    json w{{"surplus", surplus}};
    if (exact_from) w["exact_from_omega"] = exact_from;
    if (last_exact) rec.add("exact at largest omega", Status::Pass, w);
    else rec.add("exact at largest omega", Status::Unverified, w);
  }
}

inline void block_subgroup_roundtrip(const std::string& key, Recorder& rec) {
  GeneratedGroup g = library::from_keyword(key);
  if (!is_transitive(g)) {
    rec.add("block/subgroup roundtrip " + key, Status::Unverified, precondition_witness("group is not transitive"));
    return;
  }
  GeneratedGroup stab = pointwise_stabilizer(g, {0});
  std::size_t overgroups = 0;
  bool ok = true;
  json witness = json::object();
  for (const auto& h : subgroups(g)) {
    if (!h.contains_group(stab)) continue;
    ++overgroups;
    auto delta = subgroup_to_block(g, h, 0);
    if (!is_block(g, delta) || !same_group(block_to_subgroup(g, delta, 0), h)) {
      ok = false;
      witness = json{{"subgroup_order", h.order().str()}, {"block_size", delta.size()}};
      break;
    }
  }
  std::size_t blocks = 0;
  for (const auto& sys : all_congruences_bruteforce(g)) {
    ++blocks;
    const auto& delta = sys.class_containing(0);
    if (subgroup_to_block(g, block_to_subgroup(g, delta, 0), 0) != delta) {
      ok = false;
      witness = json{{"block_size", delta.size()}};
    }
  }
  if (blocks != overgroups) ok = false;
  if (witness.empty()) witness = json{{"overgroups", overgroups}, {"blocks", blocks}};
  rec.check("block/subgroup roundtrip " + key, ok, witness);
}

inline void constructions_instance(const SuiteConfig& cfg, std::size_t n, std::size_t omega, Recorder& rec,
                                   bool with_fibre_product) {
  GeneratedGroup g = library::from_keyword(cfg.group);
  TupleInstance inst(omega, n, g.degree());
  const std::size_t nw = inst.domain.w_size();

  Cover principal = principal_cover(inst.upsilon, g, inst.domain);
  const Order expect = pow(Order(g.order()), static_cast<unsigned>(nw)) * inst.upsilon.order();
  rec.check("principal order", principal.autgroup().order() == expect,
            json{{"order", principal.autgroup().order().str()}, {"expected", expect.str()}});

  for (const auto& s : predicted_congruences(n)) {
    BlockSystem rho = realize_congruence(s, inst.space);
    AlmostFreeResult af = almost_free_cover(inst.upsilon, inst.domain, rho, diagonal_data(inst.upsilon, rho, g));
    Cover c = af.cover;
    if (cfg.fault == "drop-kernel-generator") {
      auto kg = maybe_corrupt(c.kernel().generators(), cfg.fault);
      auto [ok, w] = phi_matches(kg, g, nw, rho, cfg.jobs);
      rec.check("almost-free " + s.describe(), ok, w);
      continue;
    }
    AlmostFreeReport rep = almost_free_check(c, rho, cfg.exhaustive);
    const bool kernel_ok = same_group(c.kernel(), kernel_from_congruence(rho, g));
    json w{{"classes_checked", rep.classes_checked}, {"pairs_checked", rep.pairs_checked}, {"m_injective", af.m_injective}};
    if (!rep.passed) w["witness"] = rep.witness;
    if (!kernel_ok) w["reason"] = "kernel is not K_rho";
    rec.check("almost-free " + s.describe(), rep.passed && kernel_ok, w);
  }

  if (with_fibre_product) {
    if (n < 2) {
      rec.add("fibre product", Status::Unverified, precondition_witness("needs n >= 2"));
    } else {
      GeneratedGroup t = library::alternating(5);
      TupleInstance fi(omega, n, static_cast<std::size_t>(t.order()));
      std::vector<Permutation> swap{library::cycle(n, {0, 1})};
      BlockSystem rho = realize_congruence(CongruenceSpec::finite(GeneratedGroup(n, swap)), fi.space);
      FibreProductResult fp = fibre_product_cover(fi.upsilon, fi.domain, rho, t);
      rec.check("fibre product kernels equal", fp.kernels_equal && fp.kernel_is_k_rho,
                json{{"kernel_order", fp.fibre_product.kernel().order().str()}});
      rec.check("fibre product groups differ", fp.groups_differ,
                json{{"fibre_product_order", fp.fibre_product.autgroup().order().str()},
                     {"diagonal_order", fp.diagonal.autgroup().order().str()}});
      AlmostFreeReport rep = almost_free_check(fp.fibre_product, rho, cfg.exhaustive);
      rec.check("fibre product almost-free", rep.passed, json{{"pairs_checked", rep.pairs_checked}});
      FibreProductResult collapsed = fibre_product_cover(fi.upsilon, fi.domain, rho, t, true, 0);
      rec.check("trivial S gives the diagonal cover", same_group(collapsed.fibre_product.autgroup(), fp.diagonal.autgroup()));
      rec.add("fibre product not isomorphic to diagonal",
              fp.conjugating_twist_found ? Status::Fail : Status::Unverified,
              json{{"class_constant_twists_searched", fp.twists_searched}, {"conjugating_twist_found", fp.conjugating_twist_found}});
    }
  }
}

// Lift invariants at one omega; returns class sizes per finite-kind spec.
inline std::vector<std::size_t> lift_instance(const SuiteConfig& cfg, std::size_t n, std::size_t m, std::size_t omega,
                                              Recorder& rec) {
  GeneratedGroup g = library::from_keyword(cfg.group);
  std::vector<std::size_t> sizes;
  if (omega < m + 1) {
    rec.add("lift", Status::Unverified, precondition_witness("needs omega >= m+1"));
    return sizes;
  }
  TupleInstance inst(omega, n, g.degree());
  for (const auto& s : predicted_congruences(n)) {
    if (s.kind != CongruenceSpec::Kind::Finite) continue;
    BlockSystem rho = realize_congruence(s, inst.space);
    Cover base = psi_cover(inst.upsilon, inst.domain, rho, g);
    LiftResult lr = biinterp_lift(base, m, cfg.jobs);
    const std::string name = " " + s.describe() + " m=" + std::to_string(m);
    rec.check("lift kernel order" + name, lr.kernel_iso,
              json{{"k1", base.kernel().order().str()}, {"k2", lr.cover.kernel().order().str()}});
    rec.check("lift B = F = G" + name, lr.binding_equals_fibre);
    rec.check("lift class correspondence" + name, lr.class_correspondence,
              json{{"class_size", lr.class_size}, {"lifted_spec", lr.lifted_spec.describe()}});
    rec.check("lift beta bijective" + name, lr.beta_bijective);
    sizes.push_back(lr.class_size);
  }
  return sizes;
}

}  // namespace detail

// Runs one suite. Instances are independent and may run on `jobs` threads;
// verdicts are merged in parameter order.
inline std::vector<Verdict> run_suite(const SuiteConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
    throw ParseError("unknown suite '" + cfg.suite + "'");
  if (!cfg.fault.empty() && std::find(fault_names().begin(), fault_names().end(), cfg.fault) == fault_names().end())
    throw ParseError("unknown fault '" + cfg.fault + "'");
  const std::size_t n = cfg.n.value_or(detail::default_n(cfg.suite));
  if (n == 0) throw DomainError("n must be positive");
  const std::size_t m = cfg.m.value_or(n + 1);
  std::vector<std::size_t> omegas = cfg.omega_sizes;
  const bool tuple_suite = cfg.suite != "blocks" && !(cfg.suite == "primitive-corollary" && !cfg.upsilon.empty());
  if (omegas.empty() && cfg.suite != "blocks") {
    if (cfg.suite == "primitive-corollary") omegas = {5};
    else omegas = {n + 2, n + 3};
  }
  if (tuple_suite)
    for (std::size_t w : omegas)
      if (w < n + 2) throw DomainError("omega sizes must be at least n+2");

  using Task = std::function<void(detail::Recorder&)>;
  std::vector<std::pair<detail::Recorder, Task>> tasks;
  auto add = [&](json instance, std::optional<std::size_t> omega, Task t) {
    detail::Recorder r{cfg.suite, std::move(instance), detail::replay_command(cfg, n, omega), {}};
    tasks.emplace_back(std::move(r), std::move(t));
  };

  if (cfg.suite == "main-theorem") {
    for (std::size_t w : omegas)
      add(json{{"n", n}, {"omega", w}, {"group", cfg.group}}, w,
          [&, w](detail::Recorder& r) { detail::main_theorem_instance(cfg, n, w, r); });
  } else if (cfg.suite == "primitive-corollary") {
    if (!cfg.upsilon.empty())
      add(json{{"upsilon", cfg.upsilon}, {"group", cfg.group}}, std::nullopt,
          [&](detail::Recorder& r) { detail::primitive_corollary_instance(cfg, n, std::nullopt, r); });
    else
      for (std::size_t w : omegas)
        add(json{{"n", n}, {"omega", w}, {"group", cfg.group}}, w,
            [&, w](detail::Recorder& r) { detail::primitive_corollary_instance(cfg, n, w, r); });
  } else if (cfg.suite == "pregeometry") {
    for (std::size_t w : omegas)
      add(json{{"n", n}, {"omega", w}, {"group", cfg.group}, {"subset_bound", cfg.subset_bound}}, w,
          [&, w](detail::Recorder& r) { detail::pregeometry_instance(cfg, n, w, r); });
  } else if (cfg.suite == "blocks") {
    std::vector<std::size_t> ns;
    if (cfg.n) ns = {*cfg.n};
    else ns = {1, 2, 3, 4};
    for (std::size_t k : ns)
      add(json{{"n", k}}, std::nullopt, [&, k](detail::Recorder& r) { detail::blocks_instance(cfg, k, r); });
    for (const auto& key : cfg.test_groups)
      add(json{{"group", key}}, std::nullopt, [&, key](detail::Recorder& r) { detail::block_subgroup_roundtrip(key, r); });
  } else {
    std::size_t fp_omega = omegas.back();
    for (std::size_t w : omegas)
      if (w >= 5) {
        fp_omega = w;
        break;
      }
    for (std::size_t w : omegas)
      add(json{{"n", n}, {"omega", w}, {"group", cfg.group}}, w,
          [&, w, fp_omega](detail::Recorder& r) { detail::constructions_instance(cfg, n, w, r, w == fp_omega); });
    auto sizes = std::make_shared<std::vector<std::vector<std::size_t>>>(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      const std::size_t w = omegas[i];
      add(json{{"n", n}, {"m", m}, {"omega", w}, {"group", cfg.group}}, w,
          [&, w, i, sizes](detail::Recorder& r) { (*sizes)[i] = detail::lift_instance(cfg, n, m, w, r); });
    }
    parallel_for(cfg.jobs, tasks.size(), [&](std::size_t i) { tasks[i].second(tasks[i].first); });
    std::vector<Verdict> out;
    for (auto& [r, t] : tasks) out.insert(out.end(), r.out.begin(), r.out.end());
    detail::Recorder growth{cfg.suite, json{{"n", n}, {"m", m}, {"omega_sizes", omegas}}, detail::replay_command(cfg, n, std::nullopt), {}};
    std::size_t grown = 0;
    bool ok = true;
    json per = json::array();
    for (std::size_t i = 0; i + 1 < omegas.size(); ++i) {
      const auto& a = (*sizes)[i];
      const auto& b = (*sizes)[i + 1];
      if (a.empty() || a.size() != b.size()) continue;
      for (std::size_t k = 0; k < a.size(); ++k) {
        ++grown;
        per.push_back(json{{"from", a[k]}, {"to", b[k]}});
        if (omegas[i + 1] > omegas[i] ? b[k] <= a[k] : b[k] >= a[k]) ok = false;
      }
    }
    if (grown == 0) growth.add("lift class growth", Status::Unverified, detail::precondition_witness("needs two omega sizes"));
    else growth.check("lift class growth", ok, json{{"sizes", per}});
    out.insert(out.end(), growth.out.begin(), growth.out.end());
    return out;
  }

  parallel_for(cfg.jobs, tasks.size(), [&](std::size_t i) { tasks[i].second(tasks[i].first); });
  std::vector<Verdict> out;
  for (auto& [r, t] : tasks) out.insert(out.end(), r.out.begin(), r.out.end());
  return out;
}

}  // namespace coverlab
