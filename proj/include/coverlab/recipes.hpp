#pragma once

#include <random>
#include <string>

#include "coverlab/constructions.hpp"
#include "coverlab/json_io.hpp"
#include "coverlab/library.hpp"
#include "coverlab/predicates.hpp"

namespace coverlab {

// Sym(Omega) acting on the injective n-tuples, with fibres of size delta.
struct TupleInstance {
  TupleSpace space;
  GeneratedGroup upsilon;
  FibredDomain domain;

  TupleInstance(std::size_t omega, std::size_t n, std::size_t delta)
      : space(omega, n), upsilon(space.symmetric_group()), domain{delta, BaseStructure::tuples(omega, n)} {}
};

// The almost-free cover built from the diagonal data; its kernel is K_rho.
inline Cover psi_cover(const GeneratedGroup& upsilon, const FibredDomain& domain, const BlockSystem& rho,
                       const GeneratedGroup& g) {
  return almost_free_cover(upsilon, domain, rho, diagonal_data(upsilon, rho, g)).cover;
}

struct BuiltCover {
  Cover cover;
  json provenance;
};

// Recipe JSON:
//   {"construction": "k_rho" | "principal" | "almost_free" | "fibre_product" | "lift",
//    "group": keyword, "n": arity, "omega": letters  (base Sym(Omega) on Omega^(n))
//    or "upsilon": keyword                           (base: that group on its points),
//    "congruence": spec JSON (tuple bases) or "classes": [[...]],
//    "twist_seed": optional seed of a random holomorph twist,
//    "m" and "base": recipe (lift only)}
inline BuiltCover build_from_recipe(const json& recipe) {
  const json& c = detail::field(recipe, "construction");
  if (!c.is_string()) throw ParseError("recipe: construction must be a string");
  const std::string kind = c.get<std::string>();

  if (kind == "lift") {
    BuiltCover base = build_from_recipe(detail::field(recipe, "base"));
    LiftResult lr = biinterp_lift(base.cover, detail::size_field(recipe, "m"));
    json prov{{"recipe", recipe},
              {"kernel_order", lr.cover.kernel().order().str()},
              {"order", lr.cover.autgroup().order().str()},
              {"lift",
               {{"kernel_iso", lr.kernel_iso},
                {"binding_equals_fibre", lr.binding_equals_fibre},
                {"class_correspondence", lr.class_correspondence},
                {"beta_bijective", lr.beta_bijective},
                {"class_size", lr.class_size}}}};
    return {lr.cover, prov};
  }

  const bool fibre_product = kind == "fibre_product";
  const std::string gkey = recipe.value("group", fibre_product ? "alt:5" : "a5-regular");
  GeneratedGroup g = library::from_keyword(gkey);
  const std::size_t delta = fibre_product ? static_cast<std::size_t>(g.order()) : g.degree();

  std::optional<TupleSpace> space;
  GeneratedGroup upsilon;
  FibredDomain domain;
  if (recipe.contains("upsilon")) {
    upsilon = library::from_keyword(recipe.at("upsilon").get<std::string>());
    domain = FibredDomain{delta, BaseStructure::set(upsilon.degree())};
  } else {
    TupleInstance inst(detail::size_field(recipe, "omega"), detail::size_field(recipe, "n"), delta);
    space = inst.space;
    upsilon = inst.upsilon;
    domain = inst.domain;
  }

  auto congruence = [&]() -> BlockSystem {
    if (recipe.contains("classes")) {
      BlockSystem b = block_system_from_json(recipe, domain.w_size());
      if (!b.is_invariant(upsilon.generators())) throw PreconditionError("recipe: classes are not Upsilon-invariant");
      return b;
    }
    if (!space) throw ParseError("recipe: a set base needs explicit classes");
    CongruenceSpec spec = congruence_spec_from_json(detail::field(recipe, "congruence"), space->arity());
    if (spec.arity != space->arity()) throw ParseError("recipe: congruence arity differs from n");
    return realize_congruence(spec, *space);
  };

  std::optional<Cover> cover;
  if (kind == "principal") {
    cover = principal_cover(upsilon, g, domain);
  } else if (kind == "k_rho") {
    cover = cover_from_kernel(kernel_from_congruence(congruence(), g), upsilon, domain);
  } else if (kind == "almost_free") {
    cover = psi_cover(upsilon, domain, congruence(), g);
  } else if (fibre_product) {
    cover = fibre_product_cover(upsilon, domain, congruence(), g).fibre_product;
  } else {
    throw ParseError("recipe: unknown construction '" + kind + "'");
  }

  if (recipe.contains("twist_seed")) {
    if (!is_regular(g)) throw PreconditionError("recipe: twists need a regular G");
    std::mt19937_64 rng(recipe.at("twist_seed").get<std::uint64_t>());
    GeneratedGroup hol = normalizer_in_sym_regular(g);
    cover = twist_cover(*cover, random_twist(hol, domain.w_size(), rng), g);
  }
  json prov{{"recipe", recipe},
            {"kernel_order", cover->kernel().order().str()},
            {"order", cover->autgroup().order().str()}};
  return {*cover, prov};
}

}  // namespace coverlab
