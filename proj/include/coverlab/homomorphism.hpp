#pragma once

#include <memory>
#include <span>
#include <vector>

#include "coverlab/chain.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"

namespace coverlab {

// A homomorphism from a permutation group onto a permutation group on a new
// domain, given by the images of the source generators.
//
// The graph {(mu(g), g)} is stored as one group on the disjoint union of the
// two domains (new points first). Its chain uses every new point as a base
// prefix, so the levels past the prefix form the kernel, and stripping by
// the prefix levels lifts image elements back to the source.
class ActionHom {
 public:
  const GeneratedGroup& source() const noexcept { return source_; }
  std::size_t target_degree() const noexcept { return target_degree_; }
  const std::vector<Permutation>& generator_images() const noexcept { return images_; }
  const GeneratedGroup& image() const noexcept { return image_; }
  const GeneratedGroup& kernel() const noexcept { return kernel_; }

  // Some source element mapping to `y`. Throws DomainError if y is not in
  // the image.
  Permutation preimage(const Permutation& y) const {
    if (y.degree() != target_degree_) throw DomainError("preimage: wrong degree");
    const auto& lv = graph_->levels();
    const std::size_t nd = target_degree_;
    const std::size_t n = source_.degree();
    Permutation lift(nd + n);
    std::vector<Point> cur(y.images().begin(), y.images().end());
    for (std::size_t l = 0; l < nd && l < lv.size(); ++l) {
      const auto& level = lv[l];
      Point beta = cur[level.base];
      std::int32_t idx = level.slot[beta];
      if (idx < 0) throw DomainError("preimage: element is not in the image");
      if (idx == 0) continue;
      const Permutation& u = level.transversal[static_cast<std::size_t>(idx)];
      const Permutation& uinv = level.inverse_transversal[static_cast<std::size_t>(idx)];
      lift = lift * u;
      for (auto& c : cur) c = uinv(c);
    }
    for (Point x = 0; x < nd; ++x)
      if (cur[x] != x) throw DomainError("preimage: element is not in the image");
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(lift(static_cast<Point>(nd + i)) - nd);
    return Permutation::unchecked(std::move(img));
  }

  friend ActionHom induced_action(const GeneratedGroup& g, std::vector<Permutation> images, std::size_t new_degree);

 private:
  GeneratedGroup source_;
  std::size_t target_degree_ = 0;
  std::vector<Permutation> images_;
  GeneratedGroup image_;
  GeneratedGroup kernel_;
  std::shared_ptr<const StabilizerChain> graph_;
};

// Homomorphism sending the i-th generator of `g` to images[i]. Throws
// PreconditionError if the assignment does not extend to a homomorphism.
inline ActionHom induced_action(const GeneratedGroup& g, std::vector<Permutation> images, std::size_t new_degree) {
  const auto& gens = g.generators();
  if (images.size() != gens.size()) throw DomainError("induced_action: one image per generator required");
  for (const auto& y : images)
    if (y.degree() != new_degree) throw DomainError("induced_action: image has the wrong degree");

  const std::size_t n = g.degree();
  const std::size_t total = new_degree + n;
  std::vector<Permutation> combined;
  combined.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Point> img(total);
    for (std::size_t x = 0; x < new_degree; ++x) img[x] = images[i](static_cast<Point>(x));
    for (std::size_t x = 0; x < n; ++x) img[new_degree + x] = static_cast<Point>(new_degree + gens[i](static_cast<Point>(x)));
    combined.push_back(Permutation::unchecked(std::move(img)));
  }
  std::vector<Point> prefix(new_degree);
  for (std::size_t x = 0; x < new_degree; ++x) prefix[x] = static_cast<Point>(x);
  auto graph = std::make_shared<const StabilizerChain>(StabilizerChain::build(total, combined, prefix));

  ActionHom hom;
  hom.source_ = g;
  hom.target_degree_ = new_degree;
  hom.image_ = GeneratedGroup(new_degree, images);
  hom.images_ = std::move(images);

  StabilizerChain kernel_chain = graph->tail(new_degree).restricted_window(new_degree, n);
  std::vector<Permutation> kernel_gens;
  for (const auto& s : kernel_chain.strong_generators())
    if (!s.is_identity()) kernel_gens.push_back(s);
  hom.kernel_ = GeneratedGroup::from_chain(std::move(kernel_chain), std::move(kernel_gens));
  hom.graph_ = std::move(graph);

  Order image_order = 1;
  for (std::size_t l = 0; l < new_degree && l < hom.graph_->length(); ++l) image_order *= hom.graph_->levels()[l].orbit.size();
  if (image_order != hom.image_.order())
    throw InternalError("induced_action: image order disagrees with the graph chain");
  if (g.order() != image_order * hom.kernel_.order())
    throw PreconditionError("induced_action: generator images do not define a homomorphism");
  return hom;
}

}  // namespace coverlab
