#pragma once

#include <vector>

#include "coverlab/group.hpp"

namespace coverlab {

// Flat index of (w, delta) in Delta x W.
inline Point fibre_index(std::size_t delta_size, Point w, Point delta) {
  return static_cast<Point>(w * delta_size + delta);
}

// Acts as `x` on the fibre over w and fixes every other point.
inline Permutation on_fibre(const Permutation& x, Point w, std::size_t w_size) {
  const std::size_t d = x.degree();
  std::vector<Point> img(d * w_size);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<Point>(i);
  for (Point a = 0; a < d; ++a) img[fibre_index(d, w, a)] = fibre_index(d, w, x(a));
  return Permutation::unchecked(std::move(img));
}

// (w, delta) -> (u(w), delta).
inline Permutation permute_fibres(const Permutation& u, std::size_t delta_size) {
  std::vector<Point> img(delta_size * u.degree());
  for (Point w = 0; w < u.degree(); ++w)
    for (Point a = 0; a < delta_size; ++a) img[fibre_index(delta_size, w, a)] = fibre_index(delta_size, u(w), a);
  return Permutation::unchecked(std::move(img));
}

// G Wr_W U on Delta x W: each generator of G on one fibre per U-orbit, plus
// U permuting the fibres.
inline GeneratedGroup imprimitive_wreath(const GeneratedGroup& g, const GeneratedGroup& u) {
  const std::size_t d = g.degree();
  const std::size_t nw = u.degree();
  std::vector<Permutation> gens;
  for (const auto& orb : orbits(u.generators(), nw))
    for (const auto& x : g.generators())
      if (!x.is_identity()) gens.push_back(on_fibre(x, orb.front(), nw));
  for (const auto& y : u.generators()) gens.push_back(permute_fibres(y, d));
  return GeneratedGroup(d * nw, std::move(gens));
}

}  // namespace coverlab
