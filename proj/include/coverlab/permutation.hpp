#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "coverlab/error.hpp"

namespace coverlab {

using Point = std::uint32_t;

// A bijection of {0, ..., degree-1}, stored as its image list.
//
// Composition follows function notation: (a * b)(x) == a(b(x)), i.e. b is
// applied first. All group algorithms in the library use left actions.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  // Throws DomainError unless `images` is a bijection of its index range.
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) throw DomainError("image list is not a permutation");
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  // Skips validation; for internal construction from known bijections.
  static Permutation unchecked(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const noexcept { return images_[x]; }
  Point operator[](Point x) const noexcept { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  bool fixes(Point x) const noexcept { return images_[x] == x; }

  // Smallest moved point, or degree() for the identity.
  std::size_t first_moved() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return i;
    return images_.size();
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return unchecked(std::move(inv));
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DomainError("composing permutations of different degree");
    std::vector<Point> out(b.images_.size());
    const Point* ai = a.images_.data();
    const Point* bi = b.images_.data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ai[bi[i]];
    return unchecked(std::move(out));
  }

  // out = a * b. `out` must alias neither argument; reuses out's storage.
  static void multiply_into(Permutation& out, const Permutation& a, const Permutation& b) {
    const std::size_t n = b.images_.size();
    out.images_.resize(n);
    Point* o = out.images_.data();
    const Point* ai = a.images_.data();
    const Point* bi = b.images_.data();
    for (std::size_t i = 0; i < n; ++i) o[i] = ai[bi[i]];
  }

  // n^{-1} * this * n
  Permutation conjugate_by(const Permutation& n) const { return n.inverse() * (*this) * n; }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation result(degree());
    while (k) {
      if (k & 1) result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  std::size_t order() const {
    std::vector<bool> seen(images_.size(), false);
    std::size_t result = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  // Image of a point set, in the order of `points`.
  std::vector<Point> apply(std::span<const Point> points) const {
    std::vector<Point> out;
    out.reserve(points.size());
    for (Point p : points) out.push_back(images_[p]);
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Permutation of {0..degree-1} acting as `local` on the points `support`
// (local index i <-> support[i]) and fixing everything else.
inline Permutation embed(const Permutation& local, std::span<const Point> support, std::size_t degree) {
  if (local.degree() != support.size()) throw DomainError("embed: support size mismatch");
  Permutation out(degree);
  std::vector<Point> img(out.images().begin(), out.images().end());
  for (std::size_t i = 0; i < support.size(); ++i) img[support[i]] = support[local(static_cast<Point>(i))];
  return Permutation::unchecked(std::move(img));
}

// Restriction of `p` to an invariant point list (p must map `support` onto
// itself); the result acts on local indices.
inline Permutation restrict_to(const Permutation& p, std::span<const Point> support) {
  std::vector<std::int64_t> local(p.degree(), -1);
  for (std::size_t i = 0; i < support.size(); ++i) local[support[i]] = static_cast<std::int64_t>(i);
  std::vector<Point> img(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    auto j = local[p(support[i])];
    if (j < 0) throw DomainError("restrict_to: support is not invariant");
    img[i] = static_cast<Point>(j);
  }
  return Permutation::unchecked(std::move(img));
}

}  // namespace coverlab
