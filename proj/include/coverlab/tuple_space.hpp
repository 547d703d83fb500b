#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "coverlab/error.hpp"
#include "coverlab/group.hpp"
#include "coverlab/library.hpp"

namespace coverlab {

using Tuple = std::vector<Point>;

// Injective n-tuples over {0..omega-1} in lexicographic order, with the
// induced action of Sym(omega).
class TupleSpace {
 public:
  TupleSpace(std::size_t omega, std::size_t n) : omega_(omega), n_(n) {
    if (n == 0) throw DomainError("tuple space: arity must be positive");
    if (n > omega) throw DomainError("tuple space: arity exceeds the number of letters");
    Tuple t;
    std::vector<bool> used(omega, false);
    auto rec = [&](auto&& self) -> void {
      if (t.size() == n) {
        index_.emplace(key(t), static_cast<Point>(tuples_.size()));
        tuples_.push_back(t);
        return;
      }
      for (Point a = 0; a < omega; ++a) {
        if (used[a]) continue;
        used[a] = true;
        t.push_back(a);
        self(self);
        t.pop_back();
        used[a] = false;
      }
    };
    rec(rec);
  }

  std::size_t omega() const noexcept { return omega_; }
  std::size_t arity() const noexcept { return n_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  const Tuple& tuple(Point i) const { return tuples_.at(i); }
  const std::vector<Tuple>& tuples() const noexcept { return tuples_; }

  Point index_of(const Tuple& t) const {
    auto it = index_.find(key(t));
    if (t.size() != n_ || it == index_.end()) throw DomainError("tuple space: not an injective tuple of the space");
    return it->second;
  }

  // The permutation of the tuple list induced by s in Sym(omega).
  Permutation act(const Permutation& s) const {
    if (s.degree() != omega_) throw DomainError("tuple space: letter permutation has the wrong degree");
    std::vector<Point> img(tuples_.size());
    Tuple u(n_);
    for (Point i = 0; i < tuples_.size(); ++i) {
      for (std::size_t k = 0; k < n_; ++k) u[k] = s(tuples_[i][k]);
      img[i] = index_.at(key(u));
    }
    return Permutation::unchecked(std::move(img));
  }

  GeneratedGroup induced(const GeneratedGroup& letters) const {
    std::vector<Permutation> gens;
    for (const auto& s : letters.generators()) gens.push_back(act(s));
    return GeneratedGroup(size(), std::move(gens));
  }

  // Sym(omega) acting on the space.
  GeneratedGroup symmetric_group() const { return induced(library::symmetric(omega_)); }

  // The letter permutation inducing `w`, recovered from first entries.
  // Throws DomainError if `w` is not induced by any letter permutation.
  Permutation letters_of(const Permutation& w) const {
    if (w.degree() != size()) throw DomainError("tuple space: permutation has the wrong degree");
    std::vector<Point> img(omega_);
    std::vector<bool> seen(omega_, false);
    for (Point i = 0; i < tuples_.size(); ++i) {
      Point a = tuples_[i][0];
      if (!seen[a]) {
        seen[a] = true;
        img[a] = tuples_[w(i)][0];
      }
    }
    Permutation s(std::move(img));
    if (act(s) != w) throw DomainError("tuple space: permutation is not induced by Sym(omega)");
    return s;
  }

  // Letters of the tuple.
  std::vector<Point> support(Point i) const {
    std::vector<Point> s = tuples_.at(i);
    std::sort(s.begin(), s.end());
    return s;
  }

 private:
  std::uint64_t key(const Tuple& t) const {
    std::uint64_t k = 0;
    for (Point a : t) k = k * (omega_ + 1) + a + 1;
    return k;
  }

  std::size_t omega_;
  std::size_t n_;
  std::vector<Tuple> tuples_;
  std::unordered_map<std::uint64_t, Point> index_;
};

}  // namespace coverlab
