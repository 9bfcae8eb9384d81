#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "patind/rng.hpp"

namespace patind {

// A permutation of {1,...,n} in one-line notation.
class Permutation {
 public:
  Permutation() = default;

  // Validates that entries form a bijection of {1,...,n}.
  explicit Permutation(std::vector<std::int32_t> entries);

  static Permutation identity(int n);
  static Permutation reversal(int n);  // (n, n-1, ..., 1)

  int size() const { return static_cast<int>(entries_.size()); }

  // 0-based position, 1-based value.
  std::int32_t operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

  std::span<const std::int32_t> entries() const { return entries_; }

  Permutation inverse() const;
  Permutation reversed() const;

  bool operator==(const Permutation&) const = default;

  std::string to_string() const;  // e.g. "(2,4,1,3)"

 private:
  std::vector<std::int32_t> entries_;
};

// (p ∘ q)(i) = p(q(i)); both must have the same length.
Permutation compose(const Permutation& p, const Permutation& q);

// Rank vector of a sequence of distinct reals: output[i] = #{j : values[j] <= values[i]}.
// Throws TieError on exact duplicates.
Permutation ranks(std::span<const double> values);

// The permutation generated by a bivariate sample: r ∘ q⁻¹ with q = ranks(x),
// r = ranks(y).  Invariant under reordering of the points.
Permutation permutation_from_sample(std::span<const double> xs, std::span<const double> ys);

// Uniform draw from S_n (Fisher-Yates with unbiased index draws).
Permutation random_permutation(int n, Rng& rng);

// Element of the order-8 group generated by inversion and reversal, acting on
// permutations of any length.  Internally a symmetry of the square applied to
// the point set {(i, p_i)}: optional axis swap followed by optional
// reflections i -> n+1-i and v -> n+1-v.
class GroupElement {
 public:
  static GroupElement identity() { return GroupElement(false, false, false); }
  static GroupElement inv() { return GroupElement(true, false, false); }
  static GroupElement rev() { return GroupElement(false, true, false); }

  // All 8 elements, identity first.
  static const std::array<GroupElement, 8>& all();

  // Composition: (g.then(h)) acts as h ∘ g (apply g first).
  GroupElement then(const GroupElement& h) const;

  Permutation apply(const Permutation& p) const;

  bool operator==(const GroupElement&) const = default;

  std::string name() const;

 private:
  GroupElement(bool swap, bool neg_pos, bool neg_val)
      : swap_(swap), neg_pos_(neg_pos), neg_val_(neg_val) {}

  bool swap_;
  bool neg_pos_;
  bool neg_val_;
};

}  // namespace patind
