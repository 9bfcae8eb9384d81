#pragma once

#include <array>
#include <cstdint>

#include "patind/permutation.hpp"

namespace patind {

// Occurrence counts of the 24 length-4 patterns, indexed by the lexicographic
// order of S4 (index 0 = 1234, ..., index 23 = 4321).
struct PatternCounts {
  int n = 0;
  std::array<std::int64_t, 24> counts{};

  std::int64_t total() const {
    std::int64_t s = 0;
    for (const auto c : counts) s += c;
    return s;
  }
};

// C(n,4) as a 64-bit integer (0 for n < 4).
std::int64_t choose4(int n);

// The 24 elements of S4 in lexicographic order.
const std::array<Permutation, 24>& s4_patterns();

// Lexicographic index (0..23) of a length-4 permutation.
int s4_index(const Permutation& p);

// Composition table: s4_compose(a, b) = index of s4[a] ∘ s4[b].
int s4_compose(int a, int b);

// Index of g applied to the a-th pattern.
int s4_apply(const GroupElement& g, int a);

// Exhaustive reference counter, O(n^4) over all quadruples.
PatternCounts count_patterns4_oracle(const Permutation& p);

// Production counter, O(n^3) time and O(n) memory; agrees with the oracle
// exactly on every input.  For each third index k it keeps the suffix
// cumulative table S[v] = #{l > k : p_l <= v}; a pair (i,j) with i<j<k then
// contributes, per value region cut by {p_i,p_j,p_k}, a block of quadruples
// whose pattern is determined by the 3-pattern of (p_i,p_j,p_k) and the
// region alone.
PatternCounts count_patterns4(const Permutation& p);

}  // namespace patind
