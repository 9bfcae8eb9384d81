#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "patind/pattern_counts.hpp"

namespace patind {

// The six pattern-based test statistics.  B is the BDY statistic; C through F
// come from the other quasirandomness-forcing pattern sets; DE is the
// invariant combination T^D + T^E.
enum class Stat { B, C, D, E, F, DE };

inline constexpr std::array<Stat, 6> kAllStats = {Stat::B, Stat::C, Stat::D,
                                                  Stat::E, Stat::F, Stat::DE};

const char* stat_name(Stat s);
std::optional<Stat> stat_from_name(const std::string& name);

// Pattern set underlying a statistic: members as S4 indices (lexicographic
// order), the centering constant #A/24, and the sign of the centered
// statistic (+1 when large values of L_A indicate dependence, -1 when small
// values do).  DE is not itself a set and is handled by additivity.
struct PatternSet {
  Stat id;
  std::uint32_t members;  // bitmask over the 24 lexicographic indices
  int size;
  int sign;

  bool contains(int s4idx) const { return (members >> s4idx) & 1u; }
  double center() const { return size / 24.0; }
};

// For A in {B, C, D, E, F}.  DE has no single set; see test_statistic.
const PatternSet& pattern_set(Stat A);

using WeightVector = std::array<double, 24>;

// The weight vector a* with sum 44; L_{a*} realizes 4·rho* in expectation.
extern const WeightVector kAStar;

// Sum_sigma a_sigma t(sigma, pi) with t = counts / C(n,4).
double linear_statistic(const PatternCounts& counts, const WeightVector& a);

// Centered test statistic T^A: L_A - #A/24 for A in {B,C,F}, #A/24 - L_A for
// D and E, and T^D + T^E for DE.
double test_statistic(const PatternCounts& counts, Stat A);

// L_{a*} - 44/24, centered so the expectation vanishes under independence.
double rho_star_statistic(const PatternCounts& counts);

}  // namespace patind
