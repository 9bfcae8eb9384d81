#include "patind/statistics.hpp"

#include <algorithm>

#include "patind/errors.hpp"

namespace patind {

namespace {

constexpr std::uint32_t mask_of(std::initializer_list<int> idx) {
  std::uint32_t m = 0;
  for (const int i : idx) m |= 1u << i;
  return m;
}

// Lexicographic S4 indices of the defining sets:
//   B = {1234,1243,2134,2143,3412,3421,4312,4321}
//   C = {1234,1432,2143,2341,3214,3412,4123,4321}
//   D = {1324,1342,2413,2431,3124,3142,4213,4231}
//   E = {1324,1423,2314,2413,3142,3241,4132,4231}
//   F = B ∪ C (12 patterns).
const PatternSet kSetB{Stat::B, mask_of({0, 1, 6, 7, 16, 17, 22, 23}), 8, +1};
const PatternSet kSetC{Stat::C, mask_of({0, 5, 7, 9, 14, 16, 18, 23}), 8, +1};
const PatternSet kSetD{Stat::D, mask_of({2, 3, 10, 11, 12, 13, 20, 21}), 8, -1};
const PatternSet kSetE{Stat::E, mask_of({2, 4, 8, 10, 13, 15, 19, 21}), 8, -1};
const PatternSet kSetF{Stat::F, mask_of({0, 1, 5, 6, 7, 9, 14, 16, 17, 18, 22, 23}), 12, +1};

}  // namespace

const char* stat_name(Stat s) {
  switch (s) {
    case Stat::B: return "B";
    case Stat::C: return "C";
    case Stat::D: return "D";
    case Stat::E: return "E";
    case Stat::F: return "F";
    case Stat::DE: return "DE";
  }
  return "?";
}

std::optional<Stat> stat_from_name(const std::string& name) {
  std::string u = name;
  std::transform(u.begin(), u.end(), u.begin(), ::toupper);
  for (const Stat s : kAllStats) {
    if (u == stat_name(s)) return s;
  }
  return std::nullopt;
}

const PatternSet& pattern_set(Stat A) {
  switch (A) {
    case Stat::B: return kSetB;
    case Stat::C: return kSetC;
    case Stat::D: return kSetD;
    case Stat::E: return kSetE;
    case Stat::F: return kSetF;
    case Stat::DE: break;
  }
  throw ParameterOutOfRange("DE is a sum of statistics, not a pattern set");
}

const WeightVector kAStar = {4, 2, 2, 1, 1, 1, 2, 4, 1, 1, 2, 1,
                             1, 2, 1, 1, 4, 2, 1, 1, 1, 2, 2, 4};

double linear_statistic(const PatternCounts& counts, const WeightVector& a) {
  if (counts.n < 4) throw DegenerateSample("need n >= 4 for length-4 pattern statistics");
  const double denom = static_cast<double>(choose4(counts.n));
  double s = 0.0;
  for (int i = 0; i < 24; ++i) {
    s += a[static_cast<std::size_t>(i)] * static_cast<double>(counts.counts[static_cast<std::size_t>(i)]);
  }
  return s / denom;
}

double test_statistic(const PatternCounts& counts, Stat A) {
  if (A == Stat::DE) {
    return test_statistic(counts, Stat::D) + test_statistic(counts, Stat::E);
  }
  if (counts.n < 4) throw DegenerateSample("need n >= 4 for length-4 pattern statistics");
  const PatternSet& set = pattern_set(A);
  std::int64_t hits = 0;
  for (int i = 0; i < 24; ++i) {
    if (set.contains(i)) hits += counts.counts[static_cast<std::size_t>(i)];
  }
  const double la = static_cast<double>(hits) / static_cast<double>(choose4(counts.n));
  return set.sign > 0 ? la - set.center() : set.center() - la;
}

double rho_star_statistic(const PatternCounts& counts) {
  return linear_statistic(counts, kAStar) - 44.0 / 24.0;
}

}  // namespace patind
