#include "patind/kernels.hpp"

#include <algorithm>

#include "patind/errors.hpp"

namespace patind {

const char* factor_kernel_name(FactorKernel k) {
  switch (k) {
    case FactorKernel::G1: return "g1";
    case FactorKernel::G2: return "g2";
    case FactorKernel::G3: return "g3";
    case FactorKernel::G4: return "g4";
  }
  return "?";
}

double g(FactorKernel k, double u, double v) {
  const double mx = std::max(u, v);
  const double mn = std::min(u, v);
  switch (k) {
    case FactorKernel::G1:
      return 3.0 * u * u + 3.0 * v * v - 6.0 * mx + 2.0;
    case FactorKernel::G2:
      return 6.0 * u * u + 6.0 * v * v - 12.0 * u * v + 6.0 * mn - 6.0 * mx + 1.0;
    case FactorKernel::G3:
      return 3.0 * u * u + 3.0 * v * v - 4.0 * u * v + 2.0 * mn - 4.0 * mx + 1.0;
    case FactorKernel::G4:
      return 6.0 * u * u + 6.0 * v * v - 12.0 * u * v + 6.0 * mn - 6.0 * mx + 1.0 +
             6.0 * (u - 0.5) * (v - 0.5);
  }
  return 0.0;
}

double factor_kernel_trace(FactorKernel k) {
  switch (k) {
    case FactorKernel::G1: return 1.0;
    case FactorKernel::G2: return 1.0;
    case FactorKernel::G3: return 2.0 / 3.0;
    case FactorKernel::G4: return 1.5;
  }
  return 0.0;
}

namespace {

// Coefficients over the monomial basis {1, u, v, u², v², uv}; entries are
// exact small rationals scaled by 2 (so every coefficient is an integer) for
// one side of the diagonal.  Pattern order is lexicographic in S4.
struct LawPoly {
  // P(u,v) = (c0 + c1·u + c2·v + c3·u² + c4·v² + c5·uv) / 2
  std::array<int, 6> c;
  double operator()(double u, double v) const {
    return 0.5 * (c[0] + c[1] * u + c[2] * v + c[3] * u * u + c[4] * v * v + c[5] * u * v);
  }
};

// Conditional pattern probabilities for u < v:
//   1234,1243: (1-v)²/2        1324,1342: (1-v)(v-u)   1423,1432: (v-u)²/2
//   2314,2341: u(1-v)          2413,2431: u(v-u)       3412,3421: u²/2
constexpr LawPoly Z{{0, 0, 0, 0, 0, 0}};
constexpr std::array<LawPoly, 24> kLawBelow = {{
    {{1, 0, -2, 0, 1, 0}},   // 1234: (1-v)²/2
    {{1, 0, -2, 0, 1, 0}},   // 1243
    {{0, -2, 2, 0, -2, 2}},  // 1324: (1-v)(v-u) = v-u-v²+uv
    {{0, -2, 2, 0, -2, 2}},  // 1342
    {{0, 0, 0, 1, 1, -2}},   // 1423: (v-u)²/2
    {{0, 0, 0, 1, 1, -2}},   // 1432
    Z,                       // 2134
    Z,                       // 2143
    {{0, 2, 0, 0, 0, -2}},   // 2314: u(1-v)
    {{0, 2, 0, 0, 0, -2}},   // 2341
    {{0, 0, 0, -2, 0, 2}},   // 2413: u(v-u)
    {{0, 0, 0, -2, 0, 2}},   // 2431
    Z, Z, Z, Z,              // 3124, 3142, 3214, 3241
    {{0, 0, 0, 1, 0, 0}},    // 3412: u²/2
    {{0, 0, 0, 1, 0, 0}},    // 3421
    Z, Z, Z, Z, Z, Z,        // 4123..4321
}};

// For u > v:
//   2134,2143: (1-u)²/2        3124,3142: (1-u)(u-v)   4123,4132: (u-v)²/2
//   3214,3241: v(1-u)          4213,4231: v(u-v)       4312,4321: v²/2
constexpr std::array<LawPoly, 24> kLawAbove = {{
    Z, Z, Z, Z, Z, Z,        // 1234..1432
    {{1, -2, 0, 1, 0, 0}},   // 2134: (1-u)²/2
    {{1, -2, 0, 1, 0, 0}},   // 2143
    Z, Z, Z, Z,              // 2314, 2341, 2413, 2431
    {{0, 2, -2, -2, 0, 2}},  // 3124: (1-u)(u-v) = u-v-u²+uv
    {{0, 2, -2, -2, 0, 2}},  // 3142
    {{0, 0, 2, 0, 0, -2}},   // 3214: v(1-u)
    {{0, 0, 2, 0, 0, -2}},   // 3241
    Z, Z,                    // 3412, 3421
    {{0, 0, 0, 1, 1, -2}},   // 4123: (u-v)²/2
    {{0, 0, 0, 1, 1, -2}},   // 4132
    {{0, 0, 0, 0, -2, 2}},   // 4213: v(u-v)
    {{0, 0, 0, 0, -2, 2}},   // 4231
    {{0, 0, 0, 0, 1, 0}},    // 4312: v²/2
    {{0, 0, 0, 0, 1, 0}},    // 4321
}};

}  // namespace

std::array<double, 24> conditional_pattern_law(double u, double v) {
  if (u == v) throw DiagonalInput("conditional pattern law undefined on u = v");
  const auto& table = u < v ? kLawBelow : kLawAbove;
  std::array<double, 24> p{};
  for (int i = 0; i < 24; ++i) p[static_cast<std::size_t>(i)] = table[static_cast<std::size_t>(i)](u, v);
  return p;
}

double h2_closed(Stat A, Point2 z1, Point2 z2) {
  switch (A) {
    case Stat::B:
      return g(FactorKernel::G1, z1.x, z2.x) * g(FactorKernel::G1, z1.y, z2.y) / 6.0;
    case Stat::C:
      return g(FactorKernel::G2, z1.x, z2.x) * g(FactorKernel::G2, z1.y, z2.y) / 6.0;
    case Stat::D:
      // For the statistics as defined from r ∘ q⁻¹ the D kernel carries the
      // Watson-type factor on the y-coordinates (E mirrors it); the
      // convolution of the conditional pattern law pins this orientation.
      return g(FactorKernel::G1, z1.x, z2.x) * g(FactorKernel::G2, z1.y, z2.y) / 6.0;
    case Stat::E:
      return g(FactorKernel::G2, z1.x, z2.x) * g(FactorKernel::G1, z1.y, z2.y) / 6.0;
    case Stat::F:
      return g(FactorKernel::G3, z1.x, z2.x) * g(FactorKernel::G3, z1.y, z2.y) / 2.0;
    case Stat::DE:
      return h2_closed(Stat::D, z1, z2) + h2_closed(Stat::E, z1, z2);
  }
  return 0.0;
}

double h2_from_table(Stat A, Point2 z1, Point2 z2) {
  if (A == Stat::DE) {
    return h2_from_table(Stat::D, z1, z2) + h2_from_table(Stat::E, z1, z2);
  }
  const auto px = conditional_pattern_law(z1.x, z2.x);
  const auto py = conditional_pattern_law(z1.y, z2.y);
  const PatternSet& set = pattern_set(A);
  double mass = 0.0;
  for (int pi = 0; pi < 24; ++pi) {
    if (!set.contains(pi)) continue;
    for (int sigma = 0; sigma < 24; ++sigma) {
      mass += py[static_cast<std::size_t>(s4_compose(pi, sigma))] * px[static_cast<std::size_t>(sigma)];
    }
  }
  const double centered = mass - set.center();
  return set.sign > 0 ? centered : -centered;
}

}  // namespace patind
