#pragma once

#include <array>

#include "patind/statistics.hpp"

namespace patind {

// The four kernels on [0,1]^2 whose integral operators carry the spectral
// theory of the test statistics.  All are symmetric, continuous, positive
// semidefinite, and polynomial off the diagonal u = v.
enum class FactorKernel { G1, G2, G3, G4 };

const char* factor_kernel_name(FactorKernel k);

// Closed-form evaluation:
//   g1 = 3u² + 3v² - 6(u∨v) + 2
//   g2 = 6u² + 6v² - 12uv + 6(u∧v) - 6(u∨v) + 1
//   g3 = 3u² + 3v² - 4uv + 2(u∧v) - 4(u∨v) + 1
//   g4 = g2 + 6(u-1/2)(v-1/2)
double g(FactorKernel k, double u, double v);

// ∫ g(u,u) du in closed form: 1, 1, 2/3, 3/2.
double factor_kernel_trace(FactorKernel k);

struct Point2 {
  double x;
  double y;
};

// Conditional law of the rank pattern of (u, v, U3, U4) given the first two
// coordinates, with U3, U4 independent uniforms: a probability for each of
// the 24 patterns in lexicographic order.  Requires u != v; each entry is a
// polynomial in (u, v), one set of coefficients per side of the diagonal.
std::array<double, 24> conditional_pattern_law(double u, double v);

// Reduced kernel h2 of the centered statistic T^A, in closed factorized form:
//   h2^B = (1/6) g1⊗g1,  h2^C = (1/6) g2⊗g2,  h2^D = (1/6) g1⊗g2,
//   h2^E = (1/6) g2⊗g1,  h2^F = (1/2) g3⊗g3,  h2^DE = h2^D + h2^E,
// where the first factor acts on x-coordinates and the second on y.
double h2_closed(Stat A, Point2 z1, Point2 z2);

// The same kernel built directly from the conditional pattern law:
// sum over sigma of p_{y1,y2}(pi∘sigma) p_{x1,x2}(sigma), summed over pi in A,
// centered by #A/24 and signed like the statistic.  Serves as the independent
// oracle for h2_closed.  Requires x1 != x2 and y1 != y2.
double h2_from_table(Stat A, Point2 z1, Point2 z2);

}  // namespace patind
