#pragma once

#include <array>
#include <string>

#include "patind/copulas.hpp"
#include "patind/statistics.hpp"

namespace patind {

// <K(A) q, q> = ∫∫ h2^A(z1, z2) q(z1) q(z2) dz1 dz2 by tensor Gauss-Legendre
// of the given per-axis order.  Rank-1 directions reduce to products of 2D
// factor integrals (exact for the polynomial/trigonometric directions here);
// other directions go through the 4D grid.  Throws QuadratureNonconvergent if
// doubling the order moves the value by more than 1e-8 relative.
double quad_form(Stat A, const Direction& q, int order = 64);

// The 4D path without the rank-1 reduction, kept as an independent
// cross-check route.
double quad_form_generic(Stat A, const std::function<double(double, double)>& q, int order);

// The three double integrals ∫∫ (2u-1) g_i(u,v) (2v-1) du dv and their exact
// values 1/5, 1/15, 4/45.
struct FgmIntegrals {
  double i1, i2, i3;
  static constexpr double exact_i1 = 1.0 / 5.0;
  static constexpr double exact_i2 = 1.0 / 15.0;
  static constexpr double exact_i3 = 4.0 / 45.0;
};
FgmIntegrals fgm_integrals(int order = 64);

// κ(K(A), q) = <K(A) q, q> / λ_{A,1}, on the h2 normalization throughout
// (the scale cancels between numerator and denominator).
double kappa(Stat A, const Direction& q, int order = 64, int de_m1 = 500);

// Local Bahadur efficiency of T^{A'} with respect to T^A for alternatives
// approaching independence along q; equals the limiting Pitman efficiency.
double bahadur_efficiency(Stat a_prime, Stat a, const Direction& q, int order = 64,
                          int de_m1 = 500);

// Everything the efficiency table needs for one direction.
struct EfficiencyReport {
  std::string direction;
  std::array<double, 6> quad;     // <K(A)q,q> indexed by kAllStats order
  std::array<double, 6> lambda1;  // largest eigenvalue per statistic
  std::array<double, 6> kappa;    // quad / lambda1
  // ratio[i][j] = efficiency of statistic i with respect to statistic j.
  std::array<std::array<double, 6>, 6> ratio;
};
EfficiencyReport efficiency_report(const Direction& q, int order = 64, int de_m1 = 500);

}  // namespace patind
