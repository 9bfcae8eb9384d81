#include "patind/efficiency.hpp"

#include <cmath>

#include "patind/errors.hpp"
#include "patind/kernels.hpp"
#include "patind/quadrature.hpp"
#include "patind/spectral.hpp"

namespace patind {

namespace {

// ∫∫ a(u) g(u,v) b(v) du dv, inner integral split on the diagonal kink.
double factor_quad(FactorKernel k, const std::function<double(double)>& a,
                   const std::function<double(double)>& b, int order) {
  const auto& rule = GaussLegendre::get(order);
  return integrate2_diag(rule, [&](double u, double v) { return a(u) * g(k, u, v) * b(v); });
}

double quad_form_rank1(Stat A, const Direction& q, int order) {
  const auto& fx = q.fx;
  const auto& fy = q.fy;
  switch (A) {
    case Stat::B:
      return factor_quad(FactorKernel::G1, fx, fx, order) *
             factor_quad(FactorKernel::G1, fy, fy, order) / 6.0;
    case Stat::C:
      return factor_quad(FactorKernel::G2, fx, fx, order) *
             factor_quad(FactorKernel::G2, fy, fy, order) / 6.0;
    case Stat::D:
      return factor_quad(FactorKernel::G1, fx, fx, order) *
             factor_quad(FactorKernel::G2, fy, fy, order) / 6.0;
    case Stat::E:
      return factor_quad(FactorKernel::G2, fx, fx, order) *
             factor_quad(FactorKernel::G1, fy, fy, order) / 6.0;
    case Stat::F:
      return factor_quad(FactorKernel::G3, fx, fx, order) *
             factor_quad(FactorKernel::G3, fy, fy, order) / 2.0;
    case Stat::DE:
      return quad_form_rank1(Stat::D, q, order) + quad_form_rank1(Stat::E, q, order);
  }
  return 0.0;
}

}  // namespace

double quad_form_generic(Stat A, const std::function<double(double, double)>& q, int order) {
  const auto& rule = GaussLegendre::get(order);
  // Outer point z1 on a plain tensor grid; inner integral over z2 with
  // diagonal splits in both coordinates relative to z1.
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x1 = 0.5 + 0.5 * rule.nodes[i];
    const double wx = 0.5 * rule.weights[i];
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double y1 = 0.5 + 0.5 * rule.nodes[j];
      const double wy = 0.5 * rule.weights[j];
      const double q1 = q(x1, y1);
      if (q1 == 0.0) continue;
      const auto fy = [&](double y2) {
        const auto fx = [&](double x2) {
          return h2_closed(A, {x1, y1}, {x2, y2}) * q(x2, y2);
        };
        return integrate_split(rule, fx, x1);
      };
      total += wx * wy * q1 * integrate_split(rule, fy, y1);
    }
  }
  return total;
}

double quad_form(Stat A, const Direction& q, int order) {
  if (q.rank1()) {
    const double v1 = quad_form_rank1(A, q, order);
    const double v2 = quad_form_rank1(A, q, 2 * order);
    if (std::abs(v2 - v1) > 1e-8 * std::abs(v2) + 1e-14) {
      throw QuadratureNonconvergent("quad_form did not settle between orders " +
                                    std::to_string(order) + " and " + std::to_string(2 * order));
    }
    return v2;
  }
  if (!q.eval) throw ParameterOutOfRange("direction has no evaluator");
  const int base = std::min(order, 32);
  const double v1 = quad_form_generic(A, q.eval, base);
  const double v2 = quad_form_generic(A, q.eval, 2 * base);
  if (std::abs(v2 - v1) > 1e-8 * std::abs(v2) + 1e-14) {
    throw QuadratureNonconvergent("generic quad_form did not settle");
  }
  return v2;
}

FgmIntegrals fgm_integrals(int order) {
  const auto lin = [](double u) { return 2.0 * u - 1.0; };
  FgmIntegrals out;
  out.i1 = factor_quad(FactorKernel::G1, lin, lin, order);
  out.i2 = factor_quad(FactorKernel::G2, lin, lin, order);
  out.i3 = factor_quad(FactorKernel::G3, lin, lin, order);
  return out;
}

double kappa(Stat A, const Direction& q, int order, int de_m1) {
  return quad_form(A, q, order) / top_eigenvalue(A, de_m1);
}

double bahadur_efficiency(Stat a_prime, Stat a, const Direction& q, int order, int de_m1) {
  return kappa(a_prime, q, order, de_m1) / kappa(a, q, order, de_m1);
}

EfficiencyReport efficiency_report(const Direction& q, int order, int de_m1) {
  EfficiencyReport rep;
  rep.direction = q.label;
  for (std::size_t i = 0; i < kAllStats.size(); ++i) {
    const Stat s = kAllStats[i];
    rep.quad[i] = quad_form(s, q, order);
    rep.lambda1[i] = top_eigenvalue(s, de_m1);
    rep.kappa[i] = rep.quad[i] / rep.lambda1[i];
  }
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      rep.ratio[i][j] = rep.kappa[i] / rep.kappa[j];
    }
  }
  return rep;
}

}  // namespace patind
