#pragma once

#include <functional>
#include <vector>

namespace patind {

// Gauss-Legendre rule on [-1,1]; nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order);

  // Cached rule (orders are reused heavily across the spectral tests).
  static const GaussLegendre& get(int order);
};

// ∫_a^b f
double integrate(const GaussLegendre& rule, const std::function<double(double)>& f,
                 double a, double b);

// ∫_0^1 f with a panel boundary at s (for integrands with a kink at s).
double integrate_split(const GaussLegendre& rule, const std::function<double(double)>& f,
                       double s);

// ∫_0^1 f where f oscillates with roughly `periods` full periods; the range
// is cut into enough panels that each carries only a few oscillations.
double integrate_oscillatory(const GaussLegendre& rule, const std::function<double(double)>& f,
                             double periods);

// ∫_0^1 ∫_0^1 f(u,v) du dv with the inner integral split at v = u (the factor
// kernels have a u∨v kink on the diagonal but are polynomial on each side).
double integrate2_diag(const GaussLegendre& rule, const std::function<double(double, double)>& f);

}  // namespace patind
