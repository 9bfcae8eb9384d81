#include "patind/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "patind/errors.hpp"

namespace patind {

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw ParameterOutOfRange("quadrature order must be >= 1");
  const int n = order;
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one more pass to polish, then stop
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / pp;
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

const GaussLegendre& GaussLegendre::get(int order) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, GaussLegendre(order)).first;
  return it->second;
}

double integrate(const GaussLegendre& rule, const std::function<double(double)>& f,
                 double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return s * half;
}

double integrate_split(const GaussLegendre& rule, const std::function<double(double)>& f,
                       double s) {
  if (s <= 0.0) return integrate(rule, f, 0.0, 1.0);
  if (s >= 1.0) return integrate(rule, f, 0.0, 1.0);
  return integrate(rule, f, 0.0, s) + integrate(rule, f, s, 1.0);
}

double integrate_oscillatory(const GaussLegendre& rule, const std::function<double(double)>& f,
                             double periods) {
  const int panels = std::max(1, static_cast<int>(std::ceil(periods / 4.0)));
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    s += integrate(rule, f, static_cast<double>(p) / panels, static_cast<double>(p + 1) / panels);
  }
  return s;
}

double integrate2_diag(const GaussLegendre& rule, const std::function<double(double, double)>& f) {
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = 0.5 + 0.5 * rule.nodes[i];
    const auto inner = [&](double v) { return f(u, v); };
    total += 0.5 * rule.weights[i] * integrate_split(rule, inner, u);
  }
  return total;
}

}  // namespace patind
