#include <doctest.h>

#include <cmath>

#include "patind/errors.hpp"
#include "patind/kernels.hpp"
#include "patind/quadrature.hpp"
#include "patind/rng.hpp"

using namespace patind;

TEST_CASE("conditional pattern law at the corners") {
  // first coordinate smallest, second largest: only the two patterns with
  // ranks (1,4,*,*) survive, each with mass 1/2
  const auto p01 = conditional_pattern_law(0.0, 1.0);
  CHECK(p01[4] == doctest::Approx(0.5));   // 1423
  CHECK(p01[5] == doctest::Approx(0.5));   // 1432
  double rest = 0.0;
  for (int i = 0; i < 24; ++i) {
    if (i != 4 && i != 5) rest += std::abs(p01[i]);
  }
  CHECK(rest == doctest::Approx(0.0));

  const auto p10 = conditional_pattern_law(1.0, 0.0);
  CHECK(p10[18] == doctest::Approx(0.5));  // 4123
  CHECK(p10[19] == doctest::Approx(0.5));  // 4132

  CHECK_THROWS_AS(conditional_pattern_law(0.4, 0.4), DiagonalInput);
}

TEST_CASE("conditional pattern law sums to one") {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const double u = rng.uniform();
    const double v = rng.uniform();
    if (u == v) continue;
    const auto p = conditional_pattern_law(u, v);
    double sum = 0.0;
    for (const double x : p) {
      CHECK(x >= -1e-15);
      sum += x;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("factor kernels in closed form") {
  CHECK(g(FactorKernel::G1, 0.0, 0.0) == doctest::Approx(2.0));
  CHECK(g(FactorKernel::G3, 0.0, 0.0) == doctest::Approx(1.0));
  for (double u = 0.0; u <= 1.0; u += 0.125) {
    CHECK(g(FactorKernel::G2, u, u) == doctest::Approx(1.0));
    CHECK(g(FactorKernel::G4, u, u) == doctest::Approx(1.0 + 6.0 * (u - 0.5) * (u - 0.5)));
  }
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const double u = rng.uniform(), v = rng.uniform();
    for (const auto k : {FactorKernel::G1, FactorKernel::G2, FactorKernel::G3, FactorKernel::G4}) {
      CHECK(g(k, u, v) == doctest::Approx(g(k, v, u)).epsilon(1e-14));
    }
  }
}

TEST_CASE("trace identities by quadrature") {
  const auto& rule = GaussLegendre::get(64);
  for (const auto k : {FactorKernel::G1, FactorKernel::G2, FactorKernel::G3, FactorKernel::G4}) {
    const double got = integrate(rule, [k](double u) { return g(k, u, u); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(factor_kernel_trace(k)).epsilon(1e-13));
  }
}

TEST_CASE("closed kernels at reference points") {
  CHECK(h2_closed(Stat::B, {0, 0}, {0, 0}) == doctest::Approx(2.0 / 3.0));
  CHECK(h2_closed(Stat::F, {0, 0}, {0, 0}) == doctest::Approx(0.5));
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Point2 z1{rng.uniform(), rng.uniform()};
    const Point2 z2{rng.uniform(), rng.uniform()};
    CHECK(h2_closed(Stat::DE, z1, z2) ==
          doctest::Approx(h2_closed(Stat::D, z1, z2) + h2_closed(Stat::E, z1, z2)).epsilon(1e-13));
  }
}

TEST_CASE("table convolution reproduces the closed kernels") {
  // grid avoiding the diagonals of either coordinate
  const int g1d = 7;
  double maxdiff = 0.0;
  for (int a = 0; a < g1d; ++a) {
    for (int b = 0; b < g1d; ++b) {
      for (int c = 0; c < g1d; ++c) {
        for (int d = 0; d < g1d; ++d) {
          const Point2 z1{(a + 0.5) / g1d, (b + 0.5) / g1d};
          const Point2 z2{(c + 0.37) / g1d, (d + 0.71) / g1d};
          for (const Stat A : kAllStats) {
            maxdiff = std::max(maxdiff,
                               std::abs(h2_closed(A, z1, z2) - h2_from_table(A, z1, z2)));
          }
        }
      }
    }
  }
  CHECK(maxdiff <= 1e-12);
}

TEST_CASE("uncentered pattern masses sum to one") {
  // summing the signed, centered kernels over all 24 singleton sets
  // reconstructs total mass 1: check via the conditional convolution
  const Point2 z1{0.21, 0.87}, z2{0.55, 0.13};
  const auto px = conditional_pattern_law(z1.x, z2.x);
  const auto py = conditional_pattern_law(z1.y, z2.y);
  double total = 0.0;
  for (int pi = 0; pi < 24; ++pi) {
    for (int s = 0; s < 24; ++s) total += py[s4_compose(pi, s)] * px[s];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("degeneracy: the kernels integrate to zero in one argument") {
  const auto& rule = GaussLegendre::get(64);
  double worst = 0.0;
  for (int a = 0; a < 7; ++a) {
    for (int b = 0; b < 7; ++b) {
      const Point2 z1{a / 6.0, b / 6.0};
      for (const Stat A : kAllStats) {
        double outer = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double x2 = 0.5 + 0.5 * rule.nodes[i];
          const auto inner = [&](double y2) { return h2_closed(A, z1, {x2, y2}); };
          outer += 0.5 * rule.weights[i] * integrate_split(rule, inner, z1.y);
        }
        worst = std::max(worst, std::abs(outer));
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("kernel symmetries") {
  Rng rng(10);
  for (int t = 0; t < 30; ++t) {
    const Point2 z1{rng.uniform(), rng.uniform()};
    const Point2 z2{rng.uniform(), rng.uniform()};
    const Point2 s1{z1.y, z1.x};
    const Point2 s2{z2.y, z2.x};
    for (const Stat A : kAllStats) {
      CHECK(h2_closed(A, z1, z2) == doctest::Approx(h2_closed(A, z2, z1)).epsilon(1e-13));
    }
    for (const Stat A : {Stat::B, Stat::C, Stat::F, Stat::DE}) {
      CHECK(h2_closed(A, s1, s2) == doctest::Approx(h2_closed(A, z1, z2)).epsilon(1e-13));
    }
    CHECK(h2_closed(Stat::D, s1, s2) == doctest::Approx(h2_closed(Stat::E, z1, z2)).epsilon(1e-13));
  }
}

TEST_CASE("factor operators are positive") {
  const auto& rule = GaussLegendre::get(48);
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    // random trigonometric polynomial
    double a0 = rng.normal();
    double ac[5], as[5];
    for (int k = 0; k < 5; ++k) {
      ac[k] = rng.normal();
      as[k] = rng.normal();
    }
    const auto f = [&](double u) {
      double s = a0;
      for (int k = 0; k < 5; ++k) {
        s += ac[k] * std::cos(2.0 * M_PI * (k + 1) * u) + as[k] * std::sin(2.0 * M_PI * (k + 1) * u);
      }
      return s;
    };
    for (const auto k : {FactorKernel::G1, FactorKernel::G2, FactorKernel::G3, FactorKernel::G4}) {
      const double quad = integrate2_diag(rule, [&](double u, double v) {
        return f(u) * g(k, u, v) * f(v);
      });
      CHECK(quad >= -1e-10);
    }
  }
}
