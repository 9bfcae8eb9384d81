// Acceptance suite: checks the frozen reference numbers at their stated
// tolerances and prints one PASS/FAIL line per criterion.
//
// Criterion 3 has an additional hours-class variant (secular truncation
// m1=5000 with 30000 roots) that runs only when PATIND_ACCEPT_LONG=1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "patind/efficiency.hpp"
#include "patind/kernels.hpp"
#include "patind/limit_law.hpp"
#include "patind/quadrature.hpp"
#include "patind/spectral.hpp"
#include "runners.hpp"

using namespace patind;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double x, int digits = 15) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(i / static_cast<double>(a.size()) - j / static_cast<double>(b.size())));
  }
  return d;
}

void criterion_1() {
  const auto t0 = Clock::now();
  const double gamma1 = find_gamma_roots(FactorKernel::G3, 1)[0];
  const double printed = 3.492799533553498;
  const double dg = std::abs(gamma1 - printed);
  const auto de = omega_de_roots(1, 500);
  const double dz = std::abs(de.roots[0] - 3.091933991647879);
  const double secs = seconds_since(t0);
  const bool ok = dg <= 1e-12 && dz <= 1e-6 && secs < 10.0;
  report(1, ok,
         "gamma1 = " + fmt(gamma1) + " vs printed 3.492799533553498 (|diff| = " + fmt(dg, 3) +
             ", tol 1e-12); zhat1 = " + fmt(de.roots[0]) + " (|diff| = " + fmt(dz, 3) +
             ", tol 1e-6); " + fmt(secs, 3) + " s");
  if (dg > 1e-12) {
    std::printf(
        "      note: the computed root satisfies the defining equation to ~1e-15 while the\n"
        "      printed 15-digit reference leaves a residual of ~1.1e-10; the reference's last\n"
        "      digits are a solver artifact (see also the trace check of criterion 2, which\n"
        "      passes at 1e-10 with the computed roots).\n");
  }
}

void criterion_2() {
  auto t0 = Clock::now();
  const double desk = k3_partial_trace(10000);
  const double desk_deficit = 2.0 / 3.0 - desk;
  const double bound = 1.5 / (M_PI * M_PI * 1e4);
  const bool desk_ok = std::abs(desk - 2.0 / 3.0) < 3e-4 && desk_deficit > 0.5 * bound &&
                       desk_deficit < 1.5 * bound;
  const double full = k3_partial_trace(1000000);
  const double secs = seconds_since(t0);
  const double diff = std::abs(full - 0.66666651467749);
  const bool ok = desk_ok && diff <= 1e-10 && secs < 300.0;
  report(2, ok,
         "1/4 + sum 1/gamma_k: 1e6 roots -> " + fmt(full) + " (|diff to 0.66666651467749| = " +
             fmt(diff, 3) + ", tol 1e-10); desk 1e4 roots -> " + fmt(desk) +
             " (deficit " + fmt(desk_deficit, 3) + " ~ tail bound " + fmt(bound, 3) + "); " +
             fmt(secs, 3) + " s");
}

void criterion_3() {
  const auto t0 = Clock::now();
  const auto de = omega_de_roots(5000, 500);
  double sbar = 0.0;
  for (auto it = de.roots.rbegin(); it != de.roots.rend(); ++it) sbar += 1.0 / *it;
  const double secs = seconds_since(t0);
  const double diff = std::abs(sbar - 0.5248875879199677);
  const bool ok = diff <= 5e-3 && secs < 60.0;
  report(3, ok,
         "desk sbar(m=5000, m1=500) = " + fmt(sbar) + " (|diff| = " + fmt(diff, 3) +
             ", tol 5e-3); " + fmt(secs, 3) + " s");
  if (std::getenv("PATIND_ACCEPT_LONG")) {
    const auto t1 = Clock::now();
    const auto big = omega_de_roots(30000, 5000);
    double s2 = 0.0;
    for (auto it = big.roots.rbegin(); it != big.roots.rend(); ++it) s2 += 1.0 / *it;
    const double d2 = std::abs(s2 - 0.5248875879199677);
    report(3, d2 <= 1e-8,
           "long-mode sbar(m=30000, m1=5000) = " + fmt(s2) + " (|diff| = " + fmt(d2, 3) +
               ", tol 1e-8); " + fmt(seconds_since(t1), 3) + " s");
  } else {
    std::printf("      (long-mode variant skipped; set PATIND_ACCEPT_LONG=1 to run it)\n");
  }
}

void criterion_4() {
  const auto t0 = Clock::now();
  const EfficiencyReport r1 = efficiency_report(direction_by_name("fgm"));
  const EfficiencyReport r2 = efficiency_report(direction_by_name("optc"));
  const double want1[6] = {1.0, 4.0 / 9.0, 2.0 / 3.0, 2.0 / 3.0, 0.8906, 0.7618};
  const double want2[6] = {1.0 / 16.0, 1.0, 0.25, 0.25, 0.2818, 0.2857};
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    worst = std::max(worst, std::abs(r1.ratio[i][0] - want1[i]));
    worst = std::max(worst, std::abs(r2.ratio[i][1] - want2[i]));
  }
  const double secs = seconds_since(t0);
  const bool ok = worst <= 5e-4 && secs < 30.0;
  std::string row1 = "row1 = (";
  std::string row2 = "row2 = (";
  for (int i = 0; i < 6; ++i) {
    row1 += fmt(r1.ratio[i][0], 6) + (i < 5 ? ", " : ")");
    row2 += fmt(r2.ratio[i][1], 6) + (i < 5 ? ", " : ")");
  }
  report(4, ok, row1 + "; " + row2 + "; worst |diff| = " + fmt(worst, 3) + " (tol 5e-4); " +
                    fmt(secs, 3) + " s");
}

void criterion_5() {
  const FgmIntegrals I = fgm_integrals();
  const double d1 = std::abs(I.i1 - 0.2);
  const double d2 = std::abs(I.i2 - 1.0 / 15.0);
  const double d3 = std::abs(I.i3 - 4.0 / 45.0);
  const bool ok = d1 <= 1e-12 && d2 <= 1e-12 && d3 <= 1e-12;
  report(5, ok,
         "I1 = " + fmt(I.i1) + ", I2 = " + fmt(I.i2) + ", I3 = " + fmt(I.i3) +
             " vs (1/5, 1/15, 4/45), tol 1e-12");
}

void criterion_6() {
  const auto t0 = Clock::now();
  cli::PowerStudyConfig cfg;
  cfg.models = {make_copula(CopulaFamily::FGM, 0.5), make_copula(CopulaFamily::Clayton, 0.5),
                make_copula(CopulaFamily::OptC, 0.5)};
  cfg.ns = {100};
  cfg.cv_reps = 100000;
  cfg.power_reps = 10000;
  cfg.seed = 2026;
  auto cells = cli::run_power_study(cfg);
  cfg.models = {make_copula(CopulaFamily::Gaussian, 0.5)};
  cfg.ns = {50};
  const auto g50 = cli::run_power_study(cfg);
  cells.insert(cells.end(), g50.begin(), g50.end());

  const auto cell = [&](CopulaFamily fam, int n, Stat s) {
    for (const auto& c : cells) {
      if (c.model.family == fam && c.n == n && c.stat == s) return c.power;
    }
    return -1.0;
  };
  struct Want {
    CopulaFamily fam;
    int n;
    Stat stat;
    double value;
  };
  const Want wanted[] = {
      {CopulaFamily::FGM, 100, Stat::B, 0.36},     {CopulaFamily::FGM, 100, Stat::F, 0.28},
      {CopulaFamily::Clayton, 100, Stat::B, 0.83}, {CopulaFamily::Gaussian, 50, Stat::B, 0.92},
      {CopulaFamily::OptC, 100, Stat::C, 0.99},
  };
  bool ok = true;
  std::string detail;
  for (const auto& w : wanted) {
    const double got = cell(w.fam, w.n, w.stat);
    ok = ok && std::abs(got - w.value) <= 0.02;
    detail += std::string(copula_family_name(w.fam)) + ":0.5 n=" + std::to_string(w.n) + " " +
              stat_name(w.stat) + " -> " + fmt(got, 4) + " (want " + fmt(w.value, 3) + "); ";
  }
  report(6, ok, detail + fmt(seconds_since(t0), 3) + " s (tol 0.02)");
}

void criterion_7() {
  const auto t0 = Clock::now();
  Rng rng(314159);
  bool ok = true;
  for (int n = 4; n <= 30 && ok; ++n) {
    for (int r = 0; r < 200; ++r) {
      const Permutation p = random_permutation(n, rng);
      if (count_patterns4(p).counts != count_patterns4_oracle(p).counts) {
        ok = false;
        break;
      }
    }
  }
  const double secs = seconds_since(t0);
  report(7, ok && secs < 10.0,
         "fast counter vs exhaustive oracle, 200 draws each for n = 4..30; " + fmt(secs, 3) + " s");
}

void criterion_8() {
  // 10^4 point pairs across both diagonal orientations
  double worst = 0.0;
  Rng rng(8888);
  for (int i = 0; i < 10000 / 6; ++i) {
    const Point2 z1{rng.uniform(), rng.uniform()};
    const Point2 z2{rng.uniform(), rng.uniform()};
    for (const Stat A : kAllStats) {
      worst = std::max(worst, std::abs(h2_closed(A, z1, z2) - h2_from_table(A, z1, z2)));
    }
  }
  // degeneracy on the 21x21 grid
  const auto& rule = GaussLegendre::get(64);
  double degen = 0.0;
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; b <= 20; ++b) {
      const Point2 z1{a / 20.0, b / 20.0};
      for (const Stat A : kAllStats) {
        double outer = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double x2 = 0.5 + 0.5 * rule.nodes[i];
          outer += 0.5 * rule.weights[i] *
                   integrate_split(rule, [&](double y2) { return h2_closed(A, z1, {x2, y2}); },
                                   z1.y);
        }
        degen = std::max(degen, std::abs(outer));
      }
    }
  }
  const bool ok = worst <= 1e-12 && degen <= 1e-10;
  report(8, ok,
         "max |closed - table| = " + fmt(worst, 3) + " (tol 1e-12); max |int h2 dz2| = " +
             fmt(degen, 3) + " (tol 1e-10)");
}

void criterion_9() {
  const auto t0 = Clock::now();
  const int reps = 1000000;
  bool ok = true;
  std::string detail;
  const double targets[2] = {0.32, 0.08};
  const Stat stats[2] = {Stat::B, Stat::C};
  for (int k = 0; k < 2; ++k) {
    const auto draws = sample_limit_many(build_limit_law(stats[k]), reps, 900 + k);
    double mean = 0;
    for (const double x : draws) mean += x;
    mean /= reps;
    double var = 0, m4 = 0;
    for (const double x : draws) {
      const double d = x - mean;
      var += d * d;
      m4 += d * d * d * d;
    }
    var /= reps - 1;
    m4 /= reps;
    const double se_var = std::sqrt((m4 - var * var) / reps);
    const double se_mean = std::sqrt(var / reps);
    ok = ok && std::abs(var - targets[k]) <= 3 * se_var && std::abs(mean) <= 4 * se_mean;
    detail += std::string("Var(Z_") + stat_name(stats[k]) + ") = " + fmt(var, 6) + " (want " +
              fmt(targets[k], 3) + " +- " + fmt(3 * se_var, 3) + "), mean " + fmt(mean, 3) + "; ";
  }
  report(9, ok, detail + fmt(seconds_since(t0), 3) + " s");
}

void criterion_10() {
  const int reps = 100000;
  bool ok = true;
  std::string detail;
  for (const int n : {4, 5, 6}) {
    for (const Stat A : kAllStats) {
      const auto atoms = exact_null_distribution(A, n);
      const double exact = exact_upper_quantile(atoms, 0.05);
      const double mc = mc_critical_value(A, n, 0.05, reps, 1700 + n);
      const double tail = exact_tail_prob(atoms, exact);
      const double se = std::sqrt(0.05 * 0.95 / reps);
      bool cell_ok;
      if (std::abs(tail - 0.05) > 4 * se) {
        cell_ok = std::abs(mc - exact) < 1e-12;
      } else {
        double next = exact;
        for (const auto& a : atoms) {
          if (a.value > exact + 1e-15) {
            next = a.value;
            break;
          }
        }
        cell_ok = std::abs(mc - exact) < 1e-12 || std::abs(mc - next) < 1e-12;
      }
      if (!cell_ok) {
        detail += std::string("mismatch at n=") + std::to_string(n) + " " + stat_name(A) +
                  " (mc " + fmt(mc, 6) + " vs exact " + fmt(exact, 6) + "); ";
        ok = false;
      }
    }
  }
  const double q4 = mc_critical_value(Stat::B, 4, 0.05, reps, 1704);
  ok = ok && q4 == 2.0 / 3.0;
  report(10, ok,
         detail + "n=4 B upper-0.05 quantile = " + fmt(q4) +
             " (exactly 2/3); all n in {4,5,6} against the exhaustive law");
}

void criterion_11() {
  const auto t0 = Clock::now();
  const int n = 200;
  auto finite = mc_null_draws(Stat::B, n, 10000, 4040);
  for (auto& x : finite) x *= n;
  const auto limit = sample_limit_many(build_limit_law(Stat::B), 100000, 4141);
  const double d = ks_two_sample(finite, limit);
  report(11, d <= 0.03,
         "two-sample Kolmogorov distance = " + fmt(d, 4) + " (tol 0.03), n = 200 vs truncated law; " +
             fmt(seconds_since(t0), 3) + " s");
}

void criterion_12() {
  // the squared-kernel integral, by diagonal-split quadrature
  const auto& rule = GaussLegendre::get(64);
  const double g4sq = integrate2_diag(rule, [](double u, double v) {
    const double x = g(FactorKernel::G4, u, v);
    return x * x;
  });
  const K4MuSums sums = k4_mu_sums(10000);
  const double d1 = std::abs(sums.mu_sq_sum - 11.0 / 20.0);
  const double d2 = std::abs(sums.mu_cross_sum - 9.0 / 40.0);
  // consistency of the recorded integral with the eigenvalue sums:
  // ∫∫g4² = Σ (3/π²j²)² + Σ μ_j² = 1/10 + Σ μ_j²
  const double recon = 0.1 + sums.mu_sq_sum;
  const bool ok = d1 <= 1e-6 && d2 <= 1e-6 && std::abs(g4sq - recon) <= 1e-6;
  report(12, ok,
         "quadrature int g4^2 = " + fmt(g4sq) + " (= 1/10 + sum mu^2 = " + fmt(recon) +
             "); sum mu^2 = " + fmt(sums.mu_sq_sum) + " (want 11/20), sum_{j<k} mu mu = " +
             fmt(sums.mu_cross_sum) + " (want 9/40), tol 1e-6");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("acceptance: %d criterion(s) failed, total %.1f s\n", g_failures,
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
