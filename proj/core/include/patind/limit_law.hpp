#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "patind/copulas.hpp"
#include "patind/statistics.hpp"

namespace patind {

// Truncation parameters of the DE spectral machinery: m secular roots from
// the m1-term truncated secular function.  The defaults are desk scale; the
// long-mode setting is m = 30000, m1 = 5000.
struct DEParams {
  int m = 5000;
  int m1 = 500;
};

// One multiplicity class of a limiting law: weight = 6x the operator
// eigenvalue, and the squared projection of the (scaled) local direction onto
// the class eigenspace (0 for a null law).
struct LimitLawEntry {
  double weight;
  int multiplicity;
  double shift_sq;
};

// Finite representation of the limiting null (or locally shifted) law of
// n·T^A: the variable Σ w_g ((ξ + a)² - 1) summed over classes, ξ standard
// normal.  Truncated so captured_trace >= capture_target · analytic_trace.
struct LimitLaw {
  Stat stat;
  std::vector<LimitLawEntry> entries;  // weight descending
  double analytic_trace = 0.0;         // 6 x analytic operator trace
  double captured_trace = 0.0;
  double capture_target = 0.999;
  DEParams de{};

  bool shifted = false;
  std::string direction_label;
  double direction_norm2 = 0.0;  // ||q||²
  double shift_mass = 0.0;       // Σ w·shift_sq = 6<K(A)q,q> over retained classes

  double trace_deficit() const { return analytic_trace - captured_trace; }
  // Residual variance bound of the dropped tail: 2 · tail trace · max tail weight.
  double residual_variance_bound() const {
    const double tail_weight = entries.empty() ? 0.0 : entries.back().weight;
    return 2.0 * trace_deficit() * tail_weight;
  }
};

// Builds the truncated law of n·T^A.  The spectrum is consumed largest
// eigenvalue first until the capture target is met (the enumeration cutoff is
// raised automatically); throws TruncationUnreachable when the target cannot
// be met with the given DE parameters.
LimitLaw build_limit_law(Stat A, DEParams de = {}, double capture_target = 0.999);

// Same law with shift coefficients <φ_j, q> attached (exact tensor reductions
// for rank-1 directions, series projections for the DE families).  Throws
// UnsupportedShift when the captured shifted mass falls below 99% of
// 6<K(A)q,q>.
LimitLaw build_shifted_law(Stat A, const Direction& q, DEParams de = {},
                           double capture_target = 0.999);

// One draw of Σ w_g ((ξ + θ a)² - 1); theta scales the shifts.
double sample_limit(const LimitLaw& law, Rng& rng, double theta = 1.0);

// reps independent draws, one derived stream per replication; deterministic
// for a fixed seed independent of thread count.
std::vector<double> sample_limit_many(const LimitLaw& law, int reps, std::uint64_t seed,
                                      double theta = 1.0);

// Empirical upper-α quantile: the (floor(α·N)+1)-th largest value.
// Reorders `draws`.
double upper_quantile(std::vector<double>& draws, double alpha);

// Upper-α quantile of the limiting law by simulation.
double limit_quantile(const LimitLaw& law, double alpha, int reps, std::uint64_t seed);

// Null Monte Carlo of the finite-sample statistics over uniform random
// permutations.  The batched form evaluates all six statistics on each
// replication (order B, C, D, E, F, DE).
std::vector<std::array<double, 6>> mc_null_statistics(int n, int reps, std::uint64_t seed);
std::vector<double> mc_null_draws(Stat A, int n, int reps, std::uint64_t seed);
double mc_critical_value(Stat A, int n, double alpha, int reps, std::uint64_t seed);

// Exact null distribution by exhaustive enumeration of S_n, 4 <= n <= 8.
// Values are exact rationals num/den (den = 24·C(n,4) before reduction).
struct ExactAtom {
  double value;
  std::int64_t num;
  std::int64_t den;
  double prob;
};
std::vector<ExactAtom> exact_null_distribution(Stat A, int n);

// Upper-α critical value of an exact distribution: the largest atom t with
// P(T >= t) > α (the test rejects only beyond it).
double exact_upper_quantile(const std::vector<ExactAtom>& atoms, double alpha);

// P(T >= t) under the exact distribution.
double exact_tail_prob(const std::vector<ExactAtom>& atoms, double t);

// Limiting power β(θ) of the level-α test against the local family with
// direction q: P(Σ w((ξ + θa)² - 1) >= c_α) with c_α the upper-α quantile of
// the truncated null law.
double limiting_power(Stat A, const Direction& q, double theta, double alpha, int reps,
                      std::uint64_t seed, DEParams de = {});

// Curvature of the limiting power function at θ = 0:
// E[(Σ a_j ξ_j / ||q||)² · 1{Σ w_j ξ_j² >= c_α}] - α.
double local_power_curvature(Stat A, const Direction& q, double alpha, int reps,
                             std::uint64_t seed, DEParams de = {});

// Quantile table row (n < 0 encodes the asymptotic n·T scale).
struct EmpiricalQuantiles {
  Stat stat;
  int n;
  std::vector<double> alphas;
  std::vector<double> quantiles;
  int reps;
  std::uint64_t seed;
};

}  // namespace patind
