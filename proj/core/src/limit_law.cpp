#include "patind/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "patind/efficiency.hpp"
#include "patind/errors.hpp"
#include "patind/parallel.hpp"
#include "patind/quadrature.hpp"
#include "patind/spectral.hpp"

namespace patind {

namespace {

constexpr double kPi = M_PI;
const double kPi2 = kPi * kPi;
const double kPi4 = kPi2 * kPi2;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return Rng::stream(seed, tag).next();
}

// ---------------------------------------------------------------------------
// Shift integral tables: <f_j, a> for the per-axis eigenfunction families.
// Cosine/sine integrals use oscillation-matched panel counts so high indices
// stay accurate.
// ---------------------------------------------------------------------------

enum class AxisFamily { CosPiF, Cos2PiF, Sin2PiF };

std::vector<double> axis_table(AxisFamily fam, const std::function<double(double)>& f, int J) {
  const auto& rule = GaussLegendre::get(32);
  std::vector<double> out(static_cast<std::size_t>(J) + 1, 0.0);
  for (int j = 1; j <= J; ++j) {
    double periods = 0.0;
    std::function<double(double)> integrand;
    switch (fam) {
      case AxisFamily::CosPiF:
        periods = 0.5 * j;
        integrand = [&f, j](double u) { return M_SQRT2 * std::cos(kPi * j * u) * f(u); };
        break;
      case AxisFamily::Cos2PiF:
        periods = j;
        integrand = [&f, j](double u) { return M_SQRT2 * std::cos(2.0 * kPi * j * u) * f(u); };
        break;
      case AxisFamily::Sin2PiF:
        periods = j;
        integrand = [&f, j](double u) { return M_SQRT2 * std::sin(2.0 * kPi * j * u) * f(u); };
        break;
    }
    out[static_cast<std::size_t>(j)] = integrate_oscillatory(rule, integrand, periods);
  }
  return out;
}

std::vector<double> chi_table(FactorKernel kern, const std::vector<double>& gammas,
                              const std::function<double(double)>& f, int count) {
  const auto& rule = GaussLegendre::get(32);
  std::vector<double> out(static_cast<std::size_t>(count) + 1, 0.0);
  for (int j = 1; j <= count; ++j) {
    const double gamma = gammas[static_cast<std::size_t>(j - 1)];
    EigenFn1D fn = kern == FactorKernel::G3 ? EigenFn1D(Chi3{j, gamma}) : EigenFn1D(Chi4{j, gamma});
    const double periods = oscillation_periods(fn);
    const auto integrand = [&](double u) { return eval(fn, u) * f(u); };
    out[static_cast<std::size_t>(j)] = integrate_oscillatory(rule, integrand, periods);
  }
  return out;
}

// Pool of weight classes before truncation.
struct RawEntry {
  double weight;
  int mult;
  double shift_sq;
};

// Sort by weight (descending), merge near-equal classes, then keep the
// shortest prefix whose trace meets the target (never splitting a class).
void finalize(LimitLaw& law, std::vector<RawEntry> pool) {
  std::sort(pool.begin(), pool.end(),
            [](const RawEntry& a, const RawEntry& b) { return a.weight > b.weight; });
  std::vector<RawEntry> merged;
  for (const auto& e : pool) {
    if (!merged.empty() && std::abs(e.weight - merged.back().weight) <= 1e-12 * merged.back().weight) {
      merged.back().mult += e.mult;
      merged.back().shift_sq += e.shift_sq;
      continue;
    }
    merged.push_back(e);
  }
  const double target = law.capture_target * law.analytic_trace;
  double captured = 0.0;
  std::size_t keep = 0;
  for (; keep < merged.size() && captured < target; ++keep) {
    captured += merged[keep].weight * merged[keep].mult;
  }
  if (captured < target) {
    throw TruncationUnreachable("captured trace " + std::to_string(captured) + " of " +
                                std::to_string(law.analytic_trace) +
                                " cannot reach the capture target with the given parameters");
  }
  merged.resize(keep);
  law.entries.reserve(merged.size());
  double shift_mass = 0.0;
  for (const auto& e : merged) {
    law.entries.push_back({e.weight, e.mult, e.shift_sq});
    shift_mass += e.weight * e.shift_sq;
  }
  law.captured_trace = captured;
  law.shift_mass = shift_mass;
}

std::vector<std::int32_t> divisor_count_sieve(std::int64_t P) {
  std::vector<std::int32_t> d(static_cast<std::size_t>(P) + 1, 0);
  for (std::int64_t j = 1; j <= P; ++j) {
    for (std::int64_t p = j; p <= P; p += j) ++d[static_cast<std::size_t>(p)];
  }
  return d;
}

struct ShiftTables {
  bool active = false;
  std::vector<double> cospi_x, cospi_y;
  std::vector<double> cos2_x, cos2_y;
  std::vector<double> sin2_x, sin2_y;
  std::vector<double> chi3_x, chi3_y;
  std::vector<double> chi4_x, chi4_y;

  double get(const std::vector<double>& t, int j) const {
    return j < static_cast<int>(t.size()) ? t[static_cast<std::size_t>(j)] : 0.0;
  }
};

constexpr int kShiftCap = 512;

// Rational product family: weight = coeff/p² with `mult_per_pair`
// eigenfunctions per ordered divisor pair (j,k), jk = p.  shift_fn(j,k)
// returns the summed squared projections over that pair's eigenfunctions.
template <typename ShiftFn>
void add_rational_family(std::vector<RawEntry>& pool, double coeff, int mult_per_pair,
                         double weight_floor, const ShiftFn& shift_fn, bool shifted) {
  const auto P = static_cast<std::int64_t>(std::sqrt(coeff / weight_floor)) + 1;
  if (P > 5'000'000) {
    throw TruncationUnreachable("rational family cutoff exceeds 5e6 classes");
  }
  const auto dcnt = divisor_count_sieve(P);
  for (std::int64_t p = 1; p <= P; ++p) {
    const double w = coeff / (static_cast<double>(p) * static_cast<double>(p));
    if (w < weight_floor) continue;
    double shift_sq = 0.0;
    if (shifted) {
      for (std::int64_t j = 1; j * j <= p; ++j) {
        if (p % j != 0) continue;
        const std::int64_t k = p / j;
        shift_sq += shift_fn(static_cast<int>(j), static_cast<int>(k));
        if (j != k) shift_sq += shift_fn(static_cast<int>(k), static_cast<int>(j));
      }
    }
    pool.push_back({w, mult_per_pair * dcnt[static_cast<std::size_t>(p)], shift_sq});
  }
}

// Upper bound on how much trace an enumeration pass with the given floor can
// still be missing; used to decide when the floor must be lowered.
double pool_trace(const std::vector<RawEntry>& pool) {
  double s = 0.0;
  for (const auto& e : pool) s += e.weight * e.mult;
  return s;
}

std::vector<RawEntry> enumerate_pool(Stat A, const DEParams& de, double weight_floor,
                                     const ShiftTables& st, double* analytic) {
  std::vector<RawEntry> pool;
  const bool sh = st.active;
  switch (A) {
    case Stat::B:
      *analytic = 1.0;
      add_rational_family(pool, 36.0 / kPi4, 1, weight_floor,
                          [&](int j, int k) {
                            const double a = st.get(st.cospi_x, j) * st.get(st.cospi_y, k);
                            return a * a;
                          },
                          sh);
      break;
    case Stat::C:
      *analytic = 1.0;
      add_rational_family(pool, 9.0 / kPi4, 4, weight_floor,
                          [&](int j, int k) {
                            const double cc = st.get(st.cos2_x, j) * st.get(st.cos2_y, k);
                            const double cs = st.get(st.cos2_x, j) * st.get(st.sin2_y, k);
                            const double sc = st.get(st.sin2_x, j) * st.get(st.cos2_y, k);
                            const double ss = st.get(st.sin2_x, j) * st.get(st.sin2_y, k);
                            return cc * cc + cs * cs + sc * sc + ss * ss;
                          },
                          sh);
      break;
    case Stat::D:
      *analytic = 1.0;
      add_rational_family(pool, 18.0 / kPi4, 2, weight_floor,
                          [&](int j, int k) {
                            const double c = st.get(st.cospi_x, j) * st.get(st.cos2_y, k);
                            const double s = st.get(st.cospi_x, j) * st.get(st.sin2_y, k);
                            return c * c + s * s;
                          },
                          sh);
      break;
    case Stat::E:
      *analytic = 1.0;
      add_rational_family(pool, 18.0 / kPi4, 2, weight_floor,
                          [&](int j, int k) {
                            const double c = st.get(st.cos2_x, j) * st.get(st.cospi_y, k);
                            const double s = st.get(st.sin2_x, j) * st.get(st.cospi_y, k);
                            return c * c + s * s;
                          },
                          sh);
      break;
    case Stat::F: {
      *analytic = 4.0 / 3.0;
      add_rational_family(pool, 27.0 / (4.0 * kPi4), 1, weight_floor,
                          [&](int j, int k) {
                            const double a = st.get(st.cos2_x, j) * st.get(st.cos2_y, k);
                            return a * a;
                          },
                          sh);
      // Root-branch blocks of the third factor kernel.
      int need = 64;
      std::vector<double> gam = find_gamma_roots(FactorKernel::G3, need);
      while (3.0 / (gam.back() * gam.front()) >= weight_floor ||
             9.0 / (2.0 * kPi2 * gam.back()) >= weight_floor) {
        need *= 2;
        gam = find_gamma_roots(FactorKernel::G3, need);
        if (need > (1 << 22)) throw TruncationUnreachable("g3 root budget exhausted");
      }
      for (int k = 1; k <= need; ++k) {
        const double gk = gam[static_cast<std::size_t>(k - 1)];
        const double base = 9.0 / (2.0 * kPi2 * gk);
        if (base < weight_floor) break;
        for (int j = 1; base / (static_cast<double>(j) * j) >= weight_floor; ++j) {
          const double w = base / (static_cast<double>(j) * j);
          double shift_sq = 0.0;
          if (sh) {
            const double a = st.get(st.cos2_x, j) * st.get(st.chi3_y, k);
            const double b = st.get(st.chi3_x, k) * st.get(st.cos2_y, j);
            shift_sq = a * a + b * b;
          }
          pool.push_back({w, 2, shift_sq});
        }
      }
      for (int j = 1; j <= need; ++j) {
        const double gj = gam[static_cast<std::size_t>(j - 1)];
        if (3.0 / (gj * gj) < weight_floor) break;
        for (int k = j; k <= need; ++k) {
          const double gk = gam[static_cast<std::size_t>(k - 1)];
          const double w = 3.0 / (gj * gk);
          if (w < weight_floor) break;
          double shift_sq = 0.0;
          if (sh) {
            const double a = st.get(st.chi3_x, j) * st.get(st.chi3_y, k);
            shift_sq = a * a;
            if (j != k) {
              const double b = st.get(st.chi3_x, k) * st.get(st.chi3_y, j);
              shift_sq += b * b;
            }
          }
          pool.push_back({w, j == k ? 1 : 2, shift_sq});
        }
      }
      break;
    }
    case Stat::DE: {
      *analytic = 2.0;
      add_rational_family(pool, 9.0 / kPi4, 1, weight_floor,
                          [&](int j, int k) {
                            const double a = st.get(st.cos2_x, j) * st.get(st.cos2_y, k);
                            return a * a;
                          },
                          sh);
      // Mixed cosine x root-branch families of the fourth factor kernel.
      int need = std::max(64, de.m1);
      K4DataPtr k4 = k4_data(need);
      const auto mu_floor_reached = [&](const K4Data& d) {
        const double mu_last = d.mu.back();
        return 3.0 * mu_last / kPi2 < weight_floor && mu_last * d.mu.front() < weight_floor;
      };
      while (!mu_floor_reached(*k4)) {
        need *= 2;
        if (need > (1 << 22)) throw TruncationUnreachable("g4 root budget exhausted");
        k4 = k4_data(need);
      }
      const auto& mu = k4->mu;
      for (int k = 1; k <= need; ++k) {
        const double base = 3.0 * mu[static_cast<std::size_t>(k - 1)] / kPi2;
        if (base < weight_floor) break;
        for (int j = 1; base / (static_cast<double>(j) * j) >= weight_floor; ++j) {
          const double w = base / (static_cast<double>(j) * j);
          double shift_sq = 0.0;
          if (sh) {
            const double a = st.get(st.cos2_x, j) * st.get(st.chi4_y, k);
            const double b = st.get(st.chi4_x, k) * st.get(st.cos2_y, j);
            shift_sq = a * a + b * b;
          }
          pool.push_back({w, 2, shift_sq});
        }
      }
      // Collision classes of the root products (weight μ_j μ_k, dimension
      // #ordered pairs - 1).
      struct Prod {
        double value;
        int j, k;
      };
      std::vector<Prod> prods;
      for (int j = 1; j <= need; ++j) {
        const double mj = mu[static_cast<std::size_t>(j - 1)];
        if (mj * mu[0] < weight_floor) break;
        for (int k = j; k <= need; ++k) {
          const double w = mj * mu[static_cast<std::size_t>(k - 1)];
          if (w < weight_floor) break;
          prods.push_back({w, j, k});
        }
      }
      std::sort(prods.begin(), prods.end(),
                [](const Prod& a, const Prod& b) { return a.value > b.value; });
      std::size_t i = 0;
      while (i < prods.size()) {
        std::size_t jend = i + 1;
        while (jend < prods.size() &&
               std::abs(prods[jend].value - prods[i].value) <= 1e-12 * prods[i].value) {
          ++jend;
        }
        std::vector<std::pair<int, int>> ordered;
        for (std::size_t q = i; q < jend; ++q) {
          ordered.emplace_back(prods[q].j, prods[q].k);
          if (prods[q].j != prods[q].k) ordered.emplace_back(prods[q].k, prods[q].j);
        }
        const int dim = static_cast<int>(ordered.size()) - 1;
        if (dim >= 1) {
          double shift_sq = 0.0;
          if (sh) {
            std::sort(ordered.begin(), ordered.end());
            // Projections onto the zero-sum basis: total projection onto the
            // class span minus the component along the normalized all-ones
            // vector.
            double sum = 0.0, sq = 0.0;
            for (const auto& [pj, pk] : ordered) {
              const double a = st.get(st.chi4_x, pj) * st.get(st.chi4_y, pk);
              sum += a;
              sq += a * a;
            }
            shift_sq = sq - sum * sum / static_cast<double>(ordered.size());
            if (shift_sq < 0.0) shift_sq = 0.0;
          }
          pool.push_back({prods[i].value, dim, shift_sq});
        }
        i = jend;
      }
      break;
    }
  }
  return pool;
}

// Secular-root block of the DE law (fixed by the DE parameters, independent
// of the weight floor).
std::vector<RawEntry> de_fhat_entries(const DEParams& de, const ShiftTables& st,
                                      const Direction* q) {
  const OmegaDE o = omega_de_roots(de.m, de.m1);
  const auto& d = *o.k4;
  const int m1 = de.m1;
  std::vector<RawEntry> out(o.roots.size());
  const bool sh = st.active && q != nullptr && q->rank1();
  const int shift_count = sh ? std::min<int>(static_cast<int>(o.roots.size()), 1024) : 0;
  parallel_for(o.roots.size(), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const double lambda = 1.0 / o.roots[i];
      double shift_sq = 0.0;
      if (static_cast<int>(i) < shift_count) {
        double proj = 0.0, norm2 = 0.0;
        for (int l = 1; l <= m1; ++l) {
          const double bl = d.b[static_cast<std::size_t>(l - 1)];
          const double mul = d.mu[static_cast<std::size_t>(l - 1)];
          const double ax = st.get(st.chi4_x, l);
          double inner_p = 0.0;
          for (int mm = 1; mm <= m1; ++mm) {
            const double coeff = bl * d.b[static_cast<std::size_t>(mm - 1)] /
                                 (mul * d.mu[static_cast<std::size_t>(mm - 1)] - lambda);
            inner_p += coeff * st.get(st.chi4_y, mm);
            norm2 += coeff * coeff;
          }
          proj += ax * inner_p;
        }
        const double c = 1.0 / std::sqrt(norm2);
        shift_sq = c * proj * c * proj;
      }
      out[i] = {lambda, 1, shift_sq};
    }
  });
  return out;
}

LimitLaw build_law_impl(Stat A, const Direction* q, DEParams de, double capture_target) {
  LimitLaw law;
  law.stat = A;
  law.capture_target = capture_target;
  law.de = de;

  ShiftTables st;
  if (q != nullptr) {
    if (!q->rank1()) {
      throw UnsupportedShift("direction '" + q->label +
                             "' is not a rank-1 tensor; shift projection is not supported");
    }
    st.active = true;
    const auto& fx = q->fx;
    const auto& fy = q->fy;
    switch (A) {
      case Stat::B:
        st.cospi_x = axis_table(AxisFamily::CosPiF, fx, kShiftCap);
        st.cospi_y = axis_table(AxisFamily::CosPiF, fy, kShiftCap);
        break;
      case Stat::C:
        st.cos2_x = axis_table(AxisFamily::Cos2PiF, fx, kShiftCap);
        st.cos2_y = axis_table(AxisFamily::Cos2PiF, fy, kShiftCap);
        st.sin2_x = axis_table(AxisFamily::Sin2PiF, fx, kShiftCap);
        st.sin2_y = axis_table(AxisFamily::Sin2PiF, fy, kShiftCap);
        break;
      case Stat::D:
        st.cospi_x = axis_table(AxisFamily::CosPiF, fx, kShiftCap);
        st.cos2_y = axis_table(AxisFamily::Cos2PiF, fy, kShiftCap);
        st.sin2_y = axis_table(AxisFamily::Sin2PiF, fy, kShiftCap);
        break;
      case Stat::E:
        st.cos2_x = axis_table(AxisFamily::Cos2PiF, fx, kShiftCap);
        st.sin2_x = axis_table(AxisFamily::Sin2PiF, fx, kShiftCap);
        st.cospi_y = axis_table(AxisFamily::CosPiF, fy, kShiftCap);
        break;
      case Stat::F: {
        st.cos2_x = axis_table(AxisFamily::Cos2PiF, fx, kShiftCap);
        st.cos2_y = axis_table(AxisFamily::Cos2PiF, fy, kShiftCap);
        const auto gam = find_gamma_roots(FactorKernel::G3, kShiftCap);
        st.chi3_x = chi_table(FactorKernel::G3, gam, fx, kShiftCap);
        st.chi3_y = chi_table(FactorKernel::G3, gam, fy, kShiftCap);
        break;
      }
      case Stat::DE: {
        st.cos2_x = axis_table(AxisFamily::Cos2PiF, fx, kShiftCap);
        st.cos2_y = axis_table(AxisFamily::Cos2PiF, fy, kShiftCap);
        const int cap = std::max(kShiftCap, de.m1);
        const auto k4 = k4_data(cap);
        st.chi4_x = chi_table(FactorKernel::G4, k4->gamma, fx, cap);
        st.chi4_y = chi_table(FactorKernel::G4, k4->gamma, fy, cap);
        break;
      }
    }
    law.shifted = true;
    law.direction_label = q->label;
    law.direction_norm2 = q->norm * q->norm;
  }

  double analytic = 0.0;
  std::vector<RawEntry> fixed;
  if (A == Stat::DE) fixed = de_fhat_entries(de, st, q);

  const double top = 6.0 * top_eigenvalue(A, de.m1);
  double floor = top / 1024.0;
  for (int attempt = 0;; ++attempt) {
    auto pool = enumerate_pool(A, de, floor, st, &analytic);
    pool.insert(pool.end(), fixed.begin(), fixed.end());
    law.analytic_trace = analytic;
    if (pool_trace(pool) >= capture_target * analytic) {
      finalize(law, std::move(pool));
      break;
    }
    if (attempt >= 40) {
      law.analytic_trace = analytic;
      finalize(law, std::move(pool));  // throws TruncationUnreachable
      break;
    }
    floor *= 0.25;
  }

  if (law.shifted) {
    const double total = 6.0 * quad_form(A, *q, 64);
    // directions outside the operator's range carry no shiftable mass
    if (total > 1e-12 && law.shift_mass < 0.99 * total) {
      throw UnsupportedShift("captured shifted mass " + std::to_string(law.shift_mass) +
                             " is below 99% of 6<K q,q> = " + std::to_string(total));
    }
  }
  return law;
}

}  // namespace

LimitLaw build_limit_law(Stat A, DEParams de, double capture_target) {
  return build_law_impl(A, nullptr, de, capture_target);
}

LimitLaw build_shifted_law(Stat A, const Direction& q, DEParams de, double capture_target) {
  return build_law_impl(A, &q, de, capture_target);
}

double sample_limit(const LimitLaw& law, Rng& rng, double theta) {
  double s = 0.0;
  const double t2 = theta * theta;
  for (const auto& e : law.entries) {
    if (law.shifted && theta != 0.0 && e.shift_sq > 0.0) {
      const double z = rng.normal() + std::sqrt(t2 * e.shift_sq);
      double qsum = z * z;
      if (e.multiplicity > 1) qsum += rng.chi_square(e.multiplicity - 1);
      s += e.weight * (qsum - e.multiplicity);
    } else {
      s += e.weight * (rng.chi_square(e.multiplicity) - e.multiplicity);
    }
  }
  return s;
}

std::vector<double> sample_limit_many(const LimitLaw& law, int reps, std::uint64_t seed,
                                      double theta) {
  std::vector<double> out(static_cast<std::size_t>(reps));
  parallel_for(out.size(), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      Rng rng = Rng::stream(seed, i);
      out[i] = sample_limit(law, rng, theta);
    }
  });
  return out;
}

double upper_quantile(std::vector<double>& draws, double alpha) {
  if (draws.empty()) throw ParameterOutOfRange("no draws");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterOutOfRange("alpha must be in (0,1)");
  const std::size_t n = draws.size();
  std::size_t k = static_cast<std::size_t>(alpha * static_cast<double>(n));
  if (k >= n) k = n - 1;
  const std::size_t idx = n - 1 - k;
  std::nth_element(draws.begin(), draws.begin() + static_cast<std::ptrdiff_t>(idx), draws.end());
  return draws[idx];
}

double limit_quantile(const LimitLaw& law, double alpha, int reps, std::uint64_t seed) {
  if (reps < 1000) throw ParameterOutOfRange("limit_quantile needs reps >= 1000");
  auto draws = sample_limit_many(law, reps, seed, 0.0);
  return upper_quantile(draws, alpha);
}

std::vector<std::array<double, 6>> mc_null_statistics(int n, int reps, std::uint64_t seed) {
  if (n < 4) throw DegenerateSample("need n >= 4");
  std::vector<std::array<double, 6>> out(static_cast<std::size_t>(reps));
  parallel_for(out.size(), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      Rng rng = Rng::stream(seed, i);
      const Permutation p = random_permutation(n, rng);
      const PatternCounts counts = count_patterns4(p);
      for (int s = 0; s < 6; ++s) {
        out[i][static_cast<std::size_t>(s)] = test_statistic(counts, kAllStats[static_cast<std::size_t>(s)]);
      }
    }
  });
  return out;
}

std::vector<double> mc_null_draws(Stat A, int n, int reps, std::uint64_t seed) {
  const int idx = static_cast<int>(std::find(kAllStats.begin(), kAllStats.end(), A) -
                                   kAllStats.begin());
  auto all = mc_null_statistics(n, reps, seed);
  std::vector<double> out(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) out[i] = all[i][static_cast<std::size_t>(idx)];
  return out;
}

double mc_critical_value(Stat A, int n, double alpha, int reps, std::uint64_t seed) {
  auto draws = mc_null_draws(A, n, reps, seed);
  return upper_quantile(draws, alpha);
}

std::vector<ExactAtom> exact_null_distribution(Stat A, int n) {
  if (n < 4) throw DegenerateSample("need n >= 4");
  if (n > 8) throw SizeLimit("exact enumeration supports n <= 8");
  const std::int64_t c4 = choose4(n);
  const std::int64_t den = 24 * c4;
  std::map<std::int64_t, std::int64_t> freq;  // numerator over den -> count
  std::vector<std::int32_t> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  std::int64_t total = 0;
  do {
    const PatternCounts counts = count_patterns4(Permutation(e));
    std::int64_t num = 0;
    const auto hits = [&](Stat s) {
      const PatternSet& set = pattern_set(s);
      std::int64_t h = 0;
      for (int i = 0; i < 24; ++i) {
        if (set.contains(i)) h += counts.counts[static_cast<std::size_t>(i)];
      }
      return h;
    };
    if (A == Stat::DE) {
      num = 16 * c4 - 24 * (hits(Stat::D) + hits(Stat::E));
    } else {
      const PatternSet& set = pattern_set(A);
      const std::int64_t raw = 24 * hits(A) - set.size * c4;
      num = set.sign > 0 ? raw : -raw;
    }
    ++freq[num];
    ++total;
  } while (std::next_permutation(e.begin(), e.end()));

  std::vector<ExactAtom> atoms;
  atoms.reserve(freq.size());
  for (const auto& [num, cnt] : freq) {
    const std::int64_t g = std::gcd(std::abs(num) == 0 ? den : std::abs(num), den);
    atoms.push_back({static_cast<double>(num) / static_cast<double>(den), num / g, den / g,
                     static_cast<double>(cnt) / static_cast<double>(total)});
  }
  return atoms;  // ascending in value (map order)
}

double exact_upper_quantile(const std::vector<ExactAtom>& atoms, double alpha) {
  double tail = 0.0;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    tail += it->prob;
    if (tail > alpha) return it->value;
  }
  return atoms.front().value;
}

double exact_tail_prob(const std::vector<ExactAtom>& atoms, double t) {
  double tail = 0.0;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    if (it->value >= t - 1e-15) {
      tail += it->prob;
    } else {
      break;
    }
  }
  return tail;
}

double limiting_power(Stat A, const Direction& q, double theta, double alpha, int reps,
                      std::uint64_t seed, DEParams de) {
  const LimitLaw law = build_shifted_law(A, q, de);
  auto null_draws = sample_limit_many(law, reps, derive_seed(seed, 1), 0.0);
  const double crit = upper_quantile(null_draws, alpha);
  const auto alt = sample_limit_many(law, reps, derive_seed(seed, 2), theta);
  std::int64_t hits = 0;
  for (const double x : alt) {
    if (x >= crit) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(reps);
}

double local_power_curvature(Stat A, const Direction& q, double alpha, int reps,
                             std::uint64_t seed, DEParams de) {
  const LimitLaw law = build_shifted_law(A, q, de);
  const double norm = std::sqrt(law.direction_norm2);
  auto null_draws = sample_limit_many(law, reps, derive_seed(seed, 1), 0.0);
  const double crit = upper_quantile(null_draws, alpha);

  std::vector<double> contrib(static_cast<std::size_t>(reps));
  const std::uint64_t s2 = derive_seed(seed, 2);
  parallel_for(contrib.size(), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      Rng rng = Rng::stream(s2, i);
      double zq = 0.0, quad = 0.0;
      for (const auto& e : law.entries) {
        if (e.shift_sq > 0.0) {
          const double z = rng.normal();
          double qsum = z * z;
          if (e.multiplicity > 1) qsum += rng.chi_square(e.multiplicity - 1);
          zq += std::sqrt(e.shift_sq) * z / norm;
          quad += e.weight * (qsum - e.multiplicity);
        } else {
          quad += e.weight * (rng.chi_square(e.multiplicity) - e.multiplicity);
        }
      }
      contrib[i] = quad >= crit ? zq * zq : 0.0;
    }
  });
  double mean = 0.0;
  for (const double x : contrib) mean += x;
  mean /= static_cast<double>(reps);
  return mean - alpha;
}

}  // namespace patind
