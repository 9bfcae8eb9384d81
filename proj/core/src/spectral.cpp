#include "patind/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "patind/errors.hpp"
#include "patind/parallel.hpp"

namespace patind {

namespace {

constexpr double kPi = M_PI;
constexpr double kSqrt2 = M_SQRT2;

// ---------------------------------------------------------------------------
// Roots of w cos w + a sin w = 0 (equivalently w cot w = -a), one per
// interval ((j-1)π, jπ) for a > 0.  Bisection to locate, Newton to polish.
// ---------------------------------------------------------------------------
double trig_root(double a, std::int64_t j) {
  double lo = kPi * static_cast<double>(j - 1);
  double hi = kPi * static_cast<double>(j);
  // f is positive at the left edge when j is odd (f(0+) > 0 covers j = 1).
  const bool left_positive = (j % 2 == 1);
  for (int it = 0; it < 24; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = mid * std::cos(mid) + a * std::sin(mid);
    if ((f > 0.0) == left_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double w = 0.5 * (lo + hi);
  for (int it = 0; it < 10; ++it) {
    const double s = std::sin(w);
    const double c = std::cos(w);
    const double f = w * c + a * s;
    const double fp = (1.0 + a) * c - w * s;
    const double step = f / fp;
    double next = w - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if ((next * std::cos(next) + a * std::sin(next) > 0.0) == left_positive) {
      lo = next;
    } else {
      hi = next;
    }
    const double delta = std::abs(next - w);
    w = next;
    if (delta <= 1e-16 * w) break;
  }
  return w;
}

double gamma_root(FactorKernel k, std::int64_t j) {
  if (k == FactorKernel::G3) {
    const double w = trig_root(2.0, j);
    return 2.0 * w * w / 3.0;
  }
  const double w = trig_root(1.0, j);
  return w * w / 3.0;
}

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Deterministic parallel reduction: fixed blocks, in-order combine.
template <typename TermFn>
double blocked_sum(std::int64_t count, TermFn term) {
  constexpr std::int64_t kBlock = 8192;
  const std::int64_t nblocks = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
  parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b0, std::size_t b1) {
    for (std::size_t bi = b0; bi < b1; ++bi) {
      const std::int64_t jlo = static_cast<std::int64_t>(bi) * kBlock + 1;
      const std::int64_t jhi = std::min<std::int64_t>(count, (static_cast<std::int64_t>(bi) + 1) * kBlock);
      Kahan acc;
      for (std::int64_t j = jhi; j >= jlo; --j) acc.add(term(j));
      partial[bi] = acc.sum;
    }
  });
  Kahan total;
  for (std::int64_t bi = nblocks - 1; bi >= 0; --bi) total.add(partial[static_cast<std::size_t>(bi)]);
  return total.sum;
}

// Asymptotic polygamma tails, shifted into the asymptotic regime first.
double trigamma(double z) {
  double extra = 0.0;
  while (z < 12.0) {
    extra += 1.0 / (z * z);
    z += 1.0;
  }
  const double r = 1.0 / z;
  const double r2 = r * r;
  return extra + r * (1.0 + 0.5 * r + r2 * (1.0 / 6.0 - r2 * (1.0 / 30.0 - r2 / 42.0)));
}

double polygamma3(double z) {
  double extra = 0.0;
  while (z < 12.0) {
    extra += 6.0 / (z * z * z * z);
    z += 1.0;
  }
  const double r = 1.0 / z;
  const double r2 = r * r;
  // ψ₃(z) ~ 2/z³ + 3/z⁴ + 2/z⁵ - 1/z⁷ + ...
  return extra + r * r2 * (2.0 + 3.0 * r + 2.0 * r2 - r2 * r2);
}

double chi3_eval(double gamma, double u) {
  const double w = std::sqrt(1.5 * gamma);
  const double c = 1.0 / std::sqrt(0.5 + 2.0 / gamma);
  return c * (std::cos(2.0 * w * u) + (2.0 / w) * std::sin(2.0 * w * u));
}

double chi4_eval(double gamma, double u) {
  const double w = std::sqrt(3.0 * gamma);
  const double c = 1.0 / std::sqrt(0.5 + 1.0 / (3.0 * gamma));
  return c * (std::cos(2.0 * w * u) + (1.0 / w) * std::sin(2.0 * w * u));
}

}  // namespace

std::vector<double> find_gamma_roots(FactorKernel k, std::int64_t count) {
  if (k != FactorKernel::G3 && k != FactorKernel::G4) {
    throw ParameterOutOfRange("gamma roots exist only for the g3 and g4 branches");
  }
  if (count < 1) throw ParameterOutOfRange("count must be >= 1");
  std::vector<double> roots(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      roots[i] = gamma_root(k, static_cast<std::int64_t>(i) + 1);
    }
  });
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    if (!(roots[i] < roots[i + 1])) throw RootBracketFailure("gamma roots not strictly increasing");
  }
  return roots;
}

void for_each_gamma(FactorKernel k, std::int64_t count,
                    const std::function<void(std::int64_t, double)>& fn) {
  for (std::int64_t j = 1; j <= count; ++j) fn(j, gamma_root(k, j));
}

double k3_partial_trace(std::int64_t count) {
  const double sum = blocked_sum(count, [](std::int64_t j) {
    const double w = trig_root(2.0, j);
    return 1.5 / (w * w);
  });
  return 0.25 + sum;
}

K4DataPtr k4_data(int m1) {
  if (m1 < 1) throw ParameterOutOfRange("m1 must be >= 1");
  static std::mutex mu;
  static std::shared_ptr<K4Data> big;          // largest table computed so far
  static std::map<int, K4DataPtr> exact;       // sliced views by m1
  std::lock_guard<std::mutex> lock(mu);
  auto it = exact.find(m1);
  if (it != exact.end()) return it->second;
  if (!big || static_cast<int>(big->gamma.size()) < m1) {
    auto d = std::make_shared<K4Data>();
    d->gamma = find_gamma_roots(FactorKernel::G4, m1);
    d->mu.resize(d->gamma.size());
    d->b.resize(d->gamma.size());
    for (std::size_t j = 0; j < d->gamma.size(); ++j) {
      const double m = 1.0 / d->gamma[j];
      const double c = 1.0 / std::sqrt(0.5 + m / 3.0);
      d->mu[j] = m;
      d->b[j] = -c * m / 3.0;
    }
    big = d;
  }
  if (static_cast<int>(big->gamma.size()) == m1) {
    exact[m1] = big;
    return big;
  }
  auto sliced = std::make_shared<K4Data>();
  sliced->gamma.assign(big->gamma.begin(), big->gamma.begin() + m1);
  sliced->mu.assign(big->mu.begin(), big->mu.begin() + m1);
  sliced->b.assign(big->b.begin(), big->b.begin() + m1);
  exact[m1] = sliced;
  return sliced;
}

K4MuSums k4_mu_sums(int count) {
  const auto d = k4_data(count);
  Kahan head, head2;
  for (int j = count - 1; j >= 0; --j) {
    const double m = d->mu[static_cast<std::size_t>(j)];
    head.add(m);
    head2.add(m * m);
  }
  // μ_j = 3/a² - 6/a⁴ + O(a⁻⁶) with a = (j-1/2)π, so the tails reduce to
  // polygamma values at count + 1/2.
  const double z = count + 0.5;
  const double t2 = trigamma(z);            // Σ_{j>count} (j-1/2)^{-2}
  const double t4 = polygamma3(z) / 6.0;    // Σ_{j>count} (j-1/2)^{-4}
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  K4MuSums out;
  out.mu_sum = head.sum + 3.0 * t2 / pi2 - 6.0 * t4 / pi4;
  out.mu_sq_sum = head2.sum + 9.0 * t4 / pi4;
  out.mu_cross_sum = 0.5 * (out.mu_sum * out.mu_sum - out.mu_sq_sum);
  return out;
}

// ---------------------------------------------------------------------------
// Descriptor evaluation
// ---------------------------------------------------------------------------

double eval(const EigenFn1D& f, double u) {
  if (const auto* p = std::get_if<CosPi>(&f)) return kSqrt2 * std::cos(kPi * p->j * u);
  if (const auto* p = std::get_if<Cos2Pi>(&f)) return kSqrt2 * std::cos(2.0 * kPi * p->j * u);
  if (const auto* p = std::get_if<Sin2Pi>(&f)) return kSqrt2 * std::sin(2.0 * kPi * p->j * u);
  if (const auto* p = std::get_if<Chi3>(&f)) return chi3_eval(p->gamma, u);
  const auto& p = std::get<Chi4>(f);
  return chi4_eval(p.gamma, u);
}

double oscillation_periods(const EigenFn1D& f) {
  if (const auto* p = std::get_if<CosPi>(&f)) return 0.5 * p->j;
  if (const auto* p = std::get_if<Cos2Pi>(&f)) return p->j;
  if (const auto* p = std::get_if<Sin2Pi>(&f)) return p->j;
  if (const auto* p = std::get_if<Chi3>(&f)) return std::sqrt(1.5 * p->gamma) / kPi;
  return std::sqrt(3.0 * std::get<Chi4>(f).gamma) / kPi;
}

std::string label(const EigenFn1D& f) {
  if (const auto* p = std::get_if<CosPi>(&f)) return "cos_pi(" + std::to_string(p->j) + ")";
  if (const auto* p = std::get_if<Cos2Pi>(&f)) return "cos_2pi(" + std::to_string(p->j) + ")";
  if (const auto* p = std::get_if<Sin2Pi>(&f)) return "sin_2pi(" + std::to_string(p->j) + ")";
  if (const auto* p = std::get_if<Chi3>(&f)) return "chi3(" + std::to_string(p->j) + ")";
  return "chi4(" + std::to_string(std::get<Chi4>(f).j) + ")";
}

namespace {

EigenFn1D narrow(const EigenFn& f) {
  if (const auto* p = std::get_if<CosPi>(&f)) return *p;
  if (const auto* p = std::get_if<Cos2Pi>(&f)) return *p;
  if (const auto* p = std::get_if<Sin2Pi>(&f)) return *p;
  if (const auto* p = std::get_if<Chi3>(&f)) return *p;
  if (const auto* p = std::get_if<Chi4>(&f)) return *p;
  throw ParameterOutOfRange("descriptor is bivariate");
}

}  // namespace

bool is_bivariate(const EigenFn& f) {
  return std::holds_alternative<TensorFn>(f) || std::holds_alternative<TauFn>(f) ||
         std::holds_alternative<HatFFn>(f);
}

double eval1(const EigenFn& f, double u) { return eval(narrow(f), u); }

double eval2(const EigenFn& f, double x, double y) {
  if (const auto* t = std::get_if<TensorFn>(&f)) return eval(t->left, x) * eval(t->right, y);
  if (const auto* t = std::get_if<TauFn>(&f)) {
    double s = 0.0;
    for (std::size_t i = 0; i < t->pairs.size(); ++i) {
      const auto [j, k] = t->pairs[i];
      s += t->coeffs[i] * chi4_eval(t->k4->gamma[static_cast<std::size_t>(j - 1)], x) *
           chi4_eval(t->k4->gamma[static_cast<std::size_t>(k - 1)], y);
    }
    return s;
  }
  const auto& h = std::get<HatFFn>(f);
  const auto& d = *h.k4;
  const std::size_t m1 = d.mu.size();
  std::vector<double> cx(m1), cy(m1);
  for (std::size_t l = 0; l < m1; ++l) {
    cx[l] = chi4_eval(d.gamma[l], x);
    cy[l] = chi4_eval(d.gamma[l], y);
  }
  double s = 0.0;
  for (std::size_t l = 0; l < m1; ++l) {
    double inner = 0.0;
    for (std::size_t m = 0; m < m1; ++m) {
      inner += d.b[m] * cy[m] / (d.mu[l] * d.mu[m] - h.lambda6);
    }
    s += d.b[l] * cx[l] * inner;
  }
  return h.norm_const * s;
}

std::string label(const EigenFn& f) {
  if (const auto* t = std::get_if<TensorFn>(&f)) {
    return "tensor(" + label(t->left) + "," + label(t->right) + ")";
  }
  if (const auto* t = std::get_if<TauFn>(&f)) {
    return "tau(" + std::to_string(t->pairs.front().first) + "," +
           std::to_string(t->pairs.front().second) + ";" + std::to_string(t->index) + ")";
  }
  if (const auto* h = std::get_if<HatFFn>(&f)) return "hatf(" + std::to_string(h->i) + ")";
  return label(narrow(f));
}

// ---------------------------------------------------------------------------
// Spectrum assembly
// ---------------------------------------------------------------------------

namespace {

struct Item {
  double value;
  EigenFn fn;
};

Spectrum assemble(std::string kernel, double analytic, std::vector<Item> items,
                  int max_entries) {
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.value > b.value; });
  Spectrum s;
  s.kernel = std::move(kernel);
  s.analytic_trace = analytic;
  for (auto& it : items) {
    if (!s.entries.empty() &&
        std::abs(it.value - s.entries.back().eigenvalue) <= 1e-12 * s.entries.back().eigenvalue) {
      s.entries.back().eigenfunctions.push_back(std::move(it.fn));
      s.entries.back().multiplicity += 1;
      continue;
    }
    if (max_entries > 0 && static_cast<int>(s.entries.size()) == max_entries) break;
    SpectrumEntry e;
    e.eigenvalue = it.value;
    e.multiplicity = 1;
    e.eigenfunctions.push_back(std::move(it.fn));
    s.entries.push_back(std::move(e));
  }
  double captured = 0.0;
  for (auto it = s.entries.rbegin(); it != s.entries.rend(); ++it) {
    captured += it->eigenvalue * it->multiplicity;
  }
  s.captured_trace = captured;
  return s;
}

}  // namespace

Spectrum spectrum_1d(FactorKernel k, int count) {
  if (count < 1) throw ParameterOutOfRange("count must be >= 1");
  std::vector<Item> items;
  const double pi2 = kPi * kPi;
  switch (k) {
    case FactorKernel::G1:
      for (int j = 1; j <= count; ++j) {
        items.push_back({6.0 / (pi2 * j * j), CosPi{j}});
      }
      break;
    case FactorKernel::G2:
      for (int j = 1; j <= count; ++j) {
        items.push_back({3.0 / (pi2 * j * j), Cos2Pi{j}});
        items.push_back({3.0 / (pi2 * j * j), Sin2Pi{j}});
      }
      break;
    case FactorKernel::G3: {
      const auto roots = find_gamma_roots(FactorKernel::G3, count);
      for (int j = 1; j <= count; ++j) {
        items.push_back({1.5 / (pi2 * j * j), Cos2Pi{j}});
        items.push_back({1.0 / roots[static_cast<std::size_t>(j - 1)],
                         Chi3{j, roots[static_cast<std::size_t>(j - 1)]}});
      }
      break;
    }
    case FactorKernel::G4: {
      const auto roots = find_gamma_roots(FactorKernel::G4, count);
      for (int j = 1; j <= count; ++j) {
        items.push_back({3.0 / (pi2 * j * j), Cos2Pi{j}});
        items.push_back({1.0 / roots[static_cast<std::size_t>(j - 1)],
                         Chi4{j, roots[static_cast<std::size_t>(j - 1)]}});
      }
      break;
    }
  }
  return assemble(factor_kernel_name(k), factor_kernel_trace(k), std::move(items), count);
}

Spectrum spectrum_product(Stat A, int cutoff) {
  if (cutoff < 1) throw ParameterOutOfRange("cutoff must be >= 1");
  if (A == Stat::DE) throw ParameterOutOfRange("use spectrum_de for the DE statistic");
  std::vector<Item> items;
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  double analytic = 0.0;
  switch (A) {
    case Stat::B:
      analytic = 1.0 / 6.0;
      for (int j = 1; j <= cutoff; ++j) {
        for (int k = 1; k <= cutoff; ++k) {
          const auto p = static_cast<double>(j) * k;
          items.push_back({6.0 / (pi4 * p * p), TensorFn{CosPi{j}, CosPi{k}}});
        }
      }
      break;
    case Stat::C:
      analytic = 1.0 / 6.0;
      for (int j = 1; j <= cutoff; ++j) {
        for (int k = 1; k <= cutoff; ++k) {
          const auto p = static_cast<double>(j) * k;
          const double v = 1.5 / (pi4 * p * p);
          items.push_back({v, TensorFn{Cos2Pi{j}, Cos2Pi{k}}});
          items.push_back({v, TensorFn{Cos2Pi{j}, Sin2Pi{k}}});
          items.push_back({v, TensorFn{Sin2Pi{j}, Cos2Pi{k}}});
          items.push_back({v, TensorFn{Sin2Pi{j}, Sin2Pi{k}}});
        }
      }
      break;
    case Stat::D:
      analytic = 1.0 / 6.0;
      for (int j = 1; j <= cutoff; ++j) {
        for (int k = 1; k <= cutoff; ++k) {
          const auto p = static_cast<double>(j) * k;
          const double v = 3.0 / (pi4 * p * p);
          items.push_back({v, TensorFn{CosPi{j}, Cos2Pi{k}}});
          items.push_back({v, TensorFn{CosPi{j}, Sin2Pi{k}}});
        }
      }
      break;
    case Stat::E:
      analytic = 1.0 / 6.0;
      for (int j = 1; j <= cutoff; ++j) {
        for (int k = 1; k <= cutoff; ++k) {
          const auto p = static_cast<double>(j) * k;
          const double v = 3.0 / (pi4 * p * p);
          items.push_back({v, TensorFn{Cos2Pi{j}, CosPi{k}}});
          items.push_back({v, TensorFn{Sin2Pi{j}, CosPi{k}}});
        }
      }
      break;
    case Stat::F: {
      analytic = 2.0 / 9.0;
      const auto roots = find_gamma_roots(FactorKernel::G3, cutoff);
      std::vector<std::pair<double, EigenFn1D>> axis;
      for (int j = 1; j <= cutoff; ++j) {
        axis.emplace_back(1.5 / (pi2 * j * j), Cos2Pi{j});
        axis.emplace_back(1.0 / roots[static_cast<std::size_t>(j - 1)],
                          Chi3{j, roots[static_cast<std::size_t>(j - 1)]});
      }
      for (const auto& [va, fa] : axis) {
        for (const auto& [vb, fb] : axis) {
          items.push_back({0.5 * va * vb, TensorFn{fa, fb}});
        }
      }
      break;
    }
    case Stat::DE:
      break;
  }
  return assemble(stat_name(A), analytic, std::move(items), -1);
}

// ---------------------------------------------------------------------------
// DE secular function
// ---------------------------------------------------------------------------

double OmegaDE::value(double z) const {
  double s = 0.0;
  const std::size_t n = zstar.size();
  for (std::size_t i = 0; i < n; ++i) s += bstar[i] / (zstar[i] - z);
  return 1.0 + 36.0 * z * s;
}

void OmegaDE::value_and_slope(double z, double* value, double* slope) const {
  double s = 0.0, s2 = 0.0;
  const std::size_t n = zstar.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 1.0 / (zstar[i] - z);
    const double bt = bstar[i] * t;
    s += bt;
    s2 += bt * t;
  }
  *value = 1.0 + 36.0 * z * s;
  *slope = 36.0 * (s + z * s2);
}

OmegaDE omega_de_roots(int m, int m1) {
  if (m < 1 || m1 < 1) throw ParameterOutOfRange("m and m1 must be >= 1");
  if (static_cast<std::int64_t>(m1) * (m1 + 1) / 2 <= m) {
    throw ParameterOutOfRange("need m1(m1+1)/2 > m");
  }
  OmegaDE o;
  o.m1 = m1;
  o.k4 = k4_data(m1);
  const auto& mu = o.k4->mu;
  const auto& b = o.k4->b;

  // Products over unordered pairs; the secular sum runs over ordered pairs,
  // so off-diagonal weights count twice.  Weight per ordered pair is
  // b_l² b_m² / (μ_l μ_m).
  struct Pole {
    double product;
    double weight;
  };
  std::vector<Pole> poles;
  poles.reserve(static_cast<std::size_t>(m1) * (m1 + 1) / 2);
  for (int l = 0; l < m1; ++l) {
    const double bl2 = b[static_cast<std::size_t>(l)] * b[static_cast<std::size_t>(l)];
    for (int k = l; k < m1; ++k) {
      const double p = mu[static_cast<std::size_t>(l)] * mu[static_cast<std::size_t>(k)];
      const double bk2 = b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)];
      const double w = bl2 * bk2 / p * (k == l ? 1.0 : 2.0);
      poles.push_back({p, w});
    }
  }
  std::sort(poles.begin(), poles.end(),
            [](const Pole& a, const Pole& c) { return a.product > c.product; });

  // Group near-equal products (relative 1e-12); record collisions.
  for (const auto& pole : poles) {
    if (!o.zstar.empty()) {
      const double head = 1.0 / o.zstar.back();
      if (std::abs(pole.product - head) <= 1e-12 * head) {
        o.bstar.back() += pole.weight;
        o.class_pairs.back() += 1;
        continue;
      }
    }
    o.zstar.push_back(1.0 / pole.product);
    o.bstar.push_back(pole.weight);
    o.class_pairs.push_back(1);
  }
  for (const int c : o.class_pairs) {
    if (c > 1) ++o.collision_classes;
  }
  if (static_cast<int>(o.zstar.size()) < m + 1) {
    throw RootBracketFailure("product collisions left fewer than m+1 pole classes");
  }

  // One root strictly inside each (z*_i, z*_{i+1}); the function runs from
  // -inf to +inf and is strictly increasing there.
  o.roots.assign(static_cast<std::size_t>(m), 0.0);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      double lo = o.zstar[i];
      double hi = o.zstar[i + 1];
      for (int it = 0; it < 20; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (o.value(mid) < 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      double z = 0.5 * (lo + hi);
      for (int it = 0; it < 30; ++it) {
        double f, fp;
        o.value_and_slope(z, &f, &fp);
        double next = z - f / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (o.value(next) < 0.0) {
          lo = next;
        } else {
          hi = next;
        }
        const double delta = std::abs(next - z);
        z = next;
        if (delta <= 1e-12 * z || hi - lo <= 1e-12 * z) break;
      }
      o.roots[i] = z;
    }
  });
  return o;
}

namespace {

// Gram-Schmidt basis of the zero-sum coefficient space over the ordered pairs
// of a product collision class, anchored at the lexicographically smallest
// pair.
std::vector<std::vector<double>> zero_sum_basis(std::size_t npairs) {
  std::vector<std::vector<double>> basis;
  for (std::size_t v = 1; v < npairs; ++v) {
    std::vector<double> vec(npairs, 0.0);
    vec[0] = -1.0;
    vec[v] = 1.0;
    for (const auto& prev : basis) {
      double dot = 0.0;
      for (std::size_t i = 0; i < npairs; ++i) dot += vec[i] * prev[i];
      for (std::size_t i = 0; i < npairs; ++i) vec[i] -= dot * prev[i];
    }
    double norm2 = 0.0;
    for (const double x : vec) norm2 += x * x;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : vec) x *= inv;
    basis.push_back(std::move(vec));
  }
  return basis;
}

double hatf_norm_const(const K4Data& d, double lambda) {
  const std::size_t m1 = d.mu.size();
  double s = 0.0;
  for (std::size_t l = 0; l < m1; ++l) {
    for (std::size_t m = 0; m < m1; ++m) {
      const double c = d.b[l] * d.b[m] / (d.mu[l] * d.mu[m] - lambda);
      s += c * c;
    }
  }
  return 1.0 / std::sqrt(s);
}

}  // namespace

Spectrum spectrum_de(int cutoff, int m, int m1) {
  if (cutoff < 1) throw ParameterOutOfRange("cutoff must be >= 1");
  const auto de = omega_de_roots(m, m1);
  const auto k4full = k4_data(std::max(cutoff, m1));
  std::vector<Item> items;
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;

  for (int j = 1; j <= cutoff; ++j) {
    for (int k = 1; k <= cutoff; ++k) {
      const auto p = static_cast<double>(j) * k;
      items.push_back({1.5 / (pi4 * p * p), TensorFn{Cos2Pi{j}, Cos2Pi{k}}});
    }
  }
  for (int j = 1; j <= cutoff; ++j) {
    const double cosval = 0.5 / (pi2 * j * j);
    for (int k = 1; k <= cutoff; ++k) {
      const double muk = k4full->mu[static_cast<std::size_t>(k - 1)];
      const double gk = k4full->gamma[static_cast<std::size_t>(k - 1)];
      items.push_back({cosval * muk, TensorFn{Cos2Pi{j}, Chi4{k, gk}}});
      items.push_back({cosval * muk, TensorFn{Chi4{k, gk}, Cos2Pi{j}}});
    }
  }

  // Collision classes of the root-branch products with indices <= cutoff.
  struct ProductRef {
    double value;
    int j, k;  // j <= k
  };
  std::vector<ProductRef> prods;
  for (int j = 1; j <= cutoff; ++j) {
    for (int k = j; k <= cutoff; ++k) {
      prods.push_back({k4full->mu[static_cast<std::size_t>(j - 1)] *
                           k4full->mu[static_cast<std::size_t>(k - 1)],
                       j, k});
    }
  }
  std::sort(prods.begin(), prods.end(),
            [](const ProductRef& a, const ProductRef& b) { return a.value > b.value; });
  std::size_t i = 0;
  while (i < prods.size()) {
    std::size_t j = i + 1;
    while (j < prods.size() &&
           std::abs(prods[j].value - prods[i].value) <= 1e-12 * prods[i].value) {
      ++j;
    }
    // Ordered pairs of the class, lexicographic.
    std::vector<std::pair<int, int>> ordered;
    for (std::size_t q = i; q < j; ++q) {
      ordered.emplace_back(prods[q].j, prods[q].k);
      if (prods[q].j != prods[q].k) ordered.emplace_back(prods[q].k, prods[q].j);
    }
    std::sort(ordered.begin(), ordered.end());
    if (ordered.size() > 1) {
      const auto basis = zero_sum_basis(ordered.size());
      int index = 1;
      for (const auto& coeffs : basis) {
        items.push_back({prods[i].value / 6.0,
                         TauFn{k4full, ordered, coeffs, prods[i].value, index}});
        ++index;
      }
    }
    i = j;
  }

  const auto k4trunc = k4_data(m1);
  for (int r = 0; r < m; ++r) {
    const double lambda = 1.0 / de.roots[static_cast<std::size_t>(r)];
    items.push_back({lambda / 6.0,
                     HatFFn{k4trunc, r + 1, lambda, hatf_norm_const(*k4trunc, lambda)}});
  }

  return assemble("DE", 1.0 / 3.0, std::move(items), -1);
}

std::pair<double, double> trace_check(FactorKernel k, int count) {
  const double analytic = factor_kernel_trace(k);
  const double pi2 = kPi * kPi;
  std::vector<double> eigs;
  switch (k) {
    case FactorKernel::G1:
      for (int j = 1; j <= count; ++j) eigs.push_back(6.0 / (pi2 * j * j));
      break;
    case FactorKernel::G2:
      for (int j = 1; (int)eigs.size() < count; ++j) {
        eigs.push_back(3.0 / (pi2 * j * j));
        if ((int)eigs.size() < count) eigs.push_back(3.0 / (pi2 * j * j));
      }
      break;
    case FactorKernel::G3: {
      const auto roots = find_gamma_roots(FactorKernel::G3, count);
      for (int j = 1; j <= count; ++j) {
        eigs.push_back(1.5 / (pi2 * j * j));
        eigs.push_back(1.0 / roots[static_cast<std::size_t>(j - 1)]);
      }
      break;
    }
    case FactorKernel::G4: {
      const auto roots = find_gamma_roots(FactorKernel::G4, count);
      for (int j = 1; j <= count; ++j) {
        eigs.push_back(3.0 / (pi2 * j * j));
        eigs.push_back(1.0 / roots[static_cast<std::size_t>(j - 1)]);
      }
      break;
    }
  }
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  if (static_cast<int>(eigs.size()) > count) eigs.resize(static_cast<std::size_t>(count));
  Kahan acc;
  for (auto it = eigs.rbegin(); it != eigs.rend(); ++it) acc.add(*it);
  return {analytic, acc.sum};
}

double top_eigenvalue(Stat A, int de_m1) {
  const double pi4 = kPi * kPi * kPi * kPi;
  switch (A) {
    case Stat::B:
      return 6.0 / pi4;
    case Stat::C:
      return 1.5 / pi4;
    case Stat::D:
    case Stat::E:
      return 3.0 / pi4;
    case Stat::F: {
      const double g1 = gamma_root(FactorKernel::G3, 1);
      return 0.5 / (g1 * g1);
    }
    case Stat::DE: {
      static std::mutex mu;
      static std::map<int, double> cache;
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(de_m1);
      if (it == cache.end()) {
        const auto de = omega_de_roots(1, de_m1);
        it = cache.emplace(de_m1, 1.0 / (6.0 * de.roots[0])).first;
      }
      return it->second;
    }
  }
  return 0.0;
}

}  // namespace patind
