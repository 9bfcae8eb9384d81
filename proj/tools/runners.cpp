#include "runners.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "patind/errors.hpp"
#include "patind/parallel.hpp"
#include "patind/pattern_counts.hpp"
#include "patind/version.hpp"

namespace patind::cli {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return Rng::stream(seed, tag).next();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int stat_index(Stat s) {
  return static_cast<int>(std::find(kAllStats.begin(), kAllStats.end(), s) - kAllStats.begin());
}

void apply_jitter(std::vector<double>& v, Rng& rng) {
  double lo = v[0], hi = v[0];
  for (const double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double range = hi > lo ? hi - lo : 1.0;
  const double scale = range * 0x1.0p-32;
  for (double& x : v) x += (2.0 * rng.uniform() - 1.0) * scale;
}

double mc_pvalue(const std::vector<double>& draws, double observed) {
  std::int64_t ge = 0;
  for (const double d : draws) {
    if (d >= observed - 1e-15) ++ge;
  }
  return static_cast<double>(1 + ge) / static_cast<double>(draws.size() + 1);
}

}  // namespace

std::vector<TestReport> run_test(const XYData& data, const TestOptions& opt) {
  const int n = static_cast<int>(data.x.size());
  if (n < 4) throw DegenerateSample("need at least 4 rows, got " + std::to_string(n));

  std::vector<double> xs = data.x;
  std::vector<double> ys = data.y;
  std::string tie_note = "none";
  if (opt.jitter_ties) {
    Rng jx = Rng::stream(opt.seed, 0x7e5701);
    Rng jy = Rng::stream(opt.seed, 0x7e5702);
    apply_jitter(xs, jx);
    apply_jitter(ys, jy);
    tie_note = "jitter(2^-32 x range, seed=" + std::to_string(opt.seed) + ")";
  }
  const Permutation perm = permutation_from_sample(xs, ys);
  const PatternCounts counts = count_patterns4(perm);

  // One shared null-draw set per method keeps the six reports consistent.
  std::vector<std::array<double, 6>> mc_draws;
  if (opt.method == "mc") {
    mc_draws = mc_null_statistics(n, opt.reps, derive_seed(opt.seed, 11));
  } else if (opt.method != "asymptotic" && opt.method != "exact") {
    throw InputFormatError("unknown method '" + opt.method + "'");
  }

  std::vector<TestReport> reports;
  for (const Stat stat : opt.stats) {
    TestReport r;
    r.stat = stat;
    r.n = n;
    r.t = test_statistic(counts, stat);
    r.n_t = n * r.t;
    r.method = opt.method;
    r.alpha = opt.alpha;
    r.reps = opt.reps;
    r.seed = opt.seed;
    r.tie_note = tie_note;

    if (opt.method == "mc") {
      std::vector<double> column(mc_draws.size());
      const int si = stat_index(stat);
      for (std::size_t i = 0; i < mc_draws.size(); ++i) {
        column[i] = mc_draws[i][static_cast<std::size_t>(si)];
      }
      r.p_value = mc_pvalue(column, r.t);
      r.critical_value = upper_quantile(column, opt.alpha);
      r.reject = r.p_value <= opt.alpha;
    } else if (opt.method == "exact") {
      const auto atoms = exact_null_distribution(stat, n);
      r.p_value = exact_tail_prob(atoms, r.t);
      r.critical_value = exact_upper_quantile(atoms, opt.alpha);
      r.reject = r.p_value <= opt.alpha;
      r.reps = 0;
    } else {
      const LimitLaw law = build_limit_law(stat, opt.de);
      auto draws = sample_limit_many(law, opt.reps, derive_seed(opt.seed, 13 + stat_index(stat)));
      r.p_value = mc_pvalue(draws, r.n_t);
      r.critical_value = upper_quantile(draws, opt.alpha);
      r.reject = r.n_t > r.critical_value;
      r.meta["normalization"] = "weights are 6x the h2-kernel eigenvalues; quantile on the n*T scale";
      r.meta["capture_target"] = law.capture_target;
      r.meta["analytic_trace"] = law.analytic_trace;
      r.meta["captured_trace"] = law.captured_trace;
      r.meta["classes"] = law.entries.size();
      if (stat == Stat::DE) {
        r.meta["de_m"] = law.de.m;
        r.meta["de_m1"] = law.de.m1;
      }
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

Json report_to_json(const TestReport& r) {
  Json j;
  j["schema"] = 1;
  j["library_version"] = kVersion;
  j["statistic"] = stat_name(r.stat);
  j["n"] = r.n;
  j["t"] = r.t;
  j["n_t"] = r.n_t;
  j["method"] = r.method;
  j["alpha"] = r.alpha;
  j["critical_value"] = r.critical_value;
  j["critical_value_scale"] = r.method == "asymptotic" ? "n*T" : "T";
  j["p_value"] = r.p_value;
  j["decision"] = r.reject ? "reject" : "accept";
  j["reps"] = r.reps;
  j["seed"] = r.seed;
  j["tie_handling"] = r.tie_note;
  if (!r.meta.is_null()) j["meta"] = r.meta;
  return j;
}

std::string reports_to_csv(const std::vector<TestReport>& reports) {
  std::ostringstream os;
  os << "statistic,n,t,n_t,method,alpha,critical_value,p_value,decision,reps,seed,tie_handling\n";
  for (const auto& r : reports) {
    os << stat_name(r.stat) << ',' << r.n << ',' << fmt(r.t) << ',' << fmt(r.n_t) << ','
       << r.method << ',' << fmt(r.alpha) << ',' << fmt(r.critical_value) << ','
       << fmt(r.p_value) << ',' << (r.reject ? "reject" : "accept") << ',' << r.reps << ','
       << r.seed << ',' << r.tie_note << '\n';
  }
  return os.str();
}

std::vector<PowerCell> run_power_study(const PowerStudyConfig& cfg) {
  if (cfg.cv_reps < 100 || cfg.power_reps < 100) {
    throw ParameterOutOfRange("replication counts must be >= 100");
  }
  std::vector<PowerCell> cells;
  for (const int n : cfg.ns) {
    // Critical values for all statistics from one shared null sweep.
    auto null_draws = mc_null_statistics(n, cfg.cv_reps, derive_seed(cfg.seed, 101 + n));
    std::array<double, 6> cv{};
    for (int s = 0; s < 6; ++s) {
      std::vector<double> column(null_draws.size());
      for (std::size_t i = 0; i < null_draws.size(); ++i) column[i] = null_draws[i][s];
      cv[static_cast<std::size_t>(s)] = upper_quantile(column, cfg.alpha);
    }
    for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
      const CopulaModel model = cfg.models[mi];
      const std::uint64_t cell_seed =
          derive_seed(derive_seed(cfg.seed, 5000 + n), 7000 + mi);
      std::vector<std::array<double, 6>> stats(static_cast<std::size_t>(cfg.power_reps));
      parallel_for(stats.size(), [&](std::size_t i0, std::size_t i1) {
        std::vector<double> xs(static_cast<std::size_t>(n));
        std::vector<double> ys(static_cast<std::size_t>(n));
        for (std::size_t i = i0; i < i1; ++i) {
          Rng rng = Rng::stream(cell_seed, i);
          for (int k = 0; k < n; ++k) {
            const auto [u, v] = sample(model, rng);
            xs[static_cast<std::size_t>(k)] = u;
            ys[static_cast<std::size_t>(k)] = v;
          }
          const PatternCounts counts = count_patterns4(permutation_from_sample(xs, ys));
          for (int s = 0; s < 6; ++s) {
            stats[i][static_cast<std::size_t>(s)] =
                test_statistic(counts, kAllStats[static_cast<std::size_t>(s)]);
          }
        }
      });
      for (const Stat stat : cfg.stats) {
        const int si = stat_index(stat);
        std::int64_t rejects = 0;
        for (const auto& row : stats) {
          if (row[static_cast<std::size_t>(si)] > cv[static_cast<std::size_t>(si)]) ++rejects;
        }
        cells.push_back({model, n, stat,
                         static_cast<double>(rejects) / static_cast<double>(cfg.power_reps)});
      }
    }
  }
  return cells;
}

std::string power_to_csv(const std::vector<PowerCell>& cells, const PowerStudyConfig& cfg) {
  std::ostringstream os;
  os << "family,theta,n,statistic,power,alpha,power_reps,cv_reps,seed\n";
  for (const auto& c : cells) {
    os << copula_family_name(c.model.family) << ',' << fmt(c.model.theta) << ',' << c.n << ','
       << stat_name(c.stat) << ',' << fmt(c.power) << ',' << fmt(cfg.alpha) << ','
       << cfg.power_reps << ',' << cfg.cv_reps << ',' << cfg.seed << '\n';
  }
  return os.str();
}

Json power_to_json(const std::vector<PowerCell>& cells, const PowerStudyConfig& cfg) {
  Json j;
  j["schema"] = 1;
  j["library_version"] = kVersion;
  j["alpha"] = cfg.alpha;
  j["power_reps"] = cfg.power_reps;
  j["cv_reps"] = cfg.cv_reps;
  j["seed"] = cfg.seed;
  auto rows = Json::array();
  for (const auto& c : cells) {
    Json row;
    row["family"] = copula_family_name(c.model.family);
    row["theta"] = c.model.theta;
    row["n"] = c.n;
    row["statistic"] = stat_name(c.stat);
    row["power"] = c.power;
    rows.push_back(std::move(row));
  }
  j["cells"] = std::move(rows);
  return j;
}

EfficiencyTable run_efficiency_table(const std::vector<EfficiencyRowSpec>& rows, int de_m1) {
  EfficiencyTable table;
  table.rows = rows;
  for (const auto& row : rows) {
    table.reports.push_back(efficiency_report(direction_by_name(row.direction), 64, de_m1));
  }
  return table;
}

std::string efficiency_to_csv(const EfficiencyTable& table) {
  std::ostringstream os;
  os << "direction,reference";
  for (const Stat s : kAllStats) os << ',' << stat_name(s);
  os << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const int ref = stat_index(table.rows[r].reference);
    os << table.rows[r].direction << ',' << stat_name(table.rows[r].reference);
    for (int i = 0; i < 6; ++i) {
      os << ',' << fmt(table.reports[r].ratio[static_cast<std::size_t>(i)][static_cast<std::size_t>(ref)]);
    }
    os << '\n';
  }
  return os.str();
}

Json efficiency_to_json(const EfficiencyTable& table) {
  Json j;
  j["schema"] = 1;
  j["library_version"] = kVersion;
  j["normalization"] = "h2 kernels; kappa = <K q, q>/lambda_1 is scale-invariant";
  auto rows = Json::array();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& rep = table.reports[r];
    const int ref = stat_index(table.rows[r].reference);
    Json row;
    row["direction"] = table.rows[r].direction;
    row["reference"] = stat_name(table.rows[r].reference);
    Json eff, kap, quad, lam;
    for (int i = 0; i < 6; ++i) {
      const auto name = stat_name(kAllStats[static_cast<std::size_t>(i)]);
      eff[name] = rep.ratio[static_cast<std::size_t>(i)][static_cast<std::size_t>(ref)];
      kap[name] = rep.kappa[static_cast<std::size_t>(i)];
      quad[name] = rep.quad[static_cast<std::size_t>(i)];
      lam[name] = rep.lambda1[static_cast<std::size_t>(i)];
    }
    row["efficiency"] = std::move(eff);
    row["kappa"] = std::move(kap);
    row["quad_form"] = std::move(quad);
    row["lambda1"] = std::move(lam);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::vector<EmpiricalQuantiles> emit_null_quantiles(const QuantileRequest& req) {
  std::vector<EmpiricalQuantiles> out;
  for (const int n : req.ns) {
    if (req.method == "exact") {
      for (const Stat stat : req.stats) {
        const auto atoms = exact_null_distribution(stat, n);
        EmpiricalQuantiles q{stat, n, req.alphas, {}, 0, req.seed};
        for (const double a : req.alphas) q.quantiles.push_back(exact_upper_quantile(atoms, a));
        out.push_back(std::move(q));
      }
      continue;
    }
    auto draws = mc_null_statistics(n, req.reps, derive_seed(req.seed, 301 + n));
    for (const Stat stat : req.stats) {
      const int si = stat_index(stat);
      std::vector<double> column(draws.size());
      for (std::size_t i = 0; i < draws.size(); ++i) column[i] = draws[i][static_cast<std::size_t>(si)];
      EmpiricalQuantiles q{stat, n, req.alphas, {}, req.reps, req.seed};
      for (const double a : req.alphas) {
        auto copy = column;
        q.quantiles.push_back(upper_quantile(copy, a));
      }
      out.push_back(std::move(q));
    }
  }
  if (req.include_asymptotic) {
    for (const Stat stat : req.stats) {
      const LimitLaw law = build_limit_law(stat, req.de);
      auto draws = sample_limit_many(law, req.reps, derive_seed(req.seed, 401 + stat_index(stat)));
      EmpiricalQuantiles q{stat, -1, req.alphas, {}, req.reps, req.seed};
      for (const double a : req.alphas) {
        auto copy = draws;
        q.quantiles.push_back(upper_quantile(copy, a));
      }
      out.push_back(std::move(q));
    }
  }
  return out;
}

std::string quantiles_to_csv(const std::vector<EmpiricalQuantiles>& rows) {
  std::ostringstream os;
  os << "statistic,n_or_inf,alpha,quantile,reps,seed\n";
  for (const auto& q : rows) {
    for (std::size_t i = 0; i < q.alphas.size(); ++i) {
      os << stat_name(q.stat) << ',' << (q.n < 0 ? std::string("inf") : std::to_string(q.n)) << ','
         << fmt(q.alphas[i]) << ',' << fmt(q.quantiles[i]) << ',' << q.reps << ',' << q.seed
         << '\n';
    }
  }
  return os.str();
}

Json quantiles_to_json(const std::vector<EmpiricalQuantiles>& rows) {
  Json j;
  j["schema"] = 1;
  j["library_version"] = kVersion;
  j["note"] = "finite n rows are on the T scale, inf rows on the n*T scale";
  auto arr = Json::array();
  for (const auto& q : rows) {
    Json row;
    row["statistic"] = stat_name(q.stat);
    if (q.n < 0) {
      row["n_or_inf"] = "inf";
    } else {
      row["n_or_inf"] = q.n;
    }
    row["alphas"] = q.alphas;
    row["quantiles"] = q.quantiles;
    row["reps"] = q.reps;
    row["seed"] = q.seed;
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j;
}

}  // namespace patind::cli
