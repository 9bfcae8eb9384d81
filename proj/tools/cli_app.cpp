#include "cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "patind/errors.hpp"
#include "patind/spectrum_json.hpp"
#include "patind/version.hpp"
#include "runners.hpp"

namespace patind::cli {

namespace {

std::vector<Stat> parse_stats(const std::string& arg) {
  std::vector<Stat> stats;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "all") return {kAllStats.begin(), kAllStats.end()};
    const auto s = stat_from_name(tok);
    if (!s) throw InputFormatError("unknown statistic '" + tok + "'");
    stats.push_back(*s);
  }
  if (stats.empty()) throw InputFormatError("no statistic given");
  return stats;
}

std::vector<double> parse_doubles(const std::string& arg) {
  std::vector<double> out;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputFormatError("cannot write '" + path + "'");
  out << content;
}

struct GlobalOpts {
  std::string output = "csv";  // csv | json
  std::string out_path;
  std::uint64_t seed = 1;
  int threads = 0;
  bool long_mode = false;

  DEParams de() const { return long_mode ? DEParams{30000, 5000} : DEParams{}; }
};

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"pattern-based independence tests (length-4 patterns)"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--output", g.output, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "output file (default stdout)");
  app.add_option("--seed", g.seed, "master seed; all randomness derives from it");
  app.add_option("--threads", g.threads, "worker threads (default: hardware)");
  app.add_flag("--long-mode", g.long_mode,
               "paper-scale spectral truncations (DE m1=5000, m=30000)");

  // --- test ---
  auto* t = app.add_subcommand("test", "run the independence tests on a two-column CSV");
  std::string t_file, t_stat = "all", t_method = "mc";
  double t_alpha = 0.05;
  int t_reps = 100000;
  bool t_jitter = false;
  t->add_option("file", t_file, "input CSV (x,y per row; optional header)")->required();
  t->add_option("--stat", t_stat, "statistic(s): B,C,D,E,F,DE or all");
  t->add_option("--alpha", t_alpha, "significance level");
  t->add_option("--method", t_method, "mc, asymptotic, or exact")
      ->check(CLI::IsMember({"mc", "asymptotic", "exact"}));
  t->add_option("--reps", t_reps, "replications for mc/asymptotic");
  t->add_flag("--jitter-ties", t_jitter, "break ties by deterministic seeded jitter");

  // --- power ---
  auto* p = app.add_subcommand("power", "empirical power under copula alternatives");
  std::vector<std::string> p_copulas;
  std::string p_stat = "all", p_ns = "50,100";
  double p_alpha = 0.05;
  int p_reps = 10000, p_cv_reps = 100000;
  p->add_option("--copula", p_copulas,
                "family:parameter (e.g. fgm:0.5, clayton:-0.25, gauss:0.25, optc:0.5); "
                "repeatable; default: the full study grid");
  p->add_option("--stat", p_stat, "statistic(s)");
  p->add_option("--n", p_ns, "sample sizes, comma separated");
  p->add_option("--alpha", p_alpha, "significance level");
  p->add_option("--reps", p_reps, "power replications per cell");
  p->add_option("--cv-reps", p_cv_reps, "null replications for the critical values");

  // --- efficiency ---
  auto* e = app.add_subcommand("efficiency", "local asymptotic efficiency table");
  std::string e_rows = "fgm:B,optc:C";
  int e_de_m1 = 500;
  e->add_option("--directions", e_rows,
                "rows as direction[:reference], e.g. fgm:B,optc:C,gfgm:B "
                "(directions: fgm, amh, plackett, frank, gfgm, optc, qb)");
  e->add_option("--de-m1", e_de_m1, "secular truncation for the DE top eigenvalue");

  // --- quantiles ---
  auto* q = app.add_subcommand("quantiles", "null critical value tables");
  std::string q_stat = "all", q_ns = "50,100", q_alphas = "0.01,0.05,0.1", q_method = "mc";
  int q_reps = 100000;
  q->add_option("--stat", q_stat, "statistic(s)");
  q->add_option("--n", q_ns, "sample sizes; include 'inf' for the limiting law");
  q->add_option("--alpha", q_alphas, "levels, comma separated");
  q->add_option("--method", q_method, "mc or exact (exact needs n <= 8)")
      ->check(CLI::IsMember({"mc", "exact"}));
  q->add_option("--reps", q_reps, "replications");

  // --- spectrum ---
  auto* s = app.add_subcommand("spectrum", "spectral decompositions as JSON");
  std::string s_kernel = "g3";
  int s_count = 20, s_de_m = 50, s_de_m1 = 500;
  s->add_option("--kernel", s_kernel, "g1..g4, B..F, or DE");
  s->add_option("--count", s_count, "entries (1D) or per-axis cutoff (2D)");
  s->add_option("--de-m", s_de_m, "secular roots to include for DE");
  s->add_option("--de-m1", s_de_m1, "secular truncation for DE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  if (g.threads > 0) {
    setenv("PATIND_THREADS", std::to_string(g.threads).c_str(), 1);
  }

  if (*t) {
    TestOptions opt;
    opt.stats = parse_stats(t_stat);
    opt.alpha = t_alpha;
    opt.method = t_method;
    opt.reps = t_reps;
    opt.seed = g.seed;
    opt.jitter_ties = t_jitter;
    opt.de = g.de();
    const auto reports = run_test(read_xy_csv(t_file), opt);
    if (g.output == "json") {
      auto arr = Json::array();
      for (const auto& r : reports) arr.push_back(report_to_json(r));
      write_output(g.out_path, arr.dump(2) + "\n");
    } else {
      write_output(g.out_path, reports_to_csv(reports));
    }
    return 0;
  }

  if (*p) {
    PowerStudyConfig cfg;
    if (p_copulas.empty()) {
      // The default study grid.
      for (const double th : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        cfg.models.push_back(make_copula(CopulaFamily::FGM, th));
      }
      for (const double th : {-0.5, -0.25, -0.1, 0.1, 0.25, 0.5, 0.75, 0.9}) {
        cfg.models.push_back(make_copula(CopulaFamily::Clayton, th));
      }
      for (const double th : {0.1, 0.25, 0.5}) {
        cfg.models.push_back(make_copula(CopulaFamily::Gaussian, th));
      }
      for (const double th : {-0.5, -0.25, -0.1, 0.1, 0.25, 0.5}) {
        cfg.models.push_back(make_copula(CopulaFamily::OptC, th));
      }
    } else {
      for (const auto& spec : p_copulas) cfg.models.push_back(parse_copula(spec));
    }
    cfg.stats = parse_stats(p_stat);
    cfg.ns.clear();
    for (const double n : parse_doubles(p_ns)) cfg.ns.push_back(static_cast<int>(n));
    cfg.alpha = p_alpha;
    cfg.power_reps = p_reps;
    cfg.cv_reps = p_cv_reps;
    cfg.seed = g.seed;
    const auto cells = run_power_study(cfg);
    if (g.output == "json") {
      write_output(g.out_path, power_to_json(cells, cfg).dump(2) + "\n");
    } else {
      write_output(g.out_path, power_to_csv(cells, cfg));
    }
    return 0;
  }

  if (*e) {
    std::vector<EfficiencyRowSpec> rows;
    std::stringstream ss(e_rows);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      EfficiencyRowSpec row;
      const auto colon = tok.find(':');
      row.direction = tok.substr(0, colon);
      if (colon != std::string::npos) {
        const auto ref = stat_from_name(tok.substr(colon + 1));
        if (!ref) throw InputFormatError("unknown reference statistic in '" + tok + "'");
        row.reference = *ref;
      }
      rows.push_back(std::move(row));
    }
    const int de_m1 = g.long_mode ? 5000 : e_de_m1;
    const auto table = run_efficiency_table(rows, de_m1);
    if (g.output == "json") {
      write_output(g.out_path, efficiency_to_json(table).dump(2) + "\n");
    } else {
      write_output(g.out_path, efficiency_to_csv(table));
    }
    return 0;
  }

  if (*q) {
    QuantileRequest req;
    req.stats = parse_stats(q_stat);
    std::stringstream ss(q_ns);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok == "inf" || tok == "asymptotic") {
        req.include_asymptotic = true;
      } else {
        req.ns.push_back(std::stoi(tok));
      }
    }
    req.alphas = parse_doubles(q_alphas);
    req.method = q_method;
    req.reps = q_reps;
    req.seed = g.seed;
    req.de = g.de();
    const auto rows = emit_null_quantiles(req);
    if (g.output == "json") {
      write_output(g.out_path, quantiles_to_json(rows).dump(2) + "\n");
    } else {
      write_output(g.out_path, quantiles_to_csv(rows));
    }
    return 0;
  }

  if (*s) {
    Spectrum spec;
    if (s_kernel == "g1" || s_kernel == "g2" || s_kernel == "g3" || s_kernel == "g4") {
      const FactorKernel k = s_kernel == "g1"   ? FactorKernel::G1
                             : s_kernel == "g2" ? FactorKernel::G2
                             : s_kernel == "g3" ? FactorKernel::G3
                                                : FactorKernel::G4;
      spec = spectrum_1d(k, s_count);
    } else {
      const auto stat = stat_from_name(s_kernel);
      if (!stat) throw InputFormatError("unknown kernel '" + s_kernel + "'");
      if (*stat == Stat::DE) {
        const int m1 = g.long_mode ? 5000 : s_de_m1;
        const int m = g.long_mode ? 30000 : s_de_m;
        spec = spectrum_de(s_count, m, m1);
      } else {
        spec = spectrum_product(*stat, s_count);
      }
    }
    write_output(g.out_path, to_json(spec).dump(2) + "\n");
    return 0;
  }

  return 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const InputFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const TieError& e) {
    std::cerr << "tie error: " << e.what() << " (consider --jitter-ties)\n";
  } catch (const DegenerateSample& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const SizeLimit& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const UnsupportedSampler& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const ParameterOutOfRange& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace patind::cli
