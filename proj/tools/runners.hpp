#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "csv.hpp"
#include "patind/copulas.hpp"
#include "patind/efficiency.hpp"
#include "patind/limit_law.hpp"

namespace patind::cli {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// test
// ---------------------------------------------------------------------------

struct TestOptions {
  std::vector<Stat> stats{kAllStats.begin(), kAllStats.end()};
  double alpha = 0.05;
  std::string method = "mc";  // mc | asymptotic | exact
  int reps = 100000;
  std::uint64_t seed = 1;
  bool jitter_ties = false;
  DEParams de{};
};

struct TestReport {
  Stat stat;
  int n = 0;
  double t = 0.0;
  double n_t = 0.0;
  std::string method;
  double critical_value = 0.0;  // T scale for mc/exact, n·T scale for asymptotic
  double p_value = 0.0;
  bool reject = false;
  double alpha = 0.0;
  int reps = 0;
  std::uint64_t seed = 0;
  std::string tie_note = "none";
  Json meta;  // truncation / normalization metadata (asymptotic method)
};

std::vector<TestReport> run_test(const XYData& data, const TestOptions& opt);

Json report_to_json(const TestReport& r);
std::string reports_to_csv(const std::vector<TestReport>& reports);

// ---------------------------------------------------------------------------
// power
// ---------------------------------------------------------------------------

struct PowerStudyConfig {
  std::vector<CopulaModel> models;
  std::vector<int> ns{50, 100};
  double alpha = 0.05;
  std::vector<Stat> stats{kAllStats.begin(), kAllStats.end()};
  int cv_reps = 100000;
  int power_reps = 10000;
  std::uint64_t seed = 1;
};

struct PowerCell {
  CopulaModel model;
  int n;
  Stat stat;
  double power;
};

std::vector<PowerCell> run_power_study(const PowerStudyConfig& cfg);
std::string power_to_csv(const std::vector<PowerCell>& cells, const PowerStudyConfig& cfg);
Json power_to_json(const std::vector<PowerCell>& cells, const PowerStudyConfig& cfg);

// ---------------------------------------------------------------------------
// efficiency
// ---------------------------------------------------------------------------

struct EfficiencyRowSpec {
  std::string direction;
  Stat reference = Stat::B;
};

struct EfficiencyTable {
  std::vector<EfficiencyRowSpec> rows;
  std::vector<EfficiencyReport> reports;
};

EfficiencyTable run_efficiency_table(const std::vector<EfficiencyRowSpec>& rows, int de_m1 = 500);
std::string efficiency_to_csv(const EfficiencyTable& table);
Json efficiency_to_json(const EfficiencyTable& table);

// ---------------------------------------------------------------------------
// quantiles
// ---------------------------------------------------------------------------

struct QuantileRequest {
  std::vector<Stat> stats{kAllStats.begin(), kAllStats.end()};
  std::vector<int> ns;              // finite sample sizes
  bool include_asymptotic = false;  // adds the n·T-scale limiting law rows
  std::vector<double> alphas{0.01, 0.05, 0.10};
  std::string method = "mc";  // mc | exact (finite n only)
  int reps = 100000;
  std::uint64_t seed = 1;
  DEParams de{};
};

std::vector<EmpiricalQuantiles> emit_null_quantiles(const QuantileRequest& req);
std::string quantiles_to_csv(const std::vector<EmpiricalQuantiles>& rows);
Json quantiles_to_json(const std::vector<EmpiricalQuantiles>& rows);

}  // namespace patind::cli
