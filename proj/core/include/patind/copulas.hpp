#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "patind/rng.hpp"

namespace patind {

enum class CopulaFamily { FGM, Clayton, Gaussian, OptC, AMH, Plackett, Frank, GFGM };

const char* copula_family_name(CopulaFamily f);
std::optional<CopulaFamily> copula_family_from_name(const std::string& name);

// Tagged parametric copula.  Construction validates the parameter range:
//   FGM θ∈[-1,1], Clayton κ∈[-1,∞)\{0}, Gaussian ρ∈(-1,1), OptC θ∈[-1/2,1/2],
//   AMH θ∈[-1,1], Plackett θ∈(-1,∞), Frank θ∈ℝ, GFGM θ∈[-1/8,1/4].
struct CopulaModel {
  CopulaFamily family;
  double theta;
};

CopulaModel make_copula(CopulaFamily family, double theta);

// Parses strings like "fgm:0.5", "clayton:-0.25", "gauss:0.25", "optc:0.5".
CopulaModel parse_copula(const std::string& spec);

// One draw with uniform marginals.  Supported families: FGM, Clayton,
// Gaussian, OptC, Frank; throws UnsupportedSampler otherwise.
std::pair<double, double> sample(const CopulaModel& model, Rng& rng);

// Copula density at an interior point of the unit square.
double density(const CopulaModel& model, double u, double v);

// First-order direction q of the local family: density = 1 + θ q + o(θ).
// The evaluator, an optional rank-1 factorization q(u,v) = fx(u) fy(v), and
// the L2 norm.
struct Direction {
  std::string label;
  std::function<double(double, double)> eval;
  std::function<double(double)> fx;  // set iff rank-1
  std::function<double(double)> fy;
  double norm = 0.0;
  bool symmetric = false;  // q(u,v) == q(v,u)

  bool rank1() const { return static_cast<bool>(fx); }
};

// Local direction of a family around independence.  AMH and Plackett share
// the FGM direction; Frank carries half of it; GFGM and OptC have their own.
Direction direction(const CopulaModel& model);

// Directions by name: "fgm", "amh", "plackett", "frank", "gfgm", "optc"
// (the top eigendirection of the C statistic), and "qb" (top eigendirection
// of the BDY statistic).
Direction direction_by_name(const std::string& name);

// Rank-1 direction from two univariate factors; norm computed by quadrature,
// and the zero-mean requirement of a density perturbation is checked.
Direction make_rank1_direction(std::string label, std::function<double(double)> fx,
                               std::function<double(double)> fy);

}  // namespace patind
