#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "patind/kernels.hpp"

namespace patind {

// ---------------------------------------------------------------------------
// Eigenfunction descriptors.  Each tag carries its defining parameters and
// evaluates numerically on [0,1] (1D) or [0,1]^2 (tensor-type descriptors).
// All descriptors are unit-norm in L2.
// ---------------------------------------------------------------------------

struct CosPi {
  int j;  // √2 cos(π j u)
};
struct Cos2Pi {
  int j;  // √2 cos(2π j u)
};
struct Sin2Pi {
  int j;  // √2 sin(2π j u)
};

// Root-branch eigenfunction of the g3 operator:
//   χ_j(u) = c (cos(2wu) + (2/w) sin(2wu)),  w = sqrt(3γ_j/2),  c = (1/2+2μ_j)^{-1/2}.
struct Chi3 {
  int j;
  double gamma;
};

// Root-branch eigenfunction of the g4 operator:
//   χ_j(u) = c (cos(2wu) + (1/w) sin(2wu)),  w = sqrt(3γ_j),  c = (1/2+μ_j/3)^{-1/2}.
struct Chi4 {
  int j;
  double gamma;
};

using EigenFn1D = std::variant<CosPi, Cos2Pi, Sin2Pi, Chi3, Chi4>;

double eval(const EigenFn1D& f, double u);
double oscillation_periods(const EigenFn1D& f);  // rough period count on [0,1]
std::string label(const EigenFn1D& f);

// Shared root-branch data of the g4 operator.
struct K4Data {
  std::vector<double> gamma;  // γ_j ascending, j = 1..m1
  std::vector<double> mu;     // μ_j = 1/γ_j
  std::vector<double> b;      // b_j = ∫ (u-1/2) χ_j(u) du = -c_j μ_j / 3
};
using K4DataPtr = std::shared_ptr<const K4Data>;

K4DataPtr k4_data(int m1);

struct TensorFn {
  EigenFn1D left;   // factor in x
  EigenFn1D right;  // factor in y
};

// Orthonormal element of the eigenspace attached to a product value
// λ = μ_j μ_k of the g4 root branch: Σ coeffs_i χ_{p_i}⊗χ_{q_i} with the
// coefficients summing to zero over the collision class.
struct TauFn {
  K4DataPtr k4;
  std::vector<std::pair<int, int>> pairs;  // ordered (j,k), 1-based
  std::vector<double> coeffs;
  double lambda6;  // μ_j μ_k; the operator eigenvalue is lambda6 / 6
  int index;       // 1..d_λ within the class
};

// Series eigenfunction attached to a zero ẑ_i of the secular function:
//   f̂_i = c_i Σ_{l,m<=m1} b_l b_m / (μ_l μ_m - λ̂_i) χ_l⊗χ_m,  λ̂_i = 1/ẑ_i.
struct HatFFn {
  K4DataPtr k4;
  int i;
  double lambda6;      // λ̂_i; the operator eigenvalue is lambda6 / 6
  double norm_const;   // c_i, fixed by unit norm
};

using EigenFn = std::variant<CosPi, Cos2Pi, Sin2Pi, Chi3, Chi4, TensorFn, TauFn, HatFFn>;

bool is_bivariate(const EigenFn& f);
double eval1(const EigenFn& f, double u);             // univariate tags only
double eval2(const EigenFn& f, double x, double y);   // bivariate tags only
std::string label(const EigenFn& f);

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

struct SpectrumEntry {
  double eigenvalue;  // > 0
  int multiplicity;   // == eigenfunctions.size()
  std::vector<EigenFn> eigenfunctions;
};

// Sorted spectral data with trace accounting.  Eigenvalues are those of the
// integral operators with the h2 kernels exactly as defined (factors 1/6 and
// 1/2 included); the weights of the limiting laws are 6x these values.
struct Spectrum {
  std::string kernel;  // "g1".."g4", "B".."F", "DE"
  std::vector<SpectrumEntry> entries;  // eigenvalue strictly decreasing
  double analytic_trace = 0.0;
  double captured_trace = 0.0;
};

// ---------------------------------------------------------------------------
// Transcendental roots
// ---------------------------------------------------------------------------

// Positive zeros γ_j of the characteristic function of the g3 or g4 root
// branch; γ_j lies in (2π²(j-1)²/3, 2π²j²/3) for g3 and in
// (π²(j-1)²/3, π²j²/3) for g4.  Relative accuracy ~1e-15.
std::vector<double> find_gamma_roots(FactorKernel k, std::int64_t count);

// Streaming form for very large counts.
void for_each_gamma(FactorKernel k, std::int64_t count,
                    const std::function<void(std::int64_t, double)>& fn);

// 1/4 + Σ_{k<=count} 1/γ_k for the g3 branch (compensated summation,
// deterministic across thread counts).
double k3_partial_trace(std::int64_t count);

// Tail-corrected sums over the g4 root branch eigenvalues μ_j.
struct K4MuSums {
  double mu_sum;        // Σ μ_j       (analytic tail appended)
  double mu_sq_sum;     // Σ μ_j²
  double mu_cross_sum;  // Σ_{j<k} μ_j μ_k
};
K4MuSums k4_mu_sums(int count);

// ---------------------------------------------------------------------------
// Spectrum constructors
// ---------------------------------------------------------------------------

// The `count` largest eigenvalues of the operator with kernel g1..g4.
Spectrum spectrum_1d(FactorKernel k, int count);

// Product spectra of the statistics B..F with per-axis index bound `cutoff`.
Spectrum spectrum_product(Stat A, int cutoff);

// Secular function of the DE kernel, truncated at m1 root-branch terms:
//   ω(z) = 1 + 36 z Σ_i b*_i / (z*_i - z)
// with z*_i the grouped reciprocals of the products μ_l μ_m.
struct OmegaDE {
  K4DataPtr k4;
  int m1 = 0;
  std::vector<double> zstar;        // grouped poles, ascending
  std::vector<double> bstar;        // grouped weights
  std::vector<int> class_pairs;     // # unordered (l<=m) pairs per pole class
  std::vector<double> roots;        // ẑ_1 < ... < ẑ_m, ẑ_i in (z*_i, z*_{i+1})
  int collision_classes = 0;        // classes merging >1 unordered pair

  double value(double z) const;
  void value_and_slope(double z, double* value, double* slope) const;
};

// The m smallest zeros of the truncated secular function (m1(m1+1)/2 > m).
OmegaDE omega_de_roots(int m, int m1);

// Full spectrum of the DE operator: tensor families up to `cutoff` per axis,
// collision classes over root pairs j,k <= cutoff, and m secular roots from
// the m1-term truncation.
Spectrum spectrum_de(int cutoff, int m, int m1);

// (analytic trace, sum of `count` largest eigenvalues counted with
// multiplicity) for the kernel's operator.
std::pair<double, double> trace_check(FactorKernel k, int count);

// Largest eigenvalue of the operator attached to statistic A (h2 scale).
// For DE this is (1/6)/ẑ_1 from the m1-truncated secular function.
double top_eigenvalue(Stat A, int de_m1 = 500);

}  // namespace patind
