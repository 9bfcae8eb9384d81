#include "patind/copulas.hpp"

#include <algorithm>
#include <cmath>

#include "patind/errors.hpp"
#include "patind/quadrature.hpp"
#include "patind/special_functions.hpp"

namespace patind {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_param(CopulaFamily f, double t) {
  bool ok = false;
  switch (f) {
    case CopulaFamily::FGM: ok = t >= -1.0 && t <= 1.0; break;
    case CopulaFamily::Clayton: ok = t >= -1.0 && t != 0.0; break;
    case CopulaFamily::Gaussian: ok = t > -1.0 && t < 1.0; break;
    case CopulaFamily::OptC: ok = t >= -0.5 && t <= 0.5; break;
    case CopulaFamily::AMH: ok = t >= -1.0 && t <= 1.0; break;
    case CopulaFamily::Plackett: ok = t > -1.0; break;
    case CopulaFamily::Frank: ok = std::isfinite(t); break;
    case CopulaFamily::GFGM: ok = t >= -0.125 && t <= 0.25; break;
  }
  if (!ok) {
    throw ParameterOutOfRange(std::string(copula_family_name(f)) + ": parameter " +
                              std::to_string(t) + " out of range");
  }
}

// Clayton conditional distribution of V given U = u, with the max(.,0)
// support truncation that matters for κ < 0.
double clayton_conditional_cdf(double kappa, double u, double v) {
  const double s = std::pow(u, -kappa) + std::pow(v, -kappa) - 1.0;
  if (s <= 0.0) return 0.0;
  return std::pow(u, -kappa - 1.0) * std::pow(s, -(1.0 + kappa) / kappa);
}

}  // namespace

const char* copula_family_name(CopulaFamily f) {
  switch (f) {
    case CopulaFamily::FGM: return "fgm";
    case CopulaFamily::Clayton: return "clayton";
    case CopulaFamily::Gaussian: return "gauss";
    case CopulaFamily::OptC: return "optc";
    case CopulaFamily::AMH: return "amh";
    case CopulaFamily::Plackett: return "plackett";
    case CopulaFamily::Frank: return "frank";
    case CopulaFamily::GFGM: return "gfgm";
  }
  return "?";
}

std::optional<CopulaFamily> copula_family_from_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  if (s == "fgm") return CopulaFamily::FGM;
  if (s == "clayton") return CopulaFamily::Clayton;
  if (s == "gauss" || s == "gaussian") return CopulaFamily::Gaussian;
  if (s == "optc" || s == "opt-c") return CopulaFamily::OptC;
  if (s == "amh") return CopulaFamily::AMH;
  if (s == "plackett") return CopulaFamily::Plackett;
  if (s == "frank") return CopulaFamily::Frank;
  if (s == "gfgm") return CopulaFamily::GFGM;
  return std::nullopt;
}

CopulaModel make_copula(CopulaFamily family, double theta) {
  check_param(family, theta);
  return CopulaModel{family, theta};
}

CopulaModel parse_copula(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw InputFormatError("copula spec must look like family:parameter, got '" + spec + "'");
  }
  const auto fam = copula_family_from_name(spec.substr(0, colon));
  if (!fam) throw InputFormatError("unknown copula family in '" + spec + "'");
  double theta = 0.0;
  try {
    std::size_t pos = 0;
    theta = std::stod(spec.substr(colon + 1), &pos);
    if (pos != spec.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw InputFormatError("bad copula parameter in '" + spec + "'");
  }
  return make_copula(*fam, theta);
}

std::pair<double, double> sample(const CopulaModel& model, Rng& rng) {
  const double t = model.theta;
  switch (model.family) {
    case CopulaFamily::FGM: {
      // Conditional inversion; the conditional CDF is quadratic in v.
      const double u = rng.uniform_pos();
      const double w = rng.uniform_pos();
      const double a = t * (1.0 - 2.0 * u);
      if (std::abs(a) < 1e-12) return {u, w};
      const double b = 1.0 + a;
      const double v = (b - std::sqrt(b * b - 4.0 * a * w)) / (2.0 * a);
      return {u, v};
    }
    case CopulaFamily::Clayton: {
      const double u = rng.uniform_pos();
      const double w = rng.uniform_pos();
      if (t > 0.0) {
        const double v =
            std::pow(1.0 + std::pow(u, -t) * (std::pow(w, -t / (1.0 + t)) - 1.0), -1.0 / t);
        return {u, v};
      }
      // κ < 0: invert the truncated conditional CDF by bisection.
      double lo = 0.0, hi = 1.0;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (clayton_conditional_cdf(t, u, mid) < w) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return {u, 0.5 * (lo + hi)};
    }
    case CopulaFamily::Gaussian: {
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      const double y = t * z1 + std::sqrt(1.0 - t * t) * z2;
      return {norm_cdf(z1), norm_cdf(y)};
    }
    case CopulaFamily::OptC: {
      // Rejection from the uniform envelope; density <= 1 + 2|θ|.
      const double bound = 1.0 + 2.0 * std::abs(t);
      for (;;) {
        const double u = rng.uniform_pos();
        const double v = rng.uniform_pos();
        const double dens = 1.0 + 2.0 * t * std::cos(kTwoPi * u) * std::cos(kTwoPi * v);
        if (rng.uniform() * bound <= dens) return {u, v};
      }
    }
    case CopulaFamily::Frank: {
      const double u = rng.uniform_pos();
      const double w = rng.uniform_pos();
      if (std::abs(t) < 1e-10) return {u, w};
      const double eu = std::exp(-t * u);
      const double x = w * (std::exp(-t) - 1.0) / (eu - w * (eu - 1.0));
      return {u, -std::log1p(x) / t};
    }
    default:
      throw UnsupportedSampler(std::string(copula_family_name(model.family)) +
                               " provides a local direction only, no sampler");
  }
}

double density(const CopulaModel& model, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw ParameterOutOfRange("density requires a point of the unit square");
  }
  const bool interior = u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0;
  if (!interior &&
      (model.family == CopulaFamily::Gaussian || model.family == CopulaFamily::Clayton)) {
    throw ParameterOutOfRange("this family's density needs an interior point");
  }
  const double t = model.theta;
  switch (model.family) {
    case CopulaFamily::FGM:
      return 1.0 + t * (2.0 * u - 1.0) * (2.0 * v - 1.0);
    case CopulaFamily::Clayton: {
      const double s = std::pow(u, -t) + std::pow(v, -t) - 1.0;
      if (s <= 0.0) return 0.0;
      return (1.0 + t) * std::pow(u * v, -t - 1.0) * std::pow(s, -1.0 / t - 2.0);
    }
    case CopulaFamily::Gaussian: {
      const double x = norm_ppf(u);
      const double y = norm_ppf(v);
      const double r2 = 1.0 - t * t;
      return std::exp(-0.5 * (t * t * (x * x + y * y) - 2.0 * t * x * y) / r2) / std::sqrt(r2);
    }
    case CopulaFamily::OptC:
      return 1.0 + 2.0 * t * std::cos(kTwoPi * u) * std::cos(kTwoPi * v);
    case CopulaFamily::AMH: {
      const double d = 1.0 - t * (1.0 - u) * (1.0 - v);
      return (1.0 + t * ((1.0 + u) * (1.0 + v) - 3.0) + t * t * (1.0 - u) * (1.0 - v)) / (d * d * d);
    }
    case CopulaFamily::Plackett: {
      const double s = 1.0 + t * (u + v);
      const double d = std::sqrt(s * s - 4.0 * u * v * t * (t + 1.0));
      return (t + 1.0) * (s - 2.0 * t * u * v) / (d * d * d);
    }
    case CopulaFamily::Frank: {
      if (std::abs(t) < 1e-10) return 1.0;
      const double em = std::expm1(-t);
      const double eu = std::expm1(-t * u);
      const double ev = std::expm1(-t * v);
      const double denom = em + eu * ev;
      return -t * em * std::exp(-t * (u + v)) / (denom * denom);
    }
    case CopulaFamily::GFGM: {
      // c = ∂²/∂u∂v [ uv (1 + θ A B)² ] with A = 1-u², B = 1-v².
      const double A = 1.0 - u * u;
      const double B = 1.0 - v * v;
      const double s = 1.0 + t * A * B;
      return s * s - 4.0 * t * u * u * B * s - 4.0 * t * v * v * (1.0 - 3.0 * u * u) * s +
             8.0 * t * t * u * u * v * v * A * B;
    }
  }
  return 1.0;
}

namespace {

double direction_norm(const std::function<double(double, double)>& q) {
  const auto& rule = GaussLegendre::get(64);
  const auto f = [&](double u, double v) {
    const double x = q(u, v);
    return x * x;
  };
  return std::sqrt(integrate2_diag(rule, f));
}

}  // namespace

Direction make_rank1_direction(std::string label, std::function<double(double)> fx,
                               std::function<double(double)> fy) {
  Direction d;
  d.label = std::move(label);
  d.fx = fx;
  d.fy = fy;
  d.eval = [fx, fy](double u, double v) { return fx(u) * fy(v); };
  const auto& rule = GaussLegendre::get(64);
  const double mx = integrate(rule, fx, 0.0, 1.0);
  const double my = integrate(rule, fy, 0.0, 1.0);
  if (std::abs(mx * my) > 1e-10) {
    throw ParameterOutOfRange("direction must integrate to zero over the unit square");
  }
  const double nx = std::sqrt(integrate(rule, [&](double u) { return fx(u) * fx(u); }, 0.0, 1.0));
  const double ny = std::sqrt(integrate(rule, [&](double v) { return fy(v) * fy(v); }, 0.0, 1.0));
  d.norm = nx * ny;
  return d;
}

Direction direction(const CopulaModel& model) {
  switch (model.family) {
    case CopulaFamily::FGM:
    case CopulaFamily::AMH:
    case CopulaFamily::Plackett: {
      auto f = [](double u) { return 2.0 * u - 1.0; };
      auto d = make_rank1_direction(model.family == CopulaFamily::FGM
                                        ? "fgm"
                                        : std::string(copula_family_name(model.family)),
                                    f, f);
      d.symmetric = true;
      return d;
    }
    case CopulaFamily::Frank: {
      // First-order term is half of the FGM one.
      auto fx = [](double u) { return 0.5 * (2.0 * u - 1.0); };
      auto fy = [](double v) { return 2.0 * v - 1.0; };
      auto d = make_rank1_direction("frank", fx, fy);
      d.symmetric = true;
      return d;
    }
    case CopulaFamily::GFGM: {
      auto f = [](double u) { return 1.0 - 3.0 * u * u; };
      auto d = make_rank1_direction("gfgm", f, f);
      d.symmetric = true;
      return d;
    }
    case CopulaFamily::OptC: {
      auto fx = [](double u) { return 2.0 * std::cos(kTwoPi * u); };
      auto fy = [](double v) { return std::cos(kTwoPi * v); };
      auto d = make_rank1_direction("optc", fx, fy);
      d.symmetric = true;
      return d;
    }
    default:
      throw UnsupportedSampler(std::string(copula_family_name(model.family)) +
                               " has no printed local direction");
  }
}

Direction direction_by_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  if (s == "qb" || s == "b") {
    auto fx = [](double u) { return 2.0 * std::cos(M_PI * u); };
    auto fy = [](double v) { return std::cos(M_PI * v); };
    auto d = make_rank1_direction("qb", fx, fy);
    d.symmetric = true;
    return d;
  }
  if (s == "qc") s = "optc";
  const auto fam = copula_family_from_name(s);
  if (!fam) throw InputFormatError("unknown direction '" + name + "'");
  // Parameter value is irrelevant for the direction; pick one in range.
  const double theta = (*fam == CopulaFamily::GFGM) ? 0.1 : 0.25;
  return direction(make_copula(*fam, theta));
}

}  // namespace patind
