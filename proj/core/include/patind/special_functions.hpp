#pragma once

namespace patind {

// Standard normal CDF via erfc.
double norm_cdf(double x);

// Standard normal quantile, Wichura's AS 241 rational approximation
// (absolute accuracy well below 1e-9 over (0,1)).
double norm_ppf(double p);

}  // namespace patind
