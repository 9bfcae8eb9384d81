#pragma once

#include <json.hpp>

#include "patind/spectral.hpp"

namespace patind {

// {kernel, normalization, entries:[{eigenvalue, multiplicity, descriptor}],
//  analytic_trace, captured_trace}
inline nlohmann::ordered_json to_json(const Spectrum& s) {
  nlohmann::ordered_json j;
  j["kernel"] = s.kernel;
  // Eigenvalues are for the h2 kernels as defined; limit-law weights are 6x.
  j["normalization"] = "h2";
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : s.entries) {
    nlohmann::ordered_json je;
    je["eigenvalue"] = e.eigenvalue;
    je["multiplicity"] = e.multiplicity;
    auto d = nlohmann::ordered_json::array();
    for (const auto& fn : e.eigenfunctions) d.push_back(label(fn));
    je["descriptor"] = d;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["analytic_trace"] = s.analytic_trace;
  j["captured_trace"] = s.captured_trace;
  return j;
}

}  // namespace patind
