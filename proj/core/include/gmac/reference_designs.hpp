#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gmac/constellation.hpp"
#include "gmac/degree_distribution.hpp"

namespace gmac {

// Published reference code designs for the two-user scheme: one degree
// distribution per user and stage, with the constellation and design SNR.
struct ReferenceDesign {
  std::string name;          // "mc10", "mc18", "opt18"
  NamedConstellation constellation;
  double dsnr_db = 0.0;
  // [stage][user]
  std::vector<std::array<DegreeDistribution, 2>> codes;
  std::vector<double> reference_rates1, reference_rates2;  // published rates
};

const ReferenceDesign& reference_design(const std::string& name);
std::vector<std::string> reference_design_names();

}  // namespace gmac
