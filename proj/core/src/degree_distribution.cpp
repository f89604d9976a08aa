#include "gmac/degree_distribution.hpp"

#include <cmath>
#include <sstream>

#include "gmac/errors.hpp"

namespace gmac {

void DegreeDistribution::validate() const {
  if (lambda.empty()) throw domain_error("DegreeDistribution: empty lambda");
  if (d_c < 2) throw domain_error("DegreeDistribution: d_c must be >= 2");
  double total = 0.0;
  for (const auto& [j, v] : lambda) {
    if (j < 2) throw domain_error("DegreeDistribution: degrees start at 2");
    if (v < -1e-15) throw domain_error("DegreeDistribution: negative fraction");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw domain_error("DegreeDistribution: fractions sum to " + std::to_string(total));
}

double DegreeDistribution::inv_avg_degree() const {
  double s = 0.0;
  for (const auto& [j, v] : lambda) s += v / double(j);
  return s;
}

std::map<int, double> node_perspective(const DegreeDistribution& dd) {
  dd.validate();
  double z = dd.inv_avg_degree();
  std::map<int, double> L;
  for (const auto& [j, v] : dd.lambda) L[j] = (v / double(j)) / z;
  return L;
}

double design_rate(const DegreeDistribution& dd) {
  dd.validate();
  double r = 1.0 - (1.0 / double(dd.d_c)) / dd.inv_avg_degree();
  if (r <= 0.0)
    throw domain_error("design_rate: nonpositive rate (check degree too large)");
  return r;
}

std::string degree_distribution_to_string(const DegreeDistribution& dd) {
  std::ostringstream os;
  os << "dc=" << dd.d_c << " lambda={";
  bool first = true;
  for (const auto& [j, v] : dd.lambda) {
    if (!first) os << ", ";
    os << j << ": " << v;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace gmac
