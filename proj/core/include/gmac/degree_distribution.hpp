#pragma once

#include <map>
#include <string>

namespace gmac {

// Edge-perspective variable degree distribution lambda(x) = sum_j lambda_j x^{j-1}
// with a concentrated check side rho(x) = x^{d_c - 1}.
struct DegreeDistribution {
  std::map<int, double> lambda;  // degree j >= 2 -> edge fraction
  int d_c = 0;

  // Throws domain_error unless the fractions are nonnegative, sum to 1
  // within 1e-9, degrees are >= 2, and d_c >= 2.
  void validate() const;

  // Sum over j of lambda_j / j (the inverse average variable degree).
  double inv_avg_degree() const;
};

// Node-perspective fractions L_j = (lambda_j / j) / sum_i (lambda_i / i).
std::map<int, double> node_perspective(const DegreeDistribution& dd);

// 1 - (1/d_c) / sum_j (lambda_j / j); throws domain_error when <= 0.
double design_rate(const DegreeDistribution& dd);

std::string degree_distribution_to_string(const DegreeDistribution& dd);

}  // namespace gmac
