#pragma once

#include <vector>

namespace gmac {

// Equal-variance Gaussian mixture: sum_k w_k N(mu_k, variance).
struct GaussianMixture {
  struct Component {
    double mean = 0.0;
    double weight = 0.0;
  };
  std::vector<Component> components;
  double variance = 1.0;

  // Checks: >= 1 component, weights nonnegative summing to 1 within 1e-12,
  // variance > 0. Throws domain_error otherwise.
  void validate() const;

  double min_mean() const;
  double max_mean() const;
  double pdf(double y) const;
  double log_pdf(double y) const;
};

// Differential entropy h(Y) in bits, by adaptive quadrature over
// [min mean - 10 sd, max mean + 10 sd] with absolute target 1e-8.
double mixture_entropy(const GaussianMixture& mix);

// h of a single Gaussian, 0.5 log2(2 pi e var), in bits.
double gaussian_entropy_bits(double variance);

}  // namespace gmac
