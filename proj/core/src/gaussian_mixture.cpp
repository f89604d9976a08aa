#include "gmac/gaussian_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmac/errors.hpp"
#include "gmac/quadrature.hpp"

namespace gmac {

void GaussianMixture::validate() const {
  if (components.empty()) throw domain_error("GaussianMixture: no components");
  if (!(variance > 0.0)) throw domain_error("GaussianMixture: variance must be positive");
  double total = 0.0;
  for (const auto& c : components) {
    if (c.weight < 0.0) throw domain_error("GaussianMixture: negative weight");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw domain_error("GaussianMixture: weights sum to " + std::to_string(total));
}

double GaussianMixture::min_mean() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& c : components) v = std::min(v, c.mean);
  return v;
}

double GaussianMixture::max_mean() const {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& c : components) v = std::max(v, c.mean);
  return v;
}

double GaussianMixture::pdf(double y) const {
  const double inv2v = 0.5 / variance;
  const double norm = 1.0 / std::sqrt(2.0 * M_PI * variance);
  double s = 0.0;
  for (const auto& c : components) {
    double d = y - c.mean;
    s += c.weight * std::exp(-d * d * inv2v);
  }
  return s * norm;
}

double GaussianMixture::log_pdf(double y) const {
  // logsumexp over components, stable for far tails
  const double inv2v = 0.5 / variance;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : components) {
    if (c.weight <= 0.0) continue;
    double d = y - c.mean;
    best = std::max(best, std::log(c.weight) - d * d * inv2v);
  }
  double s = 0.0;
  for (const auto& c : components) {
    if (c.weight <= 0.0) continue;
    double d = y - c.mean;
    s += std::exp(std::log(c.weight) - d * d * inv2v - best);
  }
  return best + std::log(s) - 0.5 * std::log(2.0 * M_PI * variance);
}

double mixture_entropy(const GaussianMixture& mix) {
  mix.validate();
  const double sd = std::sqrt(mix.variance);
  const double lo = mix.min_mean() - 10.0 * sd;
  const double hi = mix.max_mean() + 10.0 * sd;
  constexpr double kLog2 = 0.69314718055994531;
  auto integrand = [&](double y) {
    double lp = mix.log_pdf(y);
    if (lp < -690.0) return 0.0;
    return -std::exp(lp) * lp;
  };
  return integrate_adaptive(integrand, lo, hi, 1e-8) / kLog2;
}

double gaussian_entropy_bits(double variance) {
  if (!(variance > 0.0)) throw domain_error("gaussian_entropy_bits: variance must be positive");
  return 0.5 * std::log2(2.0 * M_PI * M_E * variance);
}

}  // namespace gmac
