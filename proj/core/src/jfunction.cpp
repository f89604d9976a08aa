#include "gmac/jfunction.hpp"

#include <algorithm>
#include <cmath>

#include "gmac/errors.hpp"
#include "gmac/quadrature.hpp"

namespace gmac {
namespace {

// Curve-fit constants for the two-piece J approximation.
constexpr double kSigmaLow = 0.2;      // quadratic patch below (fit dips negative there)
constexpr double kSigmaSplit = 1.6363;
constexpr double kSigmaTail = 30.0;    // C0 exp(-s^2/8) tail above

constexpr double aJ1 = -0.0421061, bJ1 = 0.209252, cJ1 = -0.00640081;
constexpr double aJ2 = 0.00181491, bJ2 = -0.142675, cJ2 = -0.0822054, dJ2 = 0.0549608;

// Inverse-fit constants, used only as the Newton starting point.
constexpr double kISplit = 0.3646;
constexpr double aS1 = 1.09542, bS1 = 0.214217, cS1 = 2.33727;
constexpr double aS2 = 0.706692, bS2 = 0.386013, cS2 = -1.75017;

double fit_cubic(double s) { return ((aJ1 * s + bJ1) * s + cJ1) * s; }
double fit_exp(double s) { return 1.0 - std::exp(((aJ2 * s + bJ2) * s + cJ2) * s + dJ2); }

double tail_scale() {
  static const double k =
      (1.0 - fit_exp(kSigmaTail)) * std::exp(kSigmaTail * kSigmaTail / 8.0);
  return k;
}

double invert(double i, double (*jf)(double)) {
  if (i < 0.0) throw domain_error("j_inverse: negative mutual information");
  if (i >= 1.0) throw domain_error("j_inverse: i >= 1 has unbounded sigma");
  if (i == 0.0) return 0.0;

  double s = i <= kISplit ? (aS1 * i + bS1) * i + cS1 * std::sqrt(i)
                          : -aS2 * std::log(bS2 * (1.0 - i)) - cS2 * i;
  s = std::clamp(s, 1e-8, 100.0);

  // Bracket, then bisect with a secant-style midpoint; jf is monotone.
  double lo = 0.0, hi = std::max(1.0, 2.0 * s);
  while (jf(hi) < i && hi < 1e4) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double v = jf(mid);
    if (std::abs(v - i) < 1e-13 || hi - lo < 1e-13 * (1.0 + mid)) return mid;
    (v < i ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double j_function(double sigma) {
  if (sigma < 0.0) throw domain_error("j_function: negative sigma");
  if (sigma == 0.0) return 0.0;
  if (sigma < kSigmaLow) {
    double base = fit_cubic(kSigmaLow);
    double r = sigma / kSigmaLow;
    return base * r * r;
  }
  if (sigma <= kSigmaSplit) return std::clamp(fit_cubic(sigma), 0.0, 1.0);
  if (sigma <= kSigmaTail) return std::clamp(fit_exp(sigma), 0.0, 1.0);
  return 1.0 - tail_scale() * std::exp(-sigma * sigma / 8.0);
}

double j_function_exact(double sigma) {
  if (sigma < 0.0) throw domain_error("j_function_exact: negative sigma");
  if (sigma < 1e-9) return 0.0;
  // 1 - (1/sqrt(pi)) sum w_i log2(1 + exp(-(mu + sqrt(2) sigma t_i)))
  const QuadRule& gh = gauss_hermite(96);
  const double mu = 0.5 * sigma * sigma;
  const double scale = std::sqrt(2.0) * sigma;
  double loss = 0.0;
  for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
    double l = mu + scale * gh.nodes[k];
    double t = l > 700.0 ? 0.0 : std::log1p(std::exp(-std::min(l, 700.0)));
    if (l < -700.0) t = -l;  // log(1+e^-l) ~ -l for very negative l
    loss += gh.weights[k] * t;
  }
  constexpr double kInvSqrtPiLog2 = 0.81327840526186444;  // 1/(sqrt(pi) ln 2)
  return std::clamp(1.0 - loss * kInvSqrtPiLog2, 0.0, 1.0);
}

double j_inverse(double i) { return invert(i, &j_function); }

double j_inverse_exact(double i) { return invert(i, &j_function_exact); }

}  // namespace gmac
