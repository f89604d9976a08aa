#pragma once

#include <functional>
#include <vector>

namespace gmac {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]; cached per order.
const QuadRule& gauss_legendre(int order);

// Physicists' Gauss-Hermite rule (weight e^{-t^2}); cached per order.
const QuadRule& gauss_hermite(int order);

// Adaptive composite Gauss-Legendre integration of f over [a, b].
// Bisects panels until the GL7/GL15 discrepancy meets abs_tol; throws
// numerical_error with diagnostics when the depth budget runs out.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-8, int max_depth = 40);

// Fixed-order tensor helper: nodes/weights of `rule` mapped to [a, b].
void map_rule(const QuadRule& rule, double a, double b, std::vector<double>& x,
              std::vector<double>& w);

}  // namespace gmac
