#pragma once

namespace gmac {

// J(sigma): mutual information between an equiprobable bit b and an LLR
// message distributed as N(sigma^2/2, sigma^2) conditioned on b = 0.
// Piecewise polynomial/exponential curve fit, accuracy ~1e-4.
double j_function(double sigma);

// Same quantity evaluated by Gauss-Hermite quadrature of
// 1 - E[log2(1 + e^-L)]; backs the tests and the high-accuracy paths.
double j_function_exact(double sigma);

// Numerical inverse of j_function: j_function(j_inverse(i)) = i to ~1e-12.
// Domain [0, 1); throws domain_error at i >= 1.
double j_inverse(double i);

// Inverse of j_function_exact.
double j_inverse_exact(double i);

}  // namespace gmac
