#include "gmac/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "gmac/errors.hpp"

namespace gmac {
namespace {

QuadRule make_legendre(int n) {
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

QuadRule make_hermite(int n) {
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double pi4 = std::pow(M_PI, -0.25);
  double x = 0.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 0)
      x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      x -= 1.14 * std::pow(n, 0.426) / x;
    else if (i == 2)
      x = 1.86 * x - 0.86 * r.nodes[n - 1];
    else if (i == 3)
      x = 1.91 * x - 0.91 * r.nodes[n - 2];
    else
      x = 2.0 * x - r.nodes[n - i + 1];

    double pp = 0.0;
    for (int it = 0; it < 200; ++it) {
      double p0 = pi4, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = x * std::sqrt(2.0 / (k + 1.0)) * p1 - std::sqrt(double(k) / (k + 1.0)) * p2;
      }
      pp = std::sqrt(2.0 * n) * p1;
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    double w = 2.0 / (pp * pp);
    r.weights[n - 1 - i] = w;
    r.weights[i] = w;
  }
  return r;
}

std::mutex g_cache_mutex;

const QuadRule& cached(std::map<int, QuadRule>& cache, int order, QuadRule (*make)(int)) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make(order)).first;
  return it->second;
}

double panel(const std::function<double(double)>& f, const QuadRule& rule, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
             const QuadRule& lo, const QuadRule& hi) {
  double coarse = panel(f, lo, a, b);
  double fine = panel(f, hi, a, b);
  if (std::abs(fine - coarse) <= tol || b - a < 1e-14 * (1.0 + std::abs(a))) return fine;
  if (depth <= 0) {
    std::ostringstream msg;
    msg << "integrate_adaptive: no convergence on [" << a << ", " << b
        << "], residual " << std::abs(fine - coarse) << " > " << tol;
    throw numerical_error(msg.str());
  }
  double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, depth - 1, lo, hi) +
         adapt(f, m, b, 0.5 * tol, depth - 1, lo, hi);
}

}  // namespace

const QuadRule& gauss_legendre(int order) {
  static std::map<int, QuadRule> cache;
  return cached(cache, order, &make_legendre);
}

const QuadRule& gauss_hermite(int order) {
  static std::map<int, QuadRule> cache;
  return cached(cache, order, &make_hermite);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  if (!(b > a)) return 0.0;
  const QuadRule& lo = gauss_legendre(7);
  const QuadRule& hi = gauss_legendre(15);
  return adapt(f, a, b, abs_tol, max_depth, lo, hi);
}

void map_rule(const QuadRule& rule, double a, double b, std::vector<double>& x,
              std::vector<double>& w) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  x.resize(rule.nodes.size());
  w.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    x[i] = mid + half * rule.nodes[i];
    w[i] = half * rule.weights[i];
  }
}

}  // namespace gmac
