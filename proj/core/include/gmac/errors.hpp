#pragma once

#include <stdexcept>
#include <string>

namespace gmac {

// Bad arguments or violated preconditions.
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Quadrature non-convergence, LP trouble, optimizer failure.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

class infeasible_error : public numerical_error {
 public:
  explicit infeasible_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace gmac
