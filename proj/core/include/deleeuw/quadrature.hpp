#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "deleeuw/funcspace.hpp"

namespace deleeuw::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 4000;
};

struct Result {
  cplx value;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]: the interval with the
/// largest error estimate is bisected until the summed estimate meets the
/// tolerance. Endpoint samples enter the estimate, so isolated jumps are
/// located even when they fall between the outer nodes.
Result integrate(const std::function<cplx(double)>& f, double a, double b, const Options& opts = {});

double integrate_real(const std::function<double(double)>& f, double a, double b, const Options& opts = {});

/// Nodes and weights for int_R e^{-x^2} f(x) dx.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Hermite rule (Newton iteration on orthonormal Hermite polynomials).
Rule gauss_hermite(int n);

}  // namespace deleeuw::quad
