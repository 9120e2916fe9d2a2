#pragma once

#include <functional>
#include <vector>

namespace selfnorm {

struct QuadOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-300;
  int max_intervals = 4000;
  // Interior points the integrand is known to peak or kink at; the driver
  // splits there before adapting.
  std::vector<double> knots;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Throws NumericalError carrying the
// achieved tolerance if the error estimate does not meet the request.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

}  // namespace selfnorm
