#pragma once

#include <functional>

namespace selfnorm {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

// Brent's method on a sign-changing bracket [a, b]. Converges to roughly
// machine precision in x; throws std::invalid_argument if not bracketed.
RootResult brent(const std::function<double(double)>& f, double a, double b,
                 double x_tol = 0.0, int max_iter = 200);

// Expands [lo, hi] geometrically until f changes sign, then runs brent.
// f must be monotone increasing for the expansion logic to terminate.
RootResult find_root_increasing(const std::function<double(double)>& f,
                                double lo, double hi, double x_tol = 0.0);

}  // namespace selfnorm
