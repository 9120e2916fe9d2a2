#pragma once

namespace selfnorm {

double normal_pdf(double x);
double normal_cdf(double x);
// log Phi(x), stable deep into the lower tail.
double normal_log_cdf(double x);
// Inverse of normal_cdf on (0,1).
double normal_quantile(double p);

// E[X 1(c <= X < d)] for X ~ N(0, scale^2): scale * (pdf(c/s) - pdf(d/s)).
double normal_windowed_mean(double scale, double c, double d);

// C_gamma = -(gamma + log(1-gamma))/gamma^2 on [0,1); C_0 = 1/2 by limit.
// Strictly increasing, diverges as gamma -> 1-.
double c_gamma(double gamma);

}  // namespace selfnorm
