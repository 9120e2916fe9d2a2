#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "selfnorm/process.hpp"

namespace selfnorm {

// Constant bundle for the upper LIL of self-normalized sums.
// h solves h - log(1+h) = lambda^2; b = h/lambda; gamma = h/(1+h);
// c_lambda = lambda/gamma is the documented reading of "determined via
// lambda/gamma" and is flagged as an interpretation wherever it is reported.
struct LilConstants {
  double lambda = 0.0;
  double h = 0.0;
  double b_lambda = 0.0;
  double gamma = 0.0;
  double c_gamma_value = 0.0;
  double c_lambda = 0.0;
  static constexpr const char* kCLambdaNote = "c_lambda = lambda/gamma (interpreted)";
};

LilConstants solve_h(double lambda);

// e_k = exp(k / log k), k >= 2; increasing from k = 3 on.
double e_k(int k);

inline constexpr std::uint64_t kNeverStops = 0;  // sentinel for inf{} = infinity

struct StoppingTimes {
  std::vector<std::uint64_t> t;    // t_j = inf{n : V_n >= e_j}, j from 2
  std::vector<std::uint64_t> tau;  // tau_j per the (1+3 eps) b_lambda boundary
  int j_min = 2;
};

StoppingTimes stopping_times(const ProcessPath& path, const LilConstants& c,
                             double epsilon, int j_max);

// Per-n ratio sequences; entries where a guard fails are std::nullopt,
// never fabricated.
struct LilRatios {
  std::vector<std::uint64_t> n_grid;
  std::vector<std::optional<double>> lil;           // S_n/(V_n sqrt(loglog V_n)), V_n > e^e
  std::vector<std::optional<double>> lil_guarded;   // 1 v loglog guard, V_n > 1
  std::vector<std::optional<double>> centered;      // (3.1) numerator, V_n > e^e
  std::vector<std::optional<double>> stout;         // S_n/sqrt(2 sigma_n^2 loglog sigma_n)
  std::vector<std::optional<double>> envelope;      // S_n/(V_n sqrt(2 loglog V_n))
  std::uint64_t heavy_atom_hits = 0;                // example31: # of -m_n draws
};

LilRatios lil_ratios(const ProcessPath& path, const LilConstants& constants,
                     const std::vector<std::uint64_t>& n_grid);

// Convenience: log-spaced grid of indices in [lo, hi].
std::vector<std::uint64_t> log_spaced_indices(std::uint64_t lo, std::uint64_t hi,
                                              int per_decade);

}  // namespace selfnorm
