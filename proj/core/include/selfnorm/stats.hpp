#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace selfnorm {

// Neumaier-compensated accumulator. Summation order is fixed by the caller
// (replication index order), so parallel and serial reductions agree bitwise.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // sample SD / sqrt(n)
  std::size_t n = 0;
};

// Two-pass mean and standard error, compensated in index order.
inline MeanSe mean_and_se(std::span<const double> xs) {
  MeanSe out;
  out.n = xs.size();
  if (out.n == 0) return out;
  out.mean = compensated_total(xs) / static_cast<double>(out.n);
  if (out.n < 2) return out;
  CompensatedSum ss;
  for (double x : xs) {
    const double d = x - out.mean;
    ss.add(d * d);
  }
  const double var = ss.value() / static_cast<double>(out.n - 1);
  out.se = std::sqrt(var / static_cast<double>(out.n));
  return out;
}

struct WilsonInterval {
  double estimate = 0.0;  // successes / n
  double lo = 0.0;
  double hi = 0.0;
  double half_width = 0.0;
};

// Score interval; behaves sensibly for frequencies at or near zero.
inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n,
                                      double z) {
  WilsonInterval w;
  if (n == 0) return w;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  w.estimate = p;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double hw =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  w.lo = std::max(0.0, center - hw);
  w.hi = std::min(1.0, center + hw);
  w.half_width = hw;
  return w;
}

}  // namespace selfnorm
