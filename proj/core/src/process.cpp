#include "selfnorm/process.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace selfnorm {

void ProcessPath::check_invariants() const {
  const std::size_t n = increments.size();
  if (times.size() != n + 1 || a_values.size() != n + 1 ||
      b_values.size() != n + 1)
    throw std::logic_error("ProcessPath: length mismatch");
  if (a_values[0] != 0.0 || b_values[0] != 0.0)
    throw std::logic_error("ProcessPath: A_0 and B_0 must be 0");
  for (std::size_t i = 1; i <= n; ++i) {
    if (!(times[i] > times[i - 1]))
      throw std::logic_error("ProcessPath: times must be strictly increasing");
    if (b_values[i] < b_values[i - 1])
      throw std::logic_error("ProcessPath: B must be nondecreasing");
    if (b_values[i] < 0.0 || !std::isfinite(a_values[i]))
      throw std::logic_error("ProcessPath: invalid entries");
  }
}

std::string ProcessPath::to_csv() const {
  std::string out = "n,A,B,d\n";
  char line[128];
  std::snprintf(line, sizeof(line), "0,%.17g,%.17g,\n", a_values[0],
                b_values[0]);
  out += line;
  for (std::size_t i = 1; i < times.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g\n", i,
                  a_values[i], b_values[i], increments[i - 1]);
    out += line;
  }
  return out;
}

}  // namespace selfnorm
