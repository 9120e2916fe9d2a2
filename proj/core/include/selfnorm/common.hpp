#pragma once

#include <stdexcept>
#include <string>

namespace selfnorm {

inline constexpr const char* kVersion = "0.1.0";

// Thrown when an iterative numerical routine cannot reach its requested
// tolerance; carries the tolerance actually achieved.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_tol)
      : std::runtime_error(what + " (achieved tolerance " +
                           std::to_string(achieved_tol) + ")"),
        achieved_tol_(achieved_tol) {}
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what), achieved_tol_(0.0) {}

  double achieved_tolerance() const { return achieved_tol_; }

 private:
  double achieved_tol_;
};

}  // namespace selfnorm
