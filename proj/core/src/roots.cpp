#include "selfnorm/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "selfnorm/common.hpp"

namespace selfnorm {

RootResult brent(const std::function<double(double)>& f, double a, double b,
                 double x_tol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("brent: root not bracketed");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 1; iter <= max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 =
        2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
        0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return {b, fb, iter};
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::abs(d) > tol1) {
      b += d;
    } else {
      b += (xm > 0.0 ? tol1 : -tol1);
    }
    fb = f(b);
  }
  return {b, fb, max_iter};
}

RootResult find_root_increasing(const std::function<double(double)>& f,
                                double lo, double hi, double x_tol) {
  if (!(lo < hi)) throw std::invalid_argument("find_root_increasing: lo < hi required");
  double flo = f(lo);
  double fhi = f(hi);
  int guard = 0;
  while (flo > 0.0) {
    const double width = hi - lo;
    hi = lo;
    fhi = flo;
    lo -= std::max(width, 1.0) * 2.0;
    flo = f(lo);
    if (++guard > 200)
      throw NumericalError("find_root_increasing: no sign change below", flo);
  }
  guard = 0;
  while (fhi < 0.0) {
    const double width = hi - lo;
    lo = hi;
    flo = fhi;
    hi += std::max(width, 1.0) * 2.0;
    fhi = f(hi);
    if (++guard > 200)
      throw NumericalError("find_root_increasing: no sign change above", fhi);
  }
  return brent(f, lo, hi, x_tol);
}

}  // namespace selfnorm
