#include "selfnorm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "selfnorm/common.hpp"
#include "selfnorm/stats.hpp"

namespace selfnorm {

namespace {

// QUADPACK dqk15 abscissae/weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    result_kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = result_kronrod * half;
  // |K - G| overestimates the true Kronrod error; conservative is fine here.
  p.error = std::abs((result_kronrod - result_gauss) * half);
  return p;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double k : opts.knots) {
    if (k > a && k < b) cuts.push_back(k);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto cmp = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  double total = 0.0;
  double total_err = 0.0;
  int evals = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gk15(f, cuts[i], cuts[i + 1]);
    evals += 15;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }

  int n_panels = static_cast<int>(cuts.size()) - 1;
  while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) &&
         n_panels < opts.max_intervals) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval at floating-point resolution; cannot split further
      heap.push(worst);
      break;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n_panels;
  }

  // Recompute the total in deterministic left-to-right order.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum sum;
  CompensatedSum err;
  for (const Panel& p : panels) {
    sum.add(p.value);
    err.add(p.error);
  }
  out.value = sum.value();
  out.abs_error = err.value();
  out.evaluations = evals;
  out.converged =
      out.abs_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value));
  if (!out.converged) {
    const double rel =
        std::abs(out.value) > 0.0 ? out.abs_error / std::abs(out.value) : out.abs_error;
    throw NumericalError("quadrature did not converge", rel);
  }
  return out;
}

}  // namespace selfnorm
