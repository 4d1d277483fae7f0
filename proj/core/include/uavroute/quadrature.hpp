#pragma once

#include <functional>
#include <span>

namespace uavroute {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_panels = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
// `breakpoints` are interior points where f is known to have a kink; each
// starts as a panel boundary. Throws ConvergenceError when the budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts = {},
                                    std::span<const double> breakpoints = {});

}  // namespace uavroute
