#include "uavroute/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "uavroute/errors.hpp"

namespace uavroute {
namespace {

// Kronrod abscissae on [-1, 1] (descending, positive half); odd indices are
// the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod15(const std::function<double(double)>& f, double a,
                      double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts,
                                    std::span<const double> breakpoints) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_adaptive: invalid interval");
  }
  if (a == b) return {0.0, 0.0, 0};

  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gauss_kronrod15(f, edges[i], edges[i + 1]);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  int panels = static_cast<int>(heap.size());

  auto converged = [&] {
    return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  };

  while (!converged()) {
    if (panels >= opts.max_panels) {
      throw ConvergenceError("integrate_adaptive: no convergence within " +
                             std::to_string(opts.max_panels) + " panels");
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("integrate_adaptive: panel below resolution");
    }
    Panel left = gauss_kronrod15(f, worst.a, mid);
    Panel right = gauss_kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Re-sum from the panels to shed the drift of the running updates.
  double sum = 0.0;
  double err = 0.0;
  std::vector<Panel> rest;
  rest.reserve(heap.size());
  while (!heap.empty()) {
    rest.push_back(heap.top());
    heap.pop();
  }
  std::sort(rest.begin(), rest.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const Panel& p : rest) {
    sum += p.value;
    err += p.error;
  }
  return {sum, err, panels};
}

}  // namespace uavroute
