#include "uavroute/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "uavroute/errors.hpp"
#include "uavroute/quadrature.hpp"

namespace uavroute::geometry {
namespace {

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

void check_distribution(const ProgressDistribution& dist) {
  if (!(dist.d > 0.0) || !std::isfinite(dist.d)) {
    throw DomainError("progress distribution: d must be positive and finite");
  }
  if (!(dist.r > 0.0) || !std::isfinite(dist.r)) {
    throw DomainError("progress distribution: r must be positive and finite");
  }
  if (dist.n_nodes < 1) {
    throw DomainError("progress distribution: n_nodes must be >= 1");
  }
  if (!(dist.area_side > 0.0) || !std::isfinite(dist.area_side)) {
    throw DomainError("progress distribution: area_side must be positive");
  }
}

// (1 - A/L^2)^N with the Bernoulli probability clamped into [0, 1].
double empty_region_probability(const ProgressDistribution& dist, double x) {
  // Remaining distance d - r is external tangency; rounding in d - r would
  // otherwise leave a sliver of area.
  if (x <= dist.d - dist.r) return 1.0;
  const double area = lens_area({dist.d, dist.r, std::max(x, 0.0)});
  const double side2 = dist.area_side * dist.area_side;
  const double miss = std::clamp(1.0 - area / side2, 0.0, 1.0);
  return std::pow(miss, dist.n_nodes);
}

}  // namespace

double lens_area(const LensParams& p) {
  const double d = p.d;
  const double big = p.r_big;
  const double small = p.r_small;
  if (!std::isfinite(d) || !std::isfinite(big) || !std::isfinite(small)) {
    throw DomainError("lens_area: non-finite input");
  }
  if (!(d > 0.0)) throw DomainError("lens_area: center distance must be > 0");
  if (big < 0.0 || small < 0.0) {
    throw DomainError("lens_area: negative radius");
  }

  if (d >= big + small) return 0.0;
  if (d + small <= big) return std::numbers::pi * small * small;
  if (d + big <= small) return std::numbers::pi * big * big;

  const double d2 = d * d;
  const double big2 = big * big;
  const double small2 = small * small;
  const double radicand =
      (-d + big + small) * (d - big + small) * (d + big - small) * (d + big + small);
  const double area = big2 * clamped_acos((d2 + big2 - small2) / (2.0 * d * big)) +
                      small2 * clamped_acos((d2 + small2 - big2) / (2.0 * d * small)) -
                      0.5 * std::sqrt(std::max(radicand, 0.0));
  const double cap = std::numbers::pi * std::min(big2, small2);
  return std::clamp(area, 0.0, cap);
}

ProgressDistribution ProgressDistribution::make(double d, double r, int n_nodes,
                                                double area_side) {
  ProgressDistribution dist{d, r, n_nodes, area_side, 0.0};
  check_distribution(dist);
  dist.p_zero = empty_region_probability(dist, d);
  return dist;
}

double progress_tail(const ProgressDistribution& dist, double x) {
  check_distribution(dist);
  const double slack = 1e-12 * std::max(dist.d, dist.r);
  if (!(x >= dist.d - dist.r - slack) || !(x <= dist.d + slack)) {
    throw DomainError("progress_tail: x outside [d - r, d]");
  }
  return empty_region_probability(dist, std::clamp(x, dist.d - dist.r, dist.d));
}

double progress_cdf(const ProgressDistribution& dist, double y) {
  check_distribution(dist);
  if (y < 0.0) return 0.0;
  if (y >= dist.r) return 1.0;
  return empty_region_probability(dist, dist.d - y);
}

double expected_progress(const ProgressDistribution& dist) {
  check_distribution(dist);
  const double d = dist.d;
  const double r = dist.r;
  // Kinks of the integrand: the destination disk shrinking inside the
  // sender's disk (y = 2d - r) and vanishing (y = d).
  const std::array<double, 2> kinks{2.0 * d - r, d};
  QuadratureOptions opts;
  opts.rel_tol = 1e-9;
  opts.abs_tol = 1e-12 * r;
  opts.max_panels = 10000;
  const auto result = integrate_adaptive(
      [&](double y) { return empty_region_probability(dist, d - y); }, 0.0, r,
      opts, kinks);
  return std::clamp(r - result.value, 0.0, r);
}

}  // namespace uavroute::geometry
