#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "uavroute/errors.hpp"
#include "uavroute/geometry.hpp"

namespace uavroute::geometry {
namespace {

constexpr double kPi = std::numbers::pi;

// Reference values from chord-length integration of the intersection in
// 30-digit arithmetic (mpmath), independent of the closed form.
constexpr double kLensUnit = 1.22836969860875684554470575143;
constexpr double kLens5000_5000_3000 = 12320477.7345311826626446928447;
constexpr double kTail7500 = 0.0165344487876876852930607588912;
constexpr double kMeanProgress7500 = 3035.30424021437972308464946638;
constexpr double kMeanProgress5000 = 2705.82851887052818531231023614;

TEST(LensArea, NoIntersectionAtInnerTangency) {
  EXPECT_EQ(lens_area({7500.0, 5000.0, 2500.0}), 0.0);
  EXPECT_EQ(lens_area({3.0, 1.0, 1.0}), 0.0);
}

TEST(LensArea, UnitCirclesMatchReference) {
  EXPECT_NEAR(lens_area({1.0, 1.0, 1.0}), kLensUnit, 1e-12);
  EXPECT_NEAR(lens_area({1.0, 1.0, 1.0}), 2.0 * std::acos(0.5) - std::sqrt(3.0) / 2.0,
              1e-12);
}

TEST(LensArea, MatchesReferenceAndMonteCarlo) {
  const double a = lens_area({5000.0, 5000.0, 3000.0});
  EXPECT_NEAR(a / kLens5000_5000_3000, 1.0, 1e-12);
  const auto mc = oracle::mc_lens_area(5000.0, 5000.0, 3000.0, 2'000'000, 11);
  EXPECT_NEAR(a, mc.mean, 3.0 * mc.stderr_of_mean);
}

TEST(LensArea, ContainmentCases) {
  EXPECT_DOUBLE_EQ(lens_area({1.0, 5.0, 2.0}), kPi * 4.0);
  EXPECT_DOUBLE_EQ(lens_area({1.0, 2.0, 5.0}), kPi * 4.0);
  // Internal tangency sits on the containment boundary.
  EXPECT_DOUBLE_EQ(lens_area({3.0, 5.0, 2.0}), kPi * 4.0);
}

TEST(LensArea, DomainErrors) {
  EXPECT_THROW(lens_area({0.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(lens_area({-1.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(lens_area({1.0, -1.0, 1.0}), DomainError);
  EXPECT_THROW(lens_area({1.0, 1.0, -0.5}), DomainError);
  EXPECT_THROW(lens_area({1.0, NAN, 1.0}), DomainError);
}

TEST(LensArea, NearTangencyIsFinite) {
  for (double eps : {0.0, 1e-15, 1e-12, 1e-9}) {
    const double outer = lens_area({2.0 - eps, 1.0, 1.0});
    const double inner = lens_area({1.0 + eps, 2.0, 1.0});
    EXPECT_TRUE(std::isfinite(outer));
    EXPECT_TRUE(std::isfinite(inner));
    EXPECT_GE(outer, 0.0);
    EXPECT_LE(inner, kPi + 1e-12);
  }
}

TEST(LensArea, PropertiesOverRandomInputs) {
  Rng rng(2024);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int k = 0; k < 2000; ++k) {
    const double d = u(rng);
    const double a = u(rng);
    const double b = u(rng);
    const double ab = lens_area({d, a, b});
    const double ba = lens_area({d, b, a});
    EXPECT_NEAR(ab, ba, 1e-9 * std::max(1.0, ab));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, kPi * std::min(a * a, b * b) * (1 + 1e-12));
    // Monotone in the destination-side radius.
    EXPECT_LE(ab, lens_area({d, a, b * 1.01}) + 1e-9 * std::max(1.0, ab));
  }
}

TEST(ProgressDistribution, RejectsInvalidParameters) {
  EXPECT_THROW(ProgressDistribution::make(0.0, 1.0, 1, 1.0), DomainError);
  EXPECT_THROW(ProgressDistribution::make(1.0, 0.0, 1, 1.0), DomainError);
  EXPECT_THROW(ProgressDistribution::make(1.0, 1.0, 0, 1.0), DomainError);
  EXPECT_THROW(ProgressDistribution::make(1.0, 1.0, 1, 0.0), DomainError);
}

TEST(ProgressTail, BoundaryAndReference) {
  const auto dist = ProgressDistribution::make(7500.0, 5000.0, 10, 10000.0);
  EXPECT_DOUBLE_EQ(progress_tail(dist, 2500.0), 1.0);
  EXPECT_NEAR(progress_tail(dist, 7500.0), kTail7500, 1e-14);
  EXPECT_DOUBLE_EQ(dist.p_zero, progress_tail(dist, 7500.0));
  EXPECT_THROW(progress_tail(dist, 2000.0), DomainError);
  EXPECT_THROW(progress_tail(dist, 7600.0), DomainError);
}

TEST(ProgressTail, VanishesForManyNodes) {
  // Pick L so that A / L^2 = 0.1 at x = d.
  const double area = lens_area({2.0, 2.0, 2.0});
  const auto dist = ProgressDistribution::make(2.0, 2.0, 100000, std::sqrt(area / 0.1));
  EXPECT_LT(progress_tail(dist, 2.0), 1e-6);
}

TEST(ProgressCdf, PiecewiseDefinition) {
  const auto dist = ProgressDistribution::make(7500.0, 5000.0, 10, 10000.0);
  EXPECT_EQ(progress_cdf(dist, -1.0), 0.0);
  EXPECT_EQ(progress_cdf(dist, 5000.1), 1.0);
  EXPECT_DOUBLE_EQ(progress_cdf(dist, 0.0), dist.p_zero);
  EXPECT_DOUBLE_EQ(progress_cdf(dist, 5000.0), 1.0);
}

TEST(ProgressCdf, MonotoneAndStochasticallyOrdered) {
  Rng rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double r = 100.0 + 4900.0 * u(rng);
    const double side = 2.0 * r + 10000.0 * u(rng);
    const int n = 1 + static_cast<int>(60 * u(rng));
    const double d_near = r * (1.0 + 2.0 * u(rng));
    const double d_far = d_near * (1.0 + u(rng));
    const auto near = ProgressDistribution::make(d_near, r, n, side);
    const auto far = ProgressDistribution::make(d_far, r, n, side);
    double prev = 0.0;
    for (int s = 0; s <= 50; ++s) {
      const double y = s == 50 ? r : r * s / 50.0;
      const double c = progress_cdf(near, y);
      EXPECT_GE(c, prev - 1e-15);
      prev = c;
      // Farther from the destination, larger progress is more likely.
      EXPECT_GE(1.0 - progress_cdf(far, y), 1.0 - c - 1e-12);
    }
  }
}

TEST(ExpectedProgress, MatchesReferenceQuadrature) {
  const auto at7500 = ProgressDistribution::make(7500.0, 5000.0, 10, 10000.0);
  EXPECT_NEAR(expected_progress(at7500) / kMeanProgress7500, 1.0, 1e-8);
  const auto at_range = ProgressDistribution::make(5000.0, 5000.0, 10, 10000.0);
  EXPECT_NEAR(expected_progress(at_range) / kMeanProgress5000, 1.0, 1e-8);
}

TEST(ExpectedProgress, MatchesMonteCarloWithinOnePercent) {
  const auto mc = oracle::mc_expected_progress(7500.0, 5000.0, 10, 10000.0, 200'000, 5);
  const auto dist = ProgressDistribution::make(7500.0, 5000.0, 10, 10000.0);
  EXPECT_NEAR(expected_progress(dist) / mc.mean, 1.0, 0.01);
}

TEST(ExpectedProgress, Limits) {
  // Huge area: almost never a relay, progress tends to zero.
  const auto sparse = ProgressDistribution::make(7500.0, 5000.0, 10, 1e9);
  EXPECT_LT(expected_progress(sparse), 1e-3);
  // Many relays: the best one sits near the edge of the range.
  const auto dense = ProgressDistribution::make(7500.0, 5000.0, 100000, 10000.0);
  EXPECT_NEAR(expected_progress(dense) / 5000.0, 1.0, 0.01);
}

TEST(ExpectedProgress, DestinationInsideRange) {
  // Progress can never exceed the remaining distance.
  const auto dist = ProgressDistribution::make(1000.0, 5000.0, 30, 10000.0);
  const double ey = expected_progress(dist);
  EXPECT_GT(ey, 0.0);
  EXPECT_LE(ey, 1000.0 + 1e-9);
}

TEST(ExpectedProgress, EqualsStieltjesMeanOfCdf) {
  Rng rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    const double r = 1000.0 + 4000.0 * u(rng);
    const double d = r * (1.0 + u(rng));
    const int n = 2 + static_cast<int>(40 * u(rng));
    const auto dist = ProgressDistribution::make(d, r, n, 10000.0);
    // Midpoint Riemann-Stieltjes sum of y dF(y); the atom at 0 adds nothing.
    const int steps = 200000;
    double mean = 0.0;
    double prev = progress_cdf(dist, 0.0);
    for (int s = 1; s <= steps; ++s) {
      const double y1 = r * s / steps;
      const double cur = progress_cdf(dist, y1);
      mean += (y1 - 0.5 * r / steps) * (cur - prev);
      prev = cur;
    }
    EXPECT_NEAR(expected_progress(dist) / mean, 1.0, 1e-6);
  }
}

}  // namespace
}  // namespace uavroute::geometry
