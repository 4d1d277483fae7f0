#pragma once

// Circle-circle intersection geometry and the per-hop progress distribution
// of distance-greedy forwarding over uniformly placed relays.

namespace uavroute::geometry {

/// Two circles whose centers are `d` apart: one of radius `r_big` (the
/// sender's transmission disk) and one of radius `r_small` (the disk around
/// the destination).
struct LensParams {
  double d = 0.0;
  double r_big = 0.0;
  double r_small = 0.0;
};

/// Area of the intersection of the two circles described by `p`.
/// Throws DomainError if d <= 0, a radius is negative, or any field is not
/// finite.
double lens_area(const LensParams& p);

/// Progress Y made by one greedy hop when the packet is `d` meters from the
/// destination, the range is `r`, and `n_nodes` candidate relays are uniform
/// over an `area_side` x `area_side` square.
///
/// The distribution is a point mass `p_zero` at Y = 0 (empty progress area)
/// plus a continuous part on (0, r].
struct ProgressDistribution {
  double d = 0.0;
  double r = 0.0;
  int n_nodes = 1;
  double area_side = 0.0;
  double p_zero = 0.0;

  /// Validates the parameters and fills in `p_zero`.
  static ProgressDistribution make(double d, double r, int n_nodes,
                                   double area_side);
};

/// P[X >= x] where X is the remaining distance after the hop, for
/// d - r <= x <= d.
double progress_tail(const ProgressDistribution& dist, double x);

/// P[Y <= y]; defined for all real y.
double progress_cdf(const ProgressDistribution& dist, double y);

/// E[Y] = r - integral_0^r P[Y <= y] dy, by adaptive quadrature.
/// Throws ConvergenceError if the relative tolerance 1e-9 is not reached.
double expected_progress(const ProgressDistribution& dist);

}  // namespace uavroute::geometry
