#pragma once

#include <vector>

#include "diskdyn/flow.hpp"
#include "diskdyn/geometry.hpp"

namespace diskdyn {

/// One transverse passage of the tracked curve through the reference
/// surface.
struct CrossingEvent {
    double time = 0.0;
    int sign = 0;
    /// d/dt of the relative angle at the crossing, radians per unit time.
    double angle_rate = 0.0;
    /// Position of the crossing along the chord from x_t to e, in (0, 1).
    double radial_fraction = 0.0;
};

struct IntersectionResult {
    long value = 0; // sum of crossing signs
    std::vector<CrossingEvent> crossings;
    /// Smallest |angle_rate| seen over the crossings (infinity when none).
    double min_angle_rate = 0.0;
};

/// Angle of (yt - xt) measured against (e - xt), in (-pi, pi]; zero exactly
/// when yt lies on the ray from xt through e.
double relative_angle(const Point2& xt, const Point2& yt, const Point2& e);

/// Signed count of transverse crossings of y's trajectory curve through the
/// surface swept by the chords [phi^t(x), e] over [0, n].  A crossing is
/// positive when the relative angle increases through zero.  Crossings with
/// |angle_rate| below `tol_transversal` raise TransversalityFailure (the
/// caller should perturb e and retry).
IntersectionResult intersection_number(const HamiltonianSpec& spec, const Point2& x,
                                       const Point2& y, const Point2& e, int n,
                                       const FlowConfig& cfg, double tol_transversal = 1e-6);

/// Same computation against a precomputed trajectory of x (shared across
/// many y samples).
IntersectionResult intersection_number_with(const HamiltonianSpec& spec, const Trajectory& tx,
                                            const Point2& y, const Point2& e, const FlowConfig& cfg,
                                            double tol_transversal = 1e-6);

struct IntegralEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long retries = 0;
};

/// Quadrature of y -> intersection_number(x, y) over the disk.  Samples that
/// fail transversality are retried with the anchor rotated by 1e-4 * k
/// (k = 1..8, that sample only); the retry count is reported.
IntegralEstimate intersection_integral(const HamiltonianSpec& spec, const Point2& x,
                                       const Point2& e, int n, const QuadratureSpec& quad,
                                       const FlowConfig& cfg, unsigned threads = 0);

} // namespace diskdyn
