#pragma once

#include <vector>

#include "diskdyn/flow.hpp"

namespace diskdyn {

struct WindingResult {
    /// Total turns of the direction from the first trajectory to the second.
    double value = 0.0;
    /// Smallest sampled distance between the two trajectories.
    double min_separation = 0.0;
    /// Extra dense-output evaluations spent on angle refinement.
    long substeps_used = 0;
};

/// Winding number of the pair (x, y) under the unit-time isotopy.
WindingResult winding(const HamiltonianSpec& spec, const Point2& x, const Point2& y,
                      const FlowConfig& cfg);

/// Winding of the pair over [0, n] (the n-th iterate), cross-checked against
/// the Birkhoff sum of unit windings along the orbit; disagreement beyond
/// n * 1e-7 raises CrossCheckFailed.
WindingResult winding_iterate(const HamiltonianSpec& spec, const Point2& x, const Point2& y, int n,
                              const FlowConfig& cfg);

/// Winding of the boundary projection of y's trajectory as seen from x's:
/// each y_t is pushed along the ray from x_t onto the boundary circle.
double boundary_winding(const HamiltonianSpec& spec, const Point2& x, const Point2& y,
                        const FlowConfig& cfg);

/// Winding of a precomputed trajectory pair over its whole window, with the
/// lift recorded at every whole unit of time.
struct PairWinding {
    double value = 0.0;
    /// Turns accumulated by t = 1, 2, ..., span (relative to the start).
    std::vector<double> at_unit_times;
    double min_separation = 0.0;
    long substeps = 0;
};
PairWinding track_pair_winding(const Trajectory& tx, const Trajectory& ty);

} // namespace diskdyn
