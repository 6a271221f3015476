#include "diskdyn/winding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lift.hpp"

namespace diskdyn {

PairWinding track_pair_winding(const Trajectory& tx, const Trajectory& ty) {
    const std::size_t steps = ty.steps();
    const double span = ty.t1() - ty.t0();
    const long units = std::lround(span);
    const bool whole_units = std::abs(span - static_cast<double>(units)) < 1e-9 && units >= 1;
    const std::size_t per_unit = whole_units ? steps / static_cast<std::size_t>(units) : 0;

    auto dir = [&](double t) {
        const Vec2 d = ty.position(t) - tx.position(t);
        return std::pair<Vec2, double>(d, d.norm());
    };
    detail::LiftTracker tracker(ty.t0(), 0.0, dir, detail::NoopLeaf{});

    PairWinding out;
    for (std::size_t i = 1; i <= steps; ++i) {
        tracker.advance_to(ty.time(i));
        if (whole_units && i % per_unit == 0) {
            out.at_unit_times.push_back(tracker.lift() / kTwoPi);
        }
    }
    out.value = tracker.lift() / kTwoPi;
    out.min_separation = tracker.stats().min_separation;
    out.substeps = tracker.stats().substeps;
    return out;
}

namespace {

WindingResult winding_over_window(const HamiltonianSpec& spec, const Point2& x, const Point2& y,
                                  double span, const FlowConfig& cfg) {
    const Trajectory tx = advance(spec, x, 0.0, span, cfg);
    const Trajectory ty = advance(spec, y, 0.0, span, cfg);
    const PairWinding w = track_pair_winding(tx, ty);
    return {w.value, w.min_separation, w.substeps};
}

} // namespace

WindingResult winding(const HamiltonianSpec& spec, const Point2& x, const Point2& y,
                      const FlowConfig& cfg) {
    return winding_over_window(spec, x, y, 1.0, cfg);
}

WindingResult winding_iterate(const HamiltonianSpec& spec, const Point2& x, const Point2& y, int n,
                              const FlowConfig& cfg) {
    if (n < 1) {
        throw std::invalid_argument("winding_iterate: n must be at least 1");
    }
    WindingResult full = winding_over_window(spec, x, y, static_cast<double>(n), cfg);

    // Independent route: Birkhoff sum of unit windings along the orbit.
    double birkhoff = 0.0;
    Point2 px = x, py = y;
    for (int j = 0; j < n; ++j) {
        const Trajectory tx = advance(spec, px, 0.0, 1.0, cfg);
        const Trajectory ty = advance(spec, py, 0.0, 1.0, cfg);
        const PairWinding w = track_pair_winding(tx, ty);
        birkhoff += w.value;
        full.substeps_used += w.substeps;
        px = tx.endpoint();
        py = ty.endpoint();
    }
    if (std::abs(full.value - birkhoff) > n * 1e-7) {
        throw CrossCheckFailed("winding_iterate: window and Birkhoff-sum windings disagree by " +
                               std::to_string(std::abs(full.value - birkhoff)));
    }
    return full;
}

double boundary_winding(const HamiltonianSpec& spec, const Point2& x, const Point2& y,
                        const FlowConfig& cfg) {
    if (1.0 - x.norm() <= kBoundarySupportTol) {
        throw std::invalid_argument("boundary_winding: x must be an interior point");
    }
    const Trajectory tx = advance(spec, x, 0.0, 1.0, cfg);
    const Trajectory ty = advance(spec, y, 0.0, 1.0, cfg);

    // Push y_t along the ray from x_t onto the boundary circle: the positive
    // root s of |x_t + s u| = 1 for the unit ray direction u.
    auto dir = [&](double t) {
        const Point2 xt = tx.position(t);
        const Vec2 v = ty.position(t) - xt;
        const double sep = v.norm();
        if (sep < detail::kSeparationFloor) {
            return std::pair<Vec2, double>(Vec2{0.0, 0.0}, sep);
        }
        const Vec2 u = v * (1.0 / sep);
        const double c = xt.dot(u);
        const double s = -c + std::sqrt(std::max(0.0, c * c + 1.0 - xt.norm_sq()));
        return std::pair<Vec2, double>(xt + u * s, sep);
    };
    detail::LiftTracker tracker(0.0, 0.0, dir, detail::NoopLeaf{});
    for (std::size_t i = 1; i <= ty.steps(); ++i) {
        tracker.advance_to(ty.time(i));
    }
    return tracker.lift() / kTwoPi;
}

} // namespace diskdyn
