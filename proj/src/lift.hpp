#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "diskdyn/errors.hpp"
#include "diskdyn/geometry.hpp"

namespace diskdyn::detail {

inline constexpr double kSeparationFloor = 1e-12;
inline constexpr int kMaxLiftDepth = 20;
inline constexpr double kRefineThreshold = 0.5 * kPi;

struct LiftStats {
    double min_separation = std::numeric_limits<double>::infinity();
    long substeps = 0;
};

/// Continuous lift of the angle of a time-dependent direction.
///
/// DirFn maps t to (direction, separation); the separation is the geometric
/// distance whose underflow invalidates the direction (for a pair of
/// trajectories, |y_t - x_t|).  Any step whose principal-value increment
/// exceeds pi/2 is bisected recursively through the dense output, so the
/// accumulated lift is the true unwrapped angle as long as the direction
/// turns by less than pi between adjacent refined samples.
///
/// LeafCb receives every accepted sub-segment as
///   (t_a, t_b, psi_a, psi_b, dir_a, dir_b)
/// and may evaluate the lift inside it via psi_a + angle_increment(dir_a, .).
template <class DirFn, class LeafCb>
class LiftTracker {
public:
    LiftTracker(double t0, double psi0, DirFn dir, LeafCb leaf)
        : dir_(std::move(dir)), leaf_(std::move(leaf)), t_(t0), psi_(psi0) {
        d_ = eval(t0);
    }

    /// Extend the lift from the current time to t (one base step).
    void advance_to(double t) {
        const Vec2 d = eval(t);
        refine(t_, t, d_, d, 0);
        t_ = t;
        d_ = d;
    }

    double lift() const { return psi_; }
    double time() const { return t_; }
    const Vec2& direction() const { return d_; }
    const LiftStats& stats() const { return stats_; }

    Vec2 eval(double t) {
        auto [dir, sep] = dir_(t);
        if (sep < stats_.min_separation) stats_.min_separation = sep;
        if (sep < kSeparationFloor) {
            throw SeparationUnderflow("tracked points within 1e-12 at t = " + std::to_string(t));
        }
        return dir;
    }

private:
    DirFn dir_;
    LeafCb leaf_;
    double t_;
    double psi_;
    Vec2 d_;
    LiftStats stats_;

    void refine(double ta, double tb, const Vec2& da, const Vec2& db, int depth) {
        const double delta = angle_increment(da, db);
        if (std::abs(delta) > kRefineThreshold) {
            if (depth >= kMaxLiftDepth) {
                throw SubstepLimit("angle lift refinement exceeded 20 bisection levels");
            }
            const double tm = 0.5 * (ta + tb);
            const Vec2 dm = eval(tm);
            ++stats_.substeps;
            refine(ta, tm, da, dm, depth + 1);
            refine(tm, tb, dm, db, depth + 1);
            return;
        }
        leaf_(ta, tb, psi_, psi_ + delta, da, db);
        psi_ += delta;
    }
};

struct NoopLeaf {
    void operator()(double, double, double, double, const Vec2&, const Vec2&) const {}
};

} // namespace diskdyn::detail
