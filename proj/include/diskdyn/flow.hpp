#pragma once

#include <vector>

#include "diskdyn/geometry.hpp"
#include "diskdyn/hamiltonian.hpp"

namespace diskdyn {

/// Points this close to the boundary circle are treated as fixed.
inline constexpr double kBoundarySupportTol = 1e-12;

/// Allowed overshoot of |z| beyond 1 before advance() reports EscapedDisk.
inline constexpr double kEscapeTol = 1e-9;

struct FlowConfig {
    /// Base RK4 resolution.  advance() rounds this up so that steps stay
    /// even in number and land on every concatenation seam.
    int steps_per_unit_time = 512;
};

/// Densely sampled flow path on a uniform time grid, with the field
/// velocities stored at every node.  Immutable after construction.
///
/// Velocities are kept for both one-sided limits: outgoing (start of the
/// step leaving a node) and incoming (end of the step arriving there).  The
/// two differ only at concatenation seams.
class Trajectory {
public:
    Trajectory(double t0, std::vector<Point2> points, std::vector<Vec2> vel_out,
               std::vector<Vec2> vel_in, double dt);

    /// Uniform samples with a single velocity per node (smooth paths).
    /// The number of intervals must be even.
    static Trajectory from_samples(double t0, double t1, std::vector<Point2> points,
                                   std::vector<Vec2> velocities);

    /// Position-only samples; operations needing velocities will throw
    /// MissingVelocities.
    static Trajectory from_points(double t0, double t1, std::vector<Point2> points);

    std::size_t steps() const { return points_.size() - 1; }
    double t0() const { return t0_; }
    double t1() const { return t0_ + dt_ * static_cast<double>(steps()); }
    double dt() const { return dt_; }
    double time(std::size_t i) const { return t0_ + dt_ * static_cast<double>(i); }

    const Point2& point(std::size_t i) const { return points_[i]; }
    const Point2& endpoint() const { return points_.back(); }
    bool has_velocities() const { return !vel_out_.empty(); }

    /// Field velocity at node i (outgoing side).
    const Vec2& velocity(std::size_t i) const;
    /// Velocity at node i as the end of the step arriving there.
    const Vec2& velocity_in(std::size_t i) const;

    /// Dense output: cubic Hermite on the step containing t.
    Point2 position(double t) const;
    /// Time derivative of the Hermite interpolant.
    Vec2 velocity_at(double t) const;

private:
    double t0_ = 0.0;
    double dt_ = 0.0;
    std::vector<Point2> points_;
    std::vector<Vec2> vel_out_;
    std::vector<Vec2> vel_in_;

    void require_velocities() const;
};

/// Integrate the Hamiltonian flow of `spec` from z over [t0, t1] with
/// classical fixed-step RK4.  Points within kBoundarySupportTol of the
/// boundary are returned as constant trajectories.  Throws EscapedDisk if a
/// node leaves the disk by more than kEscapeTol.
Trajectory advance(const HamiltonianSpec& spec, const Point2& z, double t0, double t1,
                   const FlowConfig& cfg);

/// Orbit of the time-one map: [z, phi(z), ..., phi^n(z)].
std::vector<Point2> iterate_map(const HamiltonianSpec& spec, const Point2& z, int n,
                                const FlowConfig& cfg);

/// Central finite-difference Jacobian determinant of the time-one map;
/// equals 1 for the exact flow.
double jacobian_determinant(const HamiltonianSpec& spec, const Point2& z, const FlowConfig& cfg,
                            double h_fd = 1e-5);

} // namespace diskdyn
