#include "diskdyn/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskdyn {

Trajectory::Trajectory(double t0, std::vector<Point2> points, std::vector<Vec2> vel_out,
                       std::vector<Vec2> vel_in, double dt)
    : t0_(t0), dt_(dt), points_(std::move(points)), vel_out_(std::move(vel_out)),
      vel_in_(std::move(vel_in)) {}

Trajectory Trajectory::from_samples(double t0, double t1, std::vector<Point2> points,
                                    std::vector<Vec2> velocities) {
    if (points.size() < 3 || points.size() % 2 == 0) {
        throw std::invalid_argument("Trajectory::from_samples: need an even interval count");
    }
    if (velocities.size() != points.size()) {
        throw std::invalid_argument("Trajectory::from_samples: velocity/point size mismatch");
    }
    const double dt = (t1 - t0) / static_cast<double>(points.size() - 1);
    std::vector<Vec2> vel_in = velocities;
    return Trajectory(t0, std::move(points), std::move(velocities), std::move(vel_in), dt);
}

Trajectory Trajectory::from_points(double t0, double t1, std::vector<Point2> points) {
    if (points.size() < 2) {
        throw std::invalid_argument("Trajectory::from_points: need at least two points");
    }
    const double dt = (t1 - t0) / static_cast<double>(points.size() - 1);
    return Trajectory(t0, std::move(points), {}, {}, dt);
}

void Trajectory::require_velocities() const {
    if (vel_out_.empty()) {
        throw MissingVelocities("trajectory carries no velocity data");
    }
}

const Vec2& Trajectory::velocity(std::size_t i) const {
    require_velocities();
    return vel_out_[i];
}

const Vec2& Trajectory::velocity_in(std::size_t i) const {
    require_velocities();
    return vel_in_[i];
}

Point2 Trajectory::position(double t) const {
    require_velocities();
    const std::size_t n = steps();
    double s = (t - t0_) / dt_;
    s = std::min(std::max(s, 0.0), static_cast<double>(n));
    std::size_t k = static_cast<std::size_t>(s);
    if (k >= n) k = n - 1;
    const double u = s - static_cast<double>(k);

    const Point2& p0 = points_[k];
    const Point2& p1 = points_[k + 1];
    const Vec2 m0 = vel_out_[k] * dt_;
    const Vec2 m1 = vel_in_[k + 1] * dt_;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return p0 * (2.0 * u3 - 3.0 * u2 + 1.0) + m0 * (u3 - 2.0 * u2 + u) +
           p1 * (-2.0 * u3 + 3.0 * u2) + m1 * (u3 - u2);
}

Vec2 Trajectory::velocity_at(double t) const {
    require_velocities();
    const std::size_t n = steps();
    double s = (t - t0_) / dt_;
    s = std::min(std::max(s, 0.0), static_cast<double>(n));
    std::size_t k = static_cast<std::size_t>(s);
    if (k >= n) k = n - 1;
    const double u = s - static_cast<double>(k);

    const Point2& p0 = points_[k];
    const Point2& p1 = points_[k + 1];
    const Vec2 m0 = vel_out_[k] * dt_;
    const Vec2 m1 = vel_in_[k + 1] * dt_;
    const double u2 = u * u;
    const Vec2 d = p0 * (6.0 * u2 - 6.0 * u) + m0 * (3.0 * u2 - 4.0 * u + 1.0) +
                   p1 * (-6.0 * u2 + 6.0 * u) + m1 * (3.0 * u2 - 2.0 * u);
    return d * (1.0 / dt_);
}

namespace {

/// Step count per unit time that is even and lands on every concatenation
/// seam of the spec.
int aligned_steps_per_unit(const HamiltonianSpec& spec, int requested) {
    int steps = std::max(requested, 16);
    if (steps % 2 != 0) ++steps;
    // Seams of nested concatenations are dyadic; raise the resolution until
    // each one is an integer multiple of the step, with one step to spare so
    // composite Simpson pairs never straddle a seam.
    for (double b : spec.time_breakpoints()) {
        for (int guard = 0; guard < 24; ++guard) {
            const double k = b * steps;
            if (std::abs(k - std::round(k)) < 1e-9 && std::llround(k) % 2 == 0) break;
            steps *= 2;
        }
    }
    return steps;
}

} // namespace

Trajectory advance(const HamiltonianSpec& spec, const Point2& z, double t0, double t1,
                   const FlowConfig& cfg) {
    if (!(t1 > t0)) {
        throw std::invalid_argument("advance: t1 must exceed t0");
    }
    const int steps_per_unit = aligned_steps_per_unit(spec, cfg.steps_per_unit_time);
    long n = std::lround(std::ceil((t1 - t0) * steps_per_unit - 1e-9));
    if (n % 2 != 0) ++n;
    const double h = (t1 - t0) / static_cast<double>(n);

    std::vector<Point2> points;
    std::vector<Vec2> vel_out;
    std::vector<Vec2> vel_in;
    points.reserve(n + 1);
    vel_out.reserve(n + 1);
    vel_in.reserve(n + 1);

    if (1.0 - z.norm() <= kBoundarySupportTol) {
        // Boundary points are fixed by the isotopy.
        points.assign(n + 1, z);
        vel_out.assign(n + 1, Vec2{0.0, 0.0});
        vel_in.assign(n + 1, Vec2{0.0, 0.0});
        return Trajectory(t0, std::move(points), std::move(vel_out), std::move(vel_in), h);
    }

    Point2 p = z;
    points.push_back(p);
    vel_out.push_back(spec.vector_field(p, t0, TimeSide::after));
    vel_in.push_back(vel_out.back());

    for (long i = 0; i < n; ++i) {
        const double t = t0 + h * static_cast<double>(i);
        const double tn = t0 + h * static_cast<double>(i + 1);
        const Vec2 k1 = vel_out.back();
        const Vec2 k2 = spec.vector_field(p + k1 * (0.5 * h), t + 0.5 * h);
        const Vec2 k3 = spec.vector_field(p + k2 * (0.5 * h), t + 0.5 * h);
        const Vec2 k4 = spec.vector_field(p + k3 * h, tn, TimeSide::before);
        p += (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
        if (p.norm_sq() > (1.0 + kEscapeTol) * (1.0 + kEscapeTol)) {
            throw EscapedDisk("advance: trajectory left the disk; integrator misconfigured");
        }
        points.push_back(p);
        vel_in.push_back(spec.vector_field(p, tn, TimeSide::before));
        vel_out.push_back(i + 1 < n ? spec.vector_field(p, tn, TimeSide::after) : vel_in.back());
    }
    return Trajectory(t0, std::move(points), std::move(vel_out), std::move(vel_in), h);
}

std::vector<Point2> iterate_map(const HamiltonianSpec& spec, const Point2& z, int n,
                                const FlowConfig& cfg) {
    if (n < 1) {
        throw std::invalid_argument("iterate_map: n must be at least 1");
    }
    std::vector<Point2> orbit;
    orbit.reserve(n + 1);
    orbit.push_back(z);
    for (int j = 0; j < n; ++j) {
        orbit.push_back(advance(spec, orbit.back(), 0.0, 1.0, cfg).endpoint());
    }
    return orbit;
}

double jacobian_determinant(const HamiltonianSpec& spec, const Point2& z, const FlowConfig& cfg,
                            double h_fd) {
    const Point2 xp = advance(spec, {z.x + h_fd, z.y}, 0.0, 1.0, cfg).endpoint();
    const Point2 xm = advance(spec, {z.x - h_fd, z.y}, 0.0, 1.0, cfg).endpoint();
    const Point2 yp = advance(spec, {z.x, z.y + h_fd}, 0.0, 1.0, cfg).endpoint();
    const Point2 ym = advance(spec, {z.x, z.y - h_fd}, 0.0, 1.0, cfg).endpoint();
    const Vec2 cx = (xp - xm) * (0.5 / h_fd);
    const Vec2 cy = (yp - ym) * (0.5 / h_fd);
    return cx.x * cy.y - cx.y * cy.x;
}

} // namespace diskdyn
