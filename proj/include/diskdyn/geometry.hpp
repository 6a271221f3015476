#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "diskdyn/errors.hpp"

namespace diskdyn {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Slack allowed on |z|^2 <= 1 for points meant to lie in the disk.
inline constexpr double kGeomEps = 1e-12;

/// Norm below which a vector is considered zero for direction purposes.
inline constexpr double kZeroVectorTol = 1e-14;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

    Vec2& operator+=(const Vec2& r) { x += r.x; y += r.y; return *this; }
    Vec2& operator-=(const Vec2& r) { x -= r.x; y -= r.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    /// z-component of the 3D cross product (this x r).
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }
};

/// Points of the plane share the vector representation.
using Point2 = Vec2;

/// Counterclockwise rotation by pi/2: (x, y) -> (-y, x).
constexpr Vec2 rotate90(const Vec2& v) { return {-v.y, v.x}; }

/// Signed rotation angle in (-pi, pi] taking the direction of `dir_prev` to
/// the direction of `dir_next`.  Inputs need not be normalized.  Throws
/// ZeroVector when either input has norm below 1e-14.
double angle_increment(const Vec2& dir_prev, const Vec2& dir_next);

struct WeightedSample {
    Point2 point;
    double weight = 0.0;
};

enum class QuadratureKind { polar_grid, monte_carlo };

struct QuadratureSpec {
    QuadratureKind kind = QuadratureKind::monte_carlo;
    int n_r = 64;
    int n_theta = 64;
    int n_samples = 4096;
    std::uint64_t seed = 0;
};

/// Nodes and weights realizing the area integral over the unit disk.
///
/// polar_grid: midpoint rule in (r^2, theta), so every node carries the same
/// weight pi / (n_r * n_theta).  monte_carlo: n_samples i.i.d. uniform points
/// with weight pi / n_samples, deterministic given the seed.
std::vector<WeightedSample> disk_quadrature(const QuadratureSpec& spec);

struct PairSample {
    Point2 first;
    Point2 second;
    double weight = 0.0;
};

struct PairSet {
    std::vector<PairSample> samples;
    /// Fraction of raw draws rejected for violating the separation floor.
    double resample_fraction = 0.0;
};

/// Uniform Monte Carlo pairs on D x D with |x - y| >= min_separation
/// (violations are redrawn deterministically).  Weight pi^2 / n_samples.
PairSet pair_quadrature(const QuadratureSpec& spec, double min_separation);

/// Deterministic sum independent of thread count: recursive pairwise
/// summation in fixed index order.
double pairwise_sum(const std::vector<double>& values);

/// Mean and standard error of Sum(w_i v_i) for equal weights w = scale / n.
struct MonteCarloMoments {
    double value = 0.0;
    double std_error = 0.0;
};
MonteCarloMoments weighted_mean(const std::vector<double>& values, double total_weight);

} // namespace diskdyn
