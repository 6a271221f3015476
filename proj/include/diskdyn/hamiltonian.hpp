#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "diskdyn/geometry.hpp"

namespace diskdyn {

/// Which one-sided limit to take when evaluating exactly at a time where the
/// Hamiltonian jumps (concatenation seams).  Everywhere else the two agree.
enum class TimeSide { before, after };

enum class TimeProfile { constant, cosine, sine };

class HamiltonianSpec;

/// h(s) on s = x^2 + y^2: amplitude * profile(s) * (1 - s)^2, where the
/// quadratic cutoff keeps H and its gradient zero on the boundary circle.
struct RadialTerm {
    std::vector<double> profile{1.0};
    double amplitude = 1.0;
};

/// amplitude * (1 - s)^2 * Re((x + iy)^k) * tau(t) with tau one of
/// {1, cos 2 pi t, sin 2 pi t}.
struct PerturbationTerm {
    int harmonic = 1; // k >= 1
    TimeProfile tau = TimeProfile::constant;
    double amplitude = 1.0;
};

/// first runs on [0, 1/2] at double speed, second on [1/2, 1]; the time-one
/// map is (time-one of second) o (time-one of first).
struct ConcatTerm {
    std::shared_ptr<const HamiltonianSpec> first;
    std::shared_ptr<const HamiltonianSpec> second;
};

/// -H(z, 1 - t): generates the inverse of the inner time-one map.
struct ReversedTerm {
    std::shared_ptr<const HamiltonianSpec> inner;
};

using HamiltonianTerm = std::variant<RadialTerm, PerturbationTerm, ConcatTerm, ReversedTerm>;

/// Immutable sum of terms; evaluation is pure and thread-safe.  Time is
/// reduced mod 1, so the same spec drives iterated flows over [0, n].
class HamiltonianSpec {
public:
    HamiltonianSpec() = default; // H == 0
    explicit HamiltonianSpec(std::vector<HamiltonianTerm> terms);

    static HamiltonianSpec radial(std::vector<double> profile, double amplitude = 1.0);
    static HamiltonianSpec perturbation(int harmonic, TimeProfile tau, double amplitude);
    static HamiltonianSpec concatenate(const HamiltonianSpec& first, const HamiltonianSpec& second);
    static HamiltonianSpec time_reversed(const HamiltonianSpec& inner);

    double value(const Point2& z, double t, TimeSide side = TimeSide::after) const;
    Vec2 gradient(const Point2& z, double t, TimeSide side = TimeSide::after) const;

    /// Hamiltonian vector field X = (dH/dy, -dH/dx), the unique solution of
    /// omega0(X, .) = dH with omega0 = dx ^ dy.
    Vec2 vector_field(const Point2& z, double t, TimeSide side = TimeSide::after) const {
        const Vec2 g = gradient(z, t, side);
        return {g.y, -g.x};
    }

    /// Times in (0, 1) where H may jump; sorted.  Empty for smooth specs.
    const std::vector<double>& time_breakpoints() const { return breakpoints_; }

    const std::vector<HamiltonianTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

private:
    std::vector<HamiltonianTerm> terms_;
    std::vector<double> breakpoints_;

    // Expanded coefficients of amplitude * profile * (1-s)^2 and its
    // derivative, aligned with radial terms (index into radial_h_).
    struct RadialCache {
        std::vector<double> h;
        std::vector<double> dh;
    };
    std::vector<RadialCache> radial_cache_;

    void rebuild_cache();
};

} // namespace diskdyn
