#include "diskdyn/action.hpp"

#include <cmath>
#include <string>

namespace diskdyn {

namespace {

/// Composite Simpson of t -> H(z(t), t) over the trajectory grid, taking the
/// one-sided limits of H at pair boundaries (seams sit on even nodes).
double hamiltonian_time_integral(const HamiltonianSpec& spec, const Trajectory& traj) {
    const std::size_t n = traj.steps();
    const double h = traj.dt();
    double acc = 0.0;
    for (std::size_t k = 0; k + 2 <= n; k += 2) {
        const double f0 = spec.value(traj.point(k), traj.time(k), TimeSide::after);
        const double f1 = spec.value(traj.point(k + 1), traj.time(k + 1), TimeSide::after);
        const double f2 = spec.value(traj.point(k + 2), traj.time(k + 2), TimeSide::before);
        acc += h / 3.0 * (f0 + 4.0 * f1 + f2);
    }
    return acc;
}

ActionValue action_of_trajectory(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                                 const Trajectory& traj) {
    ActionValue a;
    a.path_term = path_integral(form, traj);
    a.hamiltonian_term = hamiltonian_time_integral(spec, traj);
    a.value = a.path_term + a.hamiltonian_term;
    return a;
}

} // namespace

ActionValue action(const HamiltonianSpec& spec, const PrimitiveOneForm& form, const Point2& z,
                   const FlowConfig& cfg) {
    return action_of_trajectory(spec, form, advance(spec, z, 0.0, 1.0, cfg));
}

ActionValue action_over_window(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                               const Point2& z, int n, const FlowConfig& cfg) {
    return action_of_trajectory(spec, form, advance(spec, z, 0.0, static_cast<double>(n), cfg));
}

std::vector<double> action_along_orbit(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                                       const Point2& z, int n, const FlowConfig& cfg) {
    std::vector<double> values;
    values.reserve(n);
    Point2 p = z;
    for (int j = 0; j < n; ++j) {
        const Trajectory traj = advance(spec, p, 0.0, 1.0, cfg);
        values.push_back(action_of_trajectory(spec, form, traj).value);
        p = traj.endpoint();
    }
    return values;
}

double action_birkhoff_sum(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                           const Point2& z, int n, const FlowConfig& cfg) {
    const std::vector<double> values = action_along_orbit(spec, form, z, n, cfg);
    double sum = 0.0;
    for (double v : values) sum += v;
    const double birkhoff = sum / n;
    const double direct = action_over_window(spec, form, z, n, cfg).value / n;
    if (std::abs(birkhoff - direct) > n * 1e-7) {
        throw CrossCheckFailed("action_birkhoff_sum: telescoped and direct actions disagree by " +
                               std::to_string(std::abs(birkhoff - direct)));
    }
    return birkhoff;
}

} // namespace diskdyn
