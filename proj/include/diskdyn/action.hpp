#pragma once

#include "diskdyn/flow.hpp"
#include "diskdyn/oneform.hpp"

namespace diskdyn {

/// a(z) split into its two summands: the line integral of lambda along the
/// isotopy trajectory and the time integral of H along it.
struct ActionValue {
    double value = 0.0;
    double path_term = 0.0;
    double hamiltonian_term = 0.0;
};

/// Action of z under the time-one map of the isotopy generated by `spec`,
/// with respect to the primitive `form`.
ActionValue action(const HamiltonianSpec& spec, const PrimitiveOneForm& form, const Point2& z,
                   const FlowConfig& cfg);

/// Action computed over the time window [0, n] of the same periodic isotopy
/// (the action of z under the n-th iterate of the time-one map).
ActionValue action_over_window(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                               const Point2& z, int n, const FlowConfig& cfg);

/// (1/n) Sum_j a(phi^j(z)): the Birkhoff average of the action along the
/// orbit.  Cross-checked against action_over_window(z, n) / n, which must
/// agree within n * 1e-7; disagreement raises CrossCheckFailed.
double action_birkhoff_sum(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                           const Point2& z, int n, const FlowConfig& cfg);

/// Per-orbit-point actions [a(z), a(phi z), ..., a(phi^{n-1} z)]; the
/// building block for Birkhoff statistics.
std::vector<double> action_along_orbit(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                                       const Point2& z, int n, const FlowConfig& cfg);

} // namespace diskdyn
