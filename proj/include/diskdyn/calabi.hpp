#pragma once

#include "diskdyn/action.hpp"
#include "diskdyn/winding.hpp"

namespace diskdyn {

struct RouteEstimate {
    double value = 0.0;
    /// Monte Carlo standard error, or the grid-refinement delta.
    double error = 0.0;
};

/// The same invariant computed along three independent routes.
struct CalabiReport {
    RouteEstimate via_action;
    RouteEstimate via_hamiltonian;
    RouteEstimate via_winding;
    double max_pairwise_gap = 0.0;
};

/// Disk integral of the action.
RouteEstimate calabi_via_action(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                                const QuadratureSpec& quad, const FlowConfig& cfg,
                                unsigned threads = 0);

/// 2 Int_{D x [0,1]} H; quadrature-exact reference for polynomial H on the
/// polar grid, no flow integration involved.
RouteEstimate calabi_via_hamiltonian(const HamiltonianSpec& spec, const QuadratureSpec& quad,
                                     unsigned threads = 0);

/// Pair integral of the winding number over D x D minus the diagonal tube.
RouteEstimate calabi_via_winding(const HamiltonianSpec& spec, const QuadratureSpec& quad,
                                 const FlowConfig& cfg, double min_separation = 1e-6,
                                 unsigned threads = 0);

CalabiReport calabi_report(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                           const QuadratureSpec& quad, const FlowConfig& cfg,
                           double min_separation = 1e-6, unsigned threads = 0);

struct HomomorphismReport {
    double concat_value = 0.0;
    double sum_value = 0.0;
    /// |C(concat) - C(first) - C(second)| via the Hamiltonian route.
    double residual_hamiltonian = 0.0;
    /// Same residual via the action route, which exercises the flow.
    double residual_action = 0.0;
    /// Combined quadrature tolerance the residuals are expected to meet.
    double tolerance = 0.0;
};

/// Additivity of the invariant under composition of time-one maps.
HomomorphismReport homomorphism_check(const HamiltonianSpec& spec1, const HamiltonianSpec& spec2,
                                      const PrimitiveOneForm& form, const QuadratureSpec& quad,
                                      const FlowConfig& cfg, unsigned threads = 0);

} // namespace diskdyn
