#pragma once

#include <array>

#include "diskdyn/action.hpp"
#include "diskdyn/winding.hpp"

namespace diskdyn {

/// Finite-n Birkhoff average with its convergence diagnostics.
struct BirkhoffEstimate {
    double value = 0.0;
    int n = 0;
    /// Averages over the first floor(n/4), floor(n/2), floor(3n/4), n terms.
    std::array<double, 4> partial_averages{};
    /// Gap between the last two partial averages.
    double cauchy_gap = 0.0;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Birkhoff average (1/n) Sum_j a(phi^j z) of the action along the orbit,
/// the finite-n proxy for the asymptotic action.  Recomputed with a second
/// primitive as a cross-check: the two estimates must agree within the
/// telescoped gauge budget 2 sup|u| / n + 1e-6.
BirkhoffEstimate asymptotic_action(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                                   const Point2& z, int n, const FlowConfig& cfg);

/// W over [0, n] divided by n, with partial averages from the lift at
/// intermediate whole times.
BirkhoffEstimate asymptotic_winding(const HamiltonianSpec& spec, const Point2& x, const Point2& y,
                                    int n, const FlowConfig& cfg);

/// Quadrature over y of W_[0,n](x, y) / n, excluding a tube of radius
/// `min_separation` around x (grid nodes inside are skipped; Monte Carlo
/// samples are redrawn deterministically).
Estimate asymptotic_winding_integral(const HamiltonianSpec& spec, const Point2& x, int n,
                                     const QuadratureSpec& quad, const FlowConfig& cfg,
                                     double min_separation = 1e-6, unsigned threads = 0);

/// Residual of the asymptotic action-versus-winding-integral identity at
/// finite n, with the explicit O(1/n) budget it has to meet.
struct TheoremReport {
    int n = 0;
    double action_side = 0.0;
    double winding_side = 0.0;
    double winding_std_error = 0.0;
    double residual = 0.0;
    /// Budget = (3/2) pi / n  +  segment bound / n  +  3 standard errors.
    double crossing_bound_term = 0.0;
    double segment_term = 0.0;
    double mc_term = 0.0;
    double budget = 0.0;
    bool within_budget = false;
};

/// Compare the Birkhoff-averaged action at x against the disk integral of
/// the n-averaged winding.  `winding_cfg` controls the flow resolution of
/// the quadrature side (the budget dominates its integration error).
TheoremReport verify_main_theorem(const HamiltonianSpec& spec, const Point2& x,
                                  const PrimitiveOneForm& form, int n, const QuadratureSpec& quad,
                                  const FlowConfig& cfg, const FlowConfig& winding_cfg,
                                  unsigned threads = 0);

/// Average action over a verified k-periodic orbit; equals the asymptotic
/// action of the orbit.  Throws NotPeriodic if phi^k(z) strays from z by
/// more than 1e-6.
double periodic_average_action(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                               const Point2& z, int k, const FlowConfig& cfg);

} // namespace diskdyn
