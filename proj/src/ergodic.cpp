#include "diskdyn/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "diskdyn/parallel.hpp"
#include "diskdyn/rng.hpp"

namespace diskdyn {

namespace {

std::array<int, 4> quarter_points(int n) {
    return {std::max(1, n / 4), std::max(1, n / 2), std::max(1, 3 * n / 4), n};
}

BirkhoffEstimate estimate_from_prefix_means(const std::vector<double>& prefix_mean, int n) {
    BirkhoffEstimate est;
    est.n = n;
    const auto marks = quarter_points(n);
    for (int m = 0; m < 4; ++m) est.partial_averages[m] = prefix_mean[marks[m] - 1];
    est.value = est.partial_averages[3];
    est.cauchy_gap = std::abs(est.partial_averages[3] - est.partial_averages[2]);
    return est;
}

} // namespace

BirkhoffEstimate asymptotic_action(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                                   const Point2& z, int n, const FlowConfig& cfg) {
    if (n < 4) {
        throw std::invalid_argument("asymptotic_action: n must be at least 4");
    }
    const std::vector<double> values = action_along_orbit(spec, form, z, n, cfg);
    std::vector<double> prefix_mean(n);
    double run = 0.0;
    for (int j = 0; j < n; ++j) {
        run += values[j];
        prefix_mean[j] = run / (j + 1);
    }
    const BirkhoffEstimate est = estimate_from_prefix_means(prefix_mean, n);

    // Independence of the primitive: with a second primitive the Birkhoff
    // average may shift only by the telescoped gauge term.
    PrimitiveOneForm other(form.base == BaseForm::radial ? BaseForm::vertical : BaseForm::radial,
                           form.gauge);
    const std::vector<double> alt = action_along_orbit(spec, other, z, n, cfg);
    double alt_mean = 0.0;
    for (double v : alt) alt_mean += v;
    alt_mean /= n;
    const double gap = std::abs(alt_mean - est.value);
    const double allowed = 2.0 * gauge_between(form, other).sup_bound() / n + 1e-6;
    if (gap > allowed) {
        throw CrossCheckFailed("asymptotic_action: primitive-independence gap " +
                               std::to_string(gap) + " exceeds budget " + std::to_string(allowed));
    }
    return est;
}

BirkhoffEstimate asymptotic_winding(const HamiltonianSpec& spec, const Point2& x, const Point2& y,
                                    int n, const FlowConfig& cfg) {
    if (n < 4) {
        throw std::invalid_argument("asymptotic_winding: n must be at least 4");
    }
    const Trajectory tx = advance(spec, x, 0.0, static_cast<double>(n), cfg);
    const Trajectory ty = advance(spec, y, 0.0, static_cast<double>(n), cfg);
    const PairWinding w = track_pair_winding(tx, ty);

    std::vector<double> prefix_mean(n);
    for (int j = 0; j < n; ++j) prefix_mean[j] = w.at_unit_times[j] / (j + 1);
    return estimate_from_prefix_means(prefix_mean, n);
}

Estimate asymptotic_winding_integral(const HamiltonianSpec& spec, const Point2& x, int n,
                                     const QuadratureSpec& quad, const FlowConfig& cfg,
                                     double min_separation, unsigned threads) {
    const Trajectory tx = advance(spec, x, 0.0, static_cast<double>(n), cfg);

    std::vector<WeightedSample> samples = disk_quadrature(quad);
    if (quad.kind == QuadratureKind::monte_carlo) {
        // Redraw samples falling inside the diagonal tube around x.
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (std::uint64_t attempt = 100; (samples[i].point - x).norm() < min_separation;
                 attempt += 2) {
                const double u = rng::uniform01(quad.seed, i, attempt);
                const double v = rng::uniform01(quad.seed, i, attempt + 1);
                const double r = std::sqrt(u);
                samples[i].point = {r * std::cos(kTwoPi * v), r * std::sin(kTwoPi * v)};
            }
        }
    } else {
        samples.erase(std::remove_if(samples.begin(), samples.end(),
                                     [&](const WeightedSample& s) {
                                         return (s.point - x).norm() < min_separation;
                                     }),
                      samples.end());
    }

    std::vector<double> values(samples.size(), 0.0);
    parallel_for(samples.size(), threads, [&](std::size_t i) {
        const Trajectory ty = advance(spec, samples[i].point, 0.0, static_cast<double>(n), cfg);
        values[i] = track_pair_winding(tx, ty).value / n;
    });

    Estimate est;
    if (quad.kind == QuadratureKind::monte_carlo) {
        const MonteCarloMoments m = weighted_mean(values, kPi);
        est.value = m.value;
        est.std_error = m.std_error;
    } else {
        std::vector<double> weighted(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) weighted[i] = values[i] * samples[i].weight;
        est.value = pairwise_sum(weighted);
        est.std_error = 0.0;
    }
    return est;
}

TheoremReport verify_main_theorem(const HamiltonianSpec& spec, const Point2& x,
                                  const PrimitiveOneForm& form, int n, const QuadratureSpec& quad,
                                  const FlowConfig& cfg, const FlowConfig& winding_cfg,
                                  unsigned threads) {
    if (1.0 - x.norm() <= kBoundarySupportTol) {
        throw std::invalid_argument("verify_main_theorem: x must be an interior point");
    }
    TheoremReport report;
    report.n = n;
    report.action_side = asymptotic_action(spec, form, x, n, cfg).value;

    const Estimate w = asymptotic_winding_integral(spec, x, n, quad, winding_cfg, 1e-6, threads);
    report.winding_side = w.value;
    report.winding_std_error = w.std_error;
    report.residual = std::abs(report.action_side - report.winding_side);

    // The finite-n defect is governed by the pointwise |W - I| <= 3/2 bound
    // integrated over the disk plus the two boundary segment integrals, all
    // divided by n; Monte Carlo noise rides on top.
    report.crossing_bound_term = 1.5 * kPi / n;
    report.segment_term = 4.0 * form.sup_bound() / n;
    report.mc_term = 3.0 * w.std_error;
    report.budget = report.crossing_bound_term + report.segment_term + report.mc_term;
    report.within_budget = report.residual <= report.budget;
    return report;
}

double periodic_average_action(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                               const Point2& z, int k, const FlowConfig& cfg) {
    if (k < 1) {
        throw std::invalid_argument("periodic_average_action: k must be at least 1");
    }
    const std::vector<Point2> orbit = iterate_map(spec, z, k, cfg);
    const double return_distance = (orbit.back() - z).norm();
    if (return_distance > 1e-6) {
        throw NotPeriodic("periodic_average_action: phi^k(z) misses z by " +
                          std::to_string(return_distance));
    }
    double sum = 0.0;
    for (int j = 0; j < k; ++j) {
        sum += action(spec, form, orbit[j], cfg).value;
    }
    return sum / k;
}

} // namespace diskdyn
