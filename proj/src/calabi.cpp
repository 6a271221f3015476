#include "diskdyn/calabi.hpp"

#include <algorithm>
#include <cmath>

#include "diskdyn/parallel.hpp"

namespace diskdyn {

namespace {

/// Composite Simpson of t -> H(z, t) over one period, split at the
/// concatenation seams so every panel integrates a smooth branch.
double time_integral_of_h(const HamiltonianSpec& spec, const Point2& z, int panels_per_unit) {
    std::vector<double> cuts{0.0};
    for (double b : spec.time_breakpoints()) cuts.push_back(b);
    cuts.push_back(1.0);
    double acc = 0.0;
    for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
        const double a = cuts[w];
        const double b = cuts[w + 1];
        long panels = std::lround(std::ceil((b - a) * panels_per_unit));
        if (panels % 2 != 0) ++panels;
        panels = std::max(panels, 2l);
        const double h = (b - a) / static_cast<double>(panels);
        double sum = spec.value(z, a, TimeSide::after) + spec.value(z, b, TimeSide::before);
        for (long i = 1; i < panels; ++i) {
            sum += (i % 2 == 1 ? 4.0 : 2.0) * spec.value(z, a + h * static_cast<double>(i));
        }
        acc += sum * h / 3.0;
    }
    return acc;
}

double grid_value(const QuadratureSpec& quad, unsigned threads,
                  const std::function<double(const Point2&)>& f) {
    const std::vector<WeightedSample> samples = disk_quadrature(quad);
    std::vector<double> values(samples.size());
    parallel_for(samples.size(), threads, [&](std::size_t i) { values[i] = f(samples[i].point); });
    std::vector<double> weighted(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) weighted[i] = values[i] * samples[i].weight;
    return pairwise_sum(weighted);
}

RouteEstimate disk_integral(const QuadratureSpec& quad, unsigned threads,
                            const std::function<double(const Point2&)>& f) {
    RouteEstimate est;
    if (quad.kind == QuadratureKind::monte_carlo) {
        const std::vector<WeightedSample> samples = disk_quadrature(quad);
        std::vector<double> values(samples.size());
        parallel_for(samples.size(), threads,
                     [&](std::size_t i) { values[i] = f(samples[i].point); });
        const MonteCarloMoments m = weighted_mean(values, kPi);
        est.value = m.value;
        est.error = m.std_error;
    } else {
        est.value = grid_value(quad, threads, f);
        QuadratureSpec half = quad;
        half.n_r = std::max(1, quad.n_r / 2);
        half.n_theta = std::max(1, quad.n_theta / 2);
        est.error = std::abs(est.value - grid_value(half, threads, f));
    }
    return est;
}

} // namespace

RouteEstimate calabi_via_action(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                                const QuadratureSpec& quad, const FlowConfig& cfg,
                                unsigned threads) {
    auto integrand = [&](const Point2& z) { return action(spec, form, z, cfg).value; };
    return disk_integral(quad, threads, integrand);
}

RouteEstimate calabi_via_hamiltonian(const HamiltonianSpec& spec, const QuadratureSpec& quad,
                                     unsigned threads) {
    constexpr int kTimePanels = 128;
    auto integrand = [&](const Point2& z) { return 2.0 * time_integral_of_h(spec, z, kTimePanels); };
    return disk_integral(quad, threads, integrand);
}

RouteEstimate calabi_via_winding(const HamiltonianSpec& spec, const QuadratureSpec& quad,
                                 const FlowConfig& cfg, double min_separation, unsigned threads) {
    const PairSet pairs = pair_quadrature(quad, min_separation);
    std::vector<double> values(pairs.samples.size());
    parallel_for(pairs.samples.size(), threads, [&](std::size_t i) {
        const Trajectory tx = advance(spec, pairs.samples[i].first, 0.0, 1.0, cfg);
        const Trajectory ty = advance(spec, pairs.samples[i].second, 0.0, 1.0, cfg);
        values[i] = track_pair_winding(tx, ty).value;
    });
    const MonteCarloMoments m = weighted_mean(values, kPi * kPi);
    return {m.value, m.std_error};
}

CalabiReport calabi_report(const HamiltonianSpec& spec, const PrimitiveOneForm& form,
                           const QuadratureSpec& quad, const FlowConfig& cfg,
                           double min_separation, unsigned threads) {
    CalabiReport report;
    report.via_action = calabi_via_action(spec, form, quad, cfg, threads);
    report.via_hamiltonian = calabi_via_hamiltonian(spec, quad, threads);
    report.via_winding = calabi_via_winding(spec, quad, cfg, min_separation, threads);
    const double a = report.via_action.value;
    const double h = report.via_hamiltonian.value;
    const double w = report.via_winding.value;
    report.max_pairwise_gap = std::max({std::abs(a - h), std::abs(a - w), std::abs(h - w)});
    return report;
}

HomomorphismReport homomorphism_check(const HamiltonianSpec& spec1, const HamiltonianSpec& spec2,
                                      const PrimitiveOneForm& form, const QuadratureSpec& quad,
                                      const FlowConfig& cfg, unsigned threads) {
    const HamiltonianSpec concat = HamiltonianSpec::concatenate(spec2, spec1);

    const RouteEstimate h_concat = calabi_via_hamiltonian(concat, quad, threads);
    const RouteEstimate h1 = calabi_via_hamiltonian(spec1, quad, threads);
    const RouteEstimate h2 = calabi_via_hamiltonian(spec2, quad, threads);

    const RouteEstimate a_concat = calabi_via_action(concat, form, quad, cfg, threads);
    const RouteEstimate a1 = calabi_via_action(spec1, form, quad, cfg, threads);
    const RouteEstimate a2 = calabi_via_action(spec2, form, quad, cfg, threads);

    HomomorphismReport report;
    report.concat_value = a_concat.value;
    report.sum_value = a1.value + a2.value;
    report.residual_hamiltonian = std::abs(h_concat.value - h1.value - h2.value);
    report.residual_action = std::abs(a_concat.value - a1.value - a2.value);
    report.tolerance = 3.0 * (h_concat.error + h1.error + h2.error + a_concat.error + a1.error +
                              a2.error) +
                       1e-5;
    return report;
}

} // namespace diskdyn
