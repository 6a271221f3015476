#include "diskdyn/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "diskdyn/action.hpp"
#include "diskdyn/calabi.hpp"
#include "diskdyn/ergodic.hpp"
#include "diskdyn/errors.hpp"
#include "diskdyn/intersection.hpp"
#include "diskdyn/parallel.hpp"
#include "diskdyn/polynomial.hpp"
#include "diskdyn/report.hpp"
#include "diskdyn/rng.hpp"
#include "diskdyn/winding.hpp"

namespace diskdyn::verify {

namespace {

namespace fs = std::filesystem;

struct SuiteEntry {
    std::string label;
    HamiltonianSpec spec;
};

HamiltonianSpec perturbed_spec() {
    return HamiltonianSpec({
        HamiltonianTerm{RadialTerm{{1.0}, 1.0}},
        HamiltonianTerm{PerturbationTerm{2, TimeProfile::cosine, 0.1}},
    });
}

std::vector<SuiteEntry> suite(const Profile& profile) {
    if (profile.custom_spec) {
        return {{"custom", *profile.custom_spec}};
    }
    return {
        {"trivial", HamiltonianSpec{}},
        {"radial-0.5", HamiltonianSpec::radial({1.0}, 0.5)},
        {"radial-1", HamiltonianSpec::radial({1.0}, 1.0)},
        {"radial-2", HamiltonianSpec::radial({1.0}, 2.0)},
        {"perturbed", perturbed_spec()},
    };
}

/// Expanded h(s) when the spec is a pure radial Hamiltonian.
std::optional<std::vector<double>> pure_radial_h(const HamiltonianSpec& spec) {
    const std::vector<double> cutoff{1.0, -2.0, 1.0};
    std::vector<double> h;
    for (const auto& term : spec.terms()) {
        const auto* radial = std::get_if<RadialTerm>(&term);
        if (!radial) return std::nullopt;
        const std::vector<double> part =
            poly::scale(poly::multiply(radial->profile, cutoff), radial->amplitude);
        if (part.size() > h.size()) h.resize(part.size(), 0.0);
        for (std::size_t i = 0; i < part.size(); ++i) h[i] += part[i];
    }
    return h;
}

int scaled(double scale, int full, int floor_value) {
    return std::max(floor_value, static_cast<int>(std::lround(full * scale)));
}

Point2 random_point(std::uint64_t seed, std::uint64_t index, std::uint64_t dim, double rmax) {
    const double u = rng::uniform01(seed, index, dim);
    const double v = rng::uniform01(seed, index, dim + 1);
    const double r = rmax * std::sqrt(u);
    return {r * std::cos(kTwoPi * v), r * std::sin(kTwoPi * v)};
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void add_row(CriterionResult& result, const std::string& item, double value, double budget) {
    CheckRow row;
    row.criterion = result.id;
    row.item = item;
    row.value = value;
    row.budget = budget;
    row.pass = value <= budget;
    result.rows.push_back(row);
}

void finish(CriterionResult& result, const Timer& timer, double runtime_budget) {
    result.seconds = timer.seconds();
    result.pass = true;
    for (const auto& row : result.rows) result.pass = result.pass && row.pass;
    if (runtime_budget > 0.0 && result.seconds >= runtime_budget) {
        result.pass = false;
        result.detail += " [runtime " + std::to_string(result.seconds) + "s exceeded " +
                         std::to_string(runtime_budget) + "s]";
    }
}

// ---------------------------------------------------------------------------
// AC1: closed-form action oracle on radial flows.

CriterionResult run_ac1(const Profile& p) {
    CriterionResult result;
    result.id = "AC1";
    Timer timer;
    const FlowConfig cfg{512};
    const PrimitiveOneForm radial_form(BaseForm::radial);
    const PrimitiveOneForm vertical_form(BaseForm::vertical);
    const int n_points = scaled(p.scale, 50, 5);

    for (const auto& entry : suite(p)) {
        const auto h = pure_radial_h(entry.spec);
        if (!h) continue;
        const std::vector<double> dh = poly::derivative(*h);
        double max_dev_radial = 0.0, max_dev_vertical = 0.0;
        for (int i = 0; i < n_points; ++i) {
            const Point2 z = random_point(p.seed ^ 0xac1, i, 0, 0.98);
            const double s = z.norm_sq();
            const double hs = poly::eval(*h, s);
            const double dhs = poly::eval(dh, s);
            const double closed_form = hs - s * dhs;

            const double a_radial = action(entry.spec, radial_form, z, cfg).value;
            max_dev_radial = std::max(max_dev_radial, std::abs(a_radial - closed_form));

            // Closed-form endpoint: rotation by omega = -2 h'(s).
            const double omega = -2.0 * dhs;
            const Point2 fz{z.x * std::cos(omega) - z.y * std::sin(omega),
                            z.x * std::sin(omega) + z.y * std::cos(omega)};
            // vertical = radial + d(xy/2), so the oracle gains the gauge term.
            const double corr = 0.5 * fz.x * fz.y - 0.5 * z.x * z.y;
            const double a_vertical = action(entry.spec, vertical_form, z, cfg).value;
            max_dev_vertical = std::max(max_dev_vertical, std::abs(a_vertical - (closed_form + corr)));
        }
        add_row(result, entry.label + "/max-dev-radial-lambda", max_dev_radial, 1e-6);
        add_row(result, entry.label + "/max-dev-vertical-lambda", max_dev_vertical, 1e-5);
    }
    result.detail = "action vs radial closed form h - s h' at " + std::to_string(n_points) +
                    " points per radial spec";
    finish(result, timer, 10.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC2: the action composition calculus (gauge, composition, inverse).

CriterionResult run_ac2(const Profile& p) {
    CriterionResult result;
    result.id = "AC2";
    Timer timer;
    const FlowConfig cfg{512};
    const PrimitiveOneForm form(BaseForm::radial);
    const GaugePolynomial u({{1, 1, 0.3}, {2, 1, -0.2}, {0, 3, 0.1}});
    const PrimitiveOneForm gauged(BaseForm::radial, u);
    const int n_points = scaled(p.scale, 50, 5);
    const HamiltonianSpec partner = HamiltonianSpec::radial({1.0}, 0.8);

    for (const auto& entry : suite(p)) {
        const HamiltonianSpec& psi =
            entry.label == "radial-1" ? perturbed_spec() : partner;
        const HamiltonianSpec composed = HamiltonianSpec::concatenate(entry.spec, psi);
        const HamiltonianSpec inverse = HamiltonianSpec::time_reversed(entry.spec);

        double max_gauge = 0.0, max_comp = 0.0, max_inv = 0.0;
        for (int i = 0; i < n_points; ++i) {
            const Point2 z = random_point(p.seed ^ 0xac2, i, 0, 0.97);
            const Point2 fz = advance(entry.spec, z, 0.0, 1.0, cfg).endpoint();

            const double a1 = action(entry.spec, form, z, cfg).value;
            const double a2 = action(entry.spec, gauged, z, cfg).value;
            max_gauge = std::max(max_gauge, std::abs(a2 - a1 - u.value(fz) + u.value(z)));

            const double a_comp = action(composed, form, z, cfg).value;
            const double a_psi_fz = action(psi, form, fz, cfg).value;
            max_comp = std::max(max_comp, std::abs(a_comp - a_psi_fz - a1));

            const Point2 w = advance(inverse, z, 0.0, 1.0, cfg).endpoint();
            const double a_inv = action(inverse, form, z, cfg).value;
            const double a_at_w = action(entry.spec, form, w, cfg).value;
            max_inv = std::max(max_inv, std::abs(a_inv + a_at_w));
        }
        add_row(result, entry.label + "/gauge-identity", max_gauge, 1e-6);
        add_row(result, entry.label + "/composition-identity", max_comp, 1e-6);
        add_row(result, entry.label + "/inverse-identity", max_inv, 1e-6);
    }
    result.detail = "gauge / composition / inverse identities at " + std::to_string(n_points) +
                    " points per spec";
    finish(result, timer, 60.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC3: winding oracle for radial flows, boundary-projected winding bound,
// symmetry.

CriterionResult run_ac3(const Profile& p) {
    CriterionResult result;
    result.id = "AC3";
    Timer timer;
    const FlowConfig cfg{512};
    const int n_points = scaled(p.scale, 50, 5);

    for (const auto& entry : suite(p)) {
        const auto h = pure_radial_h(entry.spec);
        if (!h) continue;
        const std::vector<double> dh = poly::derivative(*h);
        double max_dev = 0.0;
        for (int i = 0; i < n_points; ++i) {
            const double r = 0.05 + 0.9 * rng::uniform01(p.seed ^ 0xac3, i, 0);
            const WindingResult w = winding(entry.spec, {0.0, 0.0}, {r, 0.0}, cfg);
            const double oracle = -poly::eval(dh, r * r) / kPi;
            max_dev = std::max(max_dev, std::abs(w.value - oracle));
        }
        add_row(result, entry.label + "/winding-center-oracle", max_dev, 1e-7);
    }

    double max_two_windings = 0.0;
    double max_asym = 0.0;
    for (const auto& entry : suite(p)) {
        for (int i = 0; i < n_points; ++i) {
            const Point2 x = random_point(p.seed ^ 0xac3b, i, 0, 0.9);
            Point2 y = random_point(p.seed ^ 0xac3b, i, 2, 0.98);
            if ((x - y).norm() < 1e-4) y.x += 0.05;
            const double w = boundary_winding(entry.spec, x, y, cfg);
            const WindingResult big = winding(entry.spec, x, y, cfg);
            max_two_windings = std::max(max_two_windings, std::abs(w - big.value));
            const WindingResult swapped = winding(entry.spec, y, x, cfg);
            max_asym = std::max(max_asym, std::abs(big.value - swapped.value));
        }
    }
    add_row(result, "all/boundary-vs-pair-winding", max_two_windings, 0.5 + 1e-9);
    add_row(result, "all/symmetry-defect", max_asym, 1e-9);
    result.detail = "center-winding oracle, |w - W| <= 1/2, W(x,y) = W(y,x)";
    finish(result, timer, 0.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC4: |W - I| <= 3/2 over random transversal triples.

CriterionResult run_ac4(const Profile& p) {
    CriterionResult result;
    result.id = "AC4";
    Timer timer;
    const FlowConfig cfg{512};
    const int per_case = scaled(p.scale, 200, 40);
    double overall_max = 0.0;

    for (const auto& entry : suite(p)) {
        for (int n : {1, 8}) {
            double max_gap = 0.0;
            long violations = 0;
            for (int i = 0; i < per_case; ++i) {
                const std::uint64_t salt = p.seed ^ (0xac400 + static_cast<unsigned>(n));
                const Point2 x = random_point(salt, i, 0, 0.9);
                Point2 y = random_point(salt, i, 2, 0.98);
                if ((x - y).norm() < 1e-6) y.x += 0.01;

                long value = 0;
                bool done = false;
                for (std::uint64_t attempt = 0; attempt < 64 && !done; ++attempt) {
                    const double phi = kTwoPi * rng::uniform01(salt, i, 4 + attempt);
                    const Point2 e{std::cos(phi), std::sin(phi)};
                    try {
                        value = intersection_number(entry.spec, x, y, e, n, cfg).value;
                        done = true;
                    } catch (const TransversalityFailure&) {
                    }
                }
                if (!done) {
                    ++violations;
                    continue;
                }
                const double w = n == 1 ? winding(entry.spec, x, y, cfg).value
                                        : winding_iterate(entry.spec, x, y, n, cfg).value;
                const double gap = std::abs(w - static_cast<double>(value));
                max_gap = std::max(max_gap, gap);
                if (gap > 1.5) ++violations;
            }
            overall_max = std::max(overall_max, max_gap);
            add_row(result, entry.label + "/n" + std::to_string(n) + "/violations",
                    static_cast<double>(violations), 0.0);
            add_row(result, entry.label + "/n" + std::to_string(n) + "/max-gap", max_gap, 1.5);
        }
    }
    std::ostringstream os;
    os << "max observed |W - I| = " << overall_max << " over " << per_case
       << " triples per (spec, n); bound 3/2 never attained is consistent with optimality";
    result.detail = os.str();
    finish(result, timer, 0.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC5: the action-versus-intersection-integral identity.

CriterionResult run_ac5(const Profile& p) {
    CriterionResult result;
    result.id = "AC5";
    Timer timer;
    const FlowConfig cfg{256};
    const PrimitiveOneForm form(BaseForm::radial);
    const Point2 e{1.0, 0.0};
    const int x_per_spec = std::max(1, static_cast<int>(std::lround(4 * p.scale)));
    const int base_samples = scaled(p.scale, 8192, 256);

    for (const auto& entry : suite(p)) {
        for (int i = 0; i < x_per_spec; ++i) {
            const Point2 x = random_point(p.seed ^ 0xac5, i, 0, 0.85);
            const double a = action(entry.spec, form, x, cfg).value;
            const Point2 fx = advance(entry.spec, x, 0.0, 1.0, cfg).endpoint();
            const double segs = -segment_integral(form, e, x) + segment_integral(form, e, fx);

            QuadratureSpec quad;
            quad.kind = QuadratureKind::monte_carlo;
            quad.n_samples = base_samples;
            quad.seed = p.seed ^ (0xac50 + static_cast<unsigned>(i));

            const IntegralEstimate small = intersection_integral(entry.spec, x, e, 1, quad, cfg,
                                                                 p.threads);
            const double resid_small = std::abs(small.value + segs - a);
            add_row(result, entry.label + "/x" + std::to_string(i) + "/residual-8k", resid_small,
                    3.0 * small.std_error);

            quad.n_samples = 4 * base_samples;
            const IntegralEstimate big = intersection_integral(entry.spec, x, e, 1, quad, cfg,
                                                               p.threads);
            const double resid_big = std::abs(big.value + segs - a);
            add_row(result, entry.label + "/x" + std::to_string(i) + "/residual-32k", resid_big,
                    3.0 * big.std_error);
            // Quadrupled samples must halve the standard error.
            add_row(result, entry.label + "/x" + std::to_string(i) + "/stderr-ratio",
                    big.std_error, 0.6 * small.std_error);
        }
    }
    result.detail = "Int I(x, y) dw0(y) - Int_[e,x] + Int_[e,phi(x)] vs action, 3 sigma, with "
                    "error halving at 4x samples";
    finish(result, timer, 300.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC6: asymptotic action equals the winding disk-integral within the O(1/n)
// budget.

CriterionResult run_ac6(const Profile& p) {
    CriterionResult result;
    result.id = "AC6";
    Timer timer;
    const FlowConfig action_cfg{256};
    const FlowConfig winding_cfg{64};
    const PrimitiveOneForm form(BaseForm::radial);
    const int n = 64;
    const int x_per_spec = scaled(p.scale, 20, 2);
    const int samples = scaled(p.scale, 4096, 256);

    for (const auto& entry : suite(p)) {
        const auto h = pure_radial_h(entry.spec);
        const std::vector<double> dh = h ? poly::derivative(*h) : std::vector<double>{};
        double worst_margin = 0.0;
        for (int i = 0; i < x_per_spec; ++i) {
            const Point2 x = random_point(p.seed ^ 0xac6, i, 0, 0.9);
            QuadratureSpec quad;
            quad.kind = QuadratureKind::monte_carlo;
            quad.n_samples = samples;
            quad.seed = p.seed ^ (0xac60 + static_cast<unsigned>(i));

            const TheoremReport report = verify_main_theorem(entry.spec, x, form, n, quad,
                                                             action_cfg, winding_cfg, p.threads);
            worst_margin = std::max(worst_margin, report.residual - report.budget);
            add_row(result, entry.label + "/x" + std::to_string(i) + "/residual", report.residual,
                    report.budget);
            if (h) {
                const double s = x.norm_sq();
                const double closed_form = poly::eval(*h, s) - s * poly::eval(dh, s);
                add_row(result, entry.label + "/x" + std::to_string(i) + "/action-vs-closed-form",
                        std::abs(report.action_side - closed_form), 1e-4);
                add_row(result, entry.label + "/x" + std::to_string(i) + "/integral-vs-closed-form",
                        std::abs(report.winding_side - closed_form), 1e-4 + report.mc_term);
            }
        }
        (void)worst_margin;
    }
    result.detail = "n = 64, " + std::to_string(samples) + " MC samples, budget (3/2)pi/n + "
                    "segment bound/n + 3 sigma";
    finish(result, timer, 900.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC7: three-route Calabi agreement.

CriterionResult run_ac7(const Profile& p) {
    CriterionResult result;
    result.id = "AC7";
    Timer timer;
    const FlowConfig cfg{512};
    const PrimitiveOneForm form(BaseForm::radial);
    const int pairs = scaled(p.scale, 20000, 200);

    for (const auto& entry : suite(p)) {
        QuadratureSpec quad;
        quad.kind = QuadratureKind::polar_grid;
        quad.n_r = 64;
        quad.n_theta = 64;
        quad.n_samples = pairs;
        quad.seed = p.seed ^ 0xac7;

        const CalabiReport report = calabi_report(entry.spec, form, quad, cfg, 1e-6, p.threads);
        const double error_sum =
            report.via_action.error + report.via_hamiltonian.error + report.via_winding.error;
        add_row(result, entry.label + "/three-route-gap", report.max_pairwise_gap,
                3.0 * error_sum);

        const auto h = pure_radial_h(entry.spec);
        if (h) {
            const double symbolic = kTwoPi * poly::integral01(*h);
            add_row(result, entry.label + "/action-route-vs-symbolic",
                    std::abs(report.via_action.value - symbolic),
                    3.0 * report.via_action.error + 1e-5);
            add_row(result, entry.label + "/hamiltonian-route-vs-symbolic",
                    std::abs(report.via_hamiltonian.value - symbolic),
                    3.0 * report.via_hamiltonian.error + 1e-5);
            add_row(result, entry.label + "/winding-route-vs-symbolic",
                    std::abs(report.via_winding.value - symbolic),
                    3.0 * report.via_winding.error + 1e-5);
        }
    }
    result.detail = std::to_string(pairs) + " winding pairs per spec; gap < 3 x (sum of route "
                    "errors); radial reference 2 pi Int h";
    finish(result, timer, 600.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC8: the invariant is additive under composition.

CriterionResult run_ac8(const Profile& p) {
    CriterionResult result;
    result.id = "AC8";
    Timer timer;
    const FlowConfig cfg{512};
    const PrimitiveOneForm form(BaseForm::radial);
    QuadratureSpec quad;
    quad.kind = QuadratureKind::polar_grid;
    quad.n_r = 64;
    quad.n_theta = 64;
    quad.seed = p.seed ^ 0xac8;

    const std::vector<std::pair<std::string, std::pair<HamiltonianSpec, HamiltonianSpec>>> cases = {
        {"radial-0.5+radial-1",
         {HamiltonianSpec::radial({1.0}, 0.5), HamiltonianSpec::radial({1.0}, 1.0)}},
        {"radial-1+perturbed", {HamiltonianSpec::radial({1.0}, 1.0), perturbed_spec()}},
        {"radial-2+perturbed", {HamiltonianSpec::radial({1.0}, 2.0), perturbed_spec()}},
    };
    for (const auto& item : cases) {
        const HomomorphismReport report =
            homomorphism_check(item.second.first, item.second.second, form, quad, cfg, p.threads);
        add_row(result, item.first + "/hamiltonian-route-residual", report.residual_hamiltonian,
                report.tolerance);
        add_row(result, item.first + "/action-route-residual", report.residual_action,
                report.tolerance);
    }
    result.detail = "C(psi o phi) = C(phi) + C(psi) on 3 spec pairs";
    finish(result, timer, 0.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC9: integrator health.

CriterionResult run_ac9(const Profile& p) {
    CriterionResult result;
    result.id = "AC9";
    Timer timer;
    const HamiltonianSpec spec = perturbed_spec();
    const int n_points = scaled(p.scale, 100, 10);

    double max_jac_dev = 0.0;
    const FlowConfig cfg{512};
    for (int i = 0; i < n_points; ++i) {
        const Point2 z = random_point(p.seed ^ 0xac9, i, 0, 0.95);
        max_jac_dev = std::max(max_jac_dev, std::abs(jacobian_determinant(spec, z, cfg) - 1.0));
    }
    add_row(result, "perturbed/jacobian-det-deviation", max_jac_dev, 1e-4);

    double min_order = 10.0;
    for (int i = 0; i < 5; ++i) {
        const Point2 z = random_point(p.seed ^ 0xac9b, i, 0, 0.9);
        const Point2 ref = advance(spec, z, 0.0, 1.0, FlowConfig{2048}).endpoint();
        const double e1 = (advance(spec, z, 0.0, 1.0, FlowConfig{128}).endpoint() - ref).norm();
        const double e2 = (advance(spec, z, 0.0, 1.0, FlowConfig{256}).endpoint() - ref).norm();
        if (e2 > 1e-13) {
            min_order = std::min(min_order, std::log2(e1 / e2));
        }
    }
    add_row(result, "perturbed/rk4-order-deficit", 3.8 - min_order, 0.0);

    double max_boundary_motion = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double phi = kTwoPi * (i + 0.5) / 10.0;
        const Point2 z{std::cos(phi), std::sin(phi)};
        max_boundary_motion =
            std::max(max_boundary_motion, (advance(spec, z, 0.0, 1.0, cfg).endpoint() - z).norm());
    }
    add_row(result, "perturbed/boundary-motion", max_boundary_motion, 1e-12);

    std::ostringstream os;
    os << "jacobian inside 1 +- 1e-4, RK4 order " << min_order << ", boundary fixed";
    result.detail = os.str();
    finish(result, timer, 0.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC10: Birkhoff bookkeeping — space averages at finite n and Cauchy decay at
// a fixed point.

CriterionResult run_ac10(const Profile& p) {
    CriterionResult result;
    result.id = "AC10";
    Timer timer;
    const FlowConfig cfg{128};
    const PrimitiveOneForm form(BaseForm::radial);
    const double bound_constant = 1.5 * kPi + 4.0 * form.sup_bound();
    const int disk_samples = scaled(p.scale, 1024, 128);
    const int pair_samples = scaled(p.scale, 512, 96);

    std::vector<SuiteEntry> specs;
    for (const auto& entry : suite(p)) {
        if (entry.label == "radial-0.5" || entry.label == "radial-2") continue;
        specs.push_back(entry);
    }

    for (const auto& entry : specs) {
        for (int n : {16, 64}) {
            // Space average of the n-averaged action vs the plain action.
            QuadratureSpec quad;
            quad.kind = QuadratureKind::monte_carlo;
            quad.n_samples = disk_samples;
            quad.seed = p.seed ^ (0xac100 + static_cast<unsigned>(n));
            const auto samples = disk_quadrature(quad);
            std::vector<double> diffs(samples.size());
            parallel_for(samples.size(), p.threads, [&](std::size_t i) {
                const double avg =
                    asymptotic_action(entry.spec, form, samples[i].point, n, cfg).value;
                const double one = action(entry.spec, form, samples[i].point, cfg).value;
                diffs[i] = avg - one;
            });
            const MonteCarloMoments m = weighted_mean(diffs, kPi);
            add_row(result, entry.label + "/n" + std::to_string(n) + "/action-space-average",
                    std::abs(m.value), bound_constant / n + 3.0 * m.std_error);

            // Pair average of W_n / n vs W_1 from the same lift.
            const PairSet pairs = pair_quadrature(
                QuadratureSpec{QuadratureKind::monte_carlo, 1, 1, pair_samples,
                               p.seed ^ (0xac200 + static_cast<unsigned>(n))},
                1e-6);
            std::vector<double> wdiffs(pairs.samples.size());
            parallel_for(pairs.samples.size(), p.threads, [&](std::size_t i) {
                const Trajectory tx =
                    advance(entry.spec, pairs.samples[i].first, 0.0, static_cast<double>(n), cfg);
                const Trajectory ty =
                    advance(entry.spec, pairs.samples[i].second, 0.0, static_cast<double>(n), cfg);
                const PairWinding w = track_pair_winding(tx, ty);
                wdiffs[i] = w.value / n - w.at_unit_times[0];
            });
            const MonteCarloMoments wm = weighted_mean(wdiffs, kPi * kPi);
            add_row(result, entry.label + "/n" + std::to_string(n) + "/winding-space-average",
                    std::abs(wm.value), bound_constant / n + 3.0 * wm.std_error);
        }
    }

    // Cauchy-gap decay at the fixed point x = 0 of the perturbed spec.  The
    // gap of an individual y oscillates under its C/n envelope, so the rate
    // is read off the mean over samples across a log-spaced n grid.
    const HamiltonianSpec spec = perturbed_spec();
    const std::vector<int> ns{16, 24, 32, 48, 64, 96, 128};
    std::vector<double> gaps;
    for (int n : ns) {
        double gap = 0.0;
        for (int j = 0; j < 8; ++j) {
            const Point2 y = random_point(p.seed ^ 0xac10c, j, 0, 0.9);
            gap += asymptotic_winding(spec, {0.0, 0.0}, y, n, cfg).cauchy_gap / 8.0;
        }
        gaps.push_back(std::max(gap, 1e-15));
    }
    bool converged_exactly = true;
    for (double g : gaps) converged_exactly = converged_exactly && g < 1e-9;
    double slope = 0.0;
    {
        // Least-squares slope of log gap against log n.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int m = static_cast<int>(ns.size());
        for (int i = 0; i < m; ++i) {
            const double lx = std::log(static_cast<double>(ns[i]));
            const double ly = std::log(gaps[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    const double decay_rate = converged_exactly ? 1.0 : -slope;
    add_row(result, "perturbed/x0-cauchy-decay-deficit", 0.8 - decay_rate, 0.0);

    std::ostringstream os;
    os << "finite-n space averages within C/n + 3 sigma (C = " << bound_constant
       << "); fixed-point Cauchy gaps decay like n^-" << decay_rate;
    result.detail = os.str();
    finish(result, timer, 0.0);
    return result;
}

// ---------------------------------------------------------------------------
// AC11: byte-identical outputs across thread counts, end to end through the
// command-line binary.

CriterionResult run_ac11(const Profile& p) {
    CriterionResult result;
    result.id = "AC11";
    Timer timer;
    if (p.cli_path.empty()) {
        result.detail = "no CLI binary available to re-run";
        add_row(result, "determinism/cli-available", 1.0, 0.0);
        finish(result, timer, 0.0);
        return result;
    }

    const fs::path base = fs::path(p.work_dir) / "diskdyn-determinism";
    std::error_code ec;
    fs::remove_all(base, ec);
    fs::create_directories(base / "a");
    fs::create_directories(base / "b");

    nlohmann::json cfg;
    cfg["seed"] = p.seed;
    cfg["profile"] = {{"scale", 0.02}, {"criteria", {"AC1", "AC3", "AC7"}}};
    const std::string cfg_path = (base / "config.json").string();
    write_text_file(cfg_path, cfg.dump(2) + "\n");

    auto run = [&](const std::string& out, int threads) {
        std::ostringstream cmd;
        cmd << "\"" << p.cli_path << "\" verify-all --config \"" << cfg_path << "\" --out \"" << out
            << "\" --threads " << threads << " > \"" << out << "/stdout.log\" 2>&1";
        return std::system(cmd.str().c_str());
    };
    const int rc1 = run((base / "a").string(), 1);
    const int rc2 = run((base / "b").string(), 4);
    add_row(result, "determinism/run-exit-codes", std::abs(rc1) + std::abs(rc2), 0.0);

    // Byte-compare every CSV and JSON artifact of the two runs.
    long mismatches = 0;
    long compared = 0;
    for (const auto& item : fs::directory_iterator(base / "a")) {
        const fs::path name = item.path().filename();
        if (name.extension() != ".csv" && name.extension() != ".json") continue;
        ++compared;
        std::ifstream fa(item.path(), std::ios::binary);
        std::ifstream fb(base / "b" / name, std::ios::binary);
        if (!fb) {
            ++mismatches;
            continue;
        }
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        if (sa.str() != sb.str()) ++mismatches;
    }
    add_row(result, "determinism/artifacts-compared", compared >= 2 ? 0.0 : 1.0, 0.0);
    add_row(result, "determinism/byte-mismatches", static_cast<double>(mismatches), 0.0);

    std::ostringstream os;
    os << compared << " artifacts byte-compared between --threads 1 and --threads 4 runs";
    result.detail = os.str();
    finish(result, timer, 0.0);
    return result;
}

} // namespace

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        if (!r.pass) return false;
    }
    return true;
}

std::vector<CriterionResult> run_all(const Profile& profile, std::ostream* log) {
    const std::vector<std::string> all_ids = {"AC1", "AC2", "AC3", "AC4",  "AC5", "AC6",
                                              "AC7", "AC8", "AC9", "AC10", "AC11"};
    std::vector<std::string> ids = profile.criteria.empty() ? all_ids : profile.criteria;

    std::vector<CriterionResult> results;
    for (const std::string& id : ids) {
        CriterionResult r;
        if (id == "AC1") r = run_ac1(profile);
        else if (id == "AC2") r = run_ac2(profile);
        else if (id == "AC3") r = run_ac3(profile);
        else if (id == "AC4") r = run_ac4(profile);
        else if (id == "AC5") r = run_ac5(profile);
        else if (id == "AC6") r = run_ac6(profile);
        else if (id == "AC7") r = run_ac7(profile);
        else if (id == "AC8") r = run_ac8(profile);
        else if (id == "AC9") r = run_ac9(profile);
        else if (id == "AC10") r = run_ac10(profile);
        else if (id == "AC11") r = run_ac11(profile);
        else {
            r.id = id;
            r.pass = false;
            r.detail = "unknown criterion id";
        }
        if (log) {
            (*log) << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.detail << " ("
                   << r.seconds << " s)" << std::endl;
        }
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace diskdyn::verify
