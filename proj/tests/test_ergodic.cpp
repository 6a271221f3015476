#include <doctest.h>

#include <cmath>

#include "diskdyn/ergodic.hpp"
#include "diskdyn/rng.hpp"
#include "support/oracles.hpp"

using namespace diskdyn;

namespace {

const FlowConfig kCfg{256};

HamiltonianSpec standard_perturbed() {
    return HamiltonianSpec({
        HamiltonianTerm{RadialTerm{{1.0}, 1.0}},
        HamiltonianTerm{PerturbationTerm{2, TimeProfile::cosine, 0.1}},
    });
}

} // namespace

TEST_CASE("asymptotic action: trivial and radial flows") {
    const PrimitiveOneForm form(BaseForm::radial);
    const BirkhoffEstimate zero = asymptotic_action(HamiltonianSpec{}, form, {0.4, 0.1}, 8, kCfg);
    CHECK(zero.value == 0.0);
    CHECK(zero.cauchy_gap == 0.0);
    CHECK(zero.partial_averages[3] == zero.value);

    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    const double r = 0.55;
    const BirkhoffEstimate est = asymptotic_action(spec, form, {r, 0.0}, 8, kCfg);
    CHECK(std::abs(est.value - oracle.action(r)) < 1e-7);
    // the orbit never leaves its circle: all partial averages coincide
    for (double p : est.partial_averages) {
        CHECK(std::abs(p - est.value) < 1e-9);
    }
    // fixed point at the origin
    const BirkhoffEstimate fixed = asymptotic_action(spec, form, {0.0, 0.0}, 4, kCfg);
    CHECK(std::abs(fixed.value - oracle.h_at(0.0)) < 1e-7);
}

TEST_CASE("asymptotic action is primitive-independent up to the gauge budget") {
    const HamiltonianSpec spec = standard_perturbed();
    const GaugePolynomial u({{1, 1, 0.4}, {2, 0, -0.1}});
    const Point2 z{0.5, 0.2};
    for (int n : {8, 32}) {
        const double base =
            asymptotic_action(spec, PrimitiveOneForm(BaseForm::radial), z, n, kCfg).value;
        const double gauged =
            asymptotic_action(spec, PrimitiveOneForm(BaseForm::radial, u), z, n, kCfg).value;
        CHECK(std::abs(base - gauged) <= 2.0 * u.sup_bound() / n + 1e-6);
    }
}

TEST_CASE("asymptotic winding closed forms") {
    const HamiltonianSpec trivial;
    CHECK(asymptotic_winding(trivial, {0.1, 0.1}, {0.5, 0.2}, 8, kCfg).value == 0.0);

    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    const double r = 0.62;
    for (int n : {4, 16}) {
        const BirkhoffEstimate w = asymptotic_winding(spec, {0.0, 0.0}, {r, 0.0}, n, kCfg);
        CHECK(std::abs(w.value - oracle.winding_from_center(r)) < 1e-8);
        CHECK(w.cauchy_gap < 1e-8);
        CHECK(w.partial_averages[3] == w.value);
    }

    // distinct radii: the outer circle's rotation dominates, remainder O(1/n)
    const double r1 = 0.3, r2 = 0.7;
    const double dominant = oracle.omega(std::max(r1, r2)) / kTwoPi;
    const int n = 64;
    const BirkhoffEstimate w =
        asymptotic_winding(spec, {r1, 0.0}, {r2 * 0.7071067811865476, r2 * 0.7071067811865476}, n,
                           kCfg);
    CHECK(std::abs(w.value - dominant) < 1.5 / n);
}

TEST_CASE("the winding disk-integral matches the radial closed form") {
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    const double r = 0.5;
    QuadratureSpec quad{QuadratureKind::monte_carlo, 1, 1, 2048, 11};
    const Estimate est = asymptotic_winding_integral(spec, {r, 0.0}, 16, quad, kCfg);
    // the angular average of the finite-n remainder vanishes for radial
    // flows, so only Monte Carlo noise is left
    CHECK(std::abs(est.value - oracle.action(r)) <= 3.5 * est.std_error);
}

TEST_CASE("main identity residual at desk scale") {
    const PrimitiveOneForm form(BaseForm::radial);
    QuadratureSpec quad{QuadratureKind::monte_carlo, 1, 1, 1024, 13};

    const TheoremReport trivial =
        verify_main_theorem(HamiltonianSpec{}, {0.3, 0.1}, form, 8, quad, kCfg, kCfg);
    CHECK(trivial.residual == 0.0);
    CHECK(trivial.within_budget);

    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    const Point2 x{0.45, 0.2};
    const TheoremReport rep = verify_main_theorem(spec, x, form, 16, quad, kCfg, kCfg);
    CHECK(rep.within_budget);
    const double cf = oracle.action(x.norm());
    CHECK(std::abs(rep.action_side - cf) < 1e-5);
    CHECK(std::abs(rep.winding_side - cf) <= 1e-5 + 3.0 * rep.winding_std_error);
    CHECK(rep.budget == doctest::Approx(rep.crossing_bound_term + rep.segment_term + rep.mc_term));
}

TEST_CASE("periodic orbit averages") {
    const PrimitiveOneForm form(BaseForm::radial);
    const HamiltonianSpec trivial;
    CHECK(periodic_average_action(trivial, form, {0.4, 0.0}, 1, kCfg) == 0.0);

    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    // fixed point
    CHECK(std::abs(periodic_average_action(spec, form, {0.0, 0.0}, 1, kCfg) - oracle.h_at(0.0)) <
          1e-7);
    // orbit closing after q iterations: omega(r) = 2 pi p / q
    const int q = 5;
    const double target = kTwoPi * 2.0 / q; // p = 2
    const double r = std::sqrt(1.0 - target / 4.0);
    CHECK(oracle.omega(r) == doctest::Approx(target).epsilon(1e-12));
    const double avg = periodic_average_action(spec, form, {r, 0.0}, q, kCfg);
    CHECK(std::abs(avg - oracle.action(r)) < 1e-7);

    // an orbit that does not close is refused
    CHECK_THROWS_AS(periodic_average_action(spec, form, {0.3, 0.0}, 1, kCfg), NotPeriodic);
}

TEST_CASE("preconditions") {
    const PrimitiveOneForm form(BaseForm::radial);
    CHECK_THROWS_AS(asymptotic_action(HamiltonianSpec{}, form, {0.1, 0.1}, 3, kCfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_winding(HamiltonianSpec{}, {0.1, 0.1}, {0.2, 0.2}, 2, kCfg),
                    std::invalid_argument);
}
