#include <doctest.h>

#include <cmath>

#include "diskdyn/action.hpp"
#include "diskdyn/rng.hpp"
#include "support/oracles.hpp"

using namespace diskdyn;

namespace {

const FlowConfig kCfg{512};

HamiltonianSpec standard_perturbed() {
    return HamiltonianSpec({
        HamiltonianTerm{RadialTerm{{1.0}, 1.0}},
        HamiltonianTerm{PerturbationTerm{2, TimeProfile::cosine, 0.1}},
    });
}

Point2 random_disk_point(std::uint64_t seed, int i, double rmax = 0.95) {
    const double r = rmax * std::sqrt(rng::uniform01(seed, i, 0));
    const double a = kTwoPi * rng::uniform01(seed, i, 1);
    return {r * std::cos(a), r * std::sin(a)};
}

} // namespace

TEST_CASE("the identity map has zero action for every primitive") {
    const HamiltonianSpec trivial;
    for (BaseForm base : {BaseForm::radial, BaseForm::vertical, BaseForm::horizontal}) {
        const ActionValue a = action(trivial, PrimitiveOneForm(base), {0.3, 0.2}, kCfg);
        CHECK(a.value == 0.0);
        CHECK(a.path_term == 0.0);
        CHECK(a.hamiltonian_term == 0.0);
    }
}

TEST_CASE("radial action closed form, split into its two terms") {
    const std::vector<double> profile{1.0};
    const double amp = 1.0;
    const HamiltonianSpec spec = HamiltonianSpec::radial(profile, amp);
    const auto oracle = oracles::RadialOracle::make(profile, amp);
    const PrimitiveOneForm radial(BaseForm::radial);
    for (double r : {0.15, 0.45, 0.75}) {
        const double s = r * r;
        const ActionValue a = action(spec, radial, {r, 0.0}, kCfg);
        CHECK(std::abs(a.value - oracle.action(r)) < 1e-7);
        // path term: (r^2/2) omega = -s h'(s); hamiltonian term: h(s)
        CHECK(std::abs(a.path_term + s * oracle.dh_at(s)) < 1e-7);
        CHECK(std::abs(a.hamiltonian_term - oracle.h_at(s)) < 1e-8);
    }
}

TEST_CASE("at a fixed point the action is primitive-independent") {
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    const Point2 origin{0.0, 0.0};
    for (BaseForm base : {BaseForm::radial, BaseForm::vertical, BaseForm::horizontal}) {
        const PrimitiveOneForm form(base, GaugePolynomial({{1, 1, 0.4}}));
        CHECK(std::abs(action(spec, form, origin, kCfg).value - oracle.h_at(0.0)) < 1e-7);
    }
}

TEST_CASE("the action vanishes on the boundary annulus") {
    // the cutoff has quadratic contact at |z| = 1, so the action decays
    // linearly in the distance to the boundary: the 1e-8 layer sits at
    // distance ~1e-9
    const HamiltonianSpec spec = standard_perturbed();
    const PrimitiveOneForm form(BaseForm::radial);
    for (int i = 0; i < 20; ++i) {
        const double r = 1.0 - 1e-9 * rng::uniform01(47, i, 0);
        const double a = kTwoPi * rng::uniform01(47, i, 1);
        const Point2 z{r * std::cos(a), r * std::sin(a)};
        CHECK(std::abs(action(spec, form, z, kCfg).value) < 1e-8);
    }
}

TEST_CASE("gauge rule: a_{lambda + du} = a_lambda + u o phi - u") {
    const HamiltonianSpec spec = standard_perturbed();
    const GaugePolynomial u({{1, 1, 0.5}, {3, 0, -0.2}, {0, 2, 0.3}});
    const PrimitiveOneForm plain(BaseForm::radial);
    const PrimitiveOneForm gauged(BaseForm::radial, u);
    for (int i = 0; i < 10; ++i) {
        const Point2 z = random_disk_point(53, i);
        const Point2 fz = advance(spec, z, 0.0, 1.0, kCfg).endpoint();
        const double lhs = action(spec, gauged, z, kCfg).value;
        const double rhs = action(spec, plain, z, kCfg).value + u.value(fz) - u.value(z);
        CHECK(std::abs(lhs - rhs) < 1e-7);
    }
}

TEST_CASE("composition rule through concatenated isotopies") {
    const HamiltonianSpec phi = standard_perturbed();
    const HamiltonianSpec psi = HamiltonianSpec::radial({1.0}, 0.7);
    const HamiltonianSpec composed = HamiltonianSpec::concatenate(phi, psi);
    const PrimitiveOneForm form(BaseForm::vertical);
    for (int i = 0; i < 10; ++i) {
        const Point2 z = random_disk_point(59, i);
        const Point2 fz = advance(phi, z, 0.0, 1.0, kCfg).endpoint();
        const double lhs = action(composed, form, z, kCfg).value;
        const double rhs = action(psi, form, fz, kCfg).value + action(phi, form, z, kCfg).value;
        CHECK(std::abs(lhs - rhs) < 1e-6);
    }
}

TEST_CASE("inverse rule through the time-reversed hamiltonian") {
    const HamiltonianSpec phi = standard_perturbed();
    const HamiltonianSpec inv = HamiltonianSpec::time_reversed(phi);
    const PrimitiveOneForm form(BaseForm::radial);
    for (int i = 0; i < 10; ++i) {
        const Point2 z = random_disk_point(61, i);
        const Point2 w = advance(inv, z, 0.0, 1.0, kCfg).endpoint(); // phi^{-1}(z)
        CHECK(std::abs(action(inv, form, z, kCfg).value + action(phi, form, w, kCfg).value) < 1e-6);
        // and phi(w) returns to z
        CHECK((advance(phi, w, 0.0, 1.0, kCfg).endpoint() - z).norm() < 1e-8);
    }
}

TEST_CASE("birkhoff sums of the action") {
    const HamiltonianSpec trivial;
    const PrimitiveOneForm form(BaseForm::radial);
    CHECK(action_birkhoff_sum(trivial, form, {0.5, 0.1}, 5, kCfg) == 0.0);

    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    const Point2 z{0.6, 0.0};
    const double a1 = action_birkhoff_sum(spec, form, z, 1, kCfg);
    CHECK(std::abs(a1 - action(spec, form, z, kCfg).value) < 1e-12);
    // the orbit stays on its circle, so the average never moves
    const double a6 = action_birkhoff_sum(spec, form, z, 6, kCfg);
    CHECK(std::abs(a6 - oracle.action(0.6)) < 1e-7);

    // the built-in cross-check against the n-window action must stay quiet
    const double ap = action_birkhoff_sum(standard_perturbed(), form, z, 4, kCfg);
    CHECK(std::isfinite(ap));
}
