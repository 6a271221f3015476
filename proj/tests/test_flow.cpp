#include <doctest.h>

#include <cmath>

#include "diskdyn/flow.hpp"
#include "diskdyn/rng.hpp"
#include "support/oracles.hpp"

using namespace diskdyn;

namespace {
const FlowConfig kCfg{512};
}

TEST_CASE("the zero hamiltonian freezes every point") {
    const HamiltonianSpec trivial;
    const Trajectory traj = advance(trivial, {0.3, -0.4}, 0.0, 1.0, kCfg);
    for (std::size_t i = 0; i <= traj.steps(); ++i) {
        CHECK(traj.point(i).x == 0.3);
        CHECK(traj.point(i).y == -0.4);
    }
}

TEST_CASE("radial flows rotate by -2 h'(r^2) per unit time") {
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    for (double r : {0.2, 0.5, 0.8}) {
        const Point2 z{r, 0.0};
        const Point2 end = advance(spec, z, 0.0, 1.0, kCfg).endpoint();
        const Point2 expect = oracle.flow(z, 1.0);
        CHECK((end - expect).norm() < 1e-9);
    }
}

TEST_CASE("boundary points are exactly fixed") {
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 2.0);
    const Point2 z{1.0, 0.0};
    const Trajectory traj = advance(spec, z, 0.0, 1.0, kCfg);
    CHECK(traj.endpoint().x == 1.0);
    CHECK(traj.endpoint().y == 0.0);
}

TEST_CASE("the flow property over consecutive windows") {
    const HamiltonianSpec spec = HamiltonianSpec({
        HamiltonianTerm{RadialTerm{{1.0}, 1.0}},
        HamiltonianTerm{PerturbationTerm{2, TimeProfile::cosine, 0.1}},
    });
    const Point2 z{0.4, 0.2};
    const Point2 mid = advance(spec, z, 0.0, 1.0, kCfg).endpoint();
    const Point2 two_leg = advance(spec, mid, 1.0, 2.0, kCfg).endpoint();
    const Point2 direct = advance(spec, z, 0.0, 2.0, kCfg).endpoint();
    CHECK((two_leg - direct).norm() < 1e-9);
}

TEST_CASE("iterated radial orbits stay on their circle and close up") {
    // pick the amplitude so omega(r) = 4A(1 - r^2) equals 2 pi / 3 at r0
    const double r0 = 0.5;
    const double amp = (kTwoPi / 3.0) / (4.0 * (1.0 - r0 * r0));
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, amp);
    const Point2 z{r0, 0.0};
    const auto orbit = iterate_map(spec, z, 3, kCfg);
    REQUIRE(orbit.size() == 4);
    for (const auto& p : orbit) {
        CHECK(std::abs(p.norm() - r0) < 1e-9);
    }
    CHECK((orbit[3] - z).norm() < 1e-7);
}

TEST_CASE("area preservation via the jacobian determinant") {
    const HamiltonianSpec trivial;
    CHECK(jacobian_determinant(trivial, {0.2, 0.1}, kCfg) == doctest::Approx(1.0).epsilon(1e-10));

    const HamiltonianSpec radial = HamiltonianSpec::radial({1.0}, 1.0);
    const HamiltonianSpec perturbed = HamiltonianSpec({
        HamiltonianTerm{RadialTerm{{1.0}, 1.0}},
        HamiltonianTerm{PerturbationTerm{2, TimeProfile::cosine, 0.1}},
    });
    for (int i = 0; i < 20; ++i) {
        const double r = 0.9 * std::sqrt(rng::uniform01(43, i, 0));
        const double a = kTwoPi * rng::uniform01(43, i, 1);
        const Point2 z{r * std::cos(a), r * std::sin(a)};
        CHECK(std::abs(jacobian_determinant(radial, z, kCfg) - 1.0) < 1e-5);
        CHECK(std::abs(jacobian_determinant(perturbed, z, kCfg) - 1.0) < 1e-4);
    }
}

TEST_CASE("fourth-order convergence under step halving") {
    const HamiltonianSpec spec = HamiltonianSpec({
        HamiltonianTerm{RadialTerm{{1.0}, 1.0}},
        HamiltonianTerm{PerturbationTerm{2, TimeProfile::cosine, 0.1}},
    });
    const Point2 z{0.55, -0.25};
    const Point2 ref = advance(spec, z, 0.0, 1.0, FlowConfig{2048}).endpoint();
    const double e1 = (advance(spec, z, 0.0, 1.0, FlowConfig{64}).endpoint() - ref).norm();
    const double e2 = (advance(spec, z, 0.0, 1.0, FlowConfig{128}).endpoint() - ref).norm();
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("an unstable configuration escapes and is reported") {
    // hw >> 1 makes RK4 blow up on the rotation; the guard must catch it
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 50.0);
    CHECK_THROWS_AS(advance(spec, {0.05, 0.0}, 0.0, 1.0, FlowConfig{16}), EscapedDisk);
}

TEST_CASE("dense output interpolates the flow between nodes") {
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    const Point2 z{0.6, 0.0};
    const Trajectory traj = advance(spec, z, 0.0, 1.0, kCfg);
    for (double t : {0.1234, 0.5001, 0.87654}) {
        CHECK((traj.position(t) - oracle.flow(z, t)).norm() < 1e-9);
    }
    // node queries return the stored nodes
    CHECK((traj.position(traj.time(17)) - traj.point(17)).norm() < 1e-15);
}

TEST_CASE("trajectory construction validates its input") {
    CHECK_THROWS_AS(Trajectory::from_samples(0.0, 1.0, {{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(advance(HamiltonianSpec{}, {0, 0}, 1.0, 1.0, kCfg), std::invalid_argument);
    CHECK_THROWS_AS(iterate_map(HamiltonianSpec{}, {0, 0}, 0, kCfg), std::invalid_argument);
}
