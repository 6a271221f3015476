#include <doctest.h>

#include <cmath>

#include "diskdyn/intersection.hpp"
#include "diskdyn/rng.hpp"
#include "diskdyn/winding.hpp"
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

/// Brute-force crossing count: nearest-branch unwrap of the relative angle
/// over a dense uniform grid, then signed level passages, with the chord
/// condition checked at each passage.
long dense_crossing_count(const HamiltonianSpec& spec, const Point2& x, const Point2& y,
                          const Point2& e, int n, long samples) {
    const Trajectory tx = advance(spec, x, 0.0, n, kCfg);
    const Trajectory ty = advance(spec, y, 0.0, n, kCfg);
    double prev = relative_angle(tx.point(0), ty.point(0), e);
    double lift = prev;
    long count = 0;
    for (long i = 1; i <= samples; ++i) {
        const double t = n * static_cast<double>(i) / samples;
        const Point2 xt = tx.position(t);
        const Point2 yt = ty.position(t);
        const double a = relative_angle(xt, yt, e);
        double delta = a - prev;
        while (delta > oracles::kPi) delta -= 2 * oracles::kPi;
        while (delta <= -oracles::kPi) delta += 2 * oracles::kPi;
        const double next = lift + delta;
        const long m_prev = static_cast<long>(std::floor(lift / (2 * oracles::kPi)));
        const long m_next = static_cast<long>(std::floor(next / (2 * oracles::kPi)));
        if (m_next != m_prev) {
            const double frac = (yt - xt).norm() / (e - xt).norm();
            if (frac < 1.0) count += m_next - m_prev;
        }
        lift = next;
        prev = a;
    }
    return count;
}

} // namespace

TEST_CASE("relative angle conventions") {
    const Point2 x{0.2, 0.1};
    const Point2 e{1.0, 0.0};
    const Vec2 u = e - x;
    CHECK(relative_angle(x, x + u * 0.3, e) == doctest::Approx(0.0));
    CHECK(relative_angle(x, x + rotate90(u) * 0.2, e) == doctest::Approx(kPi / 2));
    CHECK(relative_angle(x, x - u * 0.1, e) == doctest::Approx(kPi));
    CHECK_THROWS_AS(relative_angle(x, x, e), ZeroVector);
}

TEST_CASE("the identity map crosses nothing") {
    const HamiltonianSpec trivial;
    const IntersectionResult r =
        intersection_number(trivial, {0.2, 0.1}, {-0.4, 0.5}, {1.0, 0.0}, 1, kCfg);
    CHECK(r.value == 0);
    CHECK(r.crossings.empty());
}

TEST_CASE("a start on the surface is a non-transversal configuration") {
    const HamiltonianSpec trivial;
    // y on the chord from x to e
    CHECK_THROWS_AS(intersection_number(trivial, {0.2, 0.0}, {0.6, 0.0}, {1.0, 0.0}, 1, kCfg),
                    TransversalityFailure);
}

TEST_CASE("radial crossing counts match the closed form") {
    const double amp = 1.0;
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, amp);
    const auto oracle = oracles::RadialOracle::make({1.0}, amp);
    const Point2 e{1.0, 0.0};
    for (int i = 0; i < 12; ++i) {
        const double r = 0.15 + 0.75 * rng::uniform01(83, i, 0);
        const double theta0 = kTwoPi * rng::uniform01(83, i, 1) - kPi;
        const Point2 y{r * std::cos(theta0), r * std::sin(theta0)};
        const int n = 1 + static_cast<int>(3 * rng::uniform01(83, i, 2));
        const double omega = oracle.omega(r);

        // crossings of theta through multiples of 2 pi over (0, n)
        const double end = theta0 + n * omega;
        const long expect = static_cast<long>(std::floor(end / kTwoPi)) -
                            static_cast<long>(std::floor(theta0 / kTwoPi));

        const IntersectionResult res = intersection_number(spec, {0.0, 0.0}, y, e, n, kCfg);
        CHECK(res.value == expect);
        CHECK(std::abs(static_cast<double>(res.value) - n * omega / kTwoPi) <= 1.0);
        for (const auto& ev : res.crossings) {
            CHECK(ev.sign == 1);
            CHECK(ev.radial_fraction > 0.0);
            CHECK(ev.radial_fraction < 1.0);
            CHECK(ev.angle_rate == doctest::Approx(omega).epsilon(1e-6));
        }
    }
}

TEST_CASE("crossing counts agree with brute-force dense sampling") {
    const HamiltonianSpec spec = standard_perturbed();
    for (int i = 0; i < 6; ++i) {
        const Point2 x = random_disk_point(89, i, 0.75);
        Point2 y = random_disk_point(89, i + 40, 0.9);
        if ((x - y).norm() < 1e-3) y.x += 0.1;
        const double phi = kTwoPi * rng::uniform01(89, i, 4);
        const Point2 e{std::cos(phi), std::sin(phi)};
        const int n = 2;
        long value = 0;
        try {
            value = intersection_number(spec, x, y, e, n, kCfg).value;
        } catch (const TransversalityFailure&) {
            continue; // rejected configuration, nothing to compare
        }
        CHECK(value == dense_crossing_count(spec, x, y, e, n, 1000000));
    }
}

TEST_CASE("winding and intersection stay within 3/2 of each other") {
    const HamiltonianSpec spec = standard_perturbed();
    for (int i = 0; i < 15; ++i) {
        const Point2 x = random_disk_point(97, i, 0.8);
        Point2 y = random_disk_point(97, i + 60, 0.9);
        if ((x - y).norm() < 1e-3) y.y += 0.07;
        bool done = false;
        long value = 0;
        for (std::uint64_t attempt = 0; attempt < 16 && !done; ++attempt) {
            const double phi = kTwoPi * rng::uniform01(97, i, 4 + attempt);
            const Point2 e{std::cos(phi), std::sin(phi)};
            try {
                value = intersection_number(spec, x, y, e, 1, kCfg).value;
                done = true;
            } catch (const TransversalityFailure&) {
            }
        }
        REQUIRE(done);
        const double w = winding(spec, x, y, kCfg).value;
        CHECK(std::abs(w - static_cast<double>(value)) <= 1.5);
    }
}

TEST_CASE("two admissible anchors differ by at most one crossing") {
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 2.0);
    const Point2 x{0.1, 0.05};
    const Point2 y{0.55, -0.3};
    long first = 0;
    bool have_first = false;
    for (int i = 0; i < 12; ++i) {
        const double phi = kTwoPi * (i + 0.37) / 12.0;
        const Point2 e{std::cos(phi), std::sin(phi)};
        try {
            const long v = intersection_number(spec, x, y, e, 3, kCfg).value;
            if (!have_first) {
                first = v;
                have_first = true;
            } else {
                CHECK(std::abs(v - first) <= 1);
            }
        } catch (const TransversalityFailure&) {
        }
    }
    CHECK(have_first);
}

TEST_CASE("near-tangential crossings are rejected for resampling") {
    // a barely-rotating flow crosses the ray with rate omega < 1e-6
    const double amp = 1e-7;
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, amp);
    const double r = 0.5;
    const double omega = 4.0 * amp * (1.0 - r * r);
    const Point2 y{r * std::cos(-omega / 2), r * std::sin(-omega / 2)};
    CHECK_THROWS_AS(intersection_number(spec, {0.0, 0.0}, y, {1.0, 0.0}, 1, kCfg),
                    TransversalityFailure);
}

TEST_CASE("intersection integral: trivial map and radial fixed point") {
    const HamiltonianSpec trivial;
    QuadratureSpec quad{QuadratureKind::monte_carlo, 1, 1, 512, 5};
    const IntegralEstimate zero =
        intersection_integral(trivial, {0.3, -0.2}, {0.0, 1.0}, 1, quad, kCfg);
    CHECK(zero.value == 0.0);
    CHECK(zero.std_error == 0.0);

    // at the fixed point 0 the segment corrections cancel and the integral
    // equals the action h(0)
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    const auto oracle = oracles::RadialOracle::make({1.0}, 1.0);
    quad.n_samples = 4096;
    const IntegralEstimate est = intersection_integral(spec, {0.0, 0.0}, {1.0, 0.0}, 1, quad, kCfg);
    CHECK(std::abs(est.value - oracle.h_at(0.0)) <= 3.0 * est.std_error + 1e-9);
    // same seed reproduces the estimate bit for bit
    const IntegralEstimate rerun = intersection_integral(spec, {0.0, 0.0}, {1.0, 0.0}, 1, quad, kCfg);
    CHECK(est.value == rerun.value);
}

TEST_CASE("precondition checks") {
    const HamiltonianSpec spec = HamiltonianSpec::radial({1.0}, 1.0);
    CHECK_THROWS_AS(intersection_number(spec, {1.0, 0.0}, {0.3, 0.0}, {1.0, 0.0}, 1, kCfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(intersection_number(spec, {0.2, 0.0}, {0.3, 0.1}, {0.5, 0.0}, 1, kCfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(intersection_number(spec, {0.2, 0.0}, {0.3, 0.1}, {1.0, 0.0}, 0, kCfg),
                    std::invalid_argument);
}
