#include "diskdyn/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "diskdyn/parallel.hpp"
#include "lift.hpp"

namespace diskdyn {

double relative_angle(const Point2& xt, const Point2& yt, const Point2& e) {
    const Vec2 u = e - xt;
    const Vec2 v = yt - xt;
    if (u.norm() < kZeroVectorTol || v.norm() < kZeroVectorTol) {
        throw ZeroVector("relative_angle: degenerate configuration");
    }
    double a = std::atan2(u.cross(v), u.dot(v));
    if (a <= -kPi) a += kTwoPi;
    return a;
}

namespace {

constexpr double kRootTimeTol = 1e-10;
constexpr double kGrazeTol = 1e-9;

/// Walks the continuous lift of the relative angle and turns its passages
/// through multiples of 2 pi into signed crossing events.
class CrossingScan {
public:
    CrossingScan(const HamiltonianSpec& spec, const Trajectory& tx, const Trajectory& ty,
                 const Point2& e, double tol_transversal)
        : spec_(spec), tx_(tx), ty_(ty), e_(e), tol_(tol_transversal) {}

    std::pair<Vec2, double> direction(double t) const {
        const Point2 xt = tx_.position(t);
        const Point2 yt = ty_.position(t);
        const Vec2 u = e_ - xt;
        const Vec2 v = yt - xt;
        // w = conj(u) v: arg w is the angle of v measured against u.
        return {Vec2{u.dot(v), u.cross(v)}, v.norm()};
    }

    void leaf(double ta, double tb, double psi_a, double psi_b, const Vec2& da, const Vec2&) {
        const double lo = std::min(psi_a, psi_b);
        const double hi = std::max(psi_a, psi_b);
        const long m_lo = static_cast<long>(std::ceil(lo / kTwoPi - 1e-12));
        const long m_hi = static_cast<long>(std::floor(hi / kTwoPi + 1e-12));
        for (long m = m_lo; m <= m_hi; ++m) {
            const double level = kTwoPi * static_cast<double>(m);
            const double ga = psi_a - level;
            const double gb = psi_b - level;
            if (ga == 0.0 || gb == 0.0) {
                throw TransversalityFailure(
                    "lift sample exactly on a crossing level; resample the anchor e");
            }
            if (ga * gb > 0.0) continue;
            locate(ta, tb, ga, psi_a, level, da);
        }
    }

    std::vector<CrossingEvent> take() { return std::move(crossings_); }

private:
    const HamiltonianSpec& spec_;
    const Trajectory& tx_;
    const Trajectory& ty_;
    Point2 e_;
    double tol_;
    std::vector<CrossingEvent> crossings_;

    void locate(double ta, double tb, double ga, double psi_a, double level, const Vec2& da) {
        double a = ta, b = tb;
        double fa = ga;
        while (b - a > kRootTimeTol) {
            const double mid = 0.5 * (a + b);
            const double fm = psi_a + angle_increment(da, direction(mid).first) - level;
            if ((fa < 0.0) == (fm < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        const double time = 0.5 * (a + b);

        const Point2 xt = tx_.position(time);
        const Point2 yt = ty_.position(time);
        const Vec2 u = e_ - xt;
        const Vec2 v = yt - xt;
        const Vec2 vx = spec_.vector_field(xt, time);
        const Vec2 vy = spec_.vector_field(yt, time);
        // d/dt [arg v - arg u] with u' = -x_t', v' = y_t' - x_t'.
        const double rate = v.cross(vy - vx) / v.norm_sq() + u.cross(vx) / u.norm_sq();
        const double fraction = v.norm() / u.norm();

        // The net passage direction over the bracket is the sign that enters
        // the intersection number; a transversal simple crossing has a rate
        // of the same sign.
        const int sign = ga < 0.0 ? 1 : -1;
        if (std::abs(rate) < tol_ || (rate > 0.0) != (sign > 0)) {
            throw TransversalityFailure("near-tangential surface crossing (rate " +
                                        std::to_string(rate) + "); resample the anchor e");
        }
        if (fraction >= 1.0 - 1e-12) {
            throw TransversalityFailure("crossing grazes the far edge of the surface");
        }
        CrossingEvent ev;
        ev.time = time;
        ev.sign = sign;
        ev.angle_rate = rate;
        ev.radial_fraction = fraction;
        crossings_.push_back(ev);
    }
};

void require_off_surface(double psi, double t) {
    const double defect = std::abs(psi - kTwoPi * std::round(psi / kTwoPi));
    if (defect < kGrazeTol) {
        throw TransversalityFailure("trajectory endpoint lies on the surface at t = " +
                                    std::to_string(t) + "; resample the anchor e");
    }
}

} // namespace

IntersectionResult intersection_number_with(const HamiltonianSpec& spec, const Trajectory& tx,
                                            const Point2& y, const Point2& e, const FlowConfig& cfg,
                                            double tol_transversal) {
    const Trajectory ty = advance(spec, y, tx.t0(), tx.t1(), cfg);
    CrossingScan scan(spec, tx, ty, e, tol_transversal);

    const double psi0 = relative_angle(tx.point(0), ty.point(0), e);
    require_off_surface(psi0, ty.t0());

    auto dir = [&scan](double t) { return scan.direction(t); };
    auto leaf = [&scan](double ta, double tb, double pa, double pb, const Vec2& da, const Vec2& db) {
        scan.leaf(ta, tb, pa, pb, da, db);
    };
    detail::LiftTracker<decltype(dir), decltype(leaf)> tracker(ty.t0(), psi0, dir, leaf);
    for (std::size_t i = 1; i <= ty.steps(); ++i) {
        tracker.advance_to(ty.time(i));
    }
    require_off_surface(tracker.lift(), ty.t1());

    IntersectionResult out;
    out.crossings = scan.take();
    out.min_angle_rate = std::numeric_limits<double>::infinity();
    for (const auto& ev : out.crossings) {
        out.value += ev.sign;
        out.min_angle_rate = std::min(out.min_angle_rate, std::abs(ev.angle_rate));
    }
    return out;
}

IntersectionResult intersection_number(const HamiltonianSpec& spec, const Point2& x,
                                       const Point2& y, const Point2& e, int n,
                                       const FlowConfig& cfg, double tol_transversal) {
    if (n < 1) {
        throw std::invalid_argument("intersection_number: n must be at least 1");
    }
    if (1.0 - x.norm() <= kBoundarySupportTol) {
        throw std::invalid_argument("intersection_number: x must be an interior point");
    }
    if (std::abs(e.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("intersection_number: e must lie on the boundary circle");
    }
    const Trajectory tx = advance(spec, x, 0.0, static_cast<double>(n), cfg);
    return intersection_number_with(spec, tx, y, e, cfg, tol_transversal);
}

IntegralEstimate intersection_integral(const HamiltonianSpec& spec, const Point2& x,
                                       const Point2& e, int n, const QuadratureSpec& quad,
                                       const FlowConfig& cfg, unsigned threads) {
    if (1.0 - x.norm() <= kBoundarySupportTol) {
        throw std::invalid_argument("intersection_integral: x must be an interior point");
    }
    const Trajectory tx = advance(spec, x, 0.0, static_cast<double>(n), cfg);
    const std::vector<WeightedSample> samples = disk_quadrature(quad);

    std::vector<double> values(samples.size(), 0.0);
    std::vector<long> retries(samples.size(), 0);
    parallel_for(samples.size(), threads, [&](std::size_t i) {
        // Deterministic retry ladder: rotate the anchor by 1e-4 * k.
        for (int k = 0;; ++k) {
            const double rot = 1e-4 * static_cast<double>(k);
            const Point2 ek{e.x * std::cos(rot) - e.y * std::sin(rot),
                            e.x * std::sin(rot) + e.y * std::cos(rot)};
            try {
                values[i] = static_cast<double>(
                    intersection_number_with(spec, tx, samples[i].point, ek, cfg).value);
                break;
            } catch (const TransversalityFailure&) {
                retries[i] = k + 1;
                if (k >= 8) throw;
            }
        }
    });

    const MonteCarloMoments m = weighted_mean(values, kPi);
    IntegralEstimate est;
    est.value = m.value;
    est.std_error = m.std_error;
    for (long r : retries) est.retries += r;
    return est;
}

} // namespace diskdyn
