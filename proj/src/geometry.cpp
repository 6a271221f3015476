#include "diskdyn/geometry.hpp"

#include <cmath>

#include "diskdyn/rng.hpp"

namespace diskdyn {

double angle_increment(const Vec2& dir_prev, const Vec2& dir_next) {
    if (dir_prev.norm() < kZeroVectorTol || dir_next.norm() < kZeroVectorTol) {
        throw ZeroVector("angle_increment: direction vector below 1e-14");
    }
    double delta = std::atan2(dir_prev.cross(dir_next), dir_prev.dot(dir_next));
    if (delta <= -kPi) {
        delta += kTwoPi; // map the branch point to +pi
    }
    return delta;
}

namespace {

Point2 disk_point(std::uint64_t seed, std::uint64_t index, std::uint64_t dim0) {
    const double u = rng::uniform01(seed, index, dim0);
    const double v = rng::uniform01(seed, index, dim0 + 1);
    const double r = std::sqrt(u);
    const double theta = kTwoPi * v;
    return {r * std::cos(theta), r * std::sin(theta)};
}

} // namespace

std::vector<WeightedSample> disk_quadrature(const QuadratureSpec& spec) {
    std::vector<WeightedSample> out;
    if (spec.kind == QuadratureKind::polar_grid) {
        const int nr = spec.n_r;
        const int nt = spec.n_theta;
        const double w = kPi / (static_cast<double>(nr) * static_cast<double>(nt));
        out.reserve(static_cast<std::size_t>(nr) * static_cast<std::size_t>(nt));
        for (int i = 0; i < nr; ++i) {
            const double s = (i + 0.5) / nr; // node in r^2, equal-area rings
            const double r = std::sqrt(s);
            for (int j = 0; j < nt; ++j) {
                const double theta = kTwoPi * (j + 0.5) / nt;
                out.push_back({{r * std::cos(theta), r * std::sin(theta)}, w});
            }
        }
    } else {
        const int n = spec.n_samples;
        const double w = kPi / n;
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            out.push_back({disk_point(spec.seed, static_cast<std::uint64_t>(i), 0), w});
        }
    }
    return out;
}

PairSet pair_quadrature(const QuadratureSpec& spec, double min_separation) {
    PairSet set;
    const int n = spec.n_samples;
    const double w = kPi * kPi / n;
    set.samples.reserve(static_cast<std::size_t>(n));
    long rejected = 0;
    for (int i = 0; i < n; ++i) {
        // Each retry reads a fresh block of four dimensions of the stream,
        // so the accepted pair depends only on (seed, i).
        for (std::uint64_t attempt = 0;; ++attempt) {
            const Point2 a = disk_point(spec.seed, static_cast<std::uint64_t>(i), 4 * attempt);
            const Point2 b = disk_point(spec.seed, static_cast<std::uint64_t>(i), 4 * attempt + 2);
            if ((a - b).norm() >= min_separation) {
                set.samples.push_back({a, b, w});
                break;
            }
            ++rejected;
        }
    }
    set.resample_fraction = static_cast<double>(rejected) / (rejected + static_cast<double>(n));
    return set;
}

namespace {

double pairwise_sum_range(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_range(v, half) + pairwise_sum_range(v + half, n - half);
}

} // namespace

double pairwise_sum(const std::vector<double>& values) {
    return pairwise_sum_range(values.data(), values.size());
}

MonteCarloMoments weighted_mean(const std::vector<double>& values, double total_weight) {
    MonteCarloMoments m;
    const std::size_t n = values.size();
    if (n == 0) return m;
    const double mean = pairwise_sum(values) / static_cast<double>(n);
    m.value = total_weight * mean;
    if (n > 1) {
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = values[i] - mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
        m.std_error = total_weight * std::sqrt(var / static_cast<double>(n));
    }
    return m;
}

} // namespace diskdyn
