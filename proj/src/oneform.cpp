#include "diskdyn/oneform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskdyn {

GaugePolynomial::GaugePolynomial(std::vector<Monomial> monomials) : monomials_(std::move(monomials)) {
    for (const auto& m : monomials_) {
        if (m.px < 0 || m.py < 0 || m.px + m.py > 4) {
            throw std::invalid_argument("GaugePolynomial: total degree must be <= 4");
        }
    }
}

namespace {

double ipow(double v, int p) {
    double acc = 1.0;
    for (int i = 0; i < p; ++i) acc *= v;
    return acc;
}

} // namespace

double GaugePolynomial::value(const Point2& z) const {
    double acc = 0.0;
    for (const auto& m : monomials_) acc += m.coeff * ipow(z.x, m.px) * ipow(z.y, m.py);
    return acc;
}

Vec2 GaugePolynomial::gradient(const Point2& z) const {
    Vec2 g{0.0, 0.0};
    for (const auto& m : monomials_) {
        if (m.px > 0) g.x += m.coeff * m.px * ipow(z.x, m.px - 1) * ipow(z.y, m.py);
        if (m.py > 0) g.y += m.coeff * m.py * ipow(z.x, m.px) * ipow(z.y, m.py - 1);
    }
    return g;
}

double GaugePolynomial::sup_bound() const {
    double acc = 0.0;
    for (const auto& m : monomials_) acc += std::abs(m.coeff);
    return acc;
}

double GaugePolynomial::gradient_sup_bound() const {
    double gx = 0.0, gy = 0.0;
    for (const auto& m : monomials_) {
        gx += std::abs(m.coeff) * m.px;
        gy += std::abs(m.coeff) * m.py;
    }
    return std::sqrt(gx * gx + gy * gy);
}

GaugePolynomial GaugePolynomial::operator-(const GaugePolynomial& other) const {
    std::vector<Monomial> out = monomials_;
    for (auto m : other.monomials_) {
        m.coeff = -m.coeff;
        out.push_back(m);
    }
    return GaugePolynomial(std::move(out));
}

GaugePolynomial GaugePolynomial::operator+(const GaugePolynomial& other) const {
    std::vector<Monomial> out = monomials_;
    out.insert(out.end(), other.monomials_.begin(), other.monomials_.end());
    return GaugePolynomial(std::move(out));
}

double PrimitiveOneForm::operator()(const Point2& z, const Vec2& v) const {
    double acc = 0.0;
    switch (base) {
        case BaseForm::radial: acc = 0.5 * (z.x * v.y - z.y * v.x); break;
        case BaseForm::vertical: acc = z.x * v.y; break;
        case BaseForm::horizontal: acc = -z.y * v.x; break;
    }
    if (!gauge.empty()) acc += gauge.gradient(z).dot(v);
    return acc;
}

double PrimitiveOneForm::sup_bound() const {
    double acc = base == BaseForm::radial ? 0.5 : 1.0;
    if (!gauge.empty()) acc += gauge.gradient_sup_bound();
    return acc;
}

GaugePolynomial gauge_between(const PrimitiveOneForm& from, const PrimitiveOneForm& to) {
    // vertical = radial + d(xy/2), horizontal = radial - d(xy/2).
    auto base_level = [](BaseForm b) {
        switch (b) {
            case BaseForm::radial: return 0.0;
            case BaseForm::vertical: return 0.5;
            case BaseForm::horizontal: return -0.5;
        }
        return 0.0;
    };
    const double c = base_level(to.base) - base_level(from.base);
    GaugePolynomial base_gap;
    if (c != 0.0) base_gap = GaugePolynomial({{1, 1, c}});
    return base_gap + (to.gauge - from.gauge);
}

namespace {

/// Gauss-Legendre nodes/weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial from Chebyshev starting guesses.
void legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

} // namespace

double segment_integral(const PrimitiveOneForm& form, const Point2& a, const Point2& b, int order) {
    if (order < 2) {
        throw std::invalid_argument("segment_integral: order must be >= 2");
    }
    const Vec2 d = b - a;
    std::vector<double> nodes, weights;
    legendre_rule(order, nodes, weights);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
        const double s = 0.5 * (nodes[i] + 1.0);
        acc += 0.5 * weights[i] * form(a + d * s, d);
    }
    return acc;
}

double path_integral(const PrimitiveOneForm& form, const Trajectory& traj) {
    if (!traj.has_velocities()) {
        throw MissingVelocities("path_integral: trajectory carries no velocities");
    }
    const std::size_t n = traj.steps();
    const double h = traj.dt();
    double acc = 0.0;
    // Composite Simpson per pair of steps; seams of concatenated Hamiltonians
    // sit on even nodes, so the one-sided velocities keep each pair smooth.
    for (std::size_t k = 0; k + 2 <= n; k += 2) {
        const double f0 = form(traj.point(k), traj.velocity(k));
        const double f1 = form(traj.point(k + 1), traj.velocity(k + 1));
        const double f2 = form(traj.point(k + 2), traj.velocity_in(k + 2));
        acc += h / 3.0 * (f0 + 4.0 * f1 + f2);
    }
    return acc;
}

} // namespace diskdyn
