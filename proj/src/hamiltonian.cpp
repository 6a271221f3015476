#include "diskdyn/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "diskdyn/polynomial.hpp"

namespace diskdyn {

namespace {

constexpr double kSeamTol = 1e-12;

/// Reduce to [0, 1], keeping 1.0 (rather than 0.0) when the left limit at an
/// integer time is requested.
double reduce_mod1(double t, TimeSide side) {
    double u = t - std::floor(t);
    if (u < kSeamTol) {
        if (side == TimeSide::before && t > 0.5) return 1.0; // t at an integer >= 1
        return 0.0;
    }
    if (u > 1.0 - kSeamTol) {
        return side == TimeSide::before ? 1.0 : 0.0;
    }
    return u;
}

double clamp01(double t) { return std::min(1.0, std::max(0.0, t)); }

double tau_value(TimeProfile p, double t) {
    switch (p) {
        case TimeProfile::constant: return 1.0;
        case TimeProfile::cosine: return std::cos(kTwoPi * t);
        case TimeProfile::sine: return std::sin(kTwoPi * t);
    }
    return 1.0;
}

} // namespace

HamiltonianSpec::HamiltonianSpec(std::vector<HamiltonianTerm> terms) : terms_(std::move(terms)) {
    rebuild_cache();
}

HamiltonianSpec HamiltonianSpec::radial(std::vector<double> profile, double amplitude) {
    RadialTerm term;
    term.profile = std::move(profile);
    term.amplitude = amplitude;
    return HamiltonianSpec({HamiltonianTerm{std::move(term)}});
}

HamiltonianSpec HamiltonianSpec::perturbation(int harmonic, TimeProfile tau, double amplitude) {
    PerturbationTerm term;
    term.harmonic = harmonic;
    term.tau = tau;
    term.amplitude = amplitude;
    return HamiltonianSpec({HamiltonianTerm{term}});
}

HamiltonianSpec HamiltonianSpec::concatenate(const HamiltonianSpec& first,
                                             const HamiltonianSpec& second) {
    ConcatTerm term;
    term.first = std::make_shared<const HamiltonianSpec>(first);
    term.second = std::make_shared<const HamiltonianSpec>(second);
    return HamiltonianSpec({HamiltonianTerm{std::move(term)}});
}

HamiltonianSpec HamiltonianSpec::time_reversed(const HamiltonianSpec& inner) {
    ReversedTerm term;
    term.inner = std::make_shared<const HamiltonianSpec>(inner);
    return HamiltonianSpec({HamiltonianTerm{std::move(term)}});
}

void HamiltonianSpec::rebuild_cache() {
    radial_cache_.clear();
    breakpoints_.clear();
    const std::vector<double> cutoff{1.0, -2.0, 1.0}; // (1 - s)^2
    for (const auto& term : terms_) {
        if (const auto* radial = std::get_if<RadialTerm>(&term)) {
            RadialCache cache;
            cache.h = poly::scale(poly::multiply(radial->profile, cutoff), radial->amplitude);
            cache.dh = poly::derivative(cache.h);
            radial_cache_.push_back(std::move(cache));
        } else if (const auto* concat = std::get_if<ConcatTerm>(&term)) {
            breakpoints_.push_back(0.5);
            for (double b : concat->first->time_breakpoints()) breakpoints_.push_back(0.5 * b);
            for (double b : concat->second->time_breakpoints()) breakpoints_.push_back(0.5 + 0.5 * b);
        } else if (const auto* reversed = std::get_if<ReversedTerm>(&term)) {
            for (double b : reversed->inner->time_breakpoints()) breakpoints_.push_back(1.0 - b);
        }
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end(),
                                   [](double a, double b) { return std::abs(a - b) < kSeamTol; }),
                       breakpoints_.end());
}

double HamiltonianSpec::value(const Point2& z, double t, TimeSide side) const {
    const double u = reduce_mod1(t, side);
    const double s = z.norm_sq();
    double acc = 0.0;
    std::size_t radial_index = 0;
    for (const auto& term : terms_) {
        if (std::holds_alternative<RadialTerm>(term)) {
            acc += poly::eval(radial_cache_[radial_index].h, s);
            ++radial_index;
        } else if (const auto* pert = std::get_if<PerturbationTerm>(&term)) {
            const double chi = (1.0 - s) * (1.0 - s);
            double re = 1.0, im = 0.0; // (x + iy)^k
            for (int j = 0; j < pert->harmonic; ++j) {
                const double nre = re * z.x - im * z.y;
                im = re * z.y + im * z.x;
                re = nre;
            }
            acc += pert->amplitude * chi * re * tau_value(pert->tau, u);
        } else if (const auto* concat = std::get_if<ConcatTerm>(&term)) {
            const bool first_half =
                u < 0.5 - kSeamTol || (std::abs(u - 0.5) <= kSeamTol && side == TimeSide::before);
            if (first_half) {
                acc += 2.0 * concat->first->value(z, clamp01(2.0 * u), side);
            } else {
                acc += 2.0 * concat->second->value(z, clamp01(2.0 * u - 1.0), side);
            }
        } else if (const auto* reversed = std::get_if<ReversedTerm>(&term)) {
            const TimeSide flipped = side == TimeSide::after ? TimeSide::before : TimeSide::after;
            acc -= reversed->inner->value(z, 1.0 - u, flipped);
        }
    }
    return acc;
}

Vec2 HamiltonianSpec::gradient(const Point2& z, double t, TimeSide side) const {
    const double u = reduce_mod1(t, side);
    const double s = z.norm_sq();
    Vec2 acc{0.0, 0.0};
    std::size_t radial_index = 0;
    for (const auto& term : terms_) {
        if (std::holds_alternative<RadialTerm>(term)) {
            const double dh = poly::eval(radial_cache_[radial_index].dh, s);
            acc += Vec2{2.0 * z.x * dh, 2.0 * z.y * dh};
            ++radial_index;
        } else if (const auto* pert = std::get_if<PerturbationTerm>(&term)) {
            const double chi = (1.0 - s) * (1.0 - s);
            const double dchi = -2.0 * (1.0 - s);
            double re1 = 1.0, im1 = 0.0; // (x + iy)^(k-1)
            for (int j = 0; j + 1 < pert->harmonic; ++j) {
                const double nre = re1 * z.x - im1 * z.y;
                im1 = re1 * z.y + im1 * z.x;
                re1 = nre;
            }
            const double re = re1 * z.x - im1 * z.y; // Re z^k
            const double k = static_cast<double>(pert->harmonic);
            const double at = pert->amplitude * tau_value(pert->tau, u);
            // grad Re z^k = k (Re z^(k-1), -Im z^(k-1))
            acc += Vec2{at * (dchi * 2.0 * z.x * re + chi * k * re1),
                        at * (dchi * 2.0 * z.y * re - chi * k * im1)};
        } else if (const auto* concat = std::get_if<ConcatTerm>(&term)) {
            const bool first_half =
                u < 0.5 - kSeamTol || (std::abs(u - 0.5) <= kSeamTol && side == TimeSide::before);
            if (first_half) {
                acc += 2.0 * concat->first->gradient(z, clamp01(2.0 * u), side);
            } else {
                acc += 2.0 * concat->second->gradient(z, clamp01(2.0 * u - 1.0), side);
            }
        } else if (const auto* reversed = std::get_if<ReversedTerm>(&term)) {
            const TimeSide flipped = side == TimeSide::after ? TimeSide::before : TimeSide::after;
            acc -= reversed->inner->gradient(z, 1.0 - u, flipped);
        }
    }
    return acc;
}

} // namespace diskdyn
