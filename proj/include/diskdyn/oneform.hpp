#pragma once

#include <vector>

#include "diskdyn/flow.hpp"
#include "diskdyn/geometry.hpp"

namespace diskdyn {

/// Base primitives of the area form dx ^ dy.
enum class BaseForm {
    radial,     // (x dy - y dx) / 2
    vertical,   // x dy
    horizontal, // -y dx
};

/// Bivariate polynomial u(x, y) of total degree <= 4, used as the exact
/// gauge term du added to a base primitive.
class GaugePolynomial {
public:
    struct Monomial {
        int px = 0;
        int py = 0;
        double coeff = 0.0;
    };

    GaugePolynomial() = default;
    explicit GaugePolynomial(std::vector<Monomial> monomials);

    double value(const Point2& z) const;
    Vec2 gradient(const Point2& z) const;

    bool empty() const { return monomials_.empty(); }
    const std::vector<Monomial>& monomials() const { return monomials_; }

    /// Upper bound for sup |u| on the disk (sum of |coeff|).
    double sup_bound() const;
    /// Upper bound for sup |grad u| on the disk.
    double gradient_sup_bound() const;

    GaugePolynomial operator-(const GaugePolynomial& other) const;
    GaugePolynomial operator+(const GaugePolynomial& other) const;

private:
    std::vector<Monomial> monomials_;
};

/// A primitive lambda of omega0 = dx ^ dy: a base variant plus an optional
/// exact gauge term du.
struct PrimitiveOneForm {
    BaseForm base = BaseForm::radial;
    GaugePolynomial gauge;

    PrimitiveOneForm() = default;
    explicit PrimitiveOneForm(BaseForm b, GaugePolynomial g = {}) : base(b), gauge(std::move(g)) {}

    /// lambda_z(v).
    double operator()(const Point2& z, const Vec2& v) const;

    /// sup over the disk of |lambda_z(v)| for unit v; used in tolerance
    /// budgets for segment integrals.
    double sup_bound() const;
};

/// The gauge u with `to` = `from` + du.  Exists because all primitives of
/// omega0 on the disk differ by an exact form.
GaugePolynomial gauge_between(const PrimitiveOneForm& from, const PrimitiveOneForm& to);

/// Integral of lambda along the oriented straight segment [a, b], by
/// Gauss-Legendre quadrature with `order` nodes.  Exact for the polynomial
/// integrands produced by base variants and degree-4 gauges once order >= 4.
double segment_integral(const PrimitiveOneForm& form, const Point2& a, const Point2& b, int order = 8);

/// Integral of lambda along a flow trajectory, by composite Simpson over
/// the trajectory's uniform grid using the stored node velocities.
double path_integral(const PrimitiveOneForm& form, const Trajectory& traj);

} // namespace diskdyn
