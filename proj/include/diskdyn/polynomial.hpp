#pragma once

#include <vector>

namespace diskdyn::poly {

/// Coefficients are stored low degree first: c[0] + c[1] s + c[2] s^2 + ...

inline double eval(const std::vector<double>& c, double s) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
    return acc;
}

inline std::vector<double> derivative(const std::vector<double>& c) {
    std::vector<double> d;
    if (c.size() > 1) {
        d.resize(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    }
    return d;
}

inline std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> p(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
    return p;
}

inline std::vector<double> scale(std::vector<double> c, double k) {
    for (double& v : c) v *= k;
    return c;
}

/// Definite integral over [0, 1].
inline double integral01(const std::vector<double>& c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] / static_cast<double>(i + 1);
    return acc;
}

} // namespace diskdyn::poly
