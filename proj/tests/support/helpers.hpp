#pragma once

// Small data generators and numeric oracles shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vecdep/core.hpp"
#include "vecdep/random.hpp"

namespace testing {

inline double standard_normal(vecdep::Rng& rng) {
    // Box-Muller, one variate per call
    const double u1 = vecdep::uniform_open(rng);
    const double u2 = vecdep::uniform_open(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

/// X_j = Z_x + noise, Y_k = Z_y + noise with corr(Z_x, Z_y) = coupling and
/// noise sd 0.5. coupling = 0 gives independent blocks.
inline vecdep::GroupedData gaussian_groups(std::size_t n, std::size_t p, std::size_t q, double coupling,
                                           std::uint64_t seed) {
    vecdep::Matrix m(n, p + q);
    vecdep::Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double zx = standard_normal(rng);
        const double zy = coupling * zx + std::sqrt(1.0 - coupling * coupling) * standard_normal(rng);
        for (std::size_t j = 0; j < p; ++j) m(i, j) = zx + 0.5 * standard_normal(rng);
        for (std::size_t j = 0; j < q; ++j) m(i, p + j) = zy + 0.5 * standard_normal(rng);
    }
    std::vector<vecdep::Group> g(2);
    g[0].name = "X";
    g[1].name = "Y";
    for (std::size_t j = 0; j < p; ++j) g[0].columns.push_back(j);
    for (std::size_t j = 0; j < q; ++j) g[1].columns.push_back(p + j);
    return vecdep::GroupedData(std::move(m), std::move(g));
}

/// Two-column data with groups "X" = column 0, "Y" = column 1.
inline vecdep::GroupedData pair_data(const std::vector<double>& x, const std::vector<double>& y) {
    vecdep::Matrix m(x.size(), 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        m(i, 0) = x[i];
        m(i, 1) = y[i];
    }
    return vecdep::GroupedData(std::move(m), {{"X", {0}}, {"Y", {1}}});
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// P(Gamma(k, 1) > x) for integer k: sum_{j<k} e^{-x} x^j / j!.
inline double poisson_cdf_tail(int k, double x) {
    double term = std::exp(-x), s = 0.0;
    for (int j = 0; j < k; ++j) {
        s += term;
        term *= x / (j + 1);
    }
    return s;
}

/// Joint Kendall distribution of a Clayton(theta) model split p + q, by
/// integrating over the Gamma(1/theta) frailty: given V = v the sums of the
/// unit exponentials are Gamma(p), Gamma(q) and T <= t  <=>  sum >= v psi^{-1}(t).
inline double clayton_joint_kendall_by_quadrature(double theta, int p, int q, double t1, double t2) {
    const double a = std::pow(t1, -theta) - 1.0;
    const double b = std::pow(t2, -theta) - 1.0;
    const double shape = 1.0 / theta;
    // v = w^2 turns v^(shape-1) dv into 2 w^(2 shape-1) dw, bounded for theta <= 2
    auto integrand = [&](double w) {
        const double v = w * w;
        const double dens = 2.0 * std::pow(w, 2.0 * shape - 1.0) * std::exp(-v - std::lgamma(shape));
        return dens * poisson_cdf_tail(p, v * a) * poisson_cdf_tail(q, v * b);
    };
    return simpson(integrand, 0.0, 12.0, 200000);
}

}  // namespace testing
