#pragma once

/// \file sphere.hpp
/// Surface integrals over S^{d-1} for d in {1,2,3}.  d=1 is the two-point
/// sum, d=2 the periodic trapezoid rule with doubling, d=3 a product of
/// Gauss-Kronrod in cos(theta) (split at the |omega_d| kink) and the
/// periodic trapezoid in phi.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hardy/quadrature.hpp"

namespace hardy {

using SphereFn = std::function<double(const double* omega, int d)>;

namespace detail {

inline Estimate sphere_quad_d2(const SphereFn& g, double tol) {
    // Periodic trapezoid with doubling.  Kinks (|omega_d|^alpha and the
    // like) reduce it to an algebraic rate with a stable step ratio, which
    // Aitken extrapolation of the doubling sequence removes.
    const double two_pi = 2.0 * M_PI;
    std::uint64_t n = 32, total = 0;
    auto sum_at = [&](std::uint64_t N) {
        double s = 0.0;
        for (std::uint64_t j = 0; j < N; ++j) {
            double th = two_pi * (static_cast<double>(j) + 0.5) / N;
            double om[2] = {std::cos(th), std::sin(th)};
            s += g(om, 2);
        }
        total += N;
        return s * (two_pi / N);
    };
    double i0 = sum_at(n), i1 = sum_at(n *= 2);
    double extrap_prev = std::numeric_limits<double>::quiet_NaN();
    for (;;) {
        double i2 = sum_at(n *= 2);
        double d0 = i1 - i0, d1 = i2 - i1;
        double err_plain = std::fabs(d1);
        if (err_plain <= std::max(tol, 1e-15 * std::fabs(i2)))
            return {i2, err_plain, EstimateKind::deterministic, total};
        if (d0 != 0.0) {
            double rho = d1 / d0;
            if (rho > 0.0 && rho < 0.95) {
                double extrap = i2 + d1 * rho / (1.0 - rho);
                double err_ex = std::fabs(extrap - extrap_prev);
                if (!std::isnan(extrap_prev) &&
                    err_ex <= std::max(tol, 1e-15 * std::fabs(extrap)))
                    return {extrap, std::max(err_ex, 1e-15 * std::fabs(extrap)),
                            EstimateKind::deterministic, total};
                extrap_prev = extrap;
            } else {
                extrap_prev = std::numeric_limits<double>::quiet_NaN();
            }
        }
        if (n >= (1u << 22)) {
            Estimate e{i2, err_plain, EstimateKind::deterministic, total};
            if (err_plain > std::max(tol, 1e-12 * std::fabs(i2)))
                throw QuadratureError("sphere_quad: trapezoid stalled", e);
            return e;
        }
        i0 = i1;
        i1 = i2;
    }
}

inline Estimate sphere_quad_d3(const SphereFn& g, double tol) {
    // int_{S^2} g = int_0^{2pi} int_{-1}^{1} g(mu, phi) dmu dphi
    QuadConfig cfg;
    cfg.strict = false;
    cfg.max_intervals = 1200;
    std::uint64_t evals = 0;
    auto mu_integral = [&](double phi) {
        double cp = std::cos(phi), sp = std::sin(phi);
        auto f = [&](double mu, double, double) {
            double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            double om[3] = {s * cp, s * sp, mu};
            return g(om, 3);
        };
        Estimate e = integrate_adaptive(f, -1.0, 1.0, 0.1 * tol, {0.0}, cfg);
        evals += e.samples_or_nodes;
        return e.value;
    };
    const double two_pi = 2.0 * M_PI;
    std::uint64_t n = 8;
    auto sum_at = [&](std::uint64_t N) {
        double s = 0.0;
        for (std::uint64_t j = 0; j < N; ++j)
            s += mu_integral(two_pi * (static_cast<double>(j) + 0.5) / N);
        return s * (two_pi / N);
    };
    double prev = sum_at(n);
    for (;;) {
        n *= 2;
        double cur = sum_at(n);
        double err = std::fabs(cur - prev) + 0.2 * tol;
        if (err <= std::max(2.0 * tol, 1e-14 * std::fabs(cur)) || n >= 4096) {
            Estimate e{cur, err, EstimateKind::deterministic, evals};
            if (err > std::max(4.0 * tol, 1e-11 * std::fabs(cur)))
                throw QuadratureError("sphere_quad: phi rule stalled", e);
            return e;
        }
        prev = cur;
    }
}

} // namespace detail

/// Integral of g over the unit sphere S^{d-1}, d in {1,2,3}.
inline Estimate sphere_quad(const SphereFn& g, int d, double tol) {
    if (d == 1) {
        double om_p = 1.0, om_m = -1.0;
        double v = g(&om_p, 1) + g(&om_m, 1);
        return {v, 0.0, EstimateKind::deterministic, 2};
    }
    if (d == 2) return detail::sphere_quad_d2(g, tol);
    if (d == 3) return detail::sphere_quad_d3(g, tol);
    throw std::invalid_argument("sphere_quad: d must be 1, 2 or 3");
}

} // namespace hardy
