#pragma once

/// \file bregman.hpp
/// Signed powers a^{<k>} = |a|^k sgn a, the Bregman divergence
/// F_p(a,b) = |b|^p - |a|^p - p a^{<p-1>} (b-a), and the empirical
/// two-sided comparison of F_p with squared p/2-power differences.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy {

/// |a|^k sgn a.  Odd in a, increasing for k > 0.
inline double signed_pow(double a, double k) {
    if (a == 0.0) {
        if (k <= 0.0)
            throw std::domain_error("signed_pow: a = 0 with k <= 0");
        return 0.0;
    }
    double m = std::pow(std::fabs(a), k);
    return a > 0.0 ? m : -m;
}

/// Stable difference signed_pow(b,k) - signed_pow(a,k) given delta = b - a.
/// Uses expm1/log1p when a and b share a sign and are close; the direct
/// difference is safe otherwise.
inline double signed_pow_diff(double a, double b, double delta, double k) {
    if (delta == 0.0) return 0.0;
    if (a == 0.0) return signed_pow(b, k);
    if (b == 0.0) return -signed_pow(a, k);
    if ((a > 0.0) == (b > 0.0) && std::fabs(delta) < 0.25 * std::fabs(a)) {
        // |b|^k = |a|^k (1 + delta/a)^k, same sign branch
        double r = std::expm1(k * std::log1p(delta / a));
        double m = std::pow(std::fabs(a), k) * r;
        return a > 0.0 ? m : -m;
    }
    return signed_pow(b, k) - signed_pow(a, k);
}

/// Bregman divergence F_p(a,b); nonnegative, 0 iff a = b.
inline double bregman_f(double p, double a, double b) {
    if (!(p > 1.0)) throw std::domain_error("bregman_f: p > 1 required");
    if (p == 2.0) return (b - a) * (b - a); // exact: F_2(a,b) = (b-a)^2
    return std::pow(std::fabs(b), p) - std::pow(std::fabs(a), p) -
           p * signed_pow(a, p - 1.0) * (b - a);
}

/// F_p(a, a + delta) without cancellation.  For |delta| << |a| the direct
/// formula subtracts three nearly equal O(|a|^p) terms; here the Taylor
/// remainder is summed explicitly instead.
inline double bregman_f_stable(double p, double a, double delta) {
    double b = a + delta;
    if (delta == 0.0) return 0.0;
    if (a == 0.0) return std::pow(std::fabs(b), p);
    if (a < 0.0) { // F_p(-a,-b) = F_p(a,b)
        a = -a;
        delta = -delta;
        b = -b;
    }
    if (!(b > 0.0) || std::fabs(delta) > 0.04 * a)
        return bregman_f(p, a, b);
    // sum_{k>=2} [prod_{j=0..k-1}(p-j)] / k! * a^{p-k} delta^k
    double t = delta / a;
    double tk = t * t;
    double coef = p * (p - 1.0) / 2.0; // k = 2 term
    double sum = coef * tk;
    for (int k = 3; k <= 16; ++k) {
        coef *= (p - (k - 1)) / k;
        tk *= t;
        if (coef == 0.0) break; // integer p: series terminates
        sum += coef * tk;
    }
    return std::pow(a, p) * sum;
}

/// Ratio F_p(a,b) / (b^{<p/2>} - a^{<p/2>})^2, continuously extended across
/// the diagonal (limit 2(p-1)/p for a = b != 0).
inline double bregman_ratio(double p, double a, double b) {
    double delta = b - a;
    if (delta == 0.0) return 2.0 * (p - 1.0) / p;
    double num = bregman_f_stable(p, a, delta);
    double den = signed_pow_diff(a, b, delta, 0.5 * p);
    return num / (den * den);
}

/// Empirical two-sided comparability constants.
struct ComparabilityScan {
    double p = 0.0;
    double c_lower = 0.0;
    double c_upper = 0.0;
    std::string grid_spec;
};

/// Scans the ratio over directions (a,b) = (cos t, sin t); by 0-homogeneity
/// this covers all of R^2 minus the diagonal.  Grid extrema are polished by
/// golden-section refinement so that off-grid points stay inside the
/// bracket.
inline ComparabilityScan comparability_scan(double p, int n_points = 10000) {
    if (!(p > 1.0))
        throw std::domain_error("comparability_scan: p > 1 required");
    if (n_points < 8)
        throw std::invalid_argument("comparability_scan: degenerate grid");
    auto ratio_at = [&](double t) {
        double a = std::cos(t), b = std::sin(t);
        return bregman_ratio(p, a, b);
    };
    const double two_pi = 2.0 * M_PI;
    std::vector<double> ts(n_points), rs(n_points);
    for (int i = 0; i < n_points; ++i) {
        double t = two_pi * (i + 0.5) / n_points;
        ts[i] = t;
        rs[i] = ratio_at(t);
    }
    auto polish = [&](int i, bool want_min) {
        double lo = ts[(i + n_points - 1) % n_points];
        double hi = ts[(i + 1) % n_points];
        if (hi < lo) hi += two_pi;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = ratio_at(x1), f2 = ratio_at(x2);
        for (int it = 0; it < 80; ++it) {
            bool take_left = want_min ? (f1 < f2) : (f1 > f2);
            if (take_left) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo); f1 = ratio_at(x1);
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo); f2 = ratio_at(x2);
            }
        }
        return want_min ? std::min(f1, f2) : std::max(f1, f2);
    };
    int imin = 0, imax = 0;
    for (int i = 1; i < n_points; ++i) {
        if (rs[i] < rs[imin]) imin = i;
        if (rs[i] > rs[imax]) imax = i;
    }
    ComparabilityScan out;
    out.p = p;
    out.c_lower = std::min(rs[imin], polish(imin, true));
    out.c_upper = std::max(rs[imax], polish(imax, false));
    out.grid_spec = "unit circle, " + std::to_string(n_points) +
                    " midpoints + golden-section polish";
    return out;
}

} // namespace hardy
