#pragma once

/// \file specfun.hpp
/// Gamma/Beta machinery on the whole real line (log/sign representation with
/// exact pole handling) and the closed-form constants of the fractional
/// Hardy inequalities: the one-dimensional weight integral gamma(a,b), the
/// angular factor, kappa_{d,alpha}, kappa_{d,p,alpha} and A_{d,-alpha}.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hardy/estimate.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

inline bool is_nonpositive_int(double x) {
    return x <= 0.0 && x == std::floor(x);
}

namespace detail {
/// sin(pi*x) with argument reduction done in exact arithmetic, so it stays
/// accurate for large |x| and is exactly 0 at integers.
inline double sin_pi(double x) {
    double r = x - 2.0 * std::floor(x / 2.0); // r in [0,2)
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r < 0.5) return std::sin(M_PI * r);
    if (r < 1.5) return std::sin(M_PI * (1.0 - r)); // sin is odd around 1
    return -std::sin(M_PI * (2.0 - r));
}
} // namespace detail

/// (1+z)^q + (1-z)^q - 2, stable down to z = 0.  The two power terms agree
/// to first order, so the direct sum keeps only noise against a strong
/// kernel; the even binomial series carries the surviving z^2 head exactly.
inline double sym_pow_sum(double q, double z) {
    double az = std::fabs(z);
    if (az >= 1.0)
        throw std::domain_error("sym_pow_sum: |z| < 1 required");
    if (az > 0.2)
        return std::expm1(q * std::log1p(z)) + std::expm1(q * std::log1p(-z));
    // 2 sum_{k>=1} C(q, 2k) z^{2k}
    double z2 = z * z;
    double coef = 0.5 * q * (q - 1.0); // C(q,2)
    double zp = z2;
    double sum = coef * zp;
    for (int k = 2; k <= 13; ++k) {
        coef *= (q - (2 * k - 2)) * (q - (2 * k - 1)) /
                ((2.0 * k - 1.0) * (2.0 * k));
        zp *= z2;
        double term = coef * zp;
        sum += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
    }
    return 2.0 * sum;
}

/// log|Gamma(x)| together with the sign of Gamma(x).  sign == 0 encodes a
/// pole (x a non-positive integer), where 1/Gamma vanishes.
struct GammaPair {
    double log_abs = 0.0;
    int sign = 1;

    static GammaPair of(double x) {
        if (is_nonpositive_int(x))
            return {std::numeric_limits<double>::infinity(), 0};
        if (x > 0.0) return {std::lgamma(x), 1};
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x), 1-x > 0 here.
        double s = detail::sin_pi(x);
        double la = std::log(M_PI) - std::log(std::fabs(s)) - std::lgamma(1.0 - x);
        return {la, s > 0.0 ? 1 : -1};
    }

    double value() const {
        if (sign == 0) return std::numeric_limits<double>::infinity();
        return sign * std::exp(log_abs);
    }
};

/// 1/Gamma(x) as an entire function: exactly 0 at x in {0,-1,-2,...}.
inline double reciprocal_gamma(double x) {
    GammaPair g = GammaPair::of(x);
    if (g.sign == 0) return 0.0;
    return g.sign * std::exp(-g.log_abs);
}

/// Euler Beta B(x,y) = Gamma(x) Gamma(y) / Gamma(x+y), defined for all
/// x,y not in {0,-1,-2,...} via the entire function 1/Gamma.  In
/// particular B(x,y) = 0 when x+y is a non-positive integer.
inline double beta_c(double x, double y) {
    if (is_nonpositive_int(x) || is_nonpositive_int(y))
        throw std::domain_error("beta_c: argument at a Gamma pole");
    GammaPair gx = GammaPair::of(x), gy = GammaPair::of(y),
              gxy = GammaPair::of(x + y);
    if (gxy.sign == 0) return 0.0;
    return gx.sign * gy.sign * gxy.sign *
           std::exp(gx.log_abs + gy.log_abs - gxy.log_abs);
}

/// gamma(a,b) = B(b+1,-a) + B(a-b,-a) + 1/a, the closed form of the
/// absolutely convergent integral
///   int_0^1 (t^b - 1)(1 - t^{a-b-1}) (1-t)^{-1-a} dt,
/// valid for a in (0,2) \ {1}, b in (-1,a).
inline double gamma_ab_closed(double a, double b) {
    if (!(a > 0.0 && a < 2.0))
        throw std::domain_error("gamma_ab_closed: a outside (0,2)");
    if (a == 1.0)
        throw std::domain_error("gamma_ab_closed: a = 1 is a Beta pole; "
                                "use the integral form");
    if (!(b > -1.0 && b < a))
        throw std::domain_error("gamma_ab_closed: b outside (-1,a)");
    return beta_c(b + 1.0, -a) + beta_c(a - b, -a) + 1.0 / a;
}

/// gamma(a,b) by direct quadrature of its defining integral; the only
/// route at a = 1.  Split at t = 1/2 with endpoint-adapted evaluation:
/// near t = 1 the integrand is computed from the distance 1-t (it behaves
/// like (1-t)^{1-a}), near t = 0 from t itself (exponent min(b, a-b-1)).
inline Estimate gamma_ab_quad(double a, double b, double tol) {
    if (!(a > 0.0 && a < 2.0))
        throw std::domain_error("gamma_ab_quad: a outside (0,2)");
    if (!(b > -1.0 && b < a))
        throw std::domain_error("gamma_ab_quad: b outside (-1,a)");
    if (!(tol > 0.0)) throw std::domain_error("gamma_ab_quad: tol <= 0");
    if (b == 0.0 || b == a - 1.0)
        return {0.0, 0.0, EstimateKind::deterministic, 0};
    const double c = a - b - 1.0;
    QuadConfig cfg;
    cfg.strict = false;
    auto left = [&](double t, double dl, double dr) {
        (void)dr;
        double tb = std::expm1(b * std::log(dl));       // t^b - 1, t = dl
        double tc = -std::expm1(c * std::log(dl));      // 1 - t^{a-b-1}
        return tb * tc * std::pow(1.0 - t, -1.0 - a);
    };
    auto right = [&](double t, double dl, double dr) {
        (void)t;
        (void)dl;
        double lt = std::log1p(-dr);                    // log t, t = 1 - dr
        double tb = std::expm1(b * lt);
        double tc = -std::expm1(c * lt);
        return tb * tc * std::pow(dr, -1.0 - a);
    };
    Estimate el = integrate_tanh_sinh(left, 0.0, 0.5, 0.5 * tol, cfg);
    Estimate er = integrate_tanh_sinh(right, 0.5, 1.0, 0.5 * tol, cfg);
    Estimate out = el + er;
    if (out.error > tol)
        throw QuadratureError("gamma_ab_quad: tolerance not met", out);
    return out;
}

/// pi^{(d-1)/2} Gamma((1+alpha)/2) / Gamma((alpha+d)/2).  Equals 1 for d=1.
inline double angular_factor(int d, double alpha) {
    if (d < 1) throw std::domain_error("angular_factor: d >= 1 required");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("angular_factor: alpha outside (0,2)");
    return std::exp(0.5 * (d - 1) * std::log(M_PI) +
                    std::lgamma(0.5 * (1.0 + alpha)) -
                    std::lgamma(0.5 * (alpha + d)));
}

/// Sharp constant of the p=2 half-space Hardy inequality.
inline double kappa_bd(int d, double alpha) {
    double af = angular_factor(d, alpha);
    double br = beta_c(0.5 * (1.0 + alpha), 0.5 * (2.0 - alpha));
    double p2a = std::pow(2.0, alpha);
    return af * (br - p2a) / (alpha * p2a);
}

/// Sharp constant kappa_{d,p,alpha} of the Sobolev-Bregman half-space Hardy
/// inequality.  alpha = 1 returns the limit value 0 exactly.
inline double kappa(int d, double p, double alpha) {
    if (!(p > 1.0)) throw std::domain_error("kappa: p > 1 required");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("kappa: alpha outside (0,2)");
    if (alpha == 1.0) return 0.0;
    double beta = (alpha - 1.0) / p;
    return -angular_factor(d, alpha) * gamma_ab_closed(alpha, beta);
}

/// Normalization A_{d,-alpha} = 2^alpha Gamma((d+alpha)/2) /
/// (pi^{d/2} |Gamma(-alpha/2)|) of the fractional Laplacian.
inline double a_const(int d, double alpha) {
    if (d < 1) throw std::domain_error("a_const: d >= 1 required");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("a_const: alpha outside (0,2)");
    GammaPair gneg = GammaPair::of(-0.5 * alpha);
    return std::exp(alpha * std::log(2.0) + std::lgamma(0.5 * (d + alpha)) -
                    0.5 * d * std::log(M_PI) - gneg.log_abs);
}

/// The parameter triple (d, p, alpha) with its derived quantities.
struct HardyParams {
    int d;
    double p;
    double alpha;

    HardyParams(int d_, double p_, double alpha_) : d(d_), p(p_), alpha(alpha_) {
        if (d < 1) throw std::invalid_argument("HardyParams: d >= 1 required");
        if (!(p > 1.0) || !std::isfinite(p))
            throw std::invalid_argument("HardyParams: p in (1,inf) required");
        if (!(alpha > 0.0 && alpha < 2.0))
            throw std::invalid_argument("HardyParams: alpha in (0,2) required");
    }

    double p_conj() const { return p / (p - 1.0); }
    double beta() const { return (alpha - 1.0) / p; }
    double beta_conj() const { return (p - 1.0) * (alpha - 1.0) / p; }
    HardyParams conj() const { return HardyParams(d, p_conj(), alpha); }
    double kappa_value() const { return kappa(d, p, alpha); }
};

} // namespace hardy
