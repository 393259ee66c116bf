#pragma once

/// \file halfspace.hpp
/// Everything on the half-space D = {x_d > 0}: the Sobolev-Bregman form
/// E_p[u], the weighted norm, the ground-state identity of the regional
/// fractional Laplacian on power weights, the weight decomposition of
/// E_p[u], and the extremal sweep certifying sharpness of
/// kappa_{d,p,alpha}.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/bregman.hpp"
#include "hardy/double_singular.hpp"
#include "hardy/pv.hpp"
#include "hardy/specfun.hpp"
#include "hardy/test_function.hpp"

namespace hardy {

struct EngineConfig {
    double rel_tol = 1e-7;             // deterministic engines, relative
    std::uint64_t mc_samples = 1'000'000;
    int mc_strata = 32;
    std::uint64_t seed = 20260810u;
};

struct HardyReport {
    std::string label;
    Estimate lhs;          // form value
    Estimate rhs;          // weighted norm
    double constant = 0.0; // kappa
    double ratio = 0.0;
    double margin = 0.0;       // lhs - constant * rhs
    double tol_combined = 0.0; // pass threshold derived from both errors
    bool pass = false;
};

inline HardyReport make_report(std::string label, const Estimate& lhs,
                               const Estimate& rhs, double constant) {
    if (!(rhs.value > 1e-14 * (1.0 + std::fabs(lhs.value))))
        throw std::domain_error("HardyReport: degenerate right-hand side");
    HardyReport r;
    r.label = std::move(label);
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant = constant;
    r.ratio = lhs.value / rhs.value;
    r.margin = lhs.value - constant * rhs.value;
    double mult = (lhs.kind == EstimateKind::monte_carlo ||
                   rhs.kind == EstimateKind::monte_carlo)
                      ? 3.0
                      : 1.0;
    r.tol_combined = mult * (lhs.error + constant * rhs.error) +
                     1e-12 * (std::fabs(lhs.value) + constant * rhs.value);
    r.pass = r.margin >= -r.tol_combined;
    return r;
}

namespace detail {

/// Integral of f over [a,b] where f may have algebraic edge behavior at a
/// and b and kinks at the given interior breakpoints.  The edge pieces run
/// through tanh-sinh with exact edge distances relative to a resp. b; f is
/// called as f(x, from_a, b_minus_x).
inline Estimate edge_singular_integral(
    const std::function<double(double, double, double)>& f, double a, double b,
    std::vector<double> breaks, double rel_tol, int max_intervals = 600) {
    QuadConfig cfg;
    cfg.strict = false;
    cfg.rel = 0.5 * rel_tol;
    cfg.max_intervals = max_intervals;
    std::vector<double> in;
    for (double t : breaks)
        if (t > a + 1e-13 * (b - a) && t < b - 1e-13 * (b - a)) in.push_back(t);
    std::sort(in.begin(), in.end());
    double m0 = in.empty() ? 0.5 * (a + b) : in.front();
    double m1 = in.empty() ? 0.5 * (a + b) : in.back();
    auto left = [&](double x, double dl, double) {
        return f(x, dl, b - x);
    };
    auto right = [&](double x, double, double dr) {
        return f(x, x - a, dr);
    };
    Estimate e = integrate_tanh_sinh(left, a, m0, 0.0, cfg);
    if (m1 > m0) {
        auto mid = [&](double x, double, double) { return f(x, x - a, b - x); };
        e = e + integrate_adaptive(mid, m0, m1, 0.0, in, cfg);
    }
    if (b > m1) e = e + integrate_tanh_sinh(right, m1, b, 0.0, cfg);
    e.error += cfg.rel * std::fabs(e.value);
    return e;
}

} // namespace detail

/// Pair integrand of E_p: (u(x)-u(y)) (u(x)^{<p-1>} - u(y)^{<p-1>}) / v^2.
inline PairIntegrand1D ep_pair_integrand(const Func1D& u, double p) {
    PairIntegrand1D g;
    g.x_breaks = u.breakpoints();
    g.g_over_v2 = [u, p](double x, double v) {
        if (!(v > 0.0)) return 0.0;
        double d1 = u.diff(x, v);
        if (d1 == 0.0) return 0.0;
        double ux = u(x);
        double d2 = signed_pow_diff(ux, ux + d1, d1, p - 1.0);
        return (d1 / v) * (d2 / v);
    };
    return g;
}

/// Weighted norm int_D |u|^p x_d^{-alpha} dx.  In product form the x'
/// directions separate into plain |f_i|^p integrals.
inline Estimate weighted_norm(const TestFunction& u, double p, double alpha,
                              const EngineConfig& ec = {}) {
    Estimate total{1.0, 0.0, EstimateKind::deterministic, 0};
    int d = u.dim();
    double acc_val = 1.0, acc_rel_err = 0.0;
    std::uint64_t nodes = 0;
    for (int i = 0; i < d; ++i) {
        const Func1D& f = u.axis(i);
        bool weighted = (i == d - 1);
        if (weighted && !(f.lo() > 0.0))
            throw std::domain_error("weighted_norm: support must have x_d > 0");
        auto integrand = [&](double x, double, double) {
            double v = std::fabs(f(x));
            if (v == 0.0) return 0.0;
            double w = weighted ? std::pow(x, -alpha) : 1.0;
            return std::pow(v, p) * w;
        };
        Estimate e = detail::edge_singular_integral(integrand, f.lo(), f.hi(),
                                                    f.breakpoints(),
                                                    ec.rel_tol);
        acc_rel_err += e.error / std::max(1e-300, std::fabs(e.value));
        acc_val *= e.value;
        nodes += e.samples_or_nodes;
    }
    total.value = acc_val;
    total.error = std::fabs(acc_val) * acc_rel_err;
    total.samples_or_nodes = nodes;
    return total;
}

/// E_p[u] on D = (0,inf), d = 1, deterministic.  Core over supp(u)^2 plus
/// the exact-kernel halo where exactly one argument leaves the support.
inline Estimate form_ep_1d(const Func1D& u, const HardyParams& par,
                           const EngineConfig& ec = {}) {
    const double s0 = u.lo(), s1 = u.hi();
    if (!(s0 > 0.0))
        throw std::domain_error("form_ep: support must satisfy inf x_d > 0");
    const double alpha = par.alpha, p = par.p;
    QuadConfig qc;
    qc.strict = false;
    Estimate core =
        double_singular_1d(ep_pair_integrand(u, p), s0, s1, alpha, ec.rel_tol, qc);
    // halo: for y outside supp u the pair integrand is |u(x)|^p; the
    // kernel mass over (0,s0) and (s1,inf) is exact
    auto f = [&](double x, double dl, double dr) {
        double uv = std::fabs(u(x));
        if (uv == 0.0) return 0.0;
        double left = (std::pow(dl, -alpha) - std::pow(x, -alpha)) / alpha;
        double right = std::pow(dr, -alpha) / alpha;
        return std::pow(uv, p) * (left + right);
    };
    Estimate halo = detail::edge_singular_integral(f, s0, s1, u.breakpoints(),
                                                   ec.rel_tol);
    return core.scaled(0.5) + halo;
}

// ---------------------------------------------------------------------------
// d = 2 Monte Carlo form with deterministic halo

/// Stable pair integrand of E_p for a 2-D product function.
inline PairIntegrand2D ep_pair_integrand_2d(const TestFunction& u, double p) {
    const Func1D f1 = u.axis(0), f2 = u.axis(1);
    PairIntegrand2D g;
    g.g_over_r2 = [f1, f2, p](const Pt2& x, const Pt2& y, double r) {
        double z1 = y[0] - x[0], z2 = y[1] - x[1];
        double da = f1.diff(x[0], z1);
        double db = f2.diff(x[1], z2);
        double a_t = f1(x[0]), b_t = f2(x[1]);
        double d1 = da * (b_t + db) + a_t * db; // u(y) - u(x)
        if (d1 == 0.0) return 0.0;
        double ux = a_t * b_t;
        double d2 = signed_pow_diff(ux, ux + d1, d1, p - 1.0);
        return (d1 / r) * (d2 / r);
    };
    return g;
}

namespace detail {

/// Ray exit distance from an interior point of an axis box, computed from
/// the point's exact distances to the four faces.
inline double ray_exit_box(double dl1, double dr1, double dl2, double dr2,
                           double c, double s) {
    double t = std::numeric_limits<double>::infinity();
    if (c > 0.0) t = std::min(t, dr1 / c);
    else if (c < 0.0) t = std::min(t, dl1 / -c);
    if (s > 0.0) t = std::min(t, dr2 / s);
    else if (s < 0.0) t = std::min(t, dl2 / -s);
    return t;
}

/// Corner angles of the box seen from the interior point, as splits for the
/// angular quadrature.
inline std::vector<double> box_corner_angles(double dl1, double dr1,
                                             double dl2, double dr2) {
    std::vector<double> a{std::atan2(dr2, dr1), std::atan2(dr2, -dl1),
                          std::atan2(-dl2, -dl1), std::atan2(-dl2, dr1)};
    for (double& t : a)
        if (t < 0.0) t += 2.0 * M_PI;
    std::sort(a.begin(), a.end());
    return a;
}

} // namespace detail

/// E_p[u] on the half-space, d = 2: stratified Monte Carlo on supp(u)^2
/// plus a deterministic halo using polar-exact kernel masses.
inline Estimate form_ep_2d_halfspace(const TestFunction& u,
                                     const HardyParams& par,
                                     const EngineConfig& ec = {}) {
    const Func1D& f1 = u.axis(0);
    const Func1D& f2 = u.axis(1);
    if (!(f2.lo() > 0.0))
        throw std::domain_error("form_ep: support must satisfy inf x_d > 0");
    const double alpha = par.alpha, p = par.p;
    Domain2D S = Domain2D::box({f1.lo(), f2.lo()}, {f1.hi(), f2.hi()});
    McConfig mc;
    mc.samples = ec.mc_samples;
    mc.strata = ec.mc_strata;
    mc.seed = ec.seed;
    Estimate core =
        double_singular_mc2d(ep_pair_integrand_2d(u, p), S, alpha, mc);

    // halo: K_out(x) = (1/alpha) [ oint r_S^{-alpha} - af(2,alpha) x_2^{-alpha} ]
    const double af = angular_factor(2, alpha);
    QuadConfig tc;
    tc.strict = false;
    tc.rel = 1e-6;
    tc.max_intervals = 200;
    auto kout = [&](double x2abs, double dl1, double dr1, double dl2,
                    double dr2) {
        auto arc = [&](double th, double, double) {
            double c = std::cos(th), s = std::sin(th);
            double t = detail::ray_exit_box(dl1, dr1, dl2, dr2, c, s);
            return std::pow(t, -alpha);
        };
        std::vector<double> corners =
            detail::box_corner_angles(dl1, dr1, dl2, dr2);
        Estimate ring = integrate_adaptive(arc, 0.0, 2.0 * M_PI, 0.0, corners, tc);
        return (ring.value - af * std::pow(x2abs, -alpha)) / alpha;
    };
    auto outer = [&](double x1, double dl1, double dr1) {
        double v1 = f1(x1);
        if (v1 == 0.0) return 0.0;
        auto inner = [&](double x2, double dl2, double dr2) {
            double v2 = f2(x2);
            if (v2 == 0.0) return 0.0;
            double uv = std::fabs(v1 * v2);
            return std::pow(uv, p) * kout(x2, dl1, dr1, dl2, dr2);
        };
        Estimate in = detail::edge_singular_integral(
            inner, f2.lo(), f2.hi(), f2.breakpoints(), 3.0 * ec.rel_tol, 200);
        return in.value;
    };
    Estimate halo = detail::edge_singular_integral(
        outer, f1.lo(), f1.hi(), f1.breakpoints(), 3.0 * ec.rel_tol, 200);
    halo.error += 3.0 * ec.rel_tol * std::fabs(halo.value);
    return core.scaled(0.5) + halo;
}

/// E_p[u] on D, dispatching on the dimension of u.
inline Estimate form_ep(const TestFunction& u, const HardyParams& par,
                        const EngineConfig& ec = {}) {
    if (u.dim() == 1) return form_ep_1d(u.axis(0), par, ec);
    if (u.dim() == 2) return form_ep_2d_halfspace(u, par, ec);
    throw std::invalid_argument("form_ep: d in {1,2} supported");
}

/// Half-space Hardy report: E_p[u] vs kappa * weighted norm.
inline HardyReport verify_halfspace(const TestFunction& u,
                                    const HardyParams& par,
                                    const EngineConfig& ec = {}) {
    Estimate lhs = form_ep(u, par, ec);
    Estimate rhs = weighted_norm(u, par.p, par.alpha, ec);
    return make_report(u.name, lhs, rhs, kappa(par.d, par.p, par.alpha));
}

// ---------------------------------------------------------------------------
// ground-state identity

/// Relative residual of L w_beta(x) = gamma(alpha,beta) x^{beta-alpha}
/// in d = 1: the principal value integral against the closed form.
inline double ground_state_residual(double beta, double alpha, double x,
                                    const EngineConfig& ec = {}) {
    if (!(beta > -1.0 && beta < alpha))
        throw std::domain_error("ground_state_residual: beta outside (-1,alpha)");
    if (!(x > 0.0)) throw std::domain_error("ground_state_residual: x <= 0");
    double gamma_ab = (alpha == 1.0)
                          ? gamma_ab_quad(alpha, beta, 1e-12).value
                          : gamma_ab_closed(alpha, beta);
    double target = gamma_ab * std::pow(x, beta - alpha);
    if (beta == 0.0) return 0.0; // both sides vanish identically
    PvProblem prob;
    prob.f = [=](double y) {
        return (std::pow(y, beta) - std::pow(x, beta)) *
               std::pow(std::fabs(y - x), -1.0 - alpha);
    };
    prob.paired = [=](double h) {
        return std::pow(x, beta) * sym_pow_sum(beta, h / x) *
               std::pow(h, -1.0 - alpha);
    };
    prob.a = 0.0;
    prob.b = std::numeric_limits<double>::infinity();
    prob.x0 = x;
    prob.singular_exponent = 1.0 + alpha;
    QuadConfig cfg;
    cfg.strict = false;
    Estimate pv = pv_integral(prob, 1e-10 * (1.0 + std::fabs(target)), cfg);
    return std::fabs(pv.value - target) / (1.0 + std::fabs(target));
}

// ---------------------------------------------------------------------------
// weight decomposition of E_p

struct DecompositionResult {
    Estimate lhs;       // E_p[u]
    Estimate norm;      // weighted norm
    Estimate remainder; // Bregman remainder (the full double integral)
    double c_beta = 0.0;
    double rel_gap = 0.0;
};

/// Admissibility of the weight exponent per the decomposition lemma.
inline bool weight_admissible(double beta, double p, double alpha) {
    if (p < 2.0) return beta > -1.0 && beta < alpha;
    return beta > -1.0 / (p - 1.0) && beta < alpha / (p - 1.0);
}

/// Symmetrized Bregman remainder integrand over v^2:
/// (1/2)[F_p(a_x,a_y) w(x)^{p-1} w(y) + F_p(a_y,a_x) w(y)^{p-1} w(x)] / v^2
/// with a = u/w, w = x^beta.
inline PairIntegrand1D fp_remainder_integrand(const Func1D& u, double p,
                                              double beta) {
    PairIntegrand1D g;
    g.x_breaks = u.breakpoints();
    g.g_over_v2 = [u, p, beta](double x, double v) {
        if (!(v > 0.0)) return 0.0;
        double wx = std::pow(x, beta);
        double dw = wx * std::expm1(beta * std::log1p(v / x));
        double wy = wx + dw;
        double ux = u(x);
        double du = u.diff(x, v);
        double ax = ux / wx;
        // a_y - a_x = (du*wx - ux*dw) / (wx*wy), cancellation-free pieces
        double da = (du * wx - ux * dw) / (wx * wy);
        double ay = ax + da;
        double fxy = bregman_f_stable(p, ax, da);
        double fyx = bregman_f_stable(p, ay, -da);
        double wxp = std::pow(wx, p - 1.0), wyp = std::pow(wy, p - 1.0);
        return 0.5 * (fxy * wxp * wy + fyx * wyp * wx) / (v * v);
    };
    return g;
}

/// Checks E_p[u] = c_beta * norm + remainder / p for admissible weights.
/// c_beta = -((p-1) gamma(alpha,beta) + gamma(alpha,(p-1)beta)) / p * af;
/// at beta = (alpha-1)/p it equals kappa_{d,p,alpha} exactly.
inline DecompositionResult decomposition_residual(const Func1D& u,
                                                  const HardyParams& par,
                                                  double beta,
                                                  const EngineConfig& ec = {}) {
    const double p = par.p, alpha = par.alpha;
    if (!weight_admissible(beta, p, alpha))
        throw std::domain_error("decomposition_residual: inadmissible beta");
    const double s0 = u.lo(), s1 = u.hi();
    if (!(s0 > 0.0))
        throw std::domain_error("decomposition_residual: support touches 0");

    auto gamma_of = [&](double b) {
        if (b == 0.0) return 0.0;
        return alpha == 1.0 ? gamma_ab_quad(alpha, b, 1e-12).value
                            : gamma_ab_closed(alpha, b);
    };
    double af = angular_factor(par.d, alpha);
    double c_beta =
        -((p - 1.0) * gamma_of(beta) + gamma_of((p - 1.0) * beta)) / p * af;

    DecompositionResult out;
    out.c_beta = c_beta;
    out.lhs = form_ep_1d(u, par, ec);
    out.norm = weighted_norm(TestFunction::of(u, "u"), p, alpha, ec);

    QuadConfig qc;
    qc.strict = false;
    Estimate rem_core = double_singular_1d(fp_remainder_integrand(u, p, beta),
                                           s0, s1, alpha, ec.rel_tol, qc);
    // halo terms: F_p(a,0) = (p-1)|a|^p and F_p(0,b) = |b|^p
    QuadConfig ic;
    ic.strict = false;
    ic.rel = 0.3 * ec.rel_tol;
    ic.max_intervals = 400;
    auto out_mass = [&](double x, double dl, double dr, double expnt) {
        (void)x;
        // int over (0,s0) u (s1,inf) of y^expnt |x-y|^{-1-alpha} dy,
        // with x - y = dl + (s0 - y) on the left piece
        auto fl = [&](double y, double, double dry) {
            return std::pow(y, expnt) * std::pow(dl + dry, -1.0 - alpha);
        };
        Estimate left = integrate_tanh_sinh(fl, 0.0, s0, 0.0, ic);
        // right tail via y = s1/t: y - x = dr + s1 (1-t)/t
        auto fr = [&](double t, double, double drt) {
            double y = s1 / t;
            double ymx = dr + s1 * drt / t;
            return std::pow(y, expnt) * std::pow(ymx, -1.0 - alpha) *
                   (s1 / (t * t));
        };
        Estimate right = integrate_tanh_sinh(fr, 0.0, 1.0, 0.0, ic);
        return left.value + right.value;
    };
    auto halo1 = [&](double x, double dl, double dr) {
        double uv = std::fabs(u(x));
        if (uv == 0.0) return 0.0;
        double wx = std::pow(x, beta);
        return (p - 1.0) * std::pow(uv, p) / wx * out_mass(x, dl, dr, beta);
    };
    auto halo2 = [&](double x, double dl, double dr) {
        double uv = std::fabs(u(x));
        if (uv == 0.0) return 0.0;
        double wx = std::pow(x, beta);
        return std::pow(uv, p) * std::pow(wx, 1.0 - p) *
               out_mass(x, dl, dr, (p - 1.0) * beta);
    };
    Estimate h1 = detail::edge_singular_integral(halo1, s0, s1, u.breakpoints(),
                                                 3.0 * ec.rel_tol, 300);
    Estimate h2 = detail::edge_singular_integral(halo2, s0, s1, u.breakpoints(),
                                                 3.0 * ec.rel_tol, 300);
    out.remainder = rem_core + h1 + h2;
    double rhs_val = c_beta * out.norm.value + out.remainder.value / p;
    out.rel_gap = std::fabs(out.lhs.value - rhs_val) /
                  (std::fabs(out.lhs.value) + 1e-300);
    return out;
}

// ---------------------------------------------------------------------------
// extremal sequence

struct ExtremalSpec {
    int n = 2;
    double p = 2.0;
    double alpha = 1.5;
    int d = 1;
    bool alpha_ge_1() const { return alpha >= 1.0; }
};

/// u_n = v_n^{2/p} x_d^beta with the canonical ramp profiles.
inline TestFunction extremal_u(const ExtremalSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("extremal_u: n >= 2");
    if (!(spec.p > 1.0) || !(spec.alpha > 0.0 && spec.alpha < 2.0))
        throw std::invalid_argument("extremal_u: bad parameters");
    double beta = (spec.alpha - 1.0) / spec.p;
    Func1D phi = spec.alpha_ge_1() ? Func1D::extremal_phi_ge1(spec.n)
                                   : Func1D::extremal_phi_lt1(spec.n);
    Func1D xd_factor = Func1D::power_of(phi, 2.0 / spec.p) *
                       Func1D::power(phi.lo(), phi.hi(), beta);
    TestFunction u;
    u.kind = TestFunctionKind::extremal;
    u.name = "extremal_n" + std::to_string(spec.n);
    if (spec.d == 1) {
        u.factors = {xd_factor};
        return u;
    }
    double n2 = static_cast<double>(spec.n) * spec.n;
    double margin = spec.alpha_ge_1() ? 1.0 : static_cast<double>(spec.n);
    Func1D psi = Func1D::plateau(-n2 - margin, n2 + margin, margin);
    Func1D side = Func1D::power_of(psi, 2.0 / spec.p);
    u.factors.assign(spec.d - 1, side);
    u.factors.push_back(xd_factor);
    return u;
}

struct SweepRow {
    int n = 0;
    Estimate lhs, rhs;
    double ratio = 0.0;
    double gap = 0.0;        // ratio - kappa
    double gap_log_n = 0.0;  // gap * log n
};

/// Hardy ratios of the extremal sequence; gaps certify sharpness from above.
inline std::vector<SweepRow> extremal_sweep(double p, double alpha, int d,
                                            const std::vector<int>& n_list,
                                            const EngineConfig& ec = {}) {
    if (n_list.empty())
        throw std::invalid_argument("extremal_sweep: empty n list");
    HardyParams par(d, p, alpha);
    double kap = kappa(d, p, alpha);
    std::vector<SweepRow> rows;
    for (int n : n_list) {
        ExtremalSpec spec{n, p, alpha, d};
        TestFunction u = extremal_u(spec);
        SweepRow row;
        row.n = n;
        row.lhs = form_ep(u, par, ec);
        row.rhs = weighted_norm(u, p, alpha, ec);
        row.ratio = row.lhs.value / row.rhs.value;
        row.gap = row.ratio - kap;
        row.gap_log_n = row.gap * std::log(static_cast<double>(n));
        rows.push_back(row);
    }
    return rows;
}

} // namespace hardy
