#pragma once

/// \file double_singular.hpp
/// Double integrals of symmetric-pair integrands against the kernel
/// |x-y|^{-d-alpha}:
///   - d = 1: deterministic, via the change of variables (x, v = y-x).
///     The x-integral is done first, so the v-integrand behaves like
///     v^{1-alpha} * smooth near the diagonal and tanh-sinh resolves it to
///     machine accuracy no matter how close alpha is to 2.
///   - d = 2: stratified Monte Carlo with radial importance sampling
///     |z| ~ r^{1-alpha} around the diagonal.
///
/// Integrands are supplied as G(x,y) / |x-y|^2, evaluated stably (see
/// test_function.hpp); for Lipschitz-type inputs this quotient has a finite
/// diagonal limit.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "hardy/estimate.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/rng.hpp"

namespace hardy {

/// 1_{|x-y|>eps} |x-y|^{-d-alpha}, monotone to the full kernel as eps -> 0.
struct TruncatedKernel {
    double epsilon = 0.0;
    int d = 1;
    double alpha = 1.0;
    double operator()(double r) const {
        return r > epsilon ? std::pow(r, -d - alpha) : 0.0;
    }
};

struct PairIntegrand1D {
    /// G(x, x+v) / v^2 for v >= 0; must extend continuously to v = 0.
    std::function<double(double x, double v)> g_over_v2;
    /// kink locations of x -> G(x, x+v), including the support ends
    std::vector<double> x_breaks;
};

/// integral over [s0,s1]^2 of G(x,y) |x-y|^{-1-alpha} dx dy for symmetric G,
/// computed as 2 int_eps^L v^{1-alpha} [ int g(x,v) dx ] dv.  Relative
/// tolerance control; the kernel may be truncated at eps_trunc.
inline Estimate double_singular_1d(const PairIntegrand1D& G, double s0,
                                   double s1, double alpha, double rel_tol,
                                   const QuadConfig& cfg_in = {},
                                   double eps_trunc = 0.0) {
    if (!(s1 > s0)) return {0.0, 0.0, EstimateKind::deterministic, 0};
    const double L = s1 - s0;
    QuadConfig inner_cfg = cfg_in;
    inner_cfg.strict = false;
    inner_cfg.rel = 0.35 * rel_tol;
    inner_cfg.max_intervals = 600;
    QuadConfig outer_cfg = inner_cfg;
    outer_cfg.rel = 0.5 * rel_tol;
    outer_cfg.max_intervals = 400;
    outer_cfg.ts_max_level = 10;

    std::uint64_t evals = 0;
    auto h_of_v = [&](double v) -> double {
        double xa = s0, xb = s1 - v;
        if (!(xb > xa)) return 0.0;
        std::vector<double> splits;
        for (double b : G.x_breaks) {
            splits.push_back(b);
            splits.push_back(b - v);
        }
        auto fx = [&](double x, double, double) { return G.g_over_v2(x, v); };
        Estimate in = integrate_adaptive(fx, xa, xb, 0.0, splits, inner_cfg);
        evals += in.samples_or_nodes;
        return in.value;
    };

    // v-breakpoints: pairwise differences of the x-kinks
    std::vector<double> vb;
    for (std::size_t i = 0; i < G.x_breaks.size(); ++i)
        for (std::size_t j = 0; j < G.x_breaks.size(); ++j) {
            double dv = G.x_breaks[j] - G.x_breaks[i];
            if (dv > 1e-12 * L && dv < L * (1.0 - 1e-12)) vb.push_back(dv);
        }
    vb.push_back(L);
    std::sort(vb.begin(), vb.end());
    vb.erase(std::unique(vb.begin(), vb.end()), vb.end());
    for (std::size_t i = 1; i < vb.size();) { // prune near-duplicates
        if (vb[i] - vb[i - 1] < 1e-10 * L)
            vb.erase(vb.begin() + i);
        else
            ++i;
    }

    auto qv = [&](double v, double dl, double) {
        (void)dl;
        return std::pow(v, 1.0 - alpha) * h_of_v(v);
    };
    // first piece reaches the diagonal: tanh-sinh in v with v given as the
    // distance from the left endpoint
    double v_lo = eps_trunc;
    std::vector<Estimate> parts;
    double first_hi = vb.front();
    if (v_lo < first_hi) {
        auto q_edge = [&](double v, double dl, double dr) {
            (void)dr;
            double vv = (v_lo == 0.0) ? dl : v; // exact tiny v when eps = 0
            return std::pow(vv, 1.0 - alpha) * h_of_v(vv);
        };
        if (v_lo == 0.0)
            parts.push_back(
                integrate_tanh_sinh(q_edge, 0.0, first_hi, 0.0, outer_cfg));
        else
            parts.push_back(integrate_adaptive(edge_fn([&](double v) {
                                                   return qv(v, 0, 0);
                                               }),
                                               v_lo, first_hi, 0.0, {},
                                               outer_cfg));
    }
    for (std::size_t i = 0; i + 1 < vb.size(); ++i) {
        double a = std::max(vb[i], v_lo), b = vb[i + 1];
        if (!(b > a)) continue;
        parts.push_back(integrate_adaptive(
            edge_fn([&](double v) { return qv(v, 0, 0); }), a, b, 0.0, {},
            outer_cfg));
    }
    double val = 0.0, err = 0.0, mag = 0.0;
    for (const Estimate& p : parts) {
        val += p.value;
        err += p.error;
        mag += std::fabs(p.value);
        evals += p.samples_or_nodes;
    }
    // inner tolerance contributes proportionally to the integrated magnitude
    err += inner_cfg.rel * mag;
    Estimate out{2.0 * val, 2.0 * err, EstimateKind::deterministic, evals};
    if (cfg_in.strict && out.error > 4.0 * rel_tol * std::fabs(out.value) &&
        out.error > 1e-300)
        throw QuadratureError("double_singular_1d: tolerance not met", out);
    return out;
}

/// Smooth off-diagonal block: integral over [a0,a1] x [b0,b1] (disjoint
/// boxes) of G(x,y) |x-y|^{-1-alpha}.
inline Estimate pair_cross_block_1d(const PairIntegrand1D& G, double a0,
                                    double a1, double b0, double b1,
                                    double alpha, double rel_tol,
                                    const QuadConfig& cfg_in = {}) {
    QuadConfig cfg = cfg_in;
    cfg.strict = false;
    cfg.rel = 0.4 * rel_tol;
    cfg.max_intervals = 400;
    std::uint64_t evals = 0;
    std::vector<double> xsplits(G.x_breaks), ysplits(G.x_breaks);
    auto outer = [&](double x, double, double) {
        auto inner = [&](double y, double, double) {
            double v = y - x; // boxes disjoint: v bounded away from 0
            double av = std::fabs(v);
            return G.g_over_v2(std::min(x, y), av) * av * av *
                   std::pow(av, -1.0 - alpha);
        };
        Estimate in = integrate_adaptive(inner, b0, b1, 0.0, ysplits, cfg);
        evals += in.samples_or_nodes;
        return in.value;
    };
    Estimate out = integrate_adaptive(outer, a0, a1, 0.0, xsplits, cfg);
    out.error += cfg.rel * std::fabs(out.value);
    out.samples_or_nodes = evals;
    return out;
}

// ---------------------------------------------------------------------------
// d = 2: stratified Monte Carlo

using Pt2 = std::array<double, 2>;

struct PairIntegrand2D {
    /// G(x, y) / r^2 with r = |x-y|, evaluated stably near the diagonal.
    std::function<double(const Pt2& x, const Pt2& y, double r)> g_over_r2;
};

/// Sampling domain for the Monte Carlo pair integral: axis box or disk.
struct Domain2D {
    enum class Kind { box, disk };
    Kind kind = Kind::box;
    Pt2 lo{0, 0}, hi{1, 1}; // box
    Pt2 center{0, 0};       // disk
    double radius = 1.0;

    static Domain2D box(Pt2 lo, Pt2 hi) {
        Domain2D d;
        d.kind = Kind::box;
        d.lo = lo;
        d.hi = hi;
        return d;
    }
    static Domain2D disk(Pt2 c, double r) {
        Domain2D d;
        d.kind = Kind::disk;
        d.center = c;
        d.radius = r;
        return d;
    }

    double area() const {
        if (kind == Kind::box) return (hi[0] - lo[0]) * (hi[1] - lo[1]);
        return M_PI * radius * radius;
    }
    double diameter() const {
        if (kind == Kind::box) return std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
        return 2.0 * radius;
    }
    bool contains(const Pt2& p) const {
        if (kind == Kind::box)
            return p[0] >= lo[0] && p[0] <= hi[0] && p[1] >= lo[1] &&
                   p[1] <= hi[1];
        double dx = p[0] - center[0], dy = p[1] - center[1];
        return dx * dx + dy * dy <= radius * radius;
    }
    Pt2 sample(double u1, double u2) const {
        if (kind == Kind::box)
            return {lo[0] + (hi[0] - lo[0]) * u1, lo[1] + (hi[1] - lo[1]) * u2};
        double r = radius * std::sqrt(u1);
        double th = 2.0 * M_PI * u2;
        return {center[0] + r * std::cos(th), center[1] + r * std::sin(th)};
    }
};

struct McConfig {
    std::uint64_t samples = 1'000'000;
    int strata = 32;
    std::uint64_t seed = 0x5eed0001u;
};

/// integral over S x S of G(x,y) |x-y|^{-2-alpha} dx dy by stratified Monte
/// Carlo: x uniform in S, z = y - x sampled with radial density
/// proportional to r^{1-alpha} on (eps_trunc, R]; strata partition the
/// radial inverse-CDF variable.
inline Estimate double_singular_mc2d(const PairIntegrand2D& G,
                                     const Domain2D& S, double alpha,
                                     const McConfig& mc,
                                     double eps_trunc = 0.0) {
    const double R = S.diameter();
    const double q = 2.0 - alpha;
    const double u_min =
        eps_trunc > 0.0 ? std::pow(eps_trunc / R, q) : 0.0; // truncation
    const double norm = S.area() * 2.0 * M_PI * (std::pow(R, q) / q) *
                        (1.0 - u_min);
    const int ns = mc.strata;
    const std::uint64_t per = mc.samples / ns;
    CounterRng rng(mc.seed);

    double strat_mean_sum = 0.0, se2 = 0.0;
    std::uint64_t used = 0;
    for (int s = 0; s < ns; ++s) {
        CounterRng sub = rng.substream(0x100 + s);
        double sum = 0.0, sum2 = 0.0;
        for (std::uint64_t i = 0; i < per; ++i) {
            std::uint64_t c = 4 * i;
            double ur = (s + sub.u01(c)) / ns;
            ur = u_min + (1.0 - u_min) * ur;
            double r = R * std::pow(ur, 1.0 / q);
            double th = 2.0 * M_PI * sub.u01(c + 1);
            Pt2 x = S.sample(sub.u01(c + 2), sub.u01(c + 3));
            Pt2 y{x[0] + r * std::cos(th), x[1] + r * std::sin(th)};
            // estimator: norm * G/r^2 (the importance weight cancels the
            // kernel's r powers exactly)
            double v = S.contains(y) ? norm * G.g_over_r2(x, y, r) : 0.0;
            sum += v;
            sum2 += v * v;
        }
        double mean = sum / per;
        double var = std::max(0.0, sum2 / per - mean * mean);
        strat_mean_sum += mean;
        se2 += var / per;
        used += per;
    }
    double value = strat_mean_sum / ns;
    double se = std::sqrt(se2) / ns;
    return {value, se, EstimateKind::monte_carlo, used};
}

} // namespace hardy
