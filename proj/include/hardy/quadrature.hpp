#pragma once

/// \file quadrature.hpp
/// One-dimensional integration engines:
///   - adaptive Gauss-Kronrod (G7,K15) for piecewise-smooth integrands,
///   - tanh-sinh (double-exponential) for algebraic endpoint singularities,
///   - a half-line transform for integrable tails.
///
/// Integrands receive, besides the node x, its exact distance to each end
/// of the current integration interval.  Singular factors like
/// (x-a)^{-0.9} must be evaluated from that distance; the engines place
/// nodes far closer to the endpoints than double spacing around x allows.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "hardy/estimate.hpp"

namespace hardy {

/// f(x, from_left, from_right) where from_left = x - a and
/// from_right = b - x are computed without cancellation.
using EdgeFn = std::function<double(double, double, double)>;
using PlainFn = std::function<double(double)>;

inline EdgeFn edge_fn(PlainFn f) {
    return [f = std::move(f)](double x, double, double) { return f(x); };
}

struct Endpoints {
    bool left_singular = false;
    bool right_singular = false;
    bool any() const { return left_singular || right_singular; }
};

struct QuadConfig {
    int max_intervals = 4000;   // adaptive subdivision budget
    int ts_max_level = 11;      // tanh-sinh refinement levels
    bool strict = true;         // throw when the tolerance is not met
    double rel = 0.0;           // optional relative target (0 = off)
};

namespace detail {

// G7,K15 nodes and weights (QUADPACK constants), positive half.
inline constexpr double kK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double integral;
    double err;
};

/// One G7/K15 evaluation on [a,b]; err from |K15 - G7| with the usual
/// QUADPACK sharpening exponent.
inline Segment gk15(const EdgeFn& f, double a, double b, double seg_a,
                    double seg_b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0, resabs = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kK15Nodes[i];
        const double x1 = c - dx, x2 = c + dx;
        const double f1 = f(x1, x1 - seg_a, seg_b - x1);
        const double f2 = f(x2, x2 - seg_a, seg_b - x2);
        double fsum = (i == 7) ? f1 : f1 + f2;
        resk += kK15Weights[i] * fsum;
        resabs += kK15Weights[i] * (std::fabs(f1) + (i == 7 ? 0.0 : std::fabs(f2)));
        if (i % 2 == 1) resg += kG7Weights[i / 2] * fsum;
    }
    double integral = resk * h;
    double err = std::fabs((resk - resg) * h);
    double scale = std::fabs(resabs * h);
    if (scale > 0.0 && err > 0.0) {
        double r = std::pow(200.0 * err / scale, 1.5);
        err = scale * std::min(1.0, r);
    }
    return {a, b, integral, err};
}

/// Deterministic pairwise sum (fixed reduction tree).
inline double pairwise_sum(std::vector<double>& v, std::size_t lo,
                           std::size_t hi) {
    if (hi - lo <= 4) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

} // namespace detail

/// Adaptive Gauss-Kronrod on [a,b] with optional interior split points
/// (known kinks).  Regular integrands only; endpoint singularities go to
/// integrate_tanh_sinh.
inline Estimate integrate_adaptive(const EdgeFn& f, double a, double b,
                                   double tol,
                                   const std::vector<double>& splits = {},
                                   const QuadConfig& cfg = {}) {
    if (!(a < b)) return {0.0, 0.0, EstimateKind::deterministic, 0};
    std::vector<double> pts{a};
    for (double s : splits)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // prune near-duplicate split points
    const double min_gap = 1e-12 * (b - a);
    for (std::size_t i = 1; i + 1 < pts.size();) {
        if (pts[i] - pts[i - 1] < min_gap || pts[i + 1] - pts[i] < min_gap)
            pts.erase(pts.begin() + i);
        else
            ++i;
    }

    std::vector<detail::Segment> segs;
    std::uint64_t evals = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        segs.push_back(detail::gk15(f, pts[i], pts[i + 1], a, b));
        evals += 15;
    }
    auto total_err = [&] {
        double e = 0.0;
        for (auto& s : segs) e += s.err;
        return e;
    };
    auto total_val = [&] {
        std::sort(segs.begin(), segs.end(),
                  [](const detail::Segment& x, const detail::Segment& y) {
                      return x.a < y.a;
                  });
        std::vector<double> vals(segs.size());
        for (std::size_t i = 0; i < segs.size(); ++i) vals[i] = segs[i].integral;
        return detail::pairwise_sum(vals, 0, vals.size());
    };

    while ((int)segs.size() < cfg.max_intervals) {
        double err = total_err();
        double scale = std::fabs(total_val());
        if (err <= std::max({tol, cfg.rel * scale, 1e-15 * scale})) break;
        // split worst segment; ties broken by position for determinism
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err ||
                (segs[i].err == segs[worst].err && segs[i].a < segs[worst].a))
                worst = i;
        detail::Segment s = segs[worst];
        double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) break; // interval at double resolution
        segs[worst] = detail::gk15(f, s.a, m, a, b);
        segs.push_back(detail::gk15(f, m, s.b, a, b));
        evals += 30;
    }
    double err = total_err();
    double val = total_val();
    Estimate est{val, err, EstimateKind::deterministic, evals};
    if (cfg.strict &&
        err > std::max({tol, cfg.rel * std::fabs(val), 1e-13 * std::fabs(val)}))
        throw QuadratureError("integrate_adaptive: budget exhausted", est);
    return est;
}

/// Tanh-sinh quadrature on [a,b].  Handles integrable algebraic (or log)
/// singularities at either endpoint; the integrand is always given its
/// exact distance to both endpoints.
inline Estimate integrate_tanh_sinh(const EdgeFn& f, double a, double b,
                                    double tol, const QuadConfig& cfg = {}) {
    if (!(a < b)) return {0.0, 0.0, EstimateKind::deterministic, 0};
    const double s = 0.5 * (b - a);
    const double t_max = 6.56; // weights underflow beyond this
    std::uint64_t evals = 0;

    // node at parameter t: x01 = tanh(u), u = (pi/2) sinh t
    // from_left  = s * (1 - x01) computed as s * 2 e^{-2u} / (1 + e^{-2u})
    auto eval_at = [&](double t, double h) -> double {
        (void)h;
        double u = 0.5 * M_PI * std::sinh(t);
        double e2 = std::exp(-2.0 * std::fabs(u));
        double one_minus = 2.0 * e2 / (1.0 + e2); // 1 - |tanh(u)|
        // weight = s * (pi/2) cosh t / cosh^2 u = s * 2 pi cosh(t) e2/(1+e2)^2
        double w =
            s * 2.0 * M_PI * std::cosh(t) * e2 / ((1.0 + e2) * (1.0 + e2));
        if (!(w > 1e-300) || !std::isfinite(w)) return 0.0;
        double dl, dr, x;
        if (t >= 0.0) { // node on the right half
            dr = s * one_minus;
            dl = (b - a) - dr;
            x = b - dr;
        } else {
            dl = s * one_minus;
            dr = (b - a) - dl;
            x = a + dl;
        }
        ++evals;
        double fv = f(x, dl, dr);
        return std::isfinite(fv) ? fv * w : 0.0;
    };

    double h = 1.0;
    // level 0
    std::vector<double> terms;
    terms.push_back(eval_at(0.0, h));
    for (double t = h; t <= t_max; t += h) {
        terms.push_back(eval_at(t, h));
        terms.push_back(eval_at(-t, h));
    }
    double prev = h * detail::pairwise_sum(terms, 0, terms.size());
    double prev2 = prev;
    double value = prev, err = std::fabs(prev);
    const double level0_mag = std::fabs(prev);
    int grow_streak = 0;
    for (int level = 1; level <= cfg.ts_max_level; ++level) {
        h *= 0.5;
        std::vector<double> nt;
        for (double t = h; t <= t_max; t += 2.0 * h) {
            nt.push_back(eval_at(t, h));
            nt.push_back(eval_at(-t, h));
        }
        double sum_new = detail::pairwise_sum(nt, 0, nt.size());
        value = 0.5 * prev + h * sum_new;
        double d1 = std::fabs(value - prev);
        double d2 = std::fabs(value - prev2);
        if (d1 == 0.0)
            err = 0.0;
        else {
            // standard double-exponential error model: err ~ d1^2 / d2
            err = (d2 > 0.0) ? d1 * d1 / d2 : d1;
            err = std::min(err, d1);
        }
        // empirical divergence: level sums keep growing without settling
        if (std::fabs(value) > 1.5 * std::fabs(prev) &&
            std::fabs(value) > 1e3 * (1.0 + level0_mag))
            ++grow_streak;
        else
            grow_streak = 0;
        if (grow_streak >= 3)
            throw QuadratureError(
                "integrate_tanh_sinh: divergent refinement sequence",
                Estimate{value, err, EstimateKind::deterministic, evals});
        prev2 = prev;
        prev = value;
        if (err <= std::max({tol, cfg.rel * std::fabs(value),
                             1e-15 * std::fabs(value)}) &&
            level >= 3)
            break;
    }
    Estimate est{value, std::max(err, 5e-16 * std::fabs(value)),
                 EstimateKind::deterministic, evals};
    if (cfg.strict &&
        est.error > std::max({tol, cfg.rel * std::fabs(value),
                              1e-12 * std::fabs(value)}))
        throw QuadratureError("integrate_tanh_sinh: tolerance not met", est);
    return est;
}

/// Front end: adaptive rule for regular integrands, tanh-sinh when an
/// endpoint is flagged singular.
inline Estimate integrate_1d(const EdgeFn& f, double a, double b,
                             Endpoints ep, double tol,
                             const QuadConfig& cfg = {}) {
    if (ep.any()) return integrate_tanh_sinh(f, a, b, tol, cfg);
    return integrate_adaptive(f, a, b, tol, {}, cfg);
}

inline Estimate integrate_1d(const PlainFn& f, double a, double b,
                             Endpoints ep, double tol,
                             const QuadConfig& cfg = {}) {
    return integrate_1d(edge_fn(f), a, b, ep, tol, cfg);
}

/// Integral over (a, +inf) of an integrand with integrable decay, via the
/// substitution y = a + t/(1-t).  The decay shows up as an algebraic
/// endpoint singularity at t = 1, which tanh-sinh absorbs.
inline Estimate integrate_half_line(const EdgeFn& f, double a, double tol,
                                    const QuadConfig& cfg = {}) {
    auto g = [&](double t, double dl, double dr) {
        // y - a = t / (1-t) = t / dr ; dy = dt / (1-t)^2
        double ya = t / dr;
        double y = a + ya;
        double jac = 1.0 / (dr * dr);
        return f(y, ya, std::numeric_limits<double>::infinity()) * jac;
    };
    return integrate_tanh_sinh(g, 0.0, 1.0, tol, cfg);
}

} // namespace hardy
