#pragma once

/// \file pv.hpp
/// Cauchy principal values of kernel integrals with one interior
/// non-integrable point x0.  The symmetric pairing f(x0+h) + f(x0-h) must
/// be integrable near h = 0; callers supply it as a separate stable
/// evaluator because the naive sum of two nearly-opposite singular values
/// loses all precision against kernels |y-x0|^{-1-alpha} with alpha > 1.

#include <cmath>
#include <functional>
#include <limits>

#include "hardy/quadrature.hpp"

namespace hardy {

struct PvProblem {
    PlainFn f;                           ///< integrand away from x0
    std::function<double(double)> paired; ///< f(x0+h) + f(x0-h), stable in h
    double a = 0.0;                      ///< left end of the domain
    double b = 0.0;                      ///< right end; +inf allowed
    double x0 = 0.0;                     ///< singular point, a < x0 < b
    double singular_exponent = 1.0;      ///< kernel ~ |y-x0|^{-exponent}
};

/// Builds the naive pairing from f; adequate only for mild kernels.
inline std::function<double(double)> naive_pairing(PlainFn f, double x0) {
    return [f = std::move(f), x0](double h) { return f(x0 + h) + f(x0 - h); };
}

/// P.V. integral via symmetric pairing on (0, delta) plus regular
/// quadrature outside, evaluated at three nested cutoffs delta, delta/2,
/// delta/4.  The largest window carries the value (its side integrals stay
/// clear of the singular boundary layer); the smaller windows act as
/// consistency probes, since all three agree in exact arithmetic.  Growth
/// of the paired core across shrinking cutoffs flags a non-cancelling
/// (genuinely divergent) singularity.
inline Estimate pv_integral(const PvProblem& prob, double tol,
                            const QuadConfig& cfg_in = {}) {
    const bool infinite = !std::isfinite(prob.b);
    const double room_r = infinite ? std::max(1.0, prob.x0) : prob.b - prob.x0;
    const double delta0 = 0.75 * std::min(prob.x0 - prob.a, room_r);
    QuadConfig cfg = cfg_in;
    cfg.strict = false;

    double vals[3];
    double errs[3];
    double core_mag[3];
    std::uint64_t evals = 0;
    for (int k = 0; k < 3; ++k) {
        double delta = delta0 / (1 << k);
        // paired core: integrable with exponent 1 - (exponent - 1) > -1
        auto core_f = [&](double h, double dl, double dr) {
            (void)dr;
            (void)h;
            return prob.paired(dl);
        };
        Estimate core =
            integrate_tanh_sinh(core_f, 0.0, delta, 0.25 * tol, cfg);
        Estimate left = integrate_tanh_sinh(
            edge_fn(prob.f), prob.a, prob.x0 - delta, 0.25 * tol, cfg);
        Estimate right;
        if (infinite) {
            double t_far = prob.x0 + 4.0 * (delta0 + std::fabs(prob.x0) + 1.0);
            Estimate mid = integrate_adaptive(
                edge_fn(prob.f), prob.x0 + delta, t_far, 0.25 * tol, {}, cfg);
            Estimate tail = integrate_half_line(
                [&](double y, double, double) { return prob.f(y); }, t_far,
                0.25 * tol, cfg);
            right = mid + tail;
        } else {
            right = integrate_tanh_sinh(edge_fn(prob.f), prob.x0 + delta,
                                        prob.b, 0.25 * tol, cfg);
        }
        Estimate total = core + left + right;
        vals[k] = total.value;
        errs[k] = total.error;
        core_mag[k] = std::fabs(core.value);
        evals += total.samples_or_nodes;
    }
    double spread = std::max(std::fabs(vals[0] - vals[1]),
                             std::fabs(vals[1] - vals[2]));
    double scale = 1.0 + std::fabs(vals[0]);
    // a cancelling pairing makes the core integral shrink with the cutoff;
    // a surviving even part makes it grow like delta^{1 - exponent}
    if (core_mag[2] > 1.3 * core_mag[1] && core_mag[1] > 1.3 * core_mag[0] &&
        core_mag[2] > 4.0 * tol * scale)
        throw QuadratureError(
            "pv_integral: non-cancelling singularity (divergent in cutoff)",
            Estimate{vals[0], spread, EstimateKind::deterministic, evals});
    Estimate out{vals[0], std::max(errs[0], std::min(spread, errs[2])),
                 EstimateKind::deterministic, evals};
    if (cfg_in.strict && out.error > std::max(tol, 1e-12 * std::fabs(out.value)) &&
        out.error > 1e3 * tol)
        throw QuadratureError("pv_integral: tolerance not met", out);
    return out;
}

} // namespace hardy
