#pragma once

/// \file convex.hpp
/// General-domain machinery: convex bodies with closed-form ray distances,
/// the directional distance d_{omega}, the pseudo-distance m_alpha, the
/// Hardy potential V_eps, the interval inequality, and convex-domain
/// verification.
///
/// d_{omega}(x) = min{|t| : x + t omega not in Omega} is the distance to
/// the complement along the full line through omega, i.e. the smaller of
/// the two one-sided ray exits.  This makes m_alpha <= dist on convex
/// bodies and reduces to dist itself in d = 1.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/halfspace.hpp"
#include "hardy/sphere.hpp"

namespace hardy {

struct ConvexBody {
    enum class Shape { interval, box, ball, polytope };
    Shape shape = Shape::interval;
    int d = 1;

    std::vector<double> lo, hi;       // interval / box
    std::vector<double> center;       // ball
    double radius = 0.0;              // ball
    struct Face {
        std::vector<double> normal; // unit outward normal
        double offset;              // n . x <= offset
    };
    std::vector<Face> faces; // polytope

    static ConvexBody interval(double a, double b) {
        require(a < b, "interval: a < b");
        ConvexBody c;
        c.shape = Shape::interval;
        c.d = 1;
        c.lo = {a};
        c.hi = {b};
        return c;
    }
    static ConvexBody box(std::vector<double> lo, std::vector<double> hi) {
        require(lo.size() == hi.size() && !lo.empty(), "box: bad extents");
        for (std::size_t i = 0; i < lo.size(); ++i)
            require(lo[i] < hi[i], "box: lo < hi");
        ConvexBody c;
        c.shape = Shape::box;
        c.d = static_cast<int>(lo.size());
        c.lo = std::move(lo);
        c.hi = std::move(hi);
        return c;
    }
    static ConvexBody ball(std::vector<double> center, double r) {
        require(r > 0.0, "ball: r > 0");
        ConvexBody c;
        c.shape = Shape::ball;
        c.d = static_cast<int>(center.size());
        c.center = std::move(center);
        c.radius = r;
        return c;
    }
    /// Intersection of half-planes n.x <= offset; normals need not be unit.
    static ConvexBody polytope(std::vector<Face> faces) {
        require(faces.size() >= 3, "polytope: need >= 3 faces");
        ConvexBody c;
        c.shape = Shape::polytope;
        c.d = static_cast<int>(faces.front().normal.size());
        for (Face& f : faces) {
            double n = 0.0;
            for (double v : f.normal) n += v * v;
            n = std::sqrt(n);
            require(n > 0.0, "polytope: zero normal");
            for (double& v : f.normal) v /= n;
            f.offset /= n;
        }
        c.faces = std::move(faces);
        return c;
    }

    bool contains(const std::vector<double>& x) const {
        switch (shape) {
            case Shape::interval:
            case Shape::box:
                for (int i = 0; i < d; ++i)
                    if (x[i] <= lo[i] || x[i] >= hi[i]) return false;
                return true;
            case Shape::ball: {
                double r2 = 0.0;
                for (int i = 0; i < d; ++i)
                    r2 += (x[i] - center[i]) * (x[i] - center[i]);
                return r2 < radius * radius;
            }
            case Shape::polytope:
                for (const Face& f : faces) {
                    double s = 0.0;
                    for (int i = 0; i < d; ++i) s += f.normal[i] * x[i];
                    if (s >= f.offset) return false;
                }
                return true;
        }
        return false;
    }

    /// One-sided ray exit: sup{t >= 0 : x + t omega in closure}.
    double ray_exit(const std::vector<double>& x,
                    const std::vector<double>& om) const {
        const double inf = std::numeric_limits<double>::infinity();
        switch (shape) {
            case Shape::interval:
            case Shape::box: {
                double t = inf;
                for (int i = 0; i < d; ++i) {
                    if (om[i] > 0.0) t = std::min(t, (hi[i] - x[i]) / om[i]);
                    else if (om[i] < 0.0) t = std::min(t, (x[i] - lo[i]) / -om[i]);
                }
                return t;
            }
            case Shape::ball: {
                double b = 0.0, c2 = 0.0, o2 = 0.0;
                for (int i = 0; i < d; ++i) {
                    double e = x[i] - center[i];
                    b += e * om[i];
                    c2 += e * e;
                    o2 += om[i] * om[i];
                }
                double disc = b * b - o2 * (c2 - radius * radius);
                if (disc < 0.0) disc = 0.0;
                return (-b + std::sqrt(disc)) / o2;
            }
            case Shape::polytope: {
                double t = inf;
                for (const Face& f : faces) {
                    double nd = 0.0, nx = 0.0;
                    for (int i = 0; i < d; ++i) {
                        nd += f.normal[i] * om[i];
                        nx += f.normal[i] * x[i];
                    }
                    if (nd > 0.0) t = std::min(t, (f.offset - nx) / nd);
                }
                return t;
            }
        }
        return 0.0;
    }

    /// Directions (as angles) from an interior point toward the corners;
    /// the angular map th -> d_omega is smooth between consecutive ones.
    std::vector<double> corner_angles(const std::vector<double>& x) const {
        std::vector<double> out;
        auto push = [&](double cx, double cy) {
            out.push_back(std::atan2(cy - x[1], cx - x[0]));
        };
        if (shape == Shape::box && d == 2) {
            push(lo[0], lo[1]);
            push(lo[0], hi[1]);
            push(hi[0], lo[1]);
            push(hi[0], hi[1]);
        } else if (shape == Shape::polytope && d == 2) {
            for (std::size_t i = 0; i < faces.size(); ++i)
                for (std::size_t j = i + 1; j < faces.size(); ++j) {
                    const auto& a = faces[i];
                    const auto& b = faces[j];
                    double det = a.normal[0] * b.normal[1] -
                                 a.normal[1] * b.normal[0];
                    if (std::fabs(det) < 1e-14) continue;
                    double vx = (a.offset * b.normal[1] -
                                 b.offset * a.normal[1]) / det;
                    double vy = (a.normal[0] * b.offset -
                                 b.normal[0] * a.offset) / det;
                    bool ok = true;
                    for (const auto& f : faces) {
                        if (f.normal[0] * vx + f.normal[1] * vy >
                            f.offset + 1e-9) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) push(vx, vy);
                }
        }
        for (double& t : out)
            if (t < 0.0) t += 2.0 * M_PI;
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    static void require(bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    }
};

/// Directional distance d_{omega,Omega}(x) = min{|t| : x + t omega not in
/// Omega}: the two-sided minimum along the line through omega.
inline double dir_dist(const std::vector<double>& x,
                       const std::vector<double>& omega,
                       const ConvexBody& body) {
    if (!body.contains(x)) throw std::domain_error("dir_dist: x outside body");
    std::vector<double> neg(omega);
    for (double& v : neg) v = -v;
    return std::min(body.ray_exit(x, omega), body.ray_exit(x, neg));
}

/// Euclidean distance to the boundary, exact per shape.
inline double dist_boundary(const std::vector<double>& x,
                            const ConvexBody& body) {
    if (!body.contains(x))
        throw std::domain_error("dist_boundary: x outside body");
    switch (body.shape) {
        case ConvexBody::Shape::interval:
        case ConvexBody::Shape::box: {
            double m = std::numeric_limits<double>::infinity();
            for (int i = 0; i < body.d; ++i)
                m = std::min({m, x[i] - body.lo[i], body.hi[i] - x[i]});
            return m;
        }
        case ConvexBody::Shape::ball: {
            double r2 = 0.0;
            for (int i = 0; i < body.d; ++i)
                r2 += (x[i] - body.center[i]) * (x[i] - body.center[i]);
            return body.radius - std::sqrt(r2);
        }
        case ConvexBody::Shape::polytope: {
            double m = std::numeric_limits<double>::infinity();
            for (const auto& f : body.faces) {
                double nx = 0.0;
                for (int i = 0; i < body.d; ++i) nx += f.normal[i] * x[i];
                m = std::min(m, f.offset - nx);
            }
            return m;
        }
    }
    return 0.0;
}

/// m_alpha(x)^alpha = int_{S^{d-1}} |omega_d|^alpha domega /
///                    int_{S^{d-1}} d_omega(x)^{-alpha} domega.
/// The numerator is the closed form 2 * angular_factor(d, alpha).
inline double m_alpha(const std::vector<double>& x, const ConvexBody& body,
                      double alpha, double tol = 1e-9) {
    const int d = body.d;
    if (d == 1) {
        double dd = dist_boundary(x, body);
        return dd; // both directions give dist: m_alpha = dist exactly
    }
    if (d == 2) {
        // d_omega = d_{omega+pi}: twice the half circle, adaptive between
        // the corner directions (d_omega is smooth there)
        std::vector<double> splits;
        for (double t : body.corner_angles(x))
            splits.push_back(std::fmod(t, M_PI));
        auto f = [&](double th, double, double) {
            std::vector<double> om{std::cos(th), std::sin(th)};
            return std::pow(dir_dist(x, om, body), -alpha);
        };
        QuadConfig cfg;
        cfg.strict = false;
        cfg.max_intervals = 500;
        Estimate denom = integrate_adaptive(f, 0.0, M_PI, tol, splits, cfg);
        double num = 2.0 * angular_factor(2, alpha);
        return std::pow(num / (2.0 * denom.value), 1.0 / alpha);
    }
    if (d == 3) {
        auto g = [&](const double* om, int dim) {
            std::vector<double> o(om, om + dim);
            return std::pow(dir_dist(x, o, body), -alpha);
        };
        Estimate denom = sphere_quad(g, 3, tol);
        double num = 2.0 * angular_factor(3, alpha);
        return std::pow(num / denom.value, 1.0 / alpha);
    }
    throw std::invalid_argument("m_alpha: d in {1,2,3}");
}

// ---------------------------------------------------------------------------
// Hardy potential

struct PotentialSpec {
    double beta = 0.0;
    double p = 2.0;
    double alpha = 1.5;
    double epsilon = 0.0; // 0 = principal value (d = 1 only)
};

/// V_eps(x) on an interval (a,b) with left-anchored weight w(y) = (y-a)^beta:
/// int over (a,b) of [ (1/p)(w(x)^{p-1}-w(y)^{p-1})/w(x)^{p-1}
///                   + ((p-1)/p)(w(x)-w(y))/w(x) ] k_eps(x,y) dy.
inline Estimate potential_v_interval(double x, double a, double b,
                                     const PotentialSpec& spec,
                                     double tol = 1e-9) {
    if (!(x > a && x < b))
        throw std::domain_error("potential_v: x outside interval");
    const double p = spec.p, alpha = spec.alpha, beta = spec.beta;
    if (beta == 0.0) return {0.0, 0.0, EstimateKind::deterministic, 0};
    const double xa = x - a;
    auto bracket = [&](double y) {
        double ya = y - a;
        double s1 = -std::expm1((p - 1.0) * beta * std::log(ya / xa));
        double s2 = -std::expm1(beta * std::log(ya / xa));
        return s1 / p + (p - 1.0) / p * s2;
    };
    if (spec.epsilon > 0.0) {
        QuadConfig cfg;
        cfg.strict = false;
        auto f = [&](double y, double, double) {
            return bracket(y) * std::pow(std::fabs(y - x), -1.0 - alpha);
        };
        Estimate l = integrate_adaptive(f, a, std::max(a, x - spec.epsilon),
                                        0.5 * tol, {}, cfg);
        Estimate r = integrate_adaptive(f, std::min(b, x + spec.epsilon), b,
                                        0.5 * tol, {}, cfg);
        return l + r;
    }
    PvProblem prob;
    prob.f = [=](double y) {
        return bracket(y) * std::pow(std::fabs(y - x), -1.0 - alpha);
    };
    prob.paired = [=](double h) {
        double s1 = -sym_pow_sum((p - 1.0) * beta, h / xa);
        double s2 = -sym_pow_sum(beta, h / xa);
        return (s1 / p + (p - 1.0) / p * s2) * std::pow(h, -1.0 - alpha);
    };
    prob.a = a;
    prob.b = b;
    prob.x0 = x;
    prob.singular_exponent = 1.0 + alpha;
    QuadConfig cfg;
    cfg.strict = false;
    return pv_integral(prob, tol, cfg);
}

/// V_eps at a point of a 2-D body, plain Monte Carlo over the body minus
/// the eps-ball (truncations only; the principal value machinery is 1-D).
inline Estimate potential_v_mc2d(const std::vector<double>& x,
                                 const ConvexBody& body,
                                 const PotentialSpec& spec,
                                 const McConfig& mc) {
    if (body.d != 2)
        throw std::invalid_argument("potential_v_mc2d: d = 2 only");
    if (!(spec.epsilon > 0.0))
        throw std::domain_error(
            "potential_v: eps = 0 principal values are d = 1 only");
    // weight anchored at the x_2 = lo face for boxes, else at the center
    // height; only relative differences enter the bracket
    const double p = spec.p, beta = spec.beta, alpha = spec.alpha;
    auto wof = [&](const std::vector<double>& y) {
        double base = (body.shape == ConvexBody::Shape::box ||
                       body.shape == ConvexBody::Shape::interval)
                          ? y[1] - body.lo[1]
                          : dist_boundary(y, body);
        return std::pow(base, beta);
    };
    double wx = wof(x);
    std::vector<double> blo(2), bhi(2);
    if (body.shape == ConvexBody::Shape::box) {
        blo = body.lo;
        bhi = body.hi;
    } else if (body.shape == ConvexBody::Shape::ball) {
        blo = {body.center[0] - body.radius, body.center[1] - body.radius};
        bhi = {body.center[0] + body.radius, body.center[1] + body.radius};
    } else {
        throw std::invalid_argument("potential_v_mc2d: box or ball");
    }
    double cell = (bhi[0] - blo[0]) * (bhi[1] - blo[1]);
    CounterRng rng(mc.seed);
    double sum = 0.0, sum2 = 0.0;
    std::uint64_t kept = 0;
    for (std::uint64_t i = 0; i < mc.samples; ++i) {
        std::vector<double> y{blo[0] + (bhi[0] - blo[0]) * rng.u01(3 * i),
                              blo[1] + (bhi[1] - blo[1]) * rng.u01(3 * i + 1)};
        double v = 0.0;
        double dx0 = y[0] - x[0], dx1 = y[1] - x[1];
        double r = std::hypot(dx0, dx1);
        if (body.contains(y) && r > spec.epsilon) {
            double wy = wof(y);
            double t1 = (std::pow(wx, p - 1.0) - std::pow(wy, p - 1.0)) /
                        std::pow(wx, p - 1.0);
            double t2 = (wx - wy) / wx;
            v = (t1 / p + (p - 1.0) / p * t2) * std::pow(r, -2.0 - alpha);
        }
        v *= cell;
        sum += v;
        sum2 += v * v;
        ++kept;
    }
    double mean = sum / kept;
    double var = std::max(0.0, sum2 / kept - mean * mean);
    return {mean, std::sqrt(var / kept), EstimateKind::monte_carlo, kept};
}

// ---------------------------------------------------------------------------
// interval verification (Lemma-style, J a finite union of open intervals)

struct IntervalDomain {
    std::vector<std::pair<double, double>> components; // disjoint, sorted

    static IntervalDomain of(std::vector<std::pair<double, double>> comps) {
        std::sort(comps.begin(), comps.end());
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (!(comps[i].first < comps[i].second))
                throw std::invalid_argument("IntervalDomain: empty component");
            if (i > 0 && comps[i].first <= comps[i - 1].second)
                throw std::invalid_argument("IntervalDomain: overlap");
        }
        IntervalDomain j;
        j.components = std::move(comps);
        return j;
    }
    bool contains_support(const Func1D& u) const {
        for (const auto& [a, b] : components)
            if (u.lo() >= a && u.hi() <= b) return true;
        // support may span several components as long as u vanishes on gaps;
        // require at least the hull to be inside [min,max]
        return u.lo() >= components.front().first &&
               u.hi() <= components.back().second;
    }
    double dist_to_boundary(double x) const {
        for (const auto& [a, b] : components)
            if (x > a && x < b) return std::min(x - a, b - x);
        return 0.0;
    }
};

/// E_p^J[u]: diagonal cores per component, exact-kernel halo within each
/// component, and smooth cross blocks between components.
inline Estimate form_ep_interval(const Func1D& u, const IntervalDomain& J,
                                 double p, double alpha,
                                 const EngineConfig& ec = {}) {
    if (!J.contains_support(u))
        throw std::domain_error("form_ep_interval: supp u not inside J");
    QuadConfig qc;
    qc.strict = false;
    PairIntegrand1D G = ep_pair_integrand(u, p);
    Estimate total{0.0, 0.0, EstimateKind::deterministic, 0};
    const auto& comps = J.components;
    for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
        double g0 = comps[i].second, g1 = comps[i + 1].first;
        for (int k = 0; k <= 32; ++k)
            if (u(g0 + (g1 - g0) * k / 32.0) != 0.0)
                throw std::domain_error(
                    "form_ep_interval: u must vanish between components");
    }
    std::vector<std::pair<double, double>> S; // supp u within each component
    for (const auto& [a, b] : comps) {
        double s0 = std::max(a, u.lo()), s1 = std::min(b, u.hi());
        S.push_back({s0, s1});
        if (s0 < s1)
            total = total + double_singular_1d(G, s0, s1, alpha, ec.rel_tol, qc)
                                .scaled(0.5);
    }
    // halo: x in S_i, y in J \ union(S_k), kernel mass exact per interval
    auto halo_mass = [&](double x, double dl_own, double dr_own,
                         std::size_t own) {
        double m = 0.0;
        for (std::size_t k = 0; k < comps.size(); ++k) {
            // pieces of component k not covered by S_k
            std::array<std::pair<double, double>, 2> pieces{
                std::make_pair(comps[k].first, S[k].first),
                std::make_pair(S[k].second, comps[k].second)};
            for (auto [c, e] : pieces) {
                if (!(e > c)) continue;
                double t0, t1; // |x-y| range endpoints
                if (e <= x) {
                    t0 = (k == own && e == S[own].first) ? dl_own : x - e;
                    t1 = x - c;
                } else {
                    t0 = (k == own && c == S[own].second) ? dr_own : c - x;
                    t1 = e - x;
                }
                m += (std::pow(t0, -alpha) - std::pow(t1, -alpha)) / alpha;
            }
        }
        return m;
    };
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto [s0, s1] = S[i];
        if (!(s0 < s1)) continue;
        auto f = [&](double x, double dl, double dr) {
            double uv = std::fabs(u(x));
            if (uv == 0.0) return 0.0;
            return std::pow(uv, p) * halo_mass(x, dl, dr, i);
        };
        total = total + detail::edge_singular_integral(f, s0, s1,
                                                       u.breakpoints(),
                                                       ec.rel_tol);
    }
    // cross blocks between components (kernel smooth there)
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = i + 1; j < comps.size(); ++j) {
            if (!(S[i].first < S[i].second) || !(S[j].first < S[j].second))
                continue;
            Estimate cb = pair_cross_block_1d(G, S[i].first, S[i].second,
                                              S[j].first, S[j].second, alpha,
                                              ec.rel_tol, qc);
            total = total + cb; // x<y block and its mirror: factor 2, halved
        }
    return total;
}

/// Interval Hardy report: E_p^J[u] vs kappa_{1,p,alpha} * int |u|^p dist^-a.
/// Orientation is canonicalized first (kernel and dist are reflection
/// invariant), so a function and its mirror image produce identical
/// reports.
inline HardyReport verify_interval(const Func1D& u_in, const IntervalDomain& J_in,
                                   double p, double alpha,
                                   const EngineConfig& ec = {}) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::domain_error("verify_interval: alpha in (1,2) required");
    const double c = 0.5 * (J_in.components.front().first +
                            J_in.components.back().second);
    double stat = 0.0;
    for (int k = 0; k < 64; ++k) {
        double t = u_in.lo() + (u_in.hi() - u_in.lo()) * (k + 0.5) / 64.0;
        double v = u_in(t);
        stat += v * v * (t - c);
    }
    Func1D u = u_in;
    IntervalDomain J = J_in;
    if (stat > 0.0) { // right-heavy: reflect everything about c
        u = Func1D::mirrored(u_in, c);
        std::vector<std::pair<double, double>> comps;
        for (const auto& [a, b] : J_in.components)
            comps.push_back({2.0 * c - b, 2.0 * c - a});
        J = IntervalDomain::of(std::move(comps));
    }
    Estimate lhs = form_ep_interval(u, J, p, alpha, ec);
    Estimate rhs{0.0, 0.0, EstimateKind::deterministic, 0};
    for (const auto& [a, b] : J.components) {
        double s0 = std::max(a, u.lo()), s1 = std::min(b, u.hi());
        if (!(s0 < s1)) continue;
        double mid = 0.5 * (a + b);
        auto f = [&, a0 = a, b0 = b](double x, double, double) {
            double uv = std::fabs(u(x));
            if (uv == 0.0) return 0.0;
            double dd = std::min(x - a0, b0 - x);
            return std::pow(uv, p) * std::pow(dd, -alpha);
        };
        std::vector<double> br(u.breakpoints());
        br.push_back(mid);
        rhs = rhs + detail::edge_singular_integral(f, s0, s1, br, ec.rel_tol);
    }
    return make_report("interval", lhs, rhs, kappa(1, p, alpha));
}

// ---------------------------------------------------------------------------
// convex-domain verification (d = 2 Monte Carlo + deterministic halo)

/// E_p^Omega[u] for a 2-D product test function supported strictly inside
/// the body.
inline Estimate form_ep_convex2d(const TestFunction& u, const ConvexBody& body,
                                 double p, double alpha,
                                 const EngineConfig& ec = {}) {
    if (u.dim() != 2 || body.d != 2)
        throw std::invalid_argument("form_ep_convex2d: d = 2 only");
    const Func1D& f1 = u.axis(0);
    const Func1D& f2 = u.axis(1);
    for (double cx : {f1.lo(), f1.hi()})
        for (double cy : {f2.lo(), f2.hi()})
            if (!body.contains({cx, cy}))
                throw std::domain_error(
                    "form_ep_convex2d: supp u not inside the body");
    Domain2D S = Domain2D::box({f1.lo(), f2.lo()}, {f1.hi(), f2.hi()});
    McConfig mc;
    mc.samples = ec.mc_samples;
    mc.strata = ec.mc_strata;
    mc.seed = ec.seed;
    Estimate core =
        double_singular_mc2d(ep_pair_integrand_2d(u, p), S, alpha, mc);
    // halo: K_out(x) = (1/alpha) oint [ r_S(th)^{-alpha} - r_Omega(th)^{-alpha} ]
    QuadConfig tc;
    tc.strict = false;
    tc.rel = 1e-6;
    tc.max_intervals = 240;
    auto kout = [&](const std::vector<double>& x, double dl1, double dr1,
                    double dl2, double dr2) {
        auto arc = [&](double th, double, double) {
            double c = std::cos(th), s = std::sin(th);
            double t_s = detail::ray_exit_box(dl1, dr1, dl2, dr2, c, s);
            double t_o = body.ray_exit(x, {c, s});
            return std::pow(t_s, -alpha) - std::pow(t_o, -alpha);
        };
        std::vector<double> corners =
            detail::box_corner_angles(dl1, dr1, dl2, dr2);
        Estimate ring =
            integrate_adaptive(arc, 0.0, 2.0 * M_PI, 0.0, corners, tc);
        return ring.value / alpha;
    };
    auto outer = [&](double x1, double dl1, double dr1) {
        double v1 = f1(x1);
        if (v1 == 0.0) return 0.0;
        auto inner = [&](double x2, double dl2, double dr2) {
            double v2 = f2(x2);
            if (v2 == 0.0) return 0.0;
            return std::pow(std::fabs(v1 * v2), p) *
                   kout({x1, x2}, dl1, dr1, dl2, dr2);
        };
        return detail::edge_singular_integral(inner, f2.lo(), f2.hi(),
                                              f2.breakpoints(),
                                              3.0 * ec.rel_tol, 200)
            .value;
    };
    Estimate halo = detail::edge_singular_integral(
        outer, f1.lo(), f1.hi(), f1.breakpoints(), 3.0 * ec.rel_tol, 200);
    halo.error += 3.0 * ec.rel_tol * std::fabs(halo.value);
    return core.scaled(0.5) + halo;
}

/// RHS weight integral int |u|^p W(x)^{-alpha} dx with W = m_alpha or dist.
inline Estimate convex_rhs_2d(const TestFunction& u, const ConvexBody& body,
                              double p, double alpha, bool use_m_alpha,
                              const EngineConfig& ec = {}) {
    const Func1D& f1 = u.axis(0);
    const Func1D& f2 = u.axis(1);
    QuadConfig cfg;
    cfg.strict = false;
    cfg.rel = 0.4 * ec.rel_tol;
    cfg.max_intervals = 400;
    auto outer = [&](double x1, double, double) {
        double v1 = f1(x1);
        if (v1 == 0.0) return 0.0;
        auto inner = [&](double x2, double, double) {
            double v2 = f2(x2);
            if (v2 == 0.0) return 0.0;
            std::vector<double> x{x1, x2};
            double w = use_m_alpha ? m_alpha(x, body, alpha, 1e-8)
                                   : dist_boundary(x, body);
            return std::pow(std::fabs(v1 * v2), p) * std::pow(w, -alpha);
        };
        return integrate_adaptive(inner, f2.lo(), f2.hi(), 0.0,
                                  f2.breakpoints(), cfg)
            .value;
    };
    Estimate e = integrate_adaptive(outer, f1.lo(), f1.hi(), 0.0,
                                    f1.breakpoints(), cfg);
    e.error += 2.0 * cfg.rel * std::fabs(e.value);
    return e;
}

/// Convex-domain Hardy report.  alpha <= 1 is rejected outright: on bounded
/// convex domains the inequality cannot hold with a positive constant.
inline HardyReport verify_convex(const TestFunction& u, const ConvexBody& body,
                                 double p, double alpha, bool use_m_alpha,
                                 const EngineConfig& ec = {}) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::domain_error(
            "verify_convex: alpha <= 1 rejected; on a bounded convex domain "
            "the inequality cannot hold with a positive constant");
    if (body.d == 1) {
        IntervalDomain J =
            IntervalDomain::of({{body.lo[0], body.hi[0]}});
        return verify_interval(u.axis(0), J, p, alpha, ec);
    }
    if (body.d != 2 || u.dim() != 2)
        throw std::invalid_argument("verify_convex: d in {1,2}");
    Estimate lhs = form_ep_convex2d(u, body, p, alpha, ec);
    Estimate rhs = convex_rhs_2d(u, body, p, alpha, use_m_alpha, ec);
    HardyReport r = make_report(u.name, lhs, rhs, kappa(2, p, alpha));
    return r;
}

} // namespace hardy
