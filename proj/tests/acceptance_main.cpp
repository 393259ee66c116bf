// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each.  Exit code = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/battery.hpp"
#include "hardy/cli.hpp"
#include "hardy/convex.hpp"
#include "oracles.hpp"

using namespace hardy;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name,
               const std::function<bool(std::string&)>& body) {
    auto t0 = Clock::now();
    std::string note;
    bool ok = false;
    try {
        ok = body(note);
    } catch (const std::exception& e) {
        note = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %-38s (%6.1f s)%s%s\n",
                ok ? "PASS" : "FAIL", id, name.c_str(), secs,
                note.empty() ? "" : "  -- ", note.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool all_true(const std::vector<char>& v) {
    for (char c : v)
        if (!c) return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

    criterion(1, "constants cross-check (ns vs ns1)", [](std::string& note) {
        for (int d : {1, 2, 3})
            for (int i = 1; i <= 19; ++i) {
                if (i == 10) continue;
                double alpha = i / 10.0;
                double kbd = kappa_bd(d, alpha);
                if (std::fabs(kappa(d, 2.0, alpha) - kbd) >
                    1e-12 * (1.0 + std::fabs(kbd))) {
                    note = "d=" + std::to_string(d) +
                           " alpha=" + std::to_string(alpha);
                    return false;
                }
            }
        return true;
    });

    criterion(2, "conjugate symmetry kappa(p) = kappa(p')", [](std::string& note) {
        for (int d : {1, 2, 3})
            for (int i = 1; i <= 19; ++i) {
                if (i == 10) continue;
                double alpha = i / 10.0;
                for (double p : {1.25, 1.5, 2.0, 3.0, 5.0}) {
                    double k = kappa(d, p, alpha);
                    double kc = kappa(d, p / (p - 1.0), alpha);
                    if (std::fabs(k - kc) > 1e-12 * (1.0 + std::fabs(k))) {
                        note = "d=" + std::to_string(d);
                        return false;
                    }
                }
            }
        return true;
    });

    criterion(3, "kappa limit at alpha = 1", [](std::string& note) {
        for (int d : {1, 2, 3})
            for (double p : {1.25, 1.5, 2.0, 3.0, 5.0}) {
                double prev = 1e300;
                for (double h : {1e-2, 1e-3, 1e-4}) {
                    double k = std::max(std::fabs(kappa(d, p, 1.0 + h)),
                                        std::fabs(kappa(d, p, 1.0 - h)));
                    if (!(k < prev)) {
                        note = "not shrinking";
                        return false;
                    }
                    prev = k;
                }
                if (!(prev <= 1e-2)) {
                    note = "above 1e-2 at h=1e-4";
                    return false;
                }
            }
        return true;
    });

    criterion(4, "gamma integral vs closed form (20x20)", [](std::string& note) {
        for (int i = 0; i < 20; ++i) {
            double a = 0.03 + 1.93 * (i + 0.5) / 20.0;
            for (int j = 0; j < 20; ++j) {
                double b = -1.0 + (a + 1.0) * (j + 0.5) / 20.0;
                double closed = gamma_ab_closed(a, b);
                Estimate quad = gamma_ab_quad(a, b, 1e-10);
                if (std::fabs(quad.value - closed) > 1e-8) {
                    std::ostringstream os;
                    os << "a=" << a << " b=" << b;
                    note = os.str();
                    return false;
                }
            }
        }
        return true;
    });

    criterion(5, "ground-state identity residual (d=1)", [](std::string& note) {
        for (double alpha : {0.3, 0.7, 1.0, 1.5, 1.9}) {
            std::vector<double> betas{(alpha - 1.0) / 2.0, (alpha - 1.0) / 3.0,
                                      -0.45, 0.3 * alpha, 0.8 * alpha - 0.02};
            for (double beta : betas) {
                if (!(beta > -1.0 && beta < alpha)) continue;
                for (double x : {0.5, 1.0, 2.0}) {
                    double r = ground_state_residual(beta, alpha, x);
                    if (!(r <= 1e-6)) {
                        std::ostringstream os;
                        os << "alpha=" << alpha << " beta=" << beta
                           << " x=" << x << " residual=" << r;
                        note = os.str();
                        return false;
                    }
                }
            }
        }
        return true;
    });

    criterion(6, "decomposition identity (Bregman split)", [](std::string& note) {
        CounterRng rng(606);
        std::vector<std::pair<double, double>> pairs;
        for (double p : {1.5, 2.0, 3.0})
            for (double alpha : {0.5, 1.5}) pairs.push_back({p, alpha});
        std::vector<char> ok(pairs.size() * 10, 1);
        std::vector<std::string> notes(pairs.size() * 10);
        parallel_for(static_cast<int>(pairs.size() * 10), [&](int idx) {
            auto [p, alpha] = pairs[idx / 10];
            int k = idx % 10;
            CounterRng sub = rng.substream(idx);
            double c = sub.uniform(0, 0.8, 2.6);
            double r = sub.uniform(1, 0.15, 0.55);
            (void)k;
            Func1D u = Func1D::bump(c, r);
            HardyParams par(1, p, alpha);
            DecompositionResult dr =
                decomposition_residual(u, par, (alpha - 1.0) / p);
            if (!(dr.rel_gap <= 1e-4) ||
                !(dr.remainder.value >= -dr.remainder.error)) {
                ok[idx] = 0;
                std::ostringstream os;
                os << "p=" << p << " alpha=" << alpha << " gap=" << dr.rel_gap;
                notes[idx] = os.str();
            }
        });
        for (std::size_t i = 0; i < ok.size(); ++i)
            if (!ok[i]) {
                note = notes[i];
                return false;
            }
        return true;
    });

    criterion(7, "half-space Hardy battery (300 checks)", [](std::string& note) {
        std::vector<std::pair<double, double>> pairs;
        for (double p : {1.5, 2.0, 3.0})
            for (double alpha : {0.5, 1.5}) pairs.push_back({p, alpha});
        int failures = 0;
        std::string first;
        for (auto [p, alpha] : pairs) {
            HardyParams par(1, p, alpha);
            auto fns = battery_1d(50, 0.25, 4.0, 7011);
            std::vector<char> ok(fns.size(), 1);
            parallel_for(static_cast<int>(fns.size()), [&](int i) {
                HardyReport r = verify_halfspace(fns[i], par);
                ok[i] = r.pass ? 1 : 0;
            });
            for (std::size_t i = 0; i < ok.size(); ++i)
                if (!ok[i]) {
                    ++failures;
                    if (first.empty())
                        first = fns[i].name + " p=" + std::to_string(p);
                }
        }
        if (failures) {
            note = std::to_string(failures) + " failures, first: " + first;
            return false;
        }
        return true;
    });

    criterion(8, "sharpness trend of the extremal sweep", [](std::string& note) {
        std::vector<std::pair<double, double>> pairs;
        for (double p : {1.5, 2.0, 3.0})
            for (double alpha : {0.75, 1.5}) pairs.push_back({p, alpha});
        std::vector<char> ok(pairs.size(), 1);
        std::vector<std::string> notes(pairs.size());
        parallel_for(static_cast<int>(pairs.size()), [&](int idx) {
            auto [p, alpha] = pairs[idx];
            auto rows = extremal_sweep(p, alpha, 1, {4, 16, 64, 256, 1024});
            double lo = 1e300, hi = 0.0, prev_gap = 1e300, prev_err = 0.0;
            for (const auto& r : rows) {
                double gap_err = (r.lhs.error + r.ratio * r.rhs.error) /
                                 r.rhs.value;
                if (!(r.gap > 0.0) ||
                    !(r.gap <= prev_gap + prev_err + gap_err)) {
                    ok[idx] = 0;
                    notes[idx] = "gap trend broken at n=" +
                                 std::to_string(r.n);
                    return;
                }
                prev_gap = r.gap;
                prev_err = gap_err;
                lo = std::min(lo, r.gap_log_n);
                hi = std::max(hi, r.gap_log_n);
            }
            if (!(hi <= 3.0 * lo)) {
                ok[idx] = 0;
                std::ostringstream os;
                os << "band " << hi / lo << " at p=" << p
                   << " alpha=" << alpha;
                notes[idx] = os.str();
            }
        });
        for (std::size_t i = 0; i < ok.size(); ++i)
            if (!ok[i]) {
                note = notes[i];
                return false;
            }
        return true;
    });

    criterion(9, "interval Hardy batteries", [](std::string& note) {
        for (double alpha : {1.1, 1.5, 1.9}) {
            IntervalDomain J1 = IntervalDomain::of({{0.0, 1.0}});
            auto fns = battery_1d(20, 0.05, 0.95, 909);
            std::vector<char> ok(fns.size(), 1);
            parallel_for(static_cast<int>(fns.size()), [&](int i) {
                ok[i] = verify_interval(fns[i].axis(0), J1, 2.0, alpha).pass;
            });
            if (!all_true(ok)) {
                note = "single interval, alpha=" + std::to_string(alpha);
                return false;
            }
            IntervalDomain J2 = IntervalDomain::of({{0.0, 1.0}, {2.0, 3.0}});
            auto left = battery_1d(10, 0.05, 0.95, 910);
            auto right = battery_1d(10, 2.05, 2.95, 911);
            std::vector<TestFunction> both(left);
            both.insert(both.end(), right.begin(), right.end());
            // plus genuinely two-component supports
            both.push_back(TestFunction::of(
                Func1D::bump(0.5, 0.3) + Func1D::bump(2.5, 0.3, 0.7), "pair"));
            std::vector<char> ok2(both.size(), 1);
            parallel_for(static_cast<int>(both.size()), [&](int i) {
                ok2[i] = verify_interval(both[i].axis(0), J2, 2.0, alpha).pass;
            });
            if (!all_true(ok2)) {
                note = "union domain, alpha=" + std::to_string(alpha);
                return false;
            }
        }
        return true;
    });

    criterion(10, "sphere identity", [](std::string& note) {
        for (int d : {1, 2, 3})
            for (double a : {0.25, 0.5, 1.0, 1.5}) {
                auto g = [a](const double* om, int dim) {
                    return std::pow(std::fabs(om[dim - 1]), a);
                };
                Estimate e = sphere_quad(g, d, 1e-9);
                if (std::fabs(e.value - 2.0 * angular_factor(d, a)) > 1e-8) {
                    note = "d=" + std::to_string(d);
                    return false;
                }
            }
        return true;
    });

    criterion(11, "m_alpha <= dist with interval equality", [](std::string& note) {
        // interval-center equality case
        ConvexBody iv = ConvexBody::interval(0.0, 2.0);
        if (std::fabs(m_alpha({1.0}, iv, 1.5) - 1.0) > 1e-12) {
            note = "interval center equality";
            return false;
        }
        CounterRng rng(1111);
        std::uint64_t ctr = 0;
        // d = 1: equality everywhere
        for (int i = 0; i < 1000; ++i) {
            double x = rng.uniform(ctr++, 1e-3, 2.0 - 1e-3);
            for (double a : {1.1, 1.5, 1.9})
                if (std::fabs(m_alpha({x}, iv, a) -
                              dist_boundary({x}, iv)) > 1e-12) {
                    note = "interval";
                    return false;
                }
        }
        std::vector<ConvexBody> bodies = {
            ConvexBody::box({0.0, 0.0}, {1.0, 1.0}),
            ConvexBody::ball({0.0, 0.0}, 1.0),
            ConvexBody::polytope({{{-1.0, 0.0}, 0.0},
                                  {{0.0, -1.0}, 0.0},
                                  {{1.0, 1.0}, 1.0}})};
        const char* names[] = {"square", "disk", "triangle"};
        for (std::size_t bi = 0; bi < bodies.size(); ++bi) {
            int done = 0;
            while (done < 1000) {
                std::vector<double> x{rng.uniform(ctr++, -1.0, 1.0),
                                      rng.uniform(ctr++, -1.0, 1.0)};
                if (!bodies[bi].contains(x)) continue;
                double dd = dist_boundary(x, bodies[bi]);
                if (dd < 1e-4) continue;
                ++done;
                for (double a : {1.1, 1.5, 1.9})
                    if (!(m_alpha(x, bodies[bi], a, 1e-8) <=
                          dd * (1.0 + 1e-7) + 1e-12)) {
                        note = names[bi];
                        return false;
                    }
            }
        }
        return true;
    });

    criterion(12, "convex Hardy (d=2 Monte Carlo)", [](std::string& note) {
        struct Cfg {
            ConvexBody body;
            TestFunction u;
        };
        std::vector<Cfg> cfgs;
        {
            ConvexBody disk = ConvexBody::ball({0.0, 0.0}, 1.0);
            TestFunction radial;
            radial.factors = {Func1D::bump(0.0, 0.45), Func1D::bump(0.0, 0.45)};
            radial.name = "disk_radial";
            TestFunction off;
            off.factors = {Func1D::bump(0.25, 0.3), Func1D::bump(-0.15, 0.3)};
            off.name = "disk_offcenter";
            cfgs.push_back({disk, radial});
            cfgs.push_back({disk, off});
            ConvexBody sq = ConvexBody::box({0.0, 0.0}, {1.0, 1.0});
            TestFunction mid;
            mid.factors = {Func1D::bump(0.5, 0.3), Func1D::bump(0.5, 0.3)};
            mid.name = "square_center";
            TestFunction off2;
            off2.factors = {Func1D::bump(0.32, 0.22), Func1D::bump(0.6, 0.25)};
            off2.name = "square_offcenter";
            cfgs.push_back({sq, mid});
            cfgs.push_back({sq, off2});
        }
        std::vector<std::tuple<int, double, double>> jobs;
        for (std::size_t c = 0; c < cfgs.size(); ++c)
            for (double p : {1.5, 2.0})
                for (double alpha : {1.25, 1.75})
                    jobs.push_back({static_cast<int>(c), p, alpha});
        std::vector<char> ok(jobs.size(), 1);
        std::vector<std::string> notes(jobs.size());
        parallel_for(static_cast<int>(jobs.size()), [&](int j) {
            auto [ci, p, alpha] = jobs[j];
            const Cfg& cfg = cfgs[ci];
            EngineConfig ec;
            ec.mc_samples = 1'000'000;
            ec.seed = 1200 + 7 * j;
            double kap = kappa(2, p, alpha);
            Estimate lhs = form_ep_convex2d(cfg.u, cfg.body, p, alpha, ec);
            Estimate rhs_m = convex_rhs_2d(cfg.u, cfg.body, p, alpha, true, ec);
            Estimate rhs_d = convex_rhs_2d(cfg.u, cfg.body, p, alpha, false, ec);
            bool pass = true;
            if (!(rhs_m.value >= rhs_d.value * (1.0 - 1e-9))) pass = false;
            for (const Estimate* rhs : {&rhs_m, &rhs_d}) {
                double margin = lhs.value - kap * rhs->value;
                double tol = 3.0 * (lhs.error + kap * rhs->error);
                if (!(margin >= -tol)) pass = false;
            }
            if (!pass) {
                ok[j] = 0;
                std::ostringstream os;
                os << cfg.u.name << " p=" << p << " alpha=" << alpha;
                notes[j] = os.str();
            }
        });
        for (std::size_t i = 0; i < ok.size(); ++i)
            if (!ok[i]) {
                note = notes[i];
                return false;
            }
        return true;
    });

    criterion(13, "Bregman properties (1e5 triples)", [](std::string& note) {
        for (double p : {1.25, 1.5, 2.0, 3.0, 4.6}) {
            ComparabilityScan s = comparability_scan(p, 10000);
            CounterRng rng(static_cast<std::uint64_t>(1300 + 100 * p));
            for (int i = 0; i < 20000; ++i) {
                double a = rng.uniform(2 * i, -5.0, 5.0);
                double b = rng.uniform(2 * i + 1, -5.0, 5.0);
                double fab = bregman_f(p, a, b), fba = bregman_f(p, b, a);
                double rhs = p * (b - a) *
                             signed_pow_diff(a, b, b - a, p - 1.0);
                if (std::fabs(fab + fba - rhs) >
                    1e-12 * (1.0 + std::fabs(rhs))) {
                    note = "symmetrization";
                    return false;
                }
                if (std::fabs(a - b) < 1e-12) continue;
                double ratio = bregman_ratio(p, a, b);
                if (p == 2.0 && std::fabs(ratio - 1.0) > 1e-12) {
                    note = "p=2 ratio";
                    return false;
                }
                if (ratio < s.c_lower * (1.0 - 1e-9) - 1e-12 ||
                    ratio > s.c_upper * (1.0 + 1e-9) + 1e-12) {
                    note = "bracket violation";
                    return false;
                }
            }
        }
        return true;
    });

    criterion(14, "byte-identical seeded CLI reports", [&](std::string& note) {
        if (cli_path.empty()) {
            note = "no --cli path given";
            return false;
        }
        auto slurp = [](const std::string& path) {
            std::ifstream f(path, std::ios::binary);
            std::stringstream ss;
            ss << f.rdbuf();
            return ss.str();
        };
        struct Cmd {
            std::string args;
        };
        std::vector<std::string> cmds = {
            " constants --d 1 --p 3 --alpha 1.5 --json --out ",
            " verify halfspace --d 1 --p 2 --alpha 0.5 --count 4 --seed 11 "
            "--json --out ",
            " sweep extremal --p 2 --alpha 1.5 --n 4,16 --json --out "};
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            std::string f1 = "/tmp/hardy_rep_a" + std::to_string(i) + ".json";
            std::string f2 = "/tmp/hardy_rep_b" + std::to_string(i) + ".json";
            int rc1 = std::system((cli_path + cmds[i] + f1).c_str());
            int rc2 = std::system((cli_path + cmds[i] + f2).c_str());
            if (rc1 != 0 || rc2 != 0) {
                note = "CLI exited nonzero";
                return false;
            }
            std::string a = slurp(f1), b = slurp(f2);
            if (a.empty() || a != b) {
                note = "byte mismatch in command " + std::to_string(i);
                return false;
            }
        }
        return true;
    });

    std::printf("%d/%d criteria passed\n", 14 - g_failures, 14);
    return g_failures == 0 ? 0 : 1;
}
