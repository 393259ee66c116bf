#pragma once

/// \file cli.hpp
/// The `hardy` command line: constants, verification batteries, and
/// sweeps.  Kept in a header so the argument handling and report assembly
/// are unit-testable in-process; the binary is a two-liner.
///
/// Exit codes: 0 all checks pass, 1 a mathematical check failed beyond
/// tolerance, 2 argument/config error, 3 engine (quadrature) failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hardy/battery.hpp"
#include "hardy/convex.hpp"
#include "hardy/report.hpp"

namespace hardy {

inline int max_threads() {
    if (const char* e = std::getenv("HARDY_THREADS")) {
        int v = std::atoi(e);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Index-parallel map with deterministic result placement.
template <typename F>
void parallel_for(int n, F&& f) {
    int nt = std::min(max_threads(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += nt) f(i);
        });
    for (auto& th : pool) th.join();
}

namespace cli_detail {

inline std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

inline ConvexBody parse_body(const std::string& spec) {
    auto at = spec.find('@');
    if (at == std::string::npos)
        throw std::invalid_argument("--body: expected shape@params");
    std::string kind = spec.substr(0, at), rest = spec.substr(at + 1);
    if (kind == "interval") {
        auto v = parse_doubles(rest);
        if (v.size() != 2) throw std::invalid_argument("interval@a,b");
        return ConvexBody::interval(v[0], v[1]);
    }
    if (kind == "box") {
        auto v = parse_doubles(rest);
        if (v.size() != 4)
            throw std::invalid_argument("box@lox,loy,hix,hiy");
        return ConvexBody::box({v[0], v[1]}, {v[2], v[3]});
    }
    if (kind == "ball") {
        auto v = parse_doubles(rest);
        if (v.size() != 3) throw std::invalid_argument("ball@cx,cy,r");
        return ConvexBody::ball({v[0], v[1]}, v[2]);
    }
    if (kind == "polytope") {
        std::vector<ConvexBody::Face> faces;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            auto v = parse_doubles(tok);
            if (v.size() != 3)
                throw std::invalid_argument("polytope@nx,ny,c;...");
            faces.push_back({{v[0], v[1]}, v[2]});
        }
        return ConvexBody::polytope(std::move(faces));
    }
    throw std::invalid_argument("--body: unknown shape " + kind);
}

struct Sink {
    std::ostream& stream;
    std::string path;
    void write(const std::string& text) const {
        if (path.empty()) {
            stream << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        f << text;
    }
};

inline nlohmann::json report_envelope(const RunConfig& rc) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = to_json(rc);
    return j;
}

inline int emit_reports(const RunConfig& rc,
                        const std::vector<HardyReport>& reports,
                        OutputFormat fmt, const Sink& sink) {
    int failures = 0;
    for (const auto& r : reports) failures += r.pass ? 0 : 1;
    if (fmt == OutputFormat::json) {
        nlohmann::json j = report_envelope(rc);
        j["reports"] = nlohmann::json::array();
        for (const auto& r : reports) j["reports"].push_back(to_json(r));
        j["summary"] = {{"count", reports.size()}, {"failures", failures}};
        sink.write(j.dump(2) + "\n");
    } else if (fmt == OutputFormat::csv) {
        std::string text = csv_header_reports() + "\n";
        for (const auto& r : reports) text += csv_row(r) + "\n";
        sink.write(text);
    } else {
        std::string text;
        for (const auto& r : reports) {
            text += (r.pass ? "[pass] " : "[FAIL] ") + r.label +
                    "  ratio=" + num17(r.ratio) + "  margin=" +
                    num17(r.margin) + " (tol " + num17(r.tol_combined) +
                    ")\n";
        }
        text += "checks: " + std::to_string(reports.size()) + ", failures: " +
                std::to_string(failures) + "\n";
        sink.write(text);
    }
    return failures == 0 ? 0 : 1;
}

inline int cmd_constants(const RunConfig& rc, OutputFormat fmt,
                         const Sink& sink) {
    double beta = (rc.alpha - 1.0) / rc.p;
    double kap = kappa(rc.d, rc.p, rc.alpha);
    double kap_conj = kappa(rc.d, rc.p / (rc.p - 1.0), rc.alpha);
    double kbd = kappa_bd(rc.d, rc.alpha);
    Estimate gam = (rc.alpha == 1.0)
                       ? gamma_ab_quad(rc.alpha, beta, 1e-12)
                       : Estimate{gamma_ab_closed(rc.alpha, beta),
                                  4e-16 * std::fabs(gamma_ab_closed(rc.alpha, beta)),
                                  EstimateKind::deterministic, 0};
    double ac = a_const(rc.d, rc.alpha);
    double af = angular_factor(rc.d, rc.alpha);
    double sym = std::fabs(kap - kap_conj);
    if (fmt == OutputFormat::json) {
        nlohmann::json j = report_envelope(rc);
        auto num = [](double v) {
            return nlohmann::json{{"value", v}, {"error", 4e-16 * std::fabs(v)}};
        };
        j["constants"] = {{"kappa", num(kap)},
                          {"kappa_conj", num(kap_conj)},
                          {"kappa_bd", num(kbd)},
                          {"gamma", to_json(gam)},
                          {"a_const", num(ac)},
                          {"angular_factor", num(af)},
                          {"beta", num(beta)},
                          {"conj_symmetry_abs_diff", num(sym)}};
        sink.write(j.dump(2) + "\n");
    } else if (fmt == OutputFormat::csv) {
        std::string text = "name,value,error\n";
        auto row = [&](const char* n, double v, double e) {
            text += std::string(n) + "," + num17(v) + "," + num17(e) + "\n";
        };
        row("kappa", kap, 4e-16 * std::fabs(kap));
        row("kappa_conj", kap_conj, 4e-16 * std::fabs(kap_conj));
        row("kappa_bd", kbd, 4e-16 * std::fabs(kbd));
        row("gamma", gam.value, gam.error);
        row("a_const", ac, 4e-16 * ac);
        row("angular_factor", af, 4e-16 * af);
        row("beta", beta, 0.0);
        row("conj_symmetry_abs_diff", sym, 0.0);
        sink.write(text);
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "kappa(d=" << rc.d << ", p=" << rc.p << ", alpha=" << rc.alpha
           << ") = " << kap << "\n"
           << "kappa_conj (p' = " << rc.p / (rc.p - 1.0) << ") = " << kap_conj
           << "\n"
           << "kappa_bd (p=2 reference) = " << kbd << "\n"
           << "gamma(alpha, (alpha-1)/p) = " << gam.value << " +- "
           << gam.error << "\n"
           << "A_{d,-alpha} = " << ac << "\n"
           << "angular factor = " << af << "\n";
        sink.write(os.str());
    }
    return 0;
}

inline int cmd_verify(const std::string& target, const RunConfig& rc,
                      OutputFormat fmt, const Sink& sink) {
    EngineConfig ec = rc.engine();
    std::vector<HardyReport> reports;
    if (target == "halfspace") {
        HardyParams par(rc.d, rc.p, rc.alpha);
        std::vector<TestFunction> fns =
            rc.d == 1 ? battery_1d(rc.battery_count, 0.25, 4.0, rc.seed)
                      : battery_2d(rc.battery_count, -1.5, 1.5, 0.3, 2.3,
                                   rc.seed);
        reports.resize(fns.size());
        parallel_for(static_cast<int>(fns.size()), [&](int i) {
            reports[i] = verify_halfspace(fns[i], par, ec);
        });
    } else if (target == "interval") {
        std::vector<std::pair<double, double>> comps;
        for (const auto& b : rc.bodies) {
            ConvexBody body = parse_body(b);
            if (body.shape != ConvexBody::Shape::interval)
                throw std::invalid_argument(
                    "verify interval: --body must be interval@a,b");
            comps.push_back({body.lo[0], body.hi[0]});
        }
        if (comps.empty()) comps.push_back({0.0, 1.0});
        IntervalDomain J = IntervalDomain::of(comps);
        std::vector<TestFunction> fns;
        int per = std::max(1, rc.battery_count /
                                  static_cast<int>(J.components.size()));
        for (std::size_t c = 0; c < J.components.size(); ++c) {
            auto [a, b] = J.components[c];
            double m = 0.04 * (b - a);
            auto batch = battery_1d(per, a + m, b - m, rc.seed + 17 * c);
            fns.insert(fns.end(), batch.begin(), batch.end());
        }
        reports.resize(fns.size());
        parallel_for(static_cast<int>(fns.size()), [&](int i) {
            reports[i] = verify_interval(fns[i].axis(0), J, rc.p, rc.alpha, ec);
            reports[i].label = fns[i].name;
        });
    } else if (target == "convex") {
        ConvexBody body = rc.bodies.empty() ? ConvexBody::ball({0.0, 0.0}, 1.0)
                                            : parse_body(rc.bodies.front());
        if (body.d != 2)
            throw std::invalid_argument("verify convex: 2-D bodies only");
        // inner box for test-function supports
        std::vector<double> blo, bhi;
        if (body.shape == ConvexBody::Shape::ball) {
            double h = body.radius / std::sqrt(2.0) * 0.92;
            blo = {body.center[0] - h, body.center[1] - h};
            bhi = {body.center[0] + h, body.center[1] + h};
        } else if (body.shape == ConvexBody::Shape::box) {
            blo = body.lo;
            bhi = body.hi;
            for (int i = 0; i < 2; ++i) {
                double m = 0.04 * (bhi[i] - blo[i]);
                blo[i] += m;
                bhi[i] -= m;
            }
        } else {
            throw std::invalid_argument(
                "verify convex: ball or box bodies for the battery");
        }
        auto fns = battery_2d(rc.battery_count, blo[0], bhi[0], blo[1],
                              bhi[1], rc.seed);
        reports.resize(2 * fns.size());
        parallel_for(static_cast<int>(fns.size()), [&](int i) {
            EngineConfig eci = ec;
            eci.seed = ec.seed + 101 * i;
            reports[2 * i] =
                verify_convex(fns[i], body, rc.p, rc.alpha, true, eci);
            reports[2 * i].label = fns[i].name + "_m_alpha";
            reports[2 * i + 1] =
                verify_convex(fns[i], body, rc.p, rc.alpha, false, eci);
            reports[2 * i + 1].label = fns[i].name + "_dist";
        });
    } else {
        throw std::invalid_argument("verify: target must be "
                                    "halfspace|interval|convex");
    }
    return emit_reports(rc, reports, fmt, sink);
}

inline int cmd_sweep(const std::string& kind, const RunConfig& rc,
                     OutputFormat fmt, const Sink& sink) {
    EngineConfig ec = rc.engine();
    if (kind == "extremal") {
        if (rc.n_list.empty())
            throw std::invalid_argument("sweep extremal: --n list required");
        auto rows = extremal_sweep(rc.p, rc.alpha, rc.d, rc.n_list, ec);
        if (fmt == OutputFormat::json) {
            nlohmann::json j = report_envelope(rc);
            j["rows"] = nlohmann::json::array();
            for (const auto& r : rows)
                j["rows"].push_back({{"n", r.n},
                                     {"lhs", to_json(r.lhs)},
                                     {"rhs", to_json(r.rhs)},
                                     {"ratio", r.ratio},
                                     {"gap", r.gap},
                                     {"gap_log_n", r.gap_log_n}});
            sink.write(j.dump(2) + "\n");
        } else {
            std::string text =
                "n,lhs,lhs_error,rhs,rhs_error,ratio,gap,gap_log_n\n";
            for (const auto& r : rows)
                text += std::to_string(r.n) + "," + num17(r.lhs.value) + "," +
                        num17(r.lhs.error) + "," + num17(r.rhs.value) + "," +
                        num17(r.rhs.error) + "," + num17(r.ratio) + "," +
                        num17(r.gap) + "," + num17(r.gap_log_n) + "\n";
            sink.write(text);
        }
        return 0;
    }
    if (kind == "alpha-grid") {
        std::string text =
            "alpha,kappa,kappa_conj,kappa_bd,abs_diff_p2_vs_bd\n";
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 1; i <= 19; ++i) {
            double alpha = i / 10.0;
            double kap = kappa(rc.d, rc.p, alpha);
            double kc = kappa(rc.d, rc.p / (rc.p - 1.0), alpha);
            double kbd = kappa_bd(rc.d, alpha);
            double k2 = (alpha == 1.0) ? 0.0 : kappa(rc.d, 2.0, alpha);
            double diff = std::fabs(k2 - kbd);
            text += num17(alpha) + "," + num17(kap) + "," + num17(kc) + "," +
                    num17(kbd) + "," + num17(diff) + "\n";
            rows.push_back({{"alpha", alpha},
                            {"kappa", kap},
                            {"kappa_conj", kc},
                            {"kappa_bd", kbd},
                            {"abs_diff_p2_vs_bd", diff}});
        }
        if (fmt == OutputFormat::json) {
            nlohmann::json j = report_envelope(rc);
            j["rows"] = rows;
            sink.write(j.dump(2) + "\n");
        } else {
            sink.write(text);
        }
        return 0;
    }
    if (kind == "p-grid") {
        const double ps[] = {1.25, 1.5, 2.0, 3.0, 5.0};
        std::string text = "p,kappa,kappa_conj,abs_diff\n";
        nlohmann::json rows = nlohmann::json::array();
        for (double p : ps) {
            double kap = kappa(rc.d, p, rc.alpha);
            double kc = kappa(rc.d, p / (p - 1.0), rc.alpha);
            text += num17(p) + "," + num17(kap) + "," + num17(kc) + "," +
                    num17(std::fabs(kap - kc)) + "\n";
            rows.push_back({{"p", p},
                            {"kappa", kap},
                            {"kappa_conj", kc},
                            {"abs_diff", std::fabs(kap - kc)}});
        }
        if (fmt == OutputFormat::json) {
            nlohmann::json j = report_envelope(rc);
            j["rows"] = rows;
            sink.write(j.dump(2) + "\n");
        } else {
            sink.write(text);
        }
        return 0;
    }
    throw std::invalid_argument("sweep: kind must be extremal|alpha-grid|p-grid");
}

} // namespace cli_detail

/// Full CLI entry point; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"hardy - sharp fractional Hardy inequality verification"};
    app.require_subcommand(1);

    RunConfig rc;
    bool want_json = false, want_csv = false;
    std::string out_path;
    std::string verify_target, sweep_kind, n_spec;

    auto add_common = [&](CLI::App* cmd, bool need_p) {
        cmd->add_option("--d", rc.d, "dimension")->check(CLI::Range(1, 3));
        auto* po = cmd->add_option("--p", rc.p, "integrability exponent p");
        if (need_p) po->required();
        cmd->add_option("--alpha", rc.alpha, "order alpha in (0,2)")
            ->required();
        cmd->add_option("--tol", rc.tol, "relative tolerance");
        cmd->add_option("--samples", rc.samples, "Monte Carlo samples");
        cmd->add_option("--seed", rc.seed, "RNG seed (64-bit)");
        cmd->add_flag("--json", want_json, "JSON output");
        cmd->add_flag("--csv", want_csv, "CSV output");
        cmd->add_option("--out", out_path, "write the report to FILE");
    };

    CLI::App* c_const = app.add_subcommand("constants", "closed-form constants");
    add_common(c_const, true);

    CLI::App* c_verify =
        app.add_subcommand("verify", "run a verification battery");
    c_verify->add_option("target", verify_target, "halfspace|interval|convex")
        ->required();
    add_common(c_verify, true);
    c_verify->add_option("--battery", rc.battery, "battery name");
    c_verify->add_option("--count", rc.battery_count, "battery size");
    c_verify->add_option("--body", rc.bodies,
                         "body spec shape@params (repeatable)");

    CLI::App* c_sweep = app.add_subcommand("sweep", "parameter sweeps");
    c_sweep->add_option("kind", sweep_kind, "extremal|alpha-grid|p-grid")
        ->required();
    add_common(c_sweep, false);
    c_sweep->add_option("--n", n_spec, "comma-separated n list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    OutputFormat fmt = want_json ? OutputFormat::json
                       : want_csv ? OutputFormat::csv
                                  : OutputFormat::plain;
    cli_detail::Sink sink{out, out_path};
    try {
        if (c_const->parsed()) {
            rc.command = "constants";
            if (!(rc.alpha > 0.0 && rc.alpha < 2.0) || !(rc.p > 1.0)) {
                err << "constants: need p > 1 and alpha in (0,2)\n";
                return 2;
            }
            return cli_detail::cmd_constants(rc, fmt, sink);
        }
        if (c_verify->parsed()) {
            rc.command = "verify " + verify_target;
            return cli_detail::cmd_verify(verify_target, rc, fmt, sink);
        }
        if (c_sweep->parsed()) {
            rc.command = "sweep " + sweep_kind;
            if (!n_spec.empty()) {
                for (double v : cli_detail::parse_doubles(n_spec))
                    rc.n_list.push_back(static_cast<int>(v));
            }
            return cli_detail::cmd_sweep(sweep_kind, rc, fmt, sink);
        }
    } catch (const QuadratureError& e) {
        err << "engine failure: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace hardy
