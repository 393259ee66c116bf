#pragma once

/// \file report.hpp
/// Machine-readable output: JSON (schema_version 1) and CSV with 17
/// significant digits.  A report always embeds the RunConfig that produced
/// it, and every numeric carries an error field.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardy/halfspace.hpp"
#include "hardy/rng.hpp"

namespace hardy {

constexpr int kSchemaVersion = 1;

enum class OutputFormat { plain, json, csv };

struct RunConfig {
    std::string command;
    int d = 1;
    double p = 2.0;
    double alpha = 0.5;
    double tol = 1e-7;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 20260810u;
    std::string battery = "default";
    int battery_count = 50;
    std::vector<std::string> bodies;
    std::vector<int> n_list;
    std::string rng_name = kRngName;

    EngineConfig engine() const {
        EngineConfig ec;
        ec.rel_tol = tol;
        ec.mc_samples = samples;
        ec.seed = seed;
        return ec;
    }
};

inline nlohmann::json to_json(const RunConfig& rc) {
    return {{"command", rc.command}, {"d", rc.d},
            {"p", rc.p},             {"alpha", rc.alpha},
            {"tol", rc.tol},         {"samples", rc.samples},
            {"seed", rc.seed},       {"battery", rc.battery},
            {"battery_count", rc.battery_count},
            {"bodies", rc.bodies},   {"n_list", rc.n_list},
            {"rng", rc.rng_name}};
}

inline nlohmann::json to_json(const Estimate& e) {
    return {{"value", e.value},
            {"error", e.error},
            {"kind", e.kind == EstimateKind::monte_carlo ? "monte_carlo"
                                                         : "deterministic"},
            {"samples_or_nodes", e.samples_or_nodes}};
}

inline nlohmann::json to_json(const HardyReport& r) {
    return {{"label", r.label},
            {"lhs", to_json(r.lhs)},
            {"rhs", to_json(r.rhs)},
            {"constant", {{"value", r.constant}, {"error", 4e-16 * std::fabs(r.constant)}}},
            {"ratio", {{"value", r.ratio},
                       {"error", std::fabs(r.ratio) > 0.0 && r.rhs.value != 0.0
                                     ? (r.lhs.error + std::fabs(r.ratio) * r.rhs.error) /
                                           r.rhs.value
                                     : 0.0}}},
            {"margin", {{"value", r.margin}, {"error", r.tol_combined}}},
            {"pass", r.pass}};
}

/// 17 significant digits, '.' decimal, no locale.
inline std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_header_reports() {
    return "name,lhs,lhs_error,rhs,rhs_error,constant,ratio,margin,"
           "margin_tol,verdict";
}

inline std::string csv_row(const HardyReport& r) {
    return r.label + "," + num17(r.lhs.value) + "," + num17(r.lhs.error) +
           "," + num17(r.rhs.value) + "," + num17(r.rhs.error) + "," +
           num17(r.constant) + "," + num17(r.ratio) + "," + num17(r.margin) +
           "," + num17(r.tol_combined) + "," + (r.pass ? "pass" : "fail");
}

} // namespace hardy
