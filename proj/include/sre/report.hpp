#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "sre/diagnostics.hpp"
#include "sre/document.hpp"
#include "sre/game.hpp"
#include "sre/oracle.hpp"
#include "sre/uncertainty.hpp"

namespace sre {

inline constexpr const char* kVersion = "0.1.0";

// Exit-code contract of the command-line surface.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitCapExceeded = 3,
    kExitDiagnosticNegative = 10,
    kExitNotNash = 11,
    kExitOracleMismatch = 12,
};

struct RunConfig {
    double tol_zero = 1e-7;
    double tol_psi = 1e-7;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

inline DiagnosticOptions to_options(const RunConfig& config) {
    DiagnosticOptions opts;
    opts.zero_gap_tol = config.tol_zero;
    opts.gain_tol = config.tol_psi;
    opts.threads = config.threads;
    return opts;
}

// Fixed-width text rendering of a double; reports must be byte-identical
// across runs, so all human output funnels through here.
inline std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline Json report_skeleton(const std::string& command, Json args, const RunConfig& config) {
    Json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["args"] = std::move(args);
    Json cfg;
    cfg["tol_zero"] = config.tol_zero;
    cfg["tol_psi"] = config.tol_psi;
    cfg["seed"] = config.seed;
    cfg["threads"] = config.threads;
    j["config"] = std::move(cfg);
    return j;
}

inline Json deviation_json(const PopulationGame& game, const DeviationVerdict& v) {
    Json j;
    j["population"] = game.population(v.population).name;
    j["strategy"] = game.population(v.population).strategies[v.strategy];
    j["gap"] = v.gap;
    j["kind"] = to_string(v.kind);
    if (v.gain) j["gain"] = *v.gain;
    if (v.direction) {
        j["direction"] = v.direction->d;
        j["direction_interior"] = v.direction->interior;
    }
    return j;
}

inline Json certificate_json(const PopulationGame& game, const ExposureCertificate& cert) {
    Json j;
    j["population"] = game.population(cert.population).name;
    j["strategy"] = game.population(cert.population).strategies[cert.strategy];
    j["direction"] = cert.direction;
    j["step"] = cert.step;
    j["witness_state"] = cert.witness.coords;
    j["witnessed_gap"] = cert.witnessed_gap;
    j["blend_weight"] = cert.blend_weight;
    return j;
}

inline Json verdict_json(const PopulationGame& game, const SreVerdict& verdict) {
    Json j;
    j["is_nash"] = verdict.is_nash;
    j["is_sre"] = verdict.is_sre;
    j["status"] = !verdict.is_nash ? "not-nash" : (verdict.is_sre ? "sre" : "nash-but-exposed");
    Json rows = Json::array();
    for (const DeviationVerdict& v : verdict.deviations) rows.push_back(deviation_json(game, v));
    j["deviations"] = std::move(rows);
    Json certs = Json::array();
    for (const ExposureCertificate& cert : verdict.witnesses) certs.push_back(certificate_json(game, cert));
    j["certificates"] = std::move(certs);
    if (!verdict.certificate_issues.empty()) j["certificate_issues"] = verdict.certificate_issues;
    return j;
}

inline std::string render_deviation_table(const PopulationGame& game, const SreVerdict& verdict) {
    std::string out;
    out += "population  strategy  gap           kind                 gain\n";
    for (const DeviationVerdict& v : verdict.deviations) {
        char line[160];
        std::snprintf(line, sizeof line, "%-11s %-9s %-13s %-20s %s\n",
                      game.population(v.population).name.c_str(),
                      game.population(v.population).strategies[v.strategy].c_str(), fmt_num(v.gap).c_str(),
                      to_string(v.kind), v.gain ? fmt_num(*v.gain).c_str() : "-");
        out += line;
    }
    return out;
}

inline std::string render_check_text(const PopulationGame& game, const SreVerdict& verdict) {
    std::string out = render_deviation_table(game, verdict);
    for (const ExposureCertificate& cert : verdict.witnesses) {
        out += "witness (" + game.population(cert.population).name + ", " +
               game.population(cert.population).strategies[cert.strategy] + "): step " + fmt_num(cert.step) +
               ", gap " + fmt_num(cert.witnessed_gap) + ", state [";
        for (std::size_t k = 0; k < cert.witness.coords.size(); ++k)
            out += (k ? ", " : "") + fmt_num(cert.witness.coords[k]);
        out += "]\n";
    }
    for (const std::string& issue : verdict.certificate_issues) out += "certificate inconsistency: " + issue + "\n";
    out += std::string("verdict: ") +
           (!verdict.is_nash ? "not-nash" : (verdict.is_sre ? "sre" : "nash-but-exposed")) + "\n";
    return out;
}

}  // namespace sre
