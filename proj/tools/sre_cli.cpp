// Command-line surface for the state-robustness diagnostics: game/state/
// region ingestion, the membership battery, Nash candidate enumeration,
// region validity, and the sampling cross-check. Reports are deterministic:
// identical inputs, flags, and seed produce byte-identical output.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sre/diagnostics.hpp"
#include "sre/document.hpp"
#include "sre/gallery.hpp"
#include "sre/game.hpp"
#include "sre/oracle.hpp"
#include "sre/report.hpp"
#include "sre/uncertainty.hpp"

namespace {

using sre::Json;
using sre::Vec;

struct GameSource {
    std::string file;
    std::string gallery;
    std::vector<std::string> params;

    sre::GameDocument load() const {
        if (!gallery.empty()) {
            std::map<std::string, std::string> map;
            for (const std::string& kv : params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw sre::DocumentError("gallery parameter '" + kv + "' is not of the form key=value");
                map[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            return sre::document_from_gallery(sre::make_gallery(gallery, map));
        }
        if (file.empty()) throw sre::DocumentError("no game given: pass a document file or --gallery");
        return sre::load_document(file);
    }

    Json echo() const {
        Json j;
        if (!gallery.empty()) {
            j["gallery"] = gallery;
            j["params"] = params;
        } else {
            j["file"] = file;
        }
        return j;
    }
};

struct StateRef {
    std::string name;
    std::string coords_csv;

    sre::State resolve(const sre::GameDocument& doc, const sre::PopulationGame& game) const {
        if (!coords_csv.empty()) {
            Vec coords;
            std::stringstream ss(coords_csv);
            std::string item;
            while (std::getline(ss, item, ',')) coords.push_back(std::stod(item));
            return sre::validate_state(game, coords);
        }
        if (name.empty()) throw sre::DocumentError("no state given: pass --state NAME or --coords LIST");
        return doc.named_state(game, name);
    }

    Json echo() const {
        Json j;
        if (!coords_csv.empty())
            j["coords"] = coords_csv;
        else
            j["state"] = name;
        return j;
    }
};

void add_game_options(CLI::App* cmd, GameSource& source) {
    CLI::Option* file = cmd->add_option("game", source.file, "game document (JSON)");
    CLI::Option* gallery = cmd->add_option("--gallery", source.gallery, "built-in gallery game instead of a document");
    cmd->add_option("--param", source.params, "gallery parameter key=value (repeatable)");
    file->excludes(gallery);
}

void add_state_options(CLI::App* cmd, StateRef& state) {
    CLI::Option* name = cmd->add_option("--state", state.name, "named state from the document");
    CLI::Option* coords = cmd->add_option("--coords", state.coords_csv, "state as comma-separated ambient coordinates");
    name->excludes(coords);
}

void emit(const Json& report, const std::string& text, bool as_json) {
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text;
}

unsigned default_threads() {
    if (const char* env = std::getenv("SRE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

int run_check(const GameSource& source, const StateRef& state_ref, const sre::RunConfig& config, bool as_json) {
    const sre::GameDocument doc = source.load();
    const sre::PopulationGame game = doc.build_game();
    const sre::State x = state_ref.resolve(doc, game);
    const sre::SreVerdict verdict = sre::sre_membership(game, x, sre::to_options(config));

    Json args = source.echo();
    args.update(state_ref.echo());
    Json report = sre::report_skeleton("check", std::move(args), config);
    report["state"] = x.coords;
    report["result"] = sre::verdict_json(game, verdict);
    emit(report, sre::render_check_text(game, verdict), as_json);
    if (!verdict.is_nash) return sre::kExitNotNash;
    return verdict.is_sre ? sre::kExitOk : sre::kExitDiagnosticNegative;
}

int run_nash(const GameSource& source, bool classify, std::size_t cap, const sre::RunConfig& config, bool as_json) {
    const sre::GameDocument doc = source.load();
    const sre::PopulationGame game = doc.build_game();
    sre::EnumerationOptions enum_opts;
    enum_opts.profile_cap = cap;
    enum_opts.nash_tol = config.tol_zero;
    const sre::NashEnumeration found = sre::nash_support_enumeration(game, enum_opts);

    Json args = source.echo();
    args["classify"] = classify;
    Json report = sre::report_skeleton("nash", std::move(args), config);
    Json list = Json::array();
    std::string text;
    std::size_t sre_count = 0;
    for (std::size_t c = 0; c < found.candidates.size(); ++c) {
        const sre::NashCandidate& cand = found.candidates[c];
        Json j;
        j["state"] = cand.state.coords;
        j["kind"] = sre::to_string(cand.kind);
        text += "candidate " + std::to_string(c) + " [";
        for (std::size_t k = 0; k < cand.state.coords.size(); ++k)
            text += (k ? ", " : "") + sre::fmt_num(cand.state.coords[k]);
        text += std::string("] ") + sre::to_string(cand.kind);
        if (classify) {
            const sre::SreVerdict verdict = sre::sre_membership(game, cand.state, sre::to_options(config));
            j["verdict"] = sre::verdict_json(game, verdict);
            if (verdict.is_sre) ++sre_count;
            text += verdict.is_sre ? " : sre" : " : nash-but-exposed";
        }
        text += "\n";
        list.push_back(std::move(j));
    }
    report["candidates"] = std::move(list);
    if (!found.profile_failures.empty()) report["profile_failures"] = found.profile_failures;
    text += "candidates: " + std::to_string(found.candidates.size());
    if (classify) text += ", sre: " + std::to_string(sre_count);
    text += "\n";
    emit(report, text, as_json);
    return sre::kExitOk;
}

int run_uvalid(const GameSource& source, const StateRef& state_ref, const std::string& region_name, double box,
               const std::vector<double>& shrink, const sre::RunConfig& config, bool as_json) {
    const sre::GameDocument doc = source.load();
    const sre::PopulationGame game = doc.build_game();
    const sre::State x = state_ref.resolve(doc, game);
    const sre::DiagnosticOptions opts = sre::to_options(config);

    Json args = source.echo();
    args.update(state_ref.echo());

    if (!shrink.empty()) {
        const double r0 = shrink[0];
        const int m_max = static_cast<int>(shrink[1]);
        args["shrink"] = shrink;
        const sre::ShrinkingTrace trace = sre::shrinking_diagnostic(game, x, r0, m_max, opts);
        Json report = sre::report_skeleton("uvalid", std::move(args), config);
        Json levels = Json::array();
        std::string text;
        for (const sre::ShrinkLevel& level : trace.levels) {
            Json j;
            j["radius"] = level.radius;
            j["valid"] = level.valid;
            levels.push_back(std::move(j));
            text += "radius " + sre::fmt_num(level.radius) + ": " + (level.valid ? "valid" : "invalid") + "\n";
        }
        report["levels"] = std::move(levels);
        report["stabilized_valid"] = trace.stabilized_valid;
        report["stable"] = trace.stable;
        text += std::string("stabilized: ") + (trace.stabilized_valid ? "valid" : "invalid") +
                (trace.stable ? " (stable)" : " (unstable)") + "\n";
        emit(report, text, as_json);
        return trace.stabilized_valid ? sre::kExitOk : sre::kExitDiagnosticNegative;
    }

    sre::PolyhedralRegion region;
    if (box > 0.0) {
        region = sre::box_region(game, x, box);
        args["box"] = box;
    } else if (!region_name.empty()) {
        region = doc.named_region(region_name);
        args["region"] = region_name;
    } else {
        throw sre::DocumentError("uvalid needs one of --region NAME, --box R, --shrink R0 M");
    }
    const sre::RegionValidityReport report_data = sre::region_validity(game, x, region, opts);
    Json report = sre::report_skeleton("uvalid", std::move(args), config);
    Json rows = Json::array();
    std::string text;
    for (const sre::DeviationWorstCase& row : report_data.rows) {
        Json j;
        j["population"] = game.population(row.population).name;
        j["strategy"] = game.population(row.population).strategies[row.strategy];
        j["worst_value"] = row.worst_value;
        j["worst_state"] = row.worst_state;
        rows.push_back(std::move(j));
        text += "(" + game.population(row.population).name + ", " +
                game.population(row.population).strategies[row.strategy] +
                "): worst " + sre::fmt_num(row.worst_value) + "\n";
    }
    report["rows"] = std::move(rows);
    report["empty_region"] = report_data.empty_region;
    report["candidate_in_region"] = report_data.candidate_in_region;
    report["valid"] = report_data.valid;
    if (report_data.empty_region) text += "region is empty: vacuously valid\n";
    if (!report_data.candidate_in_region) text += "note: candidate lies outside the region\n";
    text += std::string("verdict: ") + (report_data.valid ? "valid" : "invalid") + "\n";
    emit(report, text, as_json);
    return report_data.valid ? sre::kExitOk : sre::kExitDiagnosticNegative;
}

int run_oracle(const GameSource& source, const StateRef& state_ref, const std::string& radii_csv, int samples,
               const sre::RunConfig& config, bool as_json) {
    const sre::GameDocument doc = source.load();
    const sre::PopulationGame game = doc.build_game();
    const sre::State x = state_ref.resolve(doc, game);
    const sre::DiagnosticOptions opts = sre::to_options(config);

    sre::SamplingConfig sampling;
    sampling.seed = config.seed;
    sampling.samples_per_radius = samples;
    if (!radii_csv.empty()) {
        sampling.radii.clear();
        std::stringstream ss(radii_csv);
        std::string item;
        while (std::getline(ss, item, ',')) sampling.radii.push_back(std::stod(item));
    }

    const auto evidence = sre::sample_exposure(game, x, sampling);

    Json args = source.echo();
    args.update(state_ref.echo());
    args["samples"] = sampling.samples_per_radius;
    args["radii"] = sampling.radii;
    Json report = sre::report_skeleton("oracle", std::move(args), config);
    Json rows = Json::array();
    std::string text;
    bool agreement = true;
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        for (std::size_t i = 0; i < game.strategy_count(p); ++i) {
            const sre::DeviationVerdict verdict = sre::classify_deviation(game, x, p, i, opts);
            const sre::ExposureEvidence& e = evidence[p][i];
            const bool lp_exposed = verdict.kind == sre::DeviationKind::ExposedZeroGap ||
                                    verdict.kind == sre::DeviationKind::PositiveGap;
            const bool sampled_exposed = e.kind == sre::EvidenceKind::ExposedEvidence;
            const bool agree = lp_exposed == sampled_exposed;
            agreement = agreement && agree;
            Json j;
            j["population"] = game.population(p).name;
            j["strategy"] = game.population(p).strategies[i];
            j["classification"] = sre::to_string(verdict.kind);
            j["evidence"] = sre::to_string(e.kind);
            j["hits_per_radius"] = e.hits_per_radius;
            if (sampled_exposed) {
                j["witness_state"] = e.witness;
                j["witnessed_gap"] = e.witnessed_gap;
            }
            j["agree"] = agree;
            rows.push_back(std::move(j));
            text += "(" + game.population(p).name + ", " + game.population(p).strategies[i] + "): " +
                    sre::to_string(verdict.kind) + " / " + sre::to_string(e.kind) +
                    (agree ? "" : "  << MISMATCH") + "\n";
        }
    }
    report["rows"] = std::move(rows);
    report["agreement"] = agreement;
    text += std::string("agreement: ") + (agreement ? "yes" : "no") + "\n";
    emit(report, text, as_json);
    return agreement ? sre::kExitOk : sre::kExitOracleMismatch;
}

int run_gallery_dump(const std::string& name, const std::vector<std::string>& params, bool as_json) {
    std::map<std::string, std::string> map;
    for (const std::string& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw sre::DocumentError("gallery parameter '" + kv + "' is not of the form key=value");
        map[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    const sre::GalleryGame g = sre::make_gallery(name, map);
    const Json j = sre::document_to_json(sre::document_from_gallery(g));
    (void)as_json;  // the document is the payload either way
    std::cout << j.dump(2) << "\n";
    return sre::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"state-robustness diagnostics for finite-strategy population games"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    sre::RunConfig config;
    config.threads = default_threads();
    bool as_json = false;
    app.add_option("--tol-zero", config.tol_zero, "zero band for gap classification")->capture_default_str();
    app.add_option("--tol-psi", config.tol_psi, "exposure threshold on the tangent-program value")
        ->capture_default_str();
    app.add_option("--seed", config.seed, "seed for sampling commands")->capture_default_str();
    app.add_option("--threads", config.threads, "worker threads for the per-deviation battery")
        ->capture_default_str();
    app.add_flag("--json", as_json, "emit the machine-readable report");

    GameSource check_source, nash_source, uvalid_source, oracle_source;
    StateRef check_state, uvalid_state, oracle_state;

    CLI::App* check = app.add_subcommand("check", "classify every pure deviation at a candidate state");
    add_game_options(check, check_source);
    add_state_options(check, check_state);

    bool classify = false;
    std::size_t cap = 100000;
    CLI::App* nash = app.add_subcommand("nash", "enumerate Nash candidates by support profile");
    add_game_options(nash, nash_source);
    nash->add_flag("--classify", classify, "run the membership battery on every candidate");
    nash->add_option("--cap", cap, "support-profile count cap")->capture_default_str();

    std::string region_name;
    double box = 0.0;
    std::vector<double> shrink;
    CLI::App* uvalid = app.add_subcommand("uvalid", "reported-state validity over an uncertainty region");
    add_game_options(uvalid, uvalid_source);
    add_state_options(uvalid, uvalid_state);
    CLI::Option* region_opt = uvalid->add_option("--region", region_name, "named region from the document");
    CLI::Option* box_opt = uvalid->add_option("--box", box, "sup-norm box radius around the candidate");
    CLI::Option* shrink_opt = uvalid->add_option("--shrink", shrink, "shrinking boxes: R0 M")->expected(2);
    region_opt->excludes(box_opt)->excludes(shrink_opt);
    box_opt->excludes(shrink_opt);

    std::string radii_csv;
    int samples = 2000;
    CLI::App* oracle = app.add_subcommand("oracle", "sampling cross-check of the deviation classification");
    add_game_options(oracle, oracle_source);
    add_state_options(oracle, oracle_state);
    oracle->add_option("--radii", radii_csv, "comma-separated decreasing radii");
    oracle->add_option("--samples", samples, "samples per radius")->capture_default_str();

    std::string gallery_name;
    std::vector<std::string> gallery_params;
    CLI::App* gallery = app.add_subcommand("gallery", "print a gallery game as a document");
    gallery->add_option("name", gallery_name, "gallery game name")->required();
    gallery->add_option("--param", gallery_params, "gallery parameter key=value (repeatable)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(check_source, check_state, config, as_json);
        if (nash->parsed()) return run_nash(nash_source, classify, cap, config, as_json);
        if (uvalid->parsed())
            return run_uvalid(uvalid_source, uvalid_state, region_name, box, shrink, config, as_json);
        if (oracle->parsed()) return run_oracle(oracle_source, oracle_state, radii_csv, samples, config, as_json);
        if (gallery->parsed()) return run_gallery_dump(gallery_name, gallery_params, as_json);
    } catch (const sre::EnumerationCapExceeded& err) {
        std::cerr << "error: " << err.what() << "\n"
                  << "hint: raise --cap or restrict the game\n";
        return sre::kExitCapExceeded;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return sre::kExitInputError;
    }
    return sre::kExitInputError;
}
