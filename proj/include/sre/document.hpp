#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sre/gallery.hpp"
#include "sre/game.hpp"
#include "sre/uncertainty.hpp"

namespace sre {

using Json = nlohmann::ordered_json;

struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// On-disk description of a game plus optional named states and regions.
// Field names are part of the format: populations, name, mass, strategies,
// payoff_matrix, payoff_offset, states, regions, coeffs, rhs. Population
// blocks are laid out in declaration order.
struct GameDocument {
    std::vector<PopulationSpec> populations;
    std::vector<Mat> matrices;
    std::vector<Vec> offsets;
    std::vector<std::pair<std::string, Vec>> states;
    std::vector<std::pair<std::string, PolyhedralRegion>> regions;

    PopulationGame build_game() const { return PopulationGame(populations, AffinePayoffModel{matrices, offsets}); }

    State named_state(const PopulationGame& game, const std::string& name, const Tolerances& tol = {}) const {
        for (const auto& [key, coords] : states)
            if (key == name) return validate_state(game, coords, tol);
        throw DocumentError("document has no state named '" + name + "'");
    }

    const PolyhedralRegion& named_region(const std::string& name) const {
        for (const auto& [key, region] : regions)
            if (key == name) return region;
        throw DocumentError("document has no region named '" + name + "'");
    }
};

namespace doc_detail {

inline const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw DocumentError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline double number(const Json& j, const std::string& where) {
    if (!j.is_number()) throw DocumentError(where + ": expected a number");
    return j.get<double>();
}

inline Vec number_list(const Json& j, const std::string& where) {
    if (!j.is_array()) throw DocumentError(where + ": expected an array of numbers");
    Vec out;
    out.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

}  // namespace doc_detail

inline GameDocument document_from_json(const Json& j) {
    using doc_detail::number;
    using doc_detail::number_list;
    using doc_detail::require;
    GameDocument doc;
    const Json& pops = require(j, "populations", "document");
    if (!pops.is_array() || pops.empty()) throw DocumentError("document: 'populations' must be a nonempty array");
    for (std::size_t p = 0; p < pops.size(); ++p) {
        const std::string where = "populations[" + std::to_string(p) + "]";
        const Json& jp = pops[p];
        PopulationSpec spec;
        const Json& name = require(jp, "name", where);
        if (!name.is_string()) throw DocumentError(where + ".name: expected a string");
        spec.name = name.get<std::string>();
        spec.mass = number(require(jp, "mass", where), where + ".mass");
        const Json& strategies = require(jp, "strategies", where);
        if (!strategies.is_array() || strategies.empty())
            throw DocumentError(where + ".strategies: expected a nonempty array of strings");
        for (const Json& s : strategies) {
            if (!s.is_string()) throw DocumentError(where + ".strategies: expected strings");
            spec.strategies.push_back(s.get<std::string>());
        }
        const Json& matrix = require(jp, "payoff_matrix", where);
        if (!matrix.is_array() || matrix.size() != spec.strategies.size())
            throw DocumentError(where + ".payoff_matrix: expected one row per strategy");
        Mat rows;
        for (std::size_t r = 0; r < matrix.size(); ++r)
            rows.push_back(number_list(matrix[r], where + ".payoff_matrix[" + std::to_string(r) + "]"));
        doc.matrices.push_back(std::move(rows));
        doc.offsets.push_back(number_list(require(jp, "payoff_offset", where), where + ".payoff_offset"));
        doc.populations.push_back(std::move(spec));
    }
    if (j.contains("states")) {
        const Json& states = j.at("states");
        if (!states.is_object()) throw DocumentError("document.states: expected an object");
        for (const auto& [key, coords] : states.items())
            doc.states.emplace_back(key, number_list(coords, "states." + key));
    }
    if (j.contains("regions")) {
        const Json& regions = j.at("regions");
        if (!regions.is_object()) throw DocumentError("document.regions: expected an object");
        for (const auto& [key, halfspaces] : regions.items()) {
            if (!halfspaces.is_array()) throw DocumentError("regions." + key + ": expected an array of halfspaces");
            PolyhedralRegion region;
            for (std::size_t h = 0; h < halfspaces.size(); ++h) {
                const std::string where = "regions." + key + "[" + std::to_string(h) + "]";
                region.halfspaces.push_back(
                    {number_list(require(halfspaces[h], "coeffs", where), where + ".coeffs"),
                     number(require(halfspaces[h], "rhs", where), where + ".rhs")});
            }
            doc.regions.emplace_back(key, std::move(region));
        }
    }
    return doc;
}

inline Json document_to_json(const GameDocument& doc) {
    Json j;
    j["populations"] = Json::array();
    for (std::size_t p = 0; p < doc.populations.size(); ++p) {
        Json jp;
        jp["name"] = doc.populations[p].name;
        jp["mass"] = doc.populations[p].mass;
        jp["strategies"] = doc.populations[p].strategies;
        jp["payoff_matrix"] = doc.matrices[p];
        jp["payoff_offset"] = doc.offsets[p];
        j["populations"].push_back(std::move(jp));
    }
    if (!doc.states.empty()) {
        Json states = Json::object();
        for (const auto& [key, coords] : doc.states) states[key] = coords;
        j["states"] = std::move(states);
    }
    if (!doc.regions.empty()) {
        Json regions = Json::object();
        for (const auto& [key, region] : doc.regions) {
            Json list = Json::array();
            for (const Halfspace& h : region.halfspaces) {
                Json jh;
                jh["coeffs"] = h.coeffs;
                jh["rhs"] = h.rhs;
                list.push_back(std::move(jh));
            }
            regions[key] = std::move(list);
        }
        j["regions"] = std::move(regions);
    }
    return j;
}

inline GameDocument parse_document_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw DocumentError(std::string("document parse error: ") + err.what());
    }
    return document_from_json(j);
}

inline GameDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open document '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_document_text(buffer.str());
}

inline GameDocument document_from_gallery(const GalleryGame& g) {
    GameDocument doc;
    for (std::size_t p = 0; p < g.game.population_count(); ++p) {
        doc.populations.push_back(g.game.population(p));
        doc.matrices.push_back(g.game.payoff_matrix(p));
        doc.offsets.push_back(g.game.payoff_offset(p));
    }
    doc.states = g.states;
    return doc;
}

}  // namespace sre
