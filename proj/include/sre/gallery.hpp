#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sre/game.hpp"

namespace sre {

// A gallery game packages a constructed PopulationGame with its documented
// candidate states, keyed by name in a stable order.
struct GalleryGame {
    std::string name;
    PopulationGame game;
    std::vector<std::pair<std::string, Vec>> states;
};

// Hawk-Dove with value V and conflict cost C > V. One unit-mass population,
// coordinates (x_H, x_D). Chosen ambient representative:
//   F_H(x) = V - (V+C)/2 * x_H          -> row (-(V+C)/2, 0), offset V
//   F_D(x) = V/2 * (1 - x_H)            -> row (-V/2, 0),     offset V/2
inline GalleryGame hawk_dove(double v, double c) {
    if (!(c > v) || !(v > 0.0)) throw std::invalid_argument("hawk_dove requires C > V > 0");
    PopulationSpec pop{"pop", 1.0, {"H", "D"}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{-(v + c) / 2.0, 0.0}, {-v / 2.0, 0.0}}};
    payoffs.offset = {{v, v / 2.0}};
    GalleryGame g{"hawk_dove", PopulationGame({pop}, payoffs), {}};
    const double star = v / c;
    g.states.emplace_back("mixed", Vec{star, 1.0 - star});
    g.states.emplace_back("pure_hawk", Vec{1.0, 0.0});
    g.states.emplace_back("pure_dove", Vec{0.0, 1.0});
    return g;
}

// Standard rock-paper-scissors, F(x) = A x with the cyclic +-1 matrix.
inline GalleryGame rps() {
    PopulationSpec pop{"pop", 1.0, {"R", "P", "S"}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{0.0, -1.0, 1.0}, {1.0, 0.0, -1.0}, {-1.0, 1.0, 0.0}}};
    payoffs.offset = {{0.0, 0.0, 0.0}};
    GalleryGame g{"rps", PopulationGame({pop}, payoffs), {}};
    g.states.emplace_back("barycenter", Vec{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    return g;
}

// Pure coordination on n strategies, F_i(x) = x_i (identity matrix).
inline GalleryGame coordination(std::size_t n) {
    if (n < 2) throw std::invalid_argument("coordination requires n >= 2");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i + 1));
    PopulationSpec pop{"pop", 1.0, labels};
    AffinePayoffModel payoffs;
    Mat a(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
    payoffs.matrix = {a};
    payoffs.offset = {Vec(n, 0.0)};
    GalleryGame g{"coordination", PopulationGame({pop}, payoffs), {}};
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        g.states.emplace_back("e" + std::to_string(i + 1), std::move(e));
    }
    g.states.emplace_back("uniform", Vec(n, 1.0 / static_cast<double>(n)));
    return g;
}

// Binary symmetric game with payoff matrix ((m11, m12), (m21, m22)) against
// the opponent-strategy shares: F_i(x) = m_{i1} x_1 + m_{i2} x_2.
inline GalleryGame binary_symmetric(double m11, double m12, double m21, double m22) {
    PopulationSpec pop{"pop", 1.0, {"s1", "s2"}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{m11, m12}, {m21, m22}}};
    payoffs.offset = {{0.0, 0.0}};
    GalleryGame g{"binary_symmetric", PopulationGame({pop}, payoffs), {}};
    g.states.emplace_back("e1", Vec{1.0, 0.0});
    g.states.emplace_back("e2", Vec{0.0, 1.0});
    const double d1 = m11 - m21;
    const double d2 = m12 - m22;
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) {
        const double q = d1 / (d1 - d2);  // mass on strategy 2 equalizing both payoffs
        g.states.emplace_back("mixed", Vec{1.0 - q, q});
    }
    return g;
}

// Two-sided platform adoption: buyers (p=1) and sellers (p=2), platforms A/B.
//   F_{1,A} = alpha x_{2,A}        F_{1,B} = beta x_{2,B}
//   F_{2,A} = gamma x_{1,A} - phi  F_{2,B} = delta x_{1,B}
inline GalleryGame platform(double alpha, double beta, double gamma, double delta, double phi) {
    if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0 && delta > 0.0))
        throw std::invalid_argument("platform requires alpha, beta, gamma, delta > 0");
    if (!(phi >= 0.0 && phi < gamma)) throw std::invalid_argument("platform requires 0 <= phi < gamma");
    PopulationSpec buyers{"buyers", 1.0, {"A", "B"}};
    PopulationSpec sellers{"sellers", 1.0, {"A", "B"}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{0.0, 0.0, alpha, 0.0}, {0.0, 0.0, 0.0, beta}},
                      {{gamma, 0.0, 0.0, 0.0}, {0.0, delta, 0.0, 0.0}}};
    payoffs.offset = {{0.0, 0.0}, {-phi, 0.0}};
    GalleryGame g{"platform", PopulationGame({buyers, sellers}, payoffs), {}};
    g.states.emplace_back("xA", Vec{1.0, 0.0, 1.0, 0.0});
    g.states.emplace_back("xB", Vec{0.0, 1.0, 0.0, 1.0});
    const double tau1 = (delta + phi) / (gamma + delta);  // buyer A-share at which sellers tie
    const double tau2 = beta / (alpha + beta);            // seller A-share at which buyers tie
    g.states.emplace_back("xcirc", Vec{tau1, 1.0 - tau1, tau2, 1.0 - tau2});
    return g;
}

// Standards adoption with qualities q and same-side network effect lambda:
// F_i(x) = q_i + lambda x_i.
inline GalleryGame standards(const Vec& q, double lambda) {
    if (q.size() < 2) throw std::invalid_argument("standards requires at least 2 standards");
    if (!(lambda > 0.0)) throw std::invalid_argument("standards requires lambda > 0");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < q.size(); ++i) labels.push_back("std" + std::to_string(i + 1));
    PopulationSpec pop{"pop", 1.0, labels};
    const std::size_t n = q.size();
    Mat a(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = lambda;
    AffinePayoffModel payoffs;
    payoffs.matrix = {a};
    payoffs.offset = {q};
    GalleryGame g{"standards", PopulationGame({pop}, payoffs), {}};
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        g.states.emplace_back("e" + std::to_string(i + 1), std::move(e));
    }
    return g;
}

// One population, two strategies: F_1 = 0, F_2 = -y_2. The pure state e1 is
// a weak equilibrium protected by the feasible set.
inline GalleryGame boundary_example() {
    PopulationSpec pop{"pop", 1.0, {"s1", "s2"}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{0.0, 0.0}, {0.0, -1.0}}};
    payoffs.offset = {{0.0, 0.0}};
    GalleryGame g{"boundary_example", PopulationGame({pop}, payoffs), {}};
    g.states.emplace_back("e1", Vec{1.0, 0.0});
    return g;
}

// One population, three strategies with a genuine payoff identity:
// F_1 = F_2 = 0 and F_3 = -1 - y_3. Mixtures over {1, 2} are robust.
inline GalleryGame identity_example() {
    PopulationSpec pop{"pop", 1.0, {"s1", "s2", "s3"}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, -1.0}}};
    payoffs.offset = {{0.0, 0.0, -1.0}};
    GalleryGame g{"identity_example", PopulationGame({pop}, payoffs), {}};
    g.states.emplace_back("e1", Vec{1.0, 0.0, 0.0});
    g.states.emplace_back("e2", Vec{0.0, 1.0, 0.0});
    g.states.emplace_back("mix12", Vec{0.5, 0.5, 0.0});
    return g;
}

namespace detail {

inline double parse_number(const std::string& name, const std::map<std::string, std::string>& params,
                           const char* key) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("gallery '" + name + "': missing parameter '" + key + "'");
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size())
        throw std::invalid_argument("gallery '" + name + "': parameter '" + key + "' is not a number");
    return v;
}

inline double parse_number_or(const std::string& name, const std::map<std::string, std::string>& params,
                              const char* key, double fallback) {
    return params.count(key) ? parse_number(name, params, key) : fallback;
}

inline Vec parse_csv(const std::string& name, const std::map<std::string, std::string>& params, const char* key) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("gallery '" + name + "': missing parameter '" + key + "'");
    Vec out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(name, {{key, item}}, key));
    return out;
}

}  // namespace detail

inline std::vector<std::string> gallery_names() {
    return {"hawk_dove",  "rps",      "coordination",     "binary_symmetric",
            "platform",   "standards", "boundary_example", "identity_example"};
}

// Constructs a gallery game from string parameters (the CLI surface).
// Defaults reproduce the documented baseline instances.
inline GalleryGame make_gallery(const std::string& name, const std::map<std::string, std::string>& params = {}) {
    using detail::parse_csv;
    using detail::parse_number;
    using detail::parse_number_or;
    if (name == "hawk_dove")
        return hawk_dove(parse_number_or(name, params, "V", 2.0), parse_number_or(name, params, "C", 4.0));
    if (name == "rps") return rps();
    if (name == "coordination") {
        const double n = parse_number_or(name, params, "n", 3.0);
        if (n < 2.0 || n != static_cast<double>(static_cast<std::size_t>(n)))
            throw std::invalid_argument("gallery 'coordination': n must be an integer >= 2");
        return coordination(static_cast<std::size_t>(n));
    }
    if (name == "binary_symmetric")
        return binary_symmetric(parse_number(name, params, "m11"), parse_number(name, params, "m12"),
                                parse_number(name, params, "m21"), parse_number(name, params, "m22"));
    if (name == "platform")
        return platform(parse_number_or(name, params, "alpha", 1.0), parse_number_or(name, params, "beta", 1.0),
                        parse_number_or(name, params, "gamma", 1.0), parse_number_or(name, params, "delta", 1.0),
                        parse_number_or(name, params, "phi", 0.0));
    if (name == "standards") {
        Vec q = params.count("q") ? parse_csv(name, params, "q") : Vec{3.0, 2.0, 0.0};
        return standards(q, parse_number_or(name, params, "lambda", 0.5));
    }
    if (name == "boundary_example") return boundary_example();
    if (name == "identity_example") return identity_example();
    std::string known;
    for (const std::string& g : gallery_names()) known += (known.empty() ? "" : ", ") + g;
    throw std::invalid_argument("unknown gallery game '" + name + "' (known: " + known + ")");
}

inline State gallery_state(const GalleryGame& g, const std::string& state_name, const Tolerances& tol = {}) {
    for (const auto& [name, coords] : g.states)
        if (name == state_name) return validate_state(g.game, coords, tol);
    throw std::invalid_argument("gallery '" + g.name + "' has no state named '" + state_name + "'");
}

}  // namespace sre
