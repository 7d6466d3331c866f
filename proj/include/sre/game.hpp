#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sre/linalg.hpp"
#include "sre/tolerances.hpp"

namespace sre {

// One population: a label, a positive mass, and its ordered strategy labels.
struct PopulationSpec {
    std::string name;
    double mass = 1.0;
    std::vector<std::string> strategies;
};

// Affine payoff model F_p(y) = A_p y + b_p. Each A_p has one row per own
// strategy and one column per ambient coordinate (all populations' blocks
// concatenated in declaration order).
struct AffinePayoffModel {
    std::vector<Mat> matrix;  // per population: n_p x n
    std::vector<Vec> offset;  // per population: n_p
};

class PopulationGame {
public:
    PopulationGame(std::vector<PopulationSpec> populations, AffinePayoffModel payoffs)
        : pops_(std::move(populations)), payoffs_(std::move(payoffs)) {
        if (pops_.empty()) throw std::invalid_argument("game needs at least one population");
        offsets_.reserve(pops_.size());
        ambient_dim_ = 0;
        for (const PopulationSpec& pop : pops_) {
            if (!(pop.mass > 0.0) || !std::isfinite(pop.mass))
                throw std::invalid_argument("population '" + pop.name + "': mass must be positive");
            if (pop.strategies.empty())
                throw std::invalid_argument("population '" + pop.name + "': needs at least one strategy");
            for (std::size_t i = 0; i < pop.strategies.size(); ++i)
                for (std::size_t j = i + 1; j < pop.strategies.size(); ++j)
                    if (pop.strategies[i] == pop.strategies[j])
                        throw std::invalid_argument("population '" + pop.name +
                                                    "': duplicate strategy label '" + pop.strategies[i] + "'");
            offsets_.push_back(ambient_dim_);
            ambient_dim_ += pop.strategies.size();
        }
        if (payoffs_.matrix.size() != pops_.size() || payoffs_.offset.size() != pops_.size())
            throw std::invalid_argument("payoff model does not cover every population");
        for (std::size_t p = 0; p < pops_.size(); ++p) {
            const std::size_t np = pops_[p].strategies.size();
            if (payoffs_.matrix[p].size() != np || payoffs_.offset[p].size() != np)
                throw std::invalid_argument("population '" + pops_[p].name + "': payoff rows do not match strategies");
            for (const Vec& row : payoffs_.matrix[p]) {
                if (row.size() != ambient_dim_)
                    throw std::invalid_argument("population '" + pops_[p].name +
                                                "': payoff row length does not match ambient dimension");
                for (double v : row)
                    if (!std::isfinite(v)) throw std::invalid_argument("payoff matrix entries must be finite");
            }
            for (double v : payoffs_.offset[p])
                if (!std::isfinite(v)) throw std::invalid_argument("payoff offset entries must be finite");
        }
    }

    std::size_t population_count() const { return pops_.size(); }
    std::size_t ambient_dim() const { return ambient_dim_; }
    const PopulationSpec& population(std::size_t p) const { return pops_.at(p); }
    std::size_t strategy_count(std::size_t p) const { return pops_.at(p).strategies.size(); }
    std::size_t block_offset(std::size_t p) const { return offsets_.at(p); }
    std::size_t ambient_index(std::size_t p, std::size_t i) const { return offsets_.at(p) + i; }
    const Mat& payoff_matrix(std::size_t p) const { return payoffs_.matrix.at(p); }
    const Vec& payoff_offset(std::size_t p) const { return payoffs_.offset.at(p); }
    const AffinePayoffModel& payoffs() const { return payoffs_; }

    void check_strategy(std::size_t p, std::size_t i) const {
        if (p >= pops_.size() || i >= pops_[p].strategies.size())
            throw std::out_of_range("no such (population, strategy) index");
    }

private:
    std::vector<PopulationSpec> pops_;
    AffinePayoffModel payoffs_;
    std::vector<std::size_t> offsets_;
    std::size_t ambient_dim_ = 0;
};

// A point of the product simplex in ambient coordinates. Construct through
// validate_state so downstream support logic sees exact feasibility.
struct State {
    Vec coords;
};

struct StateValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Accepts coordinates within the feasibility band (each >= -tol, block sums
// within tol of the population mass), then clamps negatives to zero and
// renormalizes each block to its exact mass.
inline State validate_state(const PopulationGame& game, Vec coords, const Tolerances& tol = {}) {
    if (coords.size() != game.ambient_dim())
        throw StateValidationError("state has " + std::to_string(coords.size()) + " coordinates, expected " +
                                   std::to_string(game.ambient_dim()));
    for (double v : coords)
        if (!std::isfinite(v)) throw StateValidationError("state coordinates must be finite");
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        const std::size_t off = game.block_offset(p);
        const std::size_t np = game.strategy_count(p);
        const double mass = game.population(p).mass;
        double sum = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
            double& v = coords[off + j];
            if (v < -tol.feasibility)
                throw StateValidationError("population '" + game.population(p).name + "': coordinate " +
                                           std::to_string(j) + " is negative");
            if (v < 0.0) v = 0.0;
            sum += v;
        }
        if (std::fabs(sum - mass) > tol.feasibility * std::max(1.0, mass))
            throw StateValidationError("population '" + game.population(p).name + "': block sums to " +
                                       std::to_string(sum) + ", expected mass " + std::to_string(mass));
        const double rescale = mass / sum;
        for (std::size_t j = 0; j < np; ++j) coords[off + j] *= rescale;
    }
    return State{std::move(coords)};
}

inline std::vector<std::vector<std::size_t>> state_supports(const PopulationGame& game, const State& x,
                                                            const Tolerances& tol = {}) {
    std::vector<std::vector<std::size_t>> supp(game.population_count());
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        const std::size_t off = game.block_offset(p);
        for (std::size_t j = 0; j < game.strategy_count(p); ++j)
            if (x.coords[off + j] > tol.support) supp[p].push_back(j);
    }
    return supp;
}

inline bool state_is_interior(const PopulationGame& game, const State& x, const Tolerances& tol = {}) {
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        const std::size_t off = game.block_offset(p);
        for (std::size_t j = 0; j < game.strategy_count(p); ++j)
            if (!(x.coords[off + j] > tol.support)) return false;
    }
    return true;
}

// F_p(y) = A_p y + b_p for every population.
inline std::vector<Vec> evaluate_payoffs(const PopulationGame& game, const State& y) {
    if (y.coords.size() != game.ambient_dim())
        throw std::invalid_argument("state dimension does not match game");
    std::vector<Vec> out(game.population_count());
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        const Mat& a = game.payoff_matrix(p);
        const Vec& b = game.payoff_offset(p);
        Vec f(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) f[i] = dot(a[i], y.coords) + b[i];
        out[p] = std::move(f);
    }
    return out;
}

namespace detail {
inline double block_aggregate(const PopulationGame& game, const State& x, const Vec& payoff, std::size_t p) {
    const std::size_t off = game.block_offset(p);
    double s = 0.0;
    for (std::size_t j = 0; j < payoff.size(); ++j) s += x.coords[off + j] * payoff[j];
    return s;
}
}  // namespace detail

// Pure gap of strategy i against the candidate block x_p, both evaluated at
// y: aggregate payoff of the pure deviation minus that of the candidate.
inline double pure_gap(const PopulationGame& game, const State& x, const State& y, std::size_t p, std::size_t i) {
    game.check_strategy(p, i);
    const Mat& a = game.payoff_matrix(p);
    const Vec& b = game.payoff_offset(p);
    Vec f(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) f[k] = dot(a[k], y.coords) + b[k];
    return game.population(p).mass * f[i] - detail::block_aggregate(game, x, f, p);
}

// All pure gaps at the candidate itself, one entry per (population, strategy).
struct GapTable {
    std::vector<Vec> values;  // per population

    double max_value() const {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec& row : values)
            for (double v : row) best = std::max(best, v);
        return best;
    }
};

inline GapTable gap_table(const PopulationGame& game, const State& x) {
    const std::vector<Vec> payoff = evaluate_payoffs(game, x);
    GapTable table;
    table.values.resize(game.population_count());
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        const double candidate = detail::block_aggregate(game, x, payoff[p], p);
        const double mass = game.population(p).mass;
        Vec row(game.strategy_count(p));
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = mass * payoff[p][i] - candidate;
        table.values[p] = std::move(row);
    }
    return table;
}

// Pure strategies within tol of the best payoff for population p at y.
inline std::vector<std::size_t> best_response_set(const PopulationGame& game, const State& y, std::size_t p,
                                                  double tol) {
    game.check_strategy(p, 0);
    const Mat& a = game.payoff_matrix(p);
    const Vec& b = game.payoff_offset(p);
    Vec f(a.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        f[i] = dot(a[i], y.coords) + b[i];
        best = std::max(best, f[i]);
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] >= best - tol) out.push_back(i);
    return out;
}

struct NashCheck {
    bool is_nash = false;
    std::vector<std::pair<std::size_t, std::size_t>> violations;  // (p, i) with gap > tol
};

inline NashCheck is_nash(const PopulationGame& game, const State& x, double tol) {
    const GapTable table = gap_table(game, x);
    NashCheck result;
    for (std::size_t p = 0; p < table.values.size(); ++p)
        for (std::size_t i = 0; i < table.values[p].size(); ++i)
            if (table.values[p][i] > tol) result.violations.emplace_back(p, i);
    result.is_nash = result.violations.empty();
    return result;
}

// Ambient representative of the derivative of the pure gap of (p, i) at x:
// mass * (i-th payoff row) - x_p^T A_p.
inline Vec gap_gradient(const PopulationGame& game, const State& x, std::size_t p, std::size_t i) {
    game.check_strategy(p, i);
    const Mat& a = game.payoff_matrix(p);
    const std::size_t off = game.block_offset(p);
    const double mass = game.population(p).mass;
    Vec grad(game.ambient_dim(), 0.0);
    for (std::size_t k = 0; k < grad.size(); ++k) {
        double weighted = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) weighted += x.coords[off + j] * a[j][k];
        grad[k] = mass * a[i][k] - weighted;
    }
    return grad;
}

}  // namespace sre
