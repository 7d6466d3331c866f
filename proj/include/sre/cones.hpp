#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "sre/game.hpp"

namespace sre {

// H-representation of the tangent cone of the product simplex at a state:
// one zero-sum equality per population block plus a sign constraint at every
// inactive coordinate. The zero direction always satisfies it.
struct TangentConeRep {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<std::size_t>> inactive;  // per population, local indices with x = 0
    double ri_strict = 1e-9;
};

inline TangentConeRep tangent_cone(const PopulationGame& game, const State& x, const Tolerances& tol = {}) {
    TangentConeRep cone;
    cone.ri_strict = tol.ri_strict;
    cone.offsets.resize(game.population_count());
    cone.sizes.resize(game.population_count());
    cone.inactive.resize(game.population_count());
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        cone.offsets[p] = game.block_offset(p);
        cone.sizes[p] = game.strategy_count(p);
        for (std::size_t j = 0; j < cone.sizes[p]; ++j)
            if (!(x.coords[cone.offsets[p] + j] > tol.support)) cone.inactive[p].push_back(j);
    }
    return cone;
}

// Relative-interior membership: strict positivity at every inactive
// coordinate. A single-strategy block has tangent cone {0}; its only
// direction, zero, counts as strictly feasible. Throws when a zero-sum
// equality is violated beyond 1e-10.
inline bool in_relative_interior(const TangentConeRep& cone, const Vec& d) {
    for (std::size_t p = 0; p < cone.offsets.size(); ++p) {
        double sum = 0.0;
        for (std::size_t j = 0; j < cone.sizes[p]; ++j) sum += d[cone.offsets[p] + j];
        if (std::fabs(sum) > 1e-10)
            throw std::invalid_argument("direction violates the zero-sum equality of population block " +
                                        std::to_string(p));
    }
    for (std::size_t p = 0; p < cone.offsets.size(); ++p)
        for (std::size_t j : cone.inactive[p])
            if (!(d[cone.offsets[p] + j] > cone.ri_strict)) return false;
    return true;
}

// Per-block normal-cone membership query: the candidate vector split into
// blocks together with each block's support set.
struct NormalConeQuery {
    Vec z;
    std::vector<std::vector<std::size_t>> supports;
};

struct NormalConeCheck {
    bool contained = false;
    Vec support_levels;  // witness level per population
};

// Closed-form membership test: within each block the vector must be constant
// (within tol) on the support and no larger than that level off the support.
inline NormalConeCheck normal_cone_contains(const PopulationGame& game, const State& x, const Vec& a, double tol) {
    if (a.size() != game.ambient_dim()) throw std::invalid_argument("vector dimension does not match game");
    NormalConeQuery query{a, state_supports(game, x)};
    NormalConeCheck result;
    result.contained = true;
    result.support_levels.assign(game.population_count(), 0.0);
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        const std::size_t off = game.block_offset(p);
        const std::vector<std::size_t>& supp = query.supports[p];
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t j : supp) {
            lo = std::min(lo, query.z[off + j]);
            hi = std::max(hi, query.z[off + j]);
        }
        if (supp.empty()) {
            // validated states always have a nonempty block support
            result.support_levels[p] = 0.0;
            continue;
        }
        const double level = 0.5 * (lo + hi);
        result.support_levels[p] = level;
        if (hi - lo > 2.0 * tol) result.contained = false;
        std::vector<bool> on_support(game.strategy_count(p), false);
        for (std::size_t j : supp) on_support[j] = true;
        for (std::size_t j = 0; j < game.strategy_count(p); ++j)
            if (!on_support[j] && query.z[off + j] > level + tol) result.contained = false;
    }
    return result;
}

}  // namespace sre
