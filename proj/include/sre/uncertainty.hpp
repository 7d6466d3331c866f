#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sre/diagnostics.hpp"
#include "sre/game.hpp"
#include "sre/lp.hpp"

namespace sre {

// Halfspace c . y <= rhs over ambient coordinates. A region is the
// intersection of its halfspaces with the product simplex (the simplex
// constraints are always implied).
struct Halfspace {
    Vec coeffs;
    double rhs = 0.0;
};

struct PolyhedralRegion {
    std::vector<Halfspace> halfspaces;
};

struct DeviationWorstCase {
    std::size_t population = 0;
    std::size_t strategy = 0;
    double worst_value = 0.0;
    Vec worst_state;
};

struct RegionValidityReport {
    bool valid = false;
    bool empty_region = false;        // U intersect X infeasible; vacuously valid but flagged
    bool candidate_in_region = true;  // the definition does not require it; flagged when false
    std::vector<DeviationWorstCase> rows;
};

// Reported-state validity over a polyhedral region: for every pure
// deviation, maximize its gap against the candidate over the region. Valid
// means no maximum exceeds the zero band.
inline RegionValidityReport region_validity(const PopulationGame& game, const State& x,
                                            const PolyhedralRegion& region, const DiagnosticOptions& opts = {}) {
    const std::size_t n = game.ambient_dim();
    for (const Halfspace& h : region.halfspaces)
        if (h.coeffs.size() != n) throw std::invalid_argument("region halfspace has wrong dimension");

    RegionValidityReport report;
    report.valid = true;
    for (const Halfspace& h : region.halfspaces)
        if (dot(h.coeffs, x.coords) > h.rhs + 1e-9) report.candidate_in_region = false;

    for (std::size_t p = 0; p < game.population_count(); ++p) {
        for (std::size_t i = 0; i < game.strategy_count(p); ++i) {
            LinearProgram lp = LinearProgram::with_vars(n);
            lp.objective = gap_gradient(game, x, p, i);
            // Affine part of the gap: value at any state minus the linear term.
            const double affine_offset = pure_gap(game, x, x, p, i) - dot(lp.objective, x.coords);
            for (std::size_t q = 0; q < game.population_count(); ++q) {
                Vec row(n, 0.0);
                for (std::size_t j = 0; j < game.strategy_count(q); ++j) row[game.ambient_index(q, j)] = 1.0;
                lp.eq_lhs.push_back(std::move(row));
                lp.eq_rhs.push_back(game.population(q).mass);
                for (std::size_t j = 0; j < game.strategy_count(q); ++j) {
                    lp.lower[game.ambient_index(q, j)] = 0.0;
                    lp.upper[game.ambient_index(q, j)] = game.population(q).mass;
                }
            }
            for (const Halfspace& h : region.halfspaces) {
                lp.ineq_lhs.push_back(h.coeffs);
                lp.ineq_rhs.push_back(h.rhs);
            }
            const LpSolution sol = solve(lp, opts.lp);
            if (sol.status == LpStatus::Infeasible) {
                report.empty_region = true;
                report.valid = true;
                report.rows.clear();
                return report;
            }
            if (sol.status != LpStatus::Optimal)
                throw LpFailure(std::string("region program did not solve: ") + to_string(sol.status));
            DeviationWorstCase row;
            row.population = p;
            row.strategy = i;
            row.worst_value = sol.value + affine_offset;
            row.worst_state = sol.point;
            if (row.worst_value > opts.zero_gap_tol) report.valid = false;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

// Sup-norm box of radius r around x, as halfspaces |y_k - x_k| <= r.
inline PolyhedralRegion box_region(const PopulationGame& game, const State& x, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("box radius must be positive");
    const std::size_t n = game.ambient_dim();
    PolyhedralRegion region;
    region.halfspaces.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec up(n, 0.0), down(n, 0.0);
        up[k] = 1.0;
        down[k] = -1.0;
        region.halfspaces.push_back({std::move(up), x.coords[k] + r});
        region.halfspaces.push_back({std::move(down), r - x.coords[k]});
    }
    return region;
}

struct ShrinkLevel {
    double radius = 0.0;
    bool valid = false;
};

struct ShrinkingTrace {
    std::vector<ShrinkLevel> levels;
    bool stabilized_valid = false;  // verdict of the finest level
    bool stable = false;            // last three levels agree
};

// Validity over boxes of geometrically shrinking radius r0 * 2^-m. The full
// trace is reported; stabilization at three agreeing levels is a convention,
// not a guarantee of the limit.
inline ShrinkingTrace shrinking_diagnostic(const PopulationGame& game, const State& x, double r0, int m_max,
                                           const DiagnosticOptions& opts = {}) {
    if (!(r0 > 0.0) || m_max < 1) throw std::invalid_argument("shrinking diagnostic needs r0 > 0 and m_max >= 1");
    ShrinkingTrace trace;
    for (int m = 0; m <= m_max; ++m) {
        const double radius = r0 * std::ldexp(1.0, -m);
        const RegionValidityReport report = region_validity(game, x, box_region(game, x, radius), opts);
        trace.levels.push_back({radius, report.valid});
    }
    trace.stabilized_valid = trace.levels.back().valid;
    const std::size_t count = trace.levels.size();
    trace.stable = count >= 3 && trace.levels[count - 1].valid == trace.levels[count - 2].valid &&
                   trace.levels[count - 2].valid == trace.levels[count - 3].valid;
    return trace;
}

}  // namespace sre
