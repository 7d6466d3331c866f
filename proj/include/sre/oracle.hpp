#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sre/diagnostics.hpp"
#include "sre/game.hpp"
#include "sre/rng.hpp"

namespace sre {

// Configuration for the sampling oracle. Radii decrease so that evidence at
// every level witnesses the closure behavior: positive gaps found
// arbitrarily close to the candidate.
struct SamplingConfig {
    Vec radii{1e-2, 1e-3, 1e-4};
    int samples_per_radius = 2000;
    std::uint64_t seed = 0;
    double margin = 1e-10;  // a sampled gap must exceed this to count as positive
};

// Interior state drawn per block by normalizing exponential variates, which
// avoids clustering on the boundary.
inline State random_interior_state(const PopulationGame& game, CounterRng& rng) {
    Vec coords(game.ambient_dim(), 0.0);
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        const std::size_t off = game.block_offset(p);
        const std::size_t np = game.strategy_count(p);
        double sum = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
            const double e = std::max(-std::log1p(-rng.next_double()), 1e-12);
            coords[off + j] = e;
            sum += e;
        }
        const double scale = game.population(p).mass / sum;
        for (std::size_t j = 0; j < np; ++j) coords[off + j] *= scale;
    }
    return State{std::move(coords)};
}

enum class EvidenceKind { ExposedEvidence, NoPositiveFound };

inline const char* to_string(EvidenceKind k) {
    return k == EvidenceKind::ExposedEvidence ? "exposed-evidence" : "no-positive-found";
}

struct ExposureEvidence {
    EvidenceKind kind = EvidenceKind::NoPositiveFound;
    Vec witness;                  // sampled state at the finest radius, when exposed
    double witnessed_gap = 0.0;
    std::vector<int> hits_per_radius;
};

// Samples evaluation states at shrinking sup-norm distances from the
// candidate and records, per pure deviation, whether a strictly positive gap
// appears at every radius level. This code path shares nothing with the
// cone/tangent-program tests it cross-checks.
inline std::vector<std::vector<ExposureEvidence>> sample_exposure(const PopulationGame& game, const State& x,
                                                                  const SamplingConfig& config = {}) {
    for (std::size_t k = 1; k < config.radii.size(); ++k)
        if (!(config.radii[k] < config.radii[k - 1]) || !(config.radii[k] > 0.0))
            throw std::invalid_argument("sampling radii must be strictly decreasing and positive");
    if (!config.radii.empty() && !(config.radii[0] > 0.0))
        throw std::invalid_argument("sampling radii must be positive");

    std::vector<std::vector<ExposureEvidence>> evidence(game.population_count());
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        evidence[p].resize(game.strategy_count(p));
        for (auto& e : evidence[p]) e.hits_per_radius.assign(config.radii.size(), 0);
    }

    const CounterRng base(config.seed, {1});
    for (std::size_t rad = 0; rad < config.radii.size(); ++rad) {
        const double radius = config.radii[rad];
        for (int s = 0; s < config.samples_per_radius; ++s) {
            CounterRng rng = base.derived({rad, static_cast<std::uint64_t>(s)});
            const State omega = random_interior_state(game, rng);
            double dist = 0.0;
            for (std::size_t k = 0; k < omega.coords.size(); ++k)
                dist = std::max(dist, std::fabs(omega.coords[k] - x.coords[k]));
            const double t = dist > radius ? radius / dist : 1.0;
            Vec y(omega.coords.size());
            for (std::size_t k = 0; k < y.size(); ++k)
                y[k] = x.coords[k] + t * (omega.coords[k] - x.coords[k]);
            const State sample{std::move(y)};
            const std::vector<Vec> payoff = evaluate_payoffs(game, sample);
            for (std::size_t p = 0; p < game.population_count(); ++p) {
                const double candidate = detail::block_aggregate(game, x, payoff[p], p);
                const double mass = game.population(p).mass;
                for (std::size_t i = 0; i < game.strategy_count(p); ++i) {
                    const double gap = mass * payoff[p][i] - candidate;
                    if (gap > config.margin) {
                        ExposureEvidence& e = evidence[p][i];
                        if (e.hits_per_radius[rad]++ == 0) {
                            e.witness = sample.coords;
                            e.witnessed_gap = gap;
                        }
                    }
                }
            }
        }
    }

    for (auto& block : evidence)
        for (ExposureEvidence& e : block) {
            bool all = !config.radii.empty();
            for (int h : e.hits_per_radius)
                if (h == 0) all = false;
            e.kind = all ? EvidenceKind::ExposedEvidence : EvidenceKind::NoPositiveFound;
            if (e.kind == EvidenceKind::NoPositiveFound) {
                e.witness.clear();
                e.witnessed_gap = 0.0;
            }
        }
    return evidence;
}

// Perturbs the payoff offsets of a verified strict pure equilibrium by noise
// below a fraction of a quarter of the strict margin and re-runs the
// membership battery. The margin bound keeps every perturbed comparison
// strict, so robustness must survive all trials.
inline bool payoff_perturbation_check(const PopulationGame& game, const State& x, double fraction, int trials,
                                      std::uint64_t seed, const DiagnosticOptions& opts = {}) {
    if (!(fraction >= 0.0) || fraction >= 1.0)
        throw std::invalid_argument("perturbation fraction must lie in [0, 1)");
    const auto profile = strict_pure_profile(game, x, opts.tol);
    if (!profile) throw std::invalid_argument("payoff_perturbation_check requires a strict pure Nash state");
    if (!std::isfinite(profile->min_margin)) return true;  // no population has an alternative

    const double eta = fraction * profile->min_margin / 4.0;
    const CounterRng base(seed, {2});
    for (int trial = 0; trial < trials; ++trial) {
        CounterRng rng = base.derived({static_cast<std::uint64_t>(trial)});
        AffinePayoffModel perturbed = game.payoffs();
        for (Vec& offsets : perturbed.offset)
            for (double& v : offsets) v += rng.next_in(-eta, eta);
        std::vector<PopulationSpec> pops;
        for (std::size_t p = 0; p < game.population_count(); ++p) pops.push_back(game.population(p));
        const PopulationGame shifted(std::move(pops), std::move(perturbed));
        if (!sre_membership(shifted, x, opts).is_sre) return false;
    }
    return true;
}

// Candidate-state blocking search: exhaustive pure singleton proposals plus
// random coalitions with random mixed proposals, all evaluated at the
// candidate. Returns true when the search outcome matches the singleton
// pure-improvement test, i.e. blocking reduces to positive pure gaps.
inline bool coalition_blocking_check(const PopulationGame& game, const State& x, int trials, std::uint64_t seed,
                                     double margin = 1e-10) {
    const std::vector<Vec> payoff = evaluate_payoffs(game, x);
    Vec candidate(game.population_count());
    for (std::size_t p = 0; p < game.population_count(); ++p)
        candidate[p] = detail::block_aggregate(game, x, payoff[p], p);

    bool pure_improvement = false;
    for (std::size_t p = 0; p < game.population_count(); ++p)
        for (std::size_t i = 0; i < game.strategy_count(p); ++i)
            if (game.population(p).mass * payoff[p][i] - candidate[p] > margin) pure_improvement = true;

    bool found_block = pure_improvement;  // pure singleton proposals are part of the search
    const CounterRng base(seed, {3});
    for (int trial = 0; trial < trials && !found_block; ++trial) {
        CounterRng rng = base.derived({static_cast<std::uint64_t>(trial)});
        std::vector<std::size_t> coalition;
        for (std::size_t p = 0; p < game.population_count(); ++p)
            if (rng.next_double() < 0.5) coalition.push_back(p);
        if (coalition.empty()) coalition.push_back(rng.next_u64() % game.population_count());
        bool blocks = true;
        for (std::size_t p : coalition) {
            const std::size_t np = game.strategy_count(p);
            Vec z(np);
            double sum = 0.0;
            for (std::size_t j = 0; j < np; ++j) {
                z[j] = std::max(-std::log1p(-rng.next_double()), 1e-12);
                sum += z[j];
            }
            double value = 0.0;
            for (std::size_t j = 0; j < np; ++j) value += (z[j] / sum) * game.population(p).mass * payoff[p][j];
            if (!(value - candidate[p] > margin)) {
                blocks = false;
                break;
            }
        }
        if (blocks) found_block = true;
    }
    return found_block == pure_improvement;
}

// ESS analysis of a generic binary symmetric game, paired with the
// sign-based robust set. The mixed state of an anti-coordination game is
// evolutionarily stable yet fails the reported-state test; the divergence
// flag records exactly that disagreement.
struct BinaryEssReport {
    std::vector<Vec> pure_ess;
    std::optional<Vec> mixed_ess;  // state (1-q*, q*) when present
    BinaryClassification classification;
    bool divergence = false;
};

inline BinaryEssReport ess_binary(double m11, double m12, double m21, double m22) {
    BinaryEssReport report;
    report.classification = binary_classify(m11, m12, m21, m22);
    switch (report.classification.kind) {
        case BinaryCase::Dominance1: report.pure_ess = {Vec{1.0, 0.0}}; break;
        case BinaryCase::Dominance2: report.pure_ess = {Vec{0.0, 1.0}}; break;
        case BinaryCase::Coordination: report.pure_ess = {Vec{1.0, 0.0}, Vec{0.0, 1.0}}; break;
        case BinaryCase::AntiCoordination: break;
    }

    const double d1 = m11 - m21;
    const double d2 = m12 - m22;
    const auto delta = [&](double q) { return d1 * (1.0 - q) + d2 * q; };
    if ((d1 > 0.0) != (d2 > 0.0)) {
        const double q_star = d1 / (d1 - d2);
        // Resident-vs-mutant inequality (q - q*) Delta(q) > 0 on a mutant
        // grid; a finite check, not a proof.
        bool ess = true;
        for (int k = 0; k <= 100; ++k) {
            const double q = static_cast<double>(k) / 100.0;
            if (std::fabs(q - q_star) < 1e-6) continue;
            if (!((q - q_star) * delta(q) > 0.0)) ess = false;
        }
        if (ess) report.mixed_ess = Vec{1.0 - q_star, q_star};
    }

    const auto in_sre = [&](const Vec& state) {
        for (const Vec& s : report.classification.sre_states)
            if (inf_distance(s, state) < 1e-9) return true;
        return false;
    };
    for (const Vec& s : report.pure_ess)
        if (!in_sre(s)) report.divergence = true;
    if (report.mixed_ess && !in_sre(*report.mixed_ess)) report.divergence = true;
    return report;
}

}  // namespace sre
