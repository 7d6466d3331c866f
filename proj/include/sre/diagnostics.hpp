#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sre/cones.hpp"
#include "sre/game.hpp"
#include "sre/lp.hpp"

namespace sre {

struct DiagnosticOptions {
    double zero_gap_tol = 1e-7;  // gaps inside (-zero, +zero) count as exactly zero
    double gain_tol = 1e-7;      // tangent-program value above which a zero gap is exposed
    Tolerances tol{};
    LpOptions lp{};
    unsigned threads = 1;
};

struct LpFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DeviationKind { StrictlyWorse, ProtectedZeroGap, ExposedZeroGap, PositiveGap };

inline const char* to_string(DeviationKind k) {
    switch (k) {
        case DeviationKind::StrictlyWorse: return "strictly-worse";
        case DeviationKind::ProtectedZeroGap: return "protected-zero-gap";
        case DeviationKind::ExposedZeroGap: return "exposed-zero-gap";
        case DeviationKind::PositiveGap: return "positive-gap";
    }
    return "?";
}

struct TangentDirection {
    Vec d;
    bool interior = false;  // lies in the relative interior of the tangent cone
};

struct DeviationVerdict {
    std::size_t population = 0;
    std::size_t strategy = 0;
    double gap = 0.0;
    DeviationKind kind = DeviationKind::StrictlyWorse;
    std::optional<double> gain;  // tangent-program value, present at zero gaps
    std::optional<TangentDirection> direction;
};

struct ExposureCertificate {
    std::size_t population = 0;
    std::size_t strategy = 0;
    Vec direction;  // in the relative interior of the tangent cone
    double step = 0.0;
    State witness;
    double witnessed_gap = 0.0;
    double blend_weight = 0.0;  // 0 when the raw maximizer was already interior
};

struct SreVerdict {
    bool is_nash = false;
    bool is_sre = false;
    std::vector<DeviationVerdict> deviations;
    std::vector<ExposureCertificate> witnesses;
    std::vector<std::string> certificate_issues;  // never silently dropped
};

struct ExposureGain {
    double value = 0.0;
    Vec direction;
};

// Value of the tangent program for deviation (p, i) at x: maximize the gap
// derivative over tangent directions with unit sup-norm. Zero is always
// feasible, so the value is nonnegative; a positive value exhibits an
// exposing direction.
inline ExposureGain exposure_gain(const PopulationGame& game, const State& x, std::size_t p, std::size_t i,
                                  const DiagnosticOptions& opts = {}) {
    const Vec grad = gap_gradient(game, x, p, i);
    const std::size_t n = game.ambient_dim();
    LinearProgram lp = LinearProgram::with_vars(n);
    lp.objective = grad;
    for (std::size_t q = 0; q < game.population_count(); ++q) {
        Vec row(n, 0.0);
        for (std::size_t j = 0; j < game.strategy_count(q); ++j) row[game.ambient_index(q, j)] = 1.0;
        lp.eq_lhs.push_back(std::move(row));
        lp.eq_rhs.push_back(0.0);
    }
    for (std::size_t q = 0; q < game.population_count(); ++q) {
        const std::size_t off = game.block_offset(q);
        for (std::size_t j = 0; j < game.strategy_count(q); ++j) {
            const bool inactive = !(x.coords[off + j] > opts.tol.support);
            lp.lower[off + j] = inactive ? 0.0 : -1.0;
            lp.upper[off + j] = 1.0;
        }
    }
    const LpSolution sol = solve(lp, opts.lp);
    if (sol.status != LpStatus::Optimal)
        throw LpFailure(std::string("tangent program did not solve: ") + to_string(sol.status));
    Vec d = sol.point;
    // Re-zero the block sums exactly; the support logic downstream assumes it.
    for (std::size_t q = 0; q < game.population_count(); ++q) {
        const std::size_t off = game.block_offset(q);
        const std::size_t nq = game.strategy_count(q);
        double sum = 0.0;
        for (std::size_t j = 0; j < nq; ++j) sum += d[off + j];
        const double shift = sum / static_cast<double>(nq);
        for (std::size_t j = 0; j < nq; ++j) d[off + j] -= shift;
    }
    return ExposureGain{std::max(0.0, dot(grad, d)), std::move(d)};
}

// Case split on the sign of the gap at the candidate. Gaps inside the zero
// band are resolved by the tangent program rather than assumed protected.
inline DeviationVerdict classify_deviation(const PopulationGame& game, const State& x, std::size_t p, std::size_t i,
                                           const DiagnosticOptions& opts = {}) {
    DeviationVerdict v;
    v.population = p;
    v.strategy = i;
    v.gap = pure_gap(game, x, x, p, i);
    if (v.gap < -opts.zero_gap_tol) {
        v.kind = DeviationKind::StrictlyWorse;
        return v;
    }
    if (v.gap > opts.zero_gap_tol) {
        v.kind = DeviationKind::PositiveGap;
        return v;
    }
    const ExposureGain gain = exposure_gain(game, x, p, i, opts);
    v.gain = gain.value;
    if (gain.value > opts.gain_tol) {
        v.kind = DeviationKind::ExposedZeroGap;
        const TangentConeRep cone = tangent_cone(game, x, opts.tol);
        bool interior = false;
        try {
            interior = in_relative_interior(cone, gain.direction);
        } catch (const std::invalid_argument&) {
            interior = false;
        }
        v.direction = TangentDirection{gain.direction, interior};
    } else {
        v.kind = DeviationKind::ProtectedZeroGap;
    }
    return v;
}

// Upgrades an exposing LP maximizer into a checked witness: blends toward a
// fixed relative-interior direction when the maximizer sits on the cone
// boundary, steps into the interior, and re-verifies the gap numerically.
inline ExposureCertificate exposure_certificate(const PopulationGame& game, const State& x, std::size_t p,
                                                std::size_t i, const Vec& d_raw, const DiagnosticOptions& opts = {}) {
    const Vec grad = gap_gradient(game, x, p, i);
    const double base_gain = dot(grad, d_raw);
    if (!(base_gain > 0.0))
        throw CertificateError("exposure certificate requested for a direction with nonpositive derivative");
    const TangentConeRep cone = tangent_cone(game, x, opts.tol);

    bool needs_blend = false;
    for (std::size_t q = 0; q < cone.offsets.size() && !needs_blend; ++q)
        for (std::size_t j : cone.inactive[q])
            if (!(d_raw[cone.offsets[q] + j] > cone.ri_strict)) {
                needs_blend = true;
                break;
            }

    Vec d = d_raw;
    double lambda = 0.0;
    if (needs_blend) {
        // Fixed interior direction: toward the product of block barycenters.
        Vec r(game.ambient_dim(), 0.0);
        for (std::size_t q = 0; q < game.population_count(); ++q) {
            const std::size_t off = game.block_offset(q);
            const std::size_t nq = game.strategy_count(q);
            const double bary = game.population(q).mass / static_cast<double>(nq);
            for (std::size_t j = 0; j < nq; ++j) r[off + j] = bary - x.coords[off + j];
        }
        const double scale = inf_norm(r);
        if (scale > 1.0)
            for (double& v : r) v /= scale;

        bool found = false;
        for (int k = 1; k <= 60 && !found; ++k) {
            const double lam = std::ldexp(1.0, -k);
            Vec blend(d_raw.size());
            for (std::size_t c = 0; c < blend.size(); ++c) blend[c] = (1.0 - lam) * d_raw[c] + lam * r[c];
            if (dot(grad, blend) >= 0.5 * base_gain - 1e-12) {
                d = std::move(blend);
                lambda = lam;
                found = true;
            }
        }
        if (!found)
            throw CertificateError(
                "no blend weight <= 1/2 keeps the directional derivative positive; "
                "tolerance configuration is inconsistent");
    }

    // Exact zero block sums, then a step small enough to stay interior.
    for (std::size_t q = 0; q < game.population_count(); ++q) {
        const std::size_t off = game.block_offset(q);
        const std::size_t nq = game.strategy_count(q);
        double sum = 0.0;
        for (std::size_t j = 0; j < nq; ++j) sum += d[off + j];
        const double shift = sum / static_cast<double>(nq);
        for (std::size_t j = 0; j < nq; ++j) d[off + j] -= shift;
    }
    if (!in_relative_interior(cone, d))
        throw CertificateError("blended direction failed the relative-interior test");

    double t_max = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < d.size(); ++k)
        if (d[k] < -1e-15) t_max = std::min(t_max, x.coords[k] / -d[k]);
    if (!std::isfinite(t_max))
        throw CertificateError("exposing direction has no negative coordinate; candidate state is inconsistent");

    const double step = 0.5 * t_max;
    Vec y = x.coords;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += step * d[k];

    ExposureCertificate cert;
    cert.population = p;
    cert.strategy = i;
    cert.direction = std::move(d);
    cert.step = step;
    cert.witness = validate_state(game, std::move(y), opts.tol);
    for (double v : cert.witness.coords)
        if (!(v > 0.0)) throw CertificateError("witness state is not interior");
    cert.witnessed_gap = pure_gap(game, x, cert.witness, p, i);
    cert.blend_weight = lambda;
    if (!(cert.witnessed_gap > 0.0) || cert.witnessed_gap < 0.5 * opts.gain_tol * step - 1e-15)
        throw CertificateError("witness state does not reproduce a positive gap");
    return cert;
}

// Runs the full pure-deviation battery at x. The per-deviation programs are
// independent; with threads > 1 they run concurrently and are assembled in
// (population, strategy) order, so the result does not depend on scheduling.
inline SreVerdict sre_membership(const PopulationGame& game, const State& x, const DiagnosticOptions& opts = {}) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p < game.population_count(); ++p)
        for (std::size_t i = 0; i < game.strategy_count(p); ++i) pairs.emplace_back(p, i);

    std::vector<DeviationVerdict> verdicts(pairs.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(pairs.size())));
    if (workers == 1) {
        for (std::size_t k = 0; k < pairs.size(); ++k)
            verdicts[k] = classify_deviation(game, x, pairs[k].first, pairs[k].second, opts);
    } else {
        std::vector<std::future<void>> tasks;
        tasks.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            tasks.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t k = w; k < pairs.size(); k += workers)
                    verdicts[k] = classify_deviation(game, x, pairs[k].first, pairs[k].second, opts);
            }));
        }
        for (auto& t : tasks) t.get();
    }

    SreVerdict out;
    out.deviations = std::move(verdicts);
    out.is_nash = true;
    out.is_sre = true;
    for (const DeviationVerdict& v : out.deviations) {
        if (v.kind == DeviationKind::PositiveGap) out.is_nash = false;
        if (v.kind == DeviationKind::PositiveGap || v.kind == DeviationKind::ExposedZeroGap) out.is_sre = false;
    }
    for (const DeviationVerdict& v : out.deviations) {
        if (v.kind != DeviationKind::ExposedZeroGap) continue;
        try {
            out.witnesses.push_back(
                exposure_certificate(game, x, v.population, v.strategy, v.direction->d, opts));
        } catch (const CertificateError& err) {
            out.certificate_issues.push_back("deviation (" + std::to_string(v.population) + ", " +
                                             std::to_string(v.strategy) + "): " + err.what());
        }
    }
    return out;
}

// Exposed-indifference decomposition over a candidate list: for each
// (population, strategy), the Nash candidates whose zero gap that deviation
// exposes. Non-Nash candidates are flagged and skipped.
struct IndifferenceDecomposition {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> exposed;
    std::vector<std::size_t> non_nash;
};

inline IndifferenceDecomposition exposed_indifference_sets(const PopulationGame& game,
                                                           const std::vector<State>& candidates,
                                                           const DiagnosticOptions& opts = {}) {
    IndifferenceDecomposition out;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!is_nash(game, candidates[c], opts.zero_gap_tol).is_nash) {
            out.non_nash.push_back(c);
            continue;
        }
        for (std::size_t p = 0; p < game.population_count(); ++p)
            for (std::size_t i = 0; i < game.strategy_count(p); ++i) {
                const DeviationVerdict v = classify_deviation(game, candidates[c], p, i, opts);
                if (v.kind == DeviationKind::ExposedZeroGap) out.exposed[{p, i}].push_back(c);
            }
    }
    return out;
}

// Exact algebraic test for F_{p,i} == F_{p,j} on the whole state space: the
// row difference must be constant within every population block and the
// block constants must balance against the offset difference.
struct PayoffIdentityResult {
    bool holds = false;
    Vec block_constants;
    double balance_residual = 0.0;
    double max_block_spread = 0.0;
};

inline PayoffIdentityResult payoff_identity(const PopulationGame& game, std::size_t p, std::size_t i, std::size_t j,
                                            double tol = 1e-9) {
    game.check_strategy(p, i);
    game.check_strategy(p, j);
    const Mat& a = game.payoff_matrix(p);
    const Vec& b = game.payoff_offset(p);
    PayoffIdentityResult out;
    out.block_constants.assign(game.population_count(), 0.0);
    double balance = b[i] - b[j];
    for (std::size_t q = 0; q < game.population_count(); ++q) {
        const std::size_t off = game.block_offset(q);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < game.strategy_count(q); ++k) {
            const double v = a[i][off + k] - a[j][off + k];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out.block_constants[q] = 0.5 * (lo + hi);
        out.max_block_spread = std::max(out.max_block_spread, hi - lo);
        balance += out.block_constants[q] * game.population(q).mass;
    }
    out.balance_residual = balance;
    out.holds = out.max_block_spread <= tol && std::fabs(balance) <= tol;
    return out;
}

struct SupportPairFailure {
    std::size_t population = 0;
    std::size_t i = 0;
    std::size_t j = 0;
};

// Necessary-condition screen for mixed candidates: every pair of strategies
// used together must satisfy the payoff identity, or the state cannot be
// robust. Much cheaper than the full tangent-program battery.
inline std::vector<SupportPairFailure> support_equality_audit(const PopulationGame& game, const State& x,
                                                              const Tolerances& tol = {},
                                                              double identity_tol = 1e-9) {
    std::vector<SupportPairFailure> failures;
    const auto supports = state_supports(game, x, tol);
    for (std::size_t p = 0; p < game.population_count(); ++p)
        for (std::size_t a = 0; a < supports[p].size(); ++a)
            for (std::size_t b = a + 1; b < supports[p].size(); ++b)
                if (!payoff_identity(game, p, supports[p][a], supports[p][b], identity_tol).holds)
                    failures.push_back({p, supports[p][a], supports[p][b]});
    return failures;
}

inline bool full_support_sre_possible(const PopulationGame& game, double identity_tol = 1e-9) {
    for (std::size_t p = 0; p < game.population_count(); ++p)
        for (std::size_t i = 0; i < game.strategy_count(p); ++i)
            for (std::size_t j = i + 1; j < game.strategy_count(p); ++j)
                if (!payoff_identity(game, p, i, j, identity_tol).holds) return false;
    return true;
}

// One-population unit-mass check: A must decompose as A_ij = u_i + r_j and
// u_i + b_i must be constant. Witness normalized with u_1 = 0.
struct RowAdditiveResult {
    bool holds = false;
    Vec u;
    Vec r;
    double constant = 0.0;
    double max_residual = 0.0;
};

inline RowAdditiveResult row_additive_check(const Mat& a, const Vec& b, double tol = 1e-9) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n) throw std::invalid_argument("row_additive_check needs a square matrix and offsets");
    for (const Vec& row : a)
        if (row.size() != n) throw std::invalid_argument("row_additive_check needs a square matrix");
    RowAdditiveResult out;
    out.u.assign(n, 0.0);
    out.r = a[0];
    for (std::size_t i = 0; i < n; ++i) out.u[i] = a[i][0] - a[0][0];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.max_residual = std::max(out.max_residual, std::fabs(a[i][j] - a[i][0] - a[0][j] + a[0][0]));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        lo = std::min(lo, out.u[i] + b[i]);
        hi = std::max(hi, out.u[i] + b[i]);
    }
    out.constant = 0.5 * (lo + hi);
    out.holds = out.max_residual <= tol && (hi - lo) <= tol;
    return out;
}

enum class BinaryCase { Dominance1, Dominance2, Coordination, AntiCoordination };

inline const char* to_string(BinaryCase c) {
    switch (c) {
        case BinaryCase::Dominance1: return "dominance-1";
        case BinaryCase::Dominance2: return "dominance-2";
        case BinaryCase::Coordination: return "coordination";
        case BinaryCase::AntiCoordination: return "anti-coordination";
    }
    return "?";
}

struct NonGenericBinaryGame : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BinaryClassification {
    BinaryCase kind = BinaryCase::Dominance1;
    std::vector<Vec> sre_states;
};

// Sign diagram for generic binary symmetric games with the corresponding
// robust sets. Ties are rejected: run the full battery instead.
inline BinaryClassification binary_classify(double m11, double m12, double m21, double m22) {
    const double d1 = m11 - m21;  // payoff edge of strategy 1 when everyone plays 1
    const double d2 = m22 - m12;  // payoff edge of strategy 2 when everyone plays 2
    if (d1 == 0.0 || d2 == 0.0)
        throw NonGenericBinaryGame(
            "binary game is non-generic (m11 == m21 or m22 == m12); use the full tangent-program battery");
    BinaryClassification out;
    const Vec e1{1.0, 0.0}, e2{0.0, 1.0};
    if (d1 > 0.0 && d2 < 0.0) {
        out.kind = BinaryCase::Dominance1;
        out.sre_states = {e1};
    } else if (d1 < 0.0 && d2 > 0.0) {
        out.kind = BinaryCase::Dominance2;
        out.sre_states = {e2};
    } else if (d1 > 0.0 && d2 > 0.0) {
        out.kind = BinaryCase::Coordination;
        out.sre_states = {e1, e2};
    } else {
        out.kind = BinaryCase::AntiCoordination;
        out.sre_states = {};
    }
    return out;
}

// Nash candidate generation by support enumeration.
struct EnumerationOptions {
    std::size_t profile_cap = 100000;
    double nash_tol = 1e-7;
    double merge_tol = 1e-7;
    Tolerances tol{};
};

struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CandidateKind { Isolated, ContinuumRepresentative };

inline const char* to_string(CandidateKind k) {
    return k == CandidateKind::Isolated ? "isolated" : "continuum-representative";
}

struct NashCandidate {
    State state;
    CandidateKind kind = CandidateKind::Isolated;
    std::vector<std::vector<std::size_t>> support;
};

struct NashEnumeration {
    std::vector<NashCandidate> candidates;
    std::vector<std::string> profile_failures;
};

// For each support profile, solves the linear system (off-support
// coordinates zero, block masses on the support, within-support payoff
// indifference) and keeps nonnegative Nash solutions. Rank-deficient
// profiles contribute one minimal-norm representative of their component.
inline NashEnumeration nash_support_enumeration(const PopulationGame& game, const EnumerationOptions& opts = {}) {
    const std::size_t npop = game.population_count();
    double total = 1.0;
    for (std::size_t p = 0; p < npop; ++p)
        total *= std::ldexp(1.0, static_cast<int>(game.strategy_count(p))) - 1.0;
    if (total > static_cast<double>(opts.profile_cap))
        throw EnumerationCapExceeded("support-profile count " + std::to_string(total) + " exceeds cap " +
                                     std::to_string(opts.profile_cap));

    NashEnumeration out;
    const std::size_t n = game.ambient_dim();
    std::vector<std::uint64_t> mask(npop, 1);

    auto profile_label = [&](const std::vector<std::vector<std::size_t>>& supp) {
        std::string s;
        for (std::size_t p = 0; p < npop; ++p) {
            s += p == 0 ? "{" : " x {";
            for (std::size_t k = 0; k < supp[p].size(); ++k)
                s += (k ? "," : "") + game.population(p).strategies[supp[p][k]];
            s += "}";
        }
        return s;
    };

    for (;;) {
        std::vector<std::vector<std::size_t>> supp(npop);
        for (std::size_t p = 0; p < npop; ++p)
            for (std::size_t j = 0; j < game.strategy_count(p); ++j)
                if (mask[p] >> j & 1) supp[p].push_back(j);

        Mat rows;
        Vec rhs;
        for (std::size_t p = 0; p < npop; ++p) {
            const std::size_t off = game.block_offset(p);
            for (std::size_t j = 0; j < game.strategy_count(p); ++j) {
                if (mask[p] >> j & 1) continue;
                Vec row(n, 0.0);
                row[off + j] = 1.0;
                rows.push_back(std::move(row));
                rhs.push_back(0.0);
            }
            Vec massrow(n, 0.0);
            for (std::size_t j : supp[p]) massrow[off + j] = 1.0;
            rows.push_back(std::move(massrow));
            rhs.push_back(game.population(p).mass);
            const Mat& a = game.payoff_matrix(p);
            const Vec& b = game.payoff_offset(p);
            const std::size_t ref = supp[p][0];
            for (std::size_t k = 1; k < supp[p].size(); ++k) {
                const std::size_t j = supp[p][k];
                Vec row(n);
                for (std::size_t c = 0; c < n; ++c) row[c] = a[j][c] - a[ref][c];
                rows.push_back(std::move(row));
                rhs.push_back(b[ref] - b[j]);
            }
        }

        const AffineSolveResult solved = solve_affine_min_norm(rows, rhs);
        if (solved.kind != SystemRank::Inconsistent) {
            bool finite = true;
            for (double v : solved.point)
                if (!std::isfinite(v)) finite = false;
            if (!finite) {
                out.profile_failures.push_back("profile " + profile_label(supp) + ": numerical failure");
            } else {
                bool nonneg = true;
                for (double v : solved.point)
                    if (v < -opts.tol.feasibility) nonneg = false;
                if (nonneg) {
                    try {
                        State candidate = validate_state(game, solved.point, opts.tol);
                        if (is_nash(game, candidate, opts.nash_tol).is_nash) {
                            bool duplicate = false;
                            for (const NashCandidate& seen : out.candidates)
                                if (inf_distance(seen.state.coords, candidate.coords) < opts.merge_tol) {
                                    duplicate = true;
                                    break;
                                }
                            if (!duplicate)
                                out.candidates.push_back({std::move(candidate),
                                                          solved.kind == SystemRank::Unique
                                                              ? CandidateKind::Isolated
                                                              : CandidateKind::ContinuumRepresentative,
                                                          supp});
                        }
                    } catch (const StateValidationError&) {
                        // solution left the simplex; profile has no candidate
                    }
                }
            }
        }

        std::size_t p = 0;
        for (; p < npop; ++p) {
            if (++mask[p] <= (std::uint64_t{1} << game.strategy_count(p)) - 1) break;
            mask[p] = 1;
        }
        if (p == npop) break;
    }
    return out;
}

// Pure-profile detection with strict margins: returns the played strategy
// per population and the smallest payoff margin over all unplayed
// strategies (over populations that have an alternative).
struct StrictPureProfile {
    std::vector<std::size_t> played;
    double min_margin = std::numeric_limits<double>::infinity();
};

inline std::optional<StrictPureProfile> strict_pure_profile(const PopulationGame& game, const State& x,
                                                            const Tolerances& tol = {}) {
    StrictPureProfile out;
    const auto supports = state_supports(game, x, tol);
    for (const auto& s : supports)
        if (s.size() != 1) return std::nullopt;
    const std::vector<Vec> payoff = evaluate_payoffs(game, x);
    for (std::size_t p = 0; p < game.population_count(); ++p) {
        const std::size_t star = supports[p][0];
        out.played.push_back(star);
        for (std::size_t j = 0; j < game.strategy_count(p); ++j) {
            if (j == star) continue;
            const double margin = payoff[p][star] - payoff[p][j];
            if (!(margin > 0.0)) return std::nullopt;
            out.min_margin = std::min(out.min_margin, margin);
        }
    }
    return out;
}

}  // namespace sre
