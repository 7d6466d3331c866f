#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "sre/diagnostics.hpp"
#include "sre/gallery.hpp"
#include "support/test_games.hpp"

using namespace sre;

namespace {

State st(const PopulationGame& game, Vec coords) { return validate_state(game, std::move(coords)); }

bool has_candidate(const NashEnumeration& found, const Vec& coords, double tol = 1e-7) {
    for (const NashCandidate& cand : found.candidates)
        if (inf_distance(cand.state.coords, coords) < tol) return true;
    return false;
}

}  // namespace

TEST_CASE("tangent-program values on the worked instances") {
    const GalleryGame r = rps();
    const ExposureGain rock = exposure_gain(r.game, gallery_state(r, "barycenter"), 0, 0);
    CHECK(rock.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(rock.direction[0] == doctest::Approx(0.0));
    CHECK(rock.direction[1] == doctest::Approx(-1.0));
    CHECK(rock.direction[2] == doctest::Approx(1.0));

    const GalleryGame boundary = boundary_example();
    CHECK(exposure_gain(boundary.game, gallery_state(boundary, "e1"), 0, 1).value == doctest::Approx(0.0));

    const GalleryGame hd = hawk_dove(2.0, 4.0);
    const State mixed = gallery_state(hd, "mixed");
    const Vec dove_grad = gap_gradient(hd.game, mixed, 0, 1);
    CHECK(dove_grad[0] == doctest::Approx(1.0));
    CHECK(dove_grad[1] == doctest::Approx(0.0));
    const ExposureGain dove = exposure_gain(hd.game, mixed, 0, 1);
    CHECK(dove.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(dove.direction[0] == doctest::Approx(1.0));
    CHECK(dove.direction[1] == doctest::Approx(-1.0));
}

TEST_CASE("deviation classification") {
    const GalleryGame coord = coordination(3);
    const DeviationVerdict worse = classify_deviation(coord.game, gallery_state(coord, "e1"), 0, 1);
    CHECK(worse.kind == DeviationKind::StrictlyWorse);
    CHECK(worse.gap == doctest::Approx(-1.0));
    CHECK_FALSE(worse.gain.has_value());

    const GalleryGame plat = platform(1.0, 1.0, 1.0, 1.0, 0.0);
    const DeviationVerdict seller_a = classify_deviation(plat.game, gallery_state(plat, "xcirc"), 1, 0);
    CHECK(seller_a.kind == DeviationKind::ExposedZeroGap);
    REQUIRE(seller_a.direction.has_value());
    CHECK(seller_a.direction->d[0] > 0.0);  // buyer-side A share rises

    const GalleryGame ident = identity_example();
    const DeviationVerdict protected2 = classify_deviation(ident.game, gallery_state(ident, "mix12"), 0, 1);
    CHECK(protected2.kind == DeviationKind::ProtectedZeroGap);
    REQUIRE(protected2.gain.has_value());
    CHECK(*protected2.gain == doctest::Approx(0.0));

    const GalleryGame s = standards({3.0, 2.0, 0.0}, 0.5);
    CHECK(classify_deviation(s.game, gallery_state(s, "e2"), 0, 0).kind == DeviationKind::PositiveGap);
}

TEST_CASE("membership battery on the worked instances") {
    const GalleryGame hd = hawk_dove(2.0, 4.0);
    const SreVerdict hd_mixed = sre_membership(hd.game, gallery_state(hd, "mixed"));
    CHECK(hd_mixed.is_nash);
    CHECK_FALSE(hd_mixed.is_sre);
    CHECK(hd_mixed.certificate_issues.empty());

    const GalleryGame boundary = boundary_example();
    const SreVerdict be = sre_membership(boundary.game, gallery_state(boundary, "e1"));
    CHECK(be.is_nash);
    CHECK(be.is_sre);

    const GalleryGame plat = platform(1.0, 1.0, 1.0, 1.0, 0.0);
    CHECK(sre_membership(plat.game, gallery_state(plat, "xA")).is_sre);
    CHECK(sre_membership(plat.game, gallery_state(plat, "xB")).is_sre);
    const SreVerdict circ = sre_membership(plat.game, gallery_state(plat, "xcirc"));
    CHECK(circ.is_nash);
    CHECK_FALSE(circ.is_sre);
    CHECK(circ.certificate_issues.empty());
    CHECK_FALSE(circ.witnesses.empty());

    const SreVerdict threaded = sre_membership(plat.game, gallery_state(plat, "xcirc"),
                                               DiagnosticOptions{.threads = 4});
    CHECK(threaded.is_nash == circ.is_nash);
    CHECK(threaded.is_sre == circ.is_sre);
    REQUIRE(threaded.deviations.size() == circ.deviations.size());
    for (std::size_t k = 0; k < circ.deviations.size(); ++k) {
        CHECK(threaded.deviations[k].kind == circ.deviations[k].kind);
        CHECK(threaded.deviations[k].gap == circ.deviations[k].gap);
    }
}

TEST_CASE("exposure certificates verify numerically") {
    const GalleryGame r = rps();
    const State bary = gallery_state(r, "barycenter");
    const ExposureCertificate cert = exposure_certificate(r.game, bary, 0, 0, {0.0, -1.0, 1.0});
    CHECK(cert.step == doctest::Approx(1.0 / 6.0));
    CHECK(cert.witness.coords[0] == doctest::Approx(1.0 / 3.0));
    CHECK(cert.witness.coords[1] == doctest::Approx(1.0 / 6.0));
    CHECK(cert.witness.coords[2] == doctest::Approx(1.0 / 2.0));
    CHECK(cert.witnessed_gap > 0.0);
    CHECK(cert.witnessed_gap == doctest::Approx(pure_gap(r.game, bary, cert.witness, 0, 0)));
    CHECK(cert.blend_weight == 0.0);

    // boundary candidate: the raw maximizer needs blending into the interior
    const GalleryGame coord = coordination(3);
    const State edge = st(coord.game, {0.5, 0.5, 0.0});
    const ExposureCertificate blended = exposure_certificate(coord.game, edge, 0, 0, {1.0, -1.0, 0.0});
    CHECK(blended.blend_weight > 0.0);
    CHECK(blended.witnessed_gap > 0.0);
    for (double v : blended.witness.coords) CHECK(v > 0.0);
    const TangentConeRep cone = tangent_cone(coord.game, edge);
    CHECK(in_relative_interior(cone, blended.direction));

    // a nonpositive-derivative direction is rejected, never silently passed
    CHECK_THROWS_AS(exposure_certificate(coord.game, edge, 0, 0, Vec{-1.0, 1.0, 0.0}), CertificateError);
}

TEST_CASE("exposed-indifference decomposition over candidate lists") {
    const GalleryGame plat = platform(1.0, 1.0, 1.0, 1.0, 0.0);
    const std::vector<State> candidates{gallery_state(plat, "xA"), gallery_state(plat, "xB"),
                                        gallery_state(plat, "xcirc")};
    const IndifferenceDecomposition decomp = exposed_indifference_sets(plat.game, candidates);
    CHECK(decomp.non_nash.empty());
    // only the interior state appears, under both sides' pure-A tilts
    REQUIRE(decomp.exposed.count({0, 0}) == 1);
    REQUIRE(decomp.exposed.count({1, 0}) == 1);
    CHECK(decomp.exposed.at({0, 0}) == std::vector<std::size_t>{2});
    CHECK(decomp.exposed.at({1, 0}) == std::vector<std::size_t>{2});
    for (const auto& [key, members] : decomp.exposed) CHECK(members == std::vector<std::size_t>{2});

    const GalleryGame hd = hawk_dove(2.0, 4.0);
    const IndifferenceDecomposition hd_decomp = exposed_indifference_sets(hd.game, {gallery_state(hd, "mixed")});
    REQUIRE(hd_decomp.exposed.count({0, 0}) == 1);  // hawk exposed by the downward tilt
    REQUIRE(hd_decomp.exposed.count({0, 1}) == 1);  // dove exposed by the upward tilt
    CHECK(hd_decomp.exposed.at({0, 0}) == std::vector<std::size_t>{0});
    CHECK(hd_decomp.exposed.at({0, 1}) == std::vector<std::size_t>{0});

    const GalleryGame boundary = boundary_example();
    CHECK(exposed_indifference_sets(boundary.game, {gallery_state(boundary, "e1")}).exposed.empty());

    // non-Nash candidates are flagged and skipped
    const GalleryGame coord = coordination(2);
    const IndifferenceDecomposition flagged =
        exposed_indifference_sets(coord.game, {st(coord.game, {0.7, 0.3})});
    CHECK(flagged.non_nash == std::vector<std::size_t>{0});
    CHECK(flagged.exposed.empty());
}

TEST_CASE("decomposition union equals Nash-but-exposed over enumerated candidates") {
    for (const char* name : {"hawk_dove", "rps", "coordination", "platform", "standards", "identity_example"}) {
        const GalleryGame g = make_gallery(name);
        const NashEnumeration found = nash_support_enumeration(g.game);
        std::vector<State> candidates;
        for (const NashCandidate& cand : found.candidates) candidates.push_back(cand.state);
        const IndifferenceDecomposition decomp = exposed_indifference_sets(g.game, candidates);
        std::set<std::size_t> in_union;
        for (const auto& [key, members] : decomp.exposed)
            for (std::size_t c : members) in_union.insert(c);
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const SreVerdict verdict = sre_membership(g.game, candidates[c]);
            CHECK(verdict.is_nash);
            CHECK(in_union.count(c) == (verdict.is_sre ? 0u : 1u));
        }
    }
}

TEST_CASE("payoff identity is an exact algebraic test") {
    const GalleryGame ident = identity_example();
    const PayoffIdentityResult same = payoff_identity(ident.game, 0, 0, 1);
    CHECK(same.holds);
    CHECK(same.max_block_spread == doctest::Approx(0.0));
    CHECK(same.balance_residual == doctest::Approx(0.0));
    CHECK_FALSE(payoff_identity(ident.game, 0, 0, 2).holds);

    const GalleryGame hd = hawk_dove(2.0, 4.0);
    CHECK_FALSE(payoff_identity(hd.game, 0, 0, 1).holds);
    CHECK(payoff_identity(hd.game, 0, 1, 1).holds);

    // identity that needs the offset balance: F_1 - F_2 = (block constant 1) - 1
    std::vector<PopulationSpec> pops{{"p", 1.0, {"a", "b"}}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{2.0, 2.0}, {1.0, 1.0}}};
    payoffs.offset = {{0.0, 1.0}};
    const PopulationGame balanced(pops, payoffs);
    const PayoffIdentityResult bal = payoff_identity(balanced, 0, 0, 1);
    CHECK(bal.holds);
    CHECK(bal.block_constants[0] == doctest::Approx(1.0));
}

TEST_CASE("support-equality audit") {
    const GalleryGame r = rps();
    CHECK(support_equality_audit(r.game, gallery_state(r, "barycenter")).size() == 3);

    const GalleryGame ident = identity_example();
    CHECK(support_equality_audit(ident.game, st(ident.game, {0.4, 0.6, 0.0})).empty());
    CHECK(support_equality_audit(ident.game, gallery_state(ident, "e1")).empty());

    const GalleryGame hd = hawk_dove(2.0, 4.0);
    CHECK(support_equality_audit(hd.game, gallery_state(hd, "pure_hawk")).empty());
    CHECK(support_equality_audit(hd.game, gallery_state(hd, "mixed")).size() == 1);
}

TEST_CASE("full-support robustness is possible only under within-population identity") {
    CHECK_FALSE(full_support_sre_possible(identity_example().game));
    CHECK_FALSE(full_support_sre_possible(rps().game));

    std::vector<PopulationSpec> pops{{"p", 1.0, {"a", "b"}}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{0.0, 0.0}, {0.0, 0.0}}};
    payoffs.offset = {{7.0, 7.0}};
    CHECK(full_support_sre_possible(PopulationGame(pops, payoffs)));
}

TEST_CASE("row additivity") {
    const GalleryGame r = rps();
    const RowAdditiveResult cyc = row_additive_check(r.game.payoff_matrix(0), r.game.payoff_offset(0));
    CHECK_FALSE(cyc.holds);
    CHECK(cyc.max_residual == doctest::Approx(3.0));  // entry (2, 3) breaks additivity by -3

    const Mat a{{2.0, 3.0}, {3.0, 4.0}};  // u = (0, 1), r = (2, 3)
    const Vec b{5.0, 4.0};
    const RowAdditiveResult ur = row_additive_check(a, b);
    CHECK(ur.holds);
    CHECK(ur.u == Vec{0.0, 1.0});
    CHECK(ur.r == Vec{2.0, 3.0});
    CHECK(ur.constant == doctest::Approx(5.0));
    // F_i(y) = c + r . y independent of i, by substitution
    std::vector<PopulationSpec> pops{{"p", 1.0, {"a", "b"}}};
    const PopulationGame game(pops, AffinePayoffModel{{a}, {b}});
    for (double y1 : {0.0, 0.3, 1.0}) {
        const auto f = evaluate_payoffs(game, st(game, {y1, 1.0 - y1}));
        CHECK(f[0][0] == doctest::Approx(f[0][1]).epsilon(1e-12));
        CHECK(f[0][0] == doctest::Approx(5.0 + 2.0 * y1 + 3.0 * (1.0 - y1)).epsilon(1e-12));
    }

    const RowAdditiveResult zero = row_additive_check(Mat{{0.0, 0.0}, {0.0, 0.0}}, Vec{0.0, 0.0});
    CHECK(zero.holds);
    CHECK(zero.u == Vec{0.0, 0.0});
    CHECK(zero.r == Vec{0.0, 0.0});
}

TEST_CASE("one-population full-support equivalences") {
    CounterRng rng(555, {7});
    for (int round = 0; round < 30; ++round) {
        CounterRng game_rng = rng.derived({static_cast<std::uint64_t>(round)});
        PopulationGame game = sre_test::random_game(game_rng, 1, 4, true);
        if (round % 3 == 0) {
            // plant a row-additive instance
            const std::size_t n = game.strategy_count(0);
            Mat a(n, Vec(n));
            Vec b(n);
            Vec u(n), r(n);
            for (double& v : u) v = game_rng.next_in(-2.0, 2.0);
            for (double& v : r) v = game_rng.next_in(-2.0, 2.0);
            const double c = game_rng.next_in(-1.0, 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                b[i] = c - u[i];
                for (std::size_t j = 0; j < n; ++j) a[i][j] = u[i] + r[j];
            }
            game = PopulationGame({game.population(0)}, AffinePayoffModel{{a}, {b}});
        }
        const bool additive = row_additive_check(game.payoff_matrix(0), game.payoff_offset(0)).holds;
        const bool possible = full_support_sre_possible(game);
        bool equal_on_samples = true;
        for (int s = 0; s < 5; ++s) {
            const State y = sre_test::random_state(game, game_rng);
            const auto f = evaluate_payoffs(game, y);
            for (std::size_t i = 1; i < f[0].size(); ++i)
                if (std::fabs(f[0][i] - f[0][0]) > 1e-9) equal_on_samples = false;
        }
        CHECK(additive == possible);
        CHECK(additive == equal_on_samples);
    }
}

TEST_CASE("binary sign diagram") {
    const BinaryClassification anti = binary_classify(-1.0, 2.0, 0.0, 1.0);  // hawk-dove payoffs
    CHECK(anti.kind == BinaryCase::AntiCoordination);
    CHECK(anti.sre_states.empty());

    const BinaryClassification coord = binary_classify(1.0, 0.0, 0.0, 1.0);
    CHECK(coord.kind == BinaryCase::Coordination);
    REQUIRE(coord.sre_states.size() == 2);
    CHECK(coord.sre_states[0] == Vec{1.0, 0.0});
    CHECK(coord.sre_states[1] == Vec{0.0, 1.0});

    const BinaryClassification dom1 = binary_classify(2.0, 2.0, 0.0, 0.0);
    CHECK(dom1.kind == BinaryCase::Dominance1);
    REQUIRE(dom1.sre_states.size() == 1);
    CHECK(dom1.sre_states[0] == Vec{1.0, 0.0});

    const BinaryClassification dom2 = binary_classify(0.0, 0.0, 2.0, 2.0);
    CHECK(dom2.kind == BinaryCase::Dominance2);
    CHECK(dom2.sre_states[0] == Vec{0.0, 1.0});

    CHECK_THROWS_AS(binary_classify(1.0, 0.0, 1.0, 1.0), NonGenericBinaryGame);
}

TEST_CASE("support enumeration recovers the documented Nash sets") {
    const GalleryGame coord = coordination(2);
    const NashEnumeration c2 = nash_support_enumeration(coord.game);
    CHECK(c2.candidates.size() == 3);
    CHECK(has_candidate(c2, {1.0, 0.0}));
    CHECK(has_candidate(c2, {0.0, 1.0}));
    CHECK(has_candidate(c2, {0.5, 0.5}));

    const GalleryGame plat = platform(1.0, 1.0, 1.0, 1.0, 0.0);
    const NashEnumeration p = nash_support_enumeration(plat.game);
    CHECK(p.candidates.size() == 3);
    CHECK(has_candidate(p, {1.0, 0.0, 1.0, 0.0}));
    CHECK(has_candidate(p, {0.0, 1.0, 0.0, 1.0}));
    CHECK(has_candidate(p, {0.5, 0.5, 0.5, 0.5}));

    const GalleryGame r = rps();
    const NashEnumeration cyc = nash_support_enumeration(r.game);
    REQUIRE(cyc.candidates.size() == 1);
    CHECK(inf_distance(cyc.candidates[0].state.coords, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}) < 1e-9);
    CHECK(cyc.candidates[0].kind == CandidateKind::Isolated);

    const GalleryGame hd = hawk_dove(2.0, 4.0);
    const NashEnumeration h = nash_support_enumeration(hd.game);
    REQUIRE(h.candidates.size() == 1);
    CHECK(inf_distance(h.candidates[0].state.coords, {0.5, 0.5}) < 1e-9);

    const GalleryGame ident = identity_example();
    const NashEnumeration id = nash_support_enumeration(ident.game);
    CHECK(has_candidate(id, {1.0, 0.0, 0.0}));
    CHECK(has_candidate(id, {0.0, 1.0, 0.0}));
    bool found_continuum = false;
    for (const NashCandidate& cand : id.candidates)
        if (cand.kind == CandidateKind::ContinuumRepresentative) {
            found_continuum = true;
            CHECK(inf_distance(cand.state.coords, {0.5, 0.5, 0.0}) < 1e-9);
        }
    CHECK(found_continuum);

    EnumerationOptions tiny;
    tiny.profile_cap = 2;
    CHECK_THROWS_AS(nash_support_enumeration(coord.game, tiny), EnumerationCapExceeded);
}

TEST_CASE("asymmetric platform keeps the tipping structure") {
    const double alpha = 1.0, beta = 2.0, gamma = 3.0, delta = 1.0, phi = 0.5;
    const GalleryGame g = platform(alpha, beta, gamma, delta, phi);
    const NashEnumeration found = nash_support_enumeration(g.game);
    REQUIRE(found.candidates.size() == 3);
    const double tau1 = (delta + phi) / (gamma + delta);
    const double tau2 = beta / (alpha + beta);
    CHECK(has_candidate(found, {1.0, 0.0, 1.0, 0.0}));
    CHECK(has_candidate(found, {0.0, 1.0, 0.0, 1.0}));
    CHECK(has_candidate(found, {tau1, 1.0 - tau1, tau2, 1.0 - tau2}));

    std::size_t robust = 0;
    for (const NashCandidate& cand : found.candidates) {
        const SreVerdict verdict = sre_membership(g.game, cand.state);
        if (verdict.is_sre) {
            ++robust;
            CHECK(strict_pure_profile(g.game, cand.state).has_value());
        }
    }
    CHECK(robust == 2);

    // cross-side mechanism: the seller-side A gap moves with the buyer-side
    // A share at rate x_{2,B} (gamma + delta)
    const State circ = st(g.game, {tau1, 1.0 - tau1, tau2, 1.0 - tau2});
    const Vec grad = gap_gradient(g.game, circ, 1, 0);
    const Vec buyer_tilt{1.0, -1.0, 0.0, 0.0};
    CHECK(dot(grad, buyer_tilt) == doctest::Approx((1.0 - tau2) * (gamma + delta)).epsilon(1e-12));
}

TEST_CASE("membership invariants on gallery candidates") {
    for (const char* name :
         {"hawk_dove", "rps", "coordination", "platform", "standards", "boundary_example", "identity_example"}) {
        const GalleryGame g = make_gallery(name);
        for (const auto& [state_name, coords] : g.states) {
            const State x = validate_state(g.game, coords);
            const SreVerdict verdict = sre_membership(g.game, x);
            if (verdict.is_sre) CHECK(verdict.is_nash);
            CHECK(verdict.certificate_issues.empty());
            for (const DeviationVerdict& v : verdict.deviations)
                if (v.gain) CHECK(*v.gain >= 0.0);
            // zero-gap duality: protected iff the gradient sits in the normal cone
            for (const DeviationVerdict& v : verdict.deviations) {
                if (!v.gain) continue;
                const bool in_cone =
                    normal_cone_contains(g.game, x, gap_gradient(g.game, x, v.population, v.strategy), 1e-9)
                        .contained;
                CHECK((*v.gain <= 1e-7) == in_cone);
            }
            // every emitted certificate reproduces a positive gap at an interior state
            for (const ExposureCertificate& cert : verdict.witnesses) {
                CHECK(pure_gap(g.game, x, cert.witness, cert.population, cert.strategy) > 0.0);
                for (double v : cert.witness.coords) CHECK(v > 0.0);
            }
            // strict pure states are robust
            if (strict_pure_profile(g.game, x)) CHECK(verdict.is_sre);
            // mixed robustness requires a clean support-equality audit
            bool pure = true;
            for (const auto& supp : state_supports(g.game, x))
                if (supp.size() > 1) pure = false;
            if (verdict.is_sre && !pure) CHECK(support_equality_audit(g.game, x).empty());
        }
    }
}

TEST_CASE("robust mixing under a cross-population identity with unequal masses") {
    // F_a - F_b = (-1 on block 1) + (1.5 on block 2) - 2, which vanishes on
    // the state space because -1 * mass1 + 1.5 * mass2 = 2 cancels the
    // offset difference (mass1 = 1, mass2 = 2).
    std::vector<PopulationSpec> pops{{"mixers", 1.0, {"a", "b"}}, {"anchor", 2.0, {"only"}}};
    AffinePayoffModel payoffs;
    payoffs.matrix = {{{1.0, 1.0, 2.0}, {2.0, 2.0, 0.5}}, {{0.0, 0.0, 0.0}}};
    payoffs.offset = {{0.0, 2.0}, {0.0}};
    const PopulationGame game(pops, payoffs);

    const PayoffIdentityResult identity = payoff_identity(game, 0, 0, 1);
    CHECK(identity.holds);
    CHECK(identity.block_constants[0] == doctest::Approx(-1.0));
    CHECK(identity.block_constants[1] == doctest::Approx(1.5));
    CHECK(identity.balance_residual == doctest::Approx(0.0));
    CHECK(full_support_sre_possible(game));

    for (double t : {0.1, 0.5, 0.9}) {
        const State x = st(game, {t, 1.0 - t, 2.0});
        CHECK(support_equality_audit(game, x).empty());
        const SreVerdict verdict = sre_membership(game, x);
        CHECK(verdict.is_nash);
        CHECK(verdict.is_sre);
    }

    // breaking the balance breaks robust mixing
    AffinePayoffModel tilted = payoffs;
    tilted.offset[0][1] = 2.25;
    const PopulationGame broken(pops, tilted);
    CHECK_FALSE(payoff_identity(broken, 0, 0, 1).holds);
    CHECK_FALSE(sre_membership(broken, st(broken, {0.5, 0.5, 2.0})).is_nash);
}

TEST_CASE("verdict case split holds on random multi-population games") {
    CounterRng rng(555, {9});
    DiagnosticOptions opts;
    for (int round = 0; round < 60; ++round) {
        CounterRng game_rng = rng.derived({static_cast<std::uint64_t>(round)});
        const PopulationGame game = sre_test::random_game(game_rng, 1 + round % 3, 4);
        const State x = sre_test::random_state(game, game_rng, round % 2 == 0);
        const SreVerdict verdict = sre_membership(game, x, opts);
        bool any_positive = false, any_exposed = false;
        for (const DeviationVerdict& v : verdict.deviations) {
            const double gap = pure_gap(game, x, x, v.population, v.strategy);
            CHECK(v.gap == gap);
            switch (v.kind) {
                case DeviationKind::StrictlyWorse:
                    CHECK(gap < -opts.zero_gap_tol);
                    CHECK_FALSE(v.gain.has_value());
                    break;
                case DeviationKind::PositiveGap:
                    CHECK(gap > opts.zero_gap_tol);
                    CHECK_FALSE(v.gain.has_value());
                    any_positive = true;
                    break;
                case DeviationKind::ProtectedZeroGap:
                    CHECK(std::fabs(gap) <= opts.zero_gap_tol);
                    REQUIRE(v.gain.has_value());
                    CHECK(*v.gain >= 0.0);
                    CHECK(*v.gain <= opts.gain_tol);
                    break;
                case DeviationKind::ExposedZeroGap:
                    CHECK(std::fabs(gap) <= opts.zero_gap_tol);
                    REQUIRE(v.gain.has_value());
                    CHECK(*v.gain > opts.gain_tol);
                    REQUIRE(v.direction.has_value());
                    any_exposed = true;
                    break;
            }
        }
        CHECK(verdict.is_nash == !any_positive);
        CHECK(verdict.is_sre == (!any_positive && !any_exposed));
        if (verdict.is_sre) CHECK(verdict.is_nash);
        CHECK(verdict.certificate_issues.empty());
        for (const ExposureCertificate& cert : verdict.witnesses) {
            CHECK(cert.witnessed_gap > 0.0);
            CHECK(std::fabs(pure_gap(game, x, cert.witness, cert.population, cert.strategy) -
                            cert.witnessed_gap) < 1e-12);
        }
    }
}

TEST_CASE("classification is invariant to the ambient payoff representation") {
    CounterRng rng(555, {8});
    for (int round = 0; round < 25; ++round) {
        CounterRng game_rng = rng.derived({static_cast<std::uint64_t>(round)});
        const PopulationGame game = sre_test::random_game(game_rng, 1 + round % 2, 3);
        const State x = sre_test::random_state(game, game_rng, round % 2 == 0);

        // same affine payoffs, different coefficients: add c_i on a block's
        // columns of row i and subtract c_i * mass from the offset
        AffinePayoffModel other = game.payoffs();
        for (std::size_t p = 0; p < game.population_count(); ++p) {
            for (std::size_t i = 0; i < game.strategy_count(p); ++i) {
                for (std::size_t q = 0; q < game.population_count(); ++q) {
                    const double c = game_rng.next_in(-2.0, 2.0);
                    for (std::size_t j = 0; j < game.strategy_count(q); ++j)
                        other.matrix[p][i][game.ambient_index(q, j)] += c;
                    other.offset[p][i] -= c * game.population(q).mass;
                }
            }
        }
        std::vector<PopulationSpec> pops;
        for (std::size_t p = 0; p < game.population_count(); ++p) pops.push_back(game.population(p));
        const PopulationGame rewritten(pops, other);

        for (std::size_t p = 0; p < game.population_count(); ++p)
            for (std::size_t i = 0; i < game.strategy_count(p); ++i) {
                const DeviationVerdict v1 = classify_deviation(game, x, p, i);
                const DeviationVerdict v2 = classify_deviation(rewritten, x, p, i);
                CHECK(v1.kind == v2.kind);
                CHECK(std::fabs(v1.gap - v2.gap) < 1e-9);
                if (v1.gain && v2.gain) CHECK(std::fabs(*v1.gain - *v2.gain) < 1e-8);
            }
    }
}
