#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sre/gallery.hpp"
#include "sre/oracle.hpp"

using namespace sre;

namespace {

State st(const PopulationGame& game, Vec coords) { return validate_state(game, std::move(coords)); }

SamplingConfig quick_config(std::uint64_t seed) {
    SamplingConfig config;
    config.seed = seed;
    config.samples_per_radius = 400;
    return config;
}

}  // namespace

TEST_CASE("sampled exposure evidence on the worked instances") {
    const GalleryGame r = rps();
    const auto cyc = sample_exposure(r.game, gallery_state(r, "barycenter"), quick_config(7));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(cyc[0][i].kind == EvidenceKind::ExposedEvidence);
        for (int hits : cyc[0][i].hits_per_radius) CHECK(hits > 0);
        CHECK(cyc[0][i].witnessed_gap > 1e-10);
    }

    const GalleryGame boundary = boundary_example();
    const auto prot = sample_exposure(boundary.game, gallery_state(boundary, "e1"), quick_config(7));
    CHECK(prot[0][1].kind == EvidenceKind::NoPositiveFound);
    CHECK(prot[0][1].witness.empty());

    const GalleryGame coord = coordination(3);
    const auto strict = sample_exposure(coord.game, gallery_state(coord, "e1"), quick_config(7));
    for (std::size_t i = 0; i < 3; ++i) CHECK(strict[0][i].kind == EvidenceKind::NoPositiveFound);

    const GalleryGame ident = identity_example();
    const auto mixed = sample_exposure(ident.game, gallery_state(ident, "mix12"), quick_config(7));
    CHECK(mixed[0][0].kind == EvidenceKind::NoPositiveFound);
    CHECK(mixed[0][1].kind == EvidenceKind::NoPositiveFound);
    CHECK(mixed[0][2].kind == EvidenceKind::NoPositiveFound);

    SamplingConfig bad = quick_config(7);
    bad.radii = {1e-3, 1e-2};
    CHECK_THROWS_AS(sample_exposure(ident.game, gallery_state(ident, "mix12"), bad), std::invalid_argument);
}

TEST_CASE("sampling agrees with the tangent-program classification") {
    for (const char* name : {"hawk_dove", "rps", "coordination", "platform", "boundary_example"}) {
        const GalleryGame g = make_gallery(name);
        for (const auto& [state_name, coords] : g.states) {
            const State x = validate_state(g.game, coords);
            const auto evidence = sample_exposure(g.game, x, quick_config(11));
            for (std::size_t p = 0; p < g.game.population_count(); ++p)
                for (std::size_t i = 0; i < g.game.strategy_count(p); ++i) {
                    const DeviationVerdict verdict = classify_deviation(g.game, x, p, i);
                    const bool lp_exposed = verdict.kind == DeviationKind::ExposedZeroGap ||
                                            verdict.kind == DeviationKind::PositiveGap;
                    CHECK((evidence[p][i].kind == EvidenceKind::ExposedEvidence) == lp_exposed);
                }
        }
    }
}

TEST_CASE("evidence is a deterministic function of the seed") {
    const GalleryGame plat = platform(1.0, 1.0, 1.0, 1.0, 0.0);
    const State circ = gallery_state(plat, "xcirc");
    const auto a = sample_exposure(plat.game, circ, quick_config(99));
    const auto b = sample_exposure(plat.game, circ, quick_config(99));
    REQUIRE(a.size() == b.size());
    for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t i = 0; i < a[p].size(); ++i) {
            CHECK(a[p][i].kind == b[p][i].kind);
            CHECK(a[p][i].hits_per_radius == b[p][i].hits_per_radius);
            CHECK(a[p][i].witness == b[p][i].witness);
            CHECK(a[p][i].witnessed_gap == b[p][i].witnessed_gap);
        }
}

TEST_CASE("payoff perturbations below the margin preserve robust strict anchors") {
    const GalleryGame coord = coordination(3);
    const State e1 = gallery_state(coord, "e1");
    const auto profile = strict_pure_profile(coord.game, e1);
    REQUIRE(profile.has_value());
    CHECK(profile->min_margin == doctest::Approx(1.0));
    CHECK(payoff_perturbation_check(coord.game, e1, 0.9, 50, 13));
    CHECK(payoff_perturbation_check(coord.game, e1, 0.0, 5, 13));  // unperturbed

    const GalleryGame plat = platform(1.0, 1.0, 1.0, 1.0, 0.0);
    const State xa = gallery_state(plat, "xA");
    const auto plat_profile = strict_pure_profile(plat.game, xa);
    REQUIRE(plat_profile.has_value());
    CHECK(plat_profile->min_margin == doctest::Approx(1.0));
    CHECK(payoff_perturbation_check(plat.game, xa, 0.9, 50, 13));

    const GalleryGame hd = hawk_dove(2.0, 4.0);
    CHECK_THROWS_AS(payoff_perturbation_check(hd.game, gallery_state(hd, "mixed"), 0.5, 5, 13),
                    std::invalid_argument);
    CHECK_THROWS_AS(payoff_perturbation_check(coord.game, e1, 1.0, 5, 13), std::invalid_argument);
}

TEST_CASE("coalition blocking reduces to singleton pure improvements") {
    const GalleryGame plat = platform(1.0, 1.0, 1.0, 1.0, 0.0);
    CHECK(coalition_blocking_check(plat.game, gallery_state(plat, "xcirc"), 200, 17));
    CHECK(coalition_blocking_check(plat.game, gallery_state(plat, "xA"), 200, 17));

    const GalleryGame coord = coordination(2);
    CHECK(coalition_blocking_check(coord.game, st(coord.game, {0.7, 0.3}), 200, 17));

    const GalleryGame r = rps();
    CHECK(coalition_blocking_check(r.game, gallery_state(r, "barycenter"), 200, 17));
}

TEST_CASE("binary ESS report and the robustness divergence") {
    // hawk-dove payoff matrix ((V-C)/2, V, 0, V/2) at V=2, C=4
    const BinaryEssReport hd = ess_binary(-1.0, 2.0, 0.0, 1.0);
    CHECK(hd.classification.kind == BinaryCase::AntiCoordination);
    CHECK(hd.pure_ess.empty());
    REQUIRE(hd.mixed_ess.has_value());
    CHECK((*hd.mixed_ess)[1] == doctest::Approx(0.5));  // mass on strategy 2
    CHECK(hd.classification.sre_states.empty());
    CHECK(hd.divergence);

    const BinaryEssReport coord = ess_binary(1.0, 0.0, 0.0, 1.0);
    CHECK(coord.classification.kind == BinaryCase::Coordination);
    REQUIRE(coord.pure_ess.size() == 2);
    CHECK_FALSE(coord.mixed_ess.has_value());
    CHECK_FALSE(coord.divergence);

    const BinaryEssReport dom = ess_binary(2.0, 2.0, 0.0, 0.0);
    CHECK(dom.classification.kind == BinaryCase::Dominance1);
    REQUIRE(dom.pure_ess.size() == 1);
    CHECK(dom.pure_ess[0] == Vec{1.0, 0.0});
    CHECK_FALSE(dom.divergence);

    CHECK_THROWS_AS(ess_binary(1.0, 0.0, 1.0, 0.5), NonGenericBinaryGame);
}
