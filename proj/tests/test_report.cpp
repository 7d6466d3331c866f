#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "sre/gallery.hpp"
#include "sre/report.hpp"

using namespace sre;

TEST_CASE("check reports carry the full schema and serialize deterministically") {
    const GalleryGame g = platform(1.0, 1.0, 1.0, 1.0, 0.0);
    const State circ = gallery_state(g, "xcirc");
    const RunConfig config;
    const SreVerdict verdict = sre_membership(g.game, circ, to_options(config));

    Json args;
    args["gallery"] = "platform";
    Json report = report_skeleton("check", args, config);
    report["state"] = circ.coords;
    report["result"] = verdict_json(g.game, verdict);

    CHECK(report["version"] == kVersion);
    CHECK(report["command"] == "check");
    CHECK(report["config"]["tol_zero"] == 1e-7);
    CHECK(report["config"]["tol_psi"] == 1e-7);
    CHECK(report["config"]["seed"] == 0);
    CHECK(report["result"]["status"] == "nash-but-exposed");
    CHECK(report["result"]["is_nash"] == true);
    CHECK(report["result"]["is_sre"] == false);
    REQUIRE(report["result"]["deviations"].size() == 4);
    for (const Json& row : report["result"]["deviations"]) {
        CHECK(row.contains("population"));
        CHECK(row.contains("strategy"));
        CHECK(row.contains("gap"));
        CHECK(row.contains("kind"));
    }
    REQUIRE(report["result"]["certificates"].size() == 4);
    for (const Json& cert : report["result"]["certificates"]) {
        CHECK(cert.contains("direction"));
        CHECK(cert.contains("step"));
        CHECK(cert["witness_state"].size() == 4);  // full state, re-verifiable without this tool
        CHECK(cert["witnessed_gap"].get<double>() > 0.0);
    }

    // identical inputs produce byte-identical payloads
    const SreVerdict again = sre_membership(g.game, circ, to_options(config));
    Json report2 = report_skeleton("check", args, config);
    report2["state"] = circ.coords;
    report2["result"] = verdict_json(g.game, again);
    CHECK(report.dump(2) == report2.dump(2));

    const std::string text = render_check_text(g.game, verdict);
    CHECK(text == render_check_text(g.game, again));
    CHECK(text.find("nash-but-exposed") != std::string::npos);
    CHECK(text.find("witness (sellers, A)") != std::string::npos);
}

TEST_CASE("number formatting is stable") {
    CHECK(fmt_num(0.5) == "0.5");
    CHECK(fmt_num(-1.0) == "-1");
    CHECK(fmt_num(1.0 / 3.0) == "0.3333333333");
    CHECK(fmt_num(2e-9) == "2e-09");
}
