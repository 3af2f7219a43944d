#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ratmaps/cli.hpp"
#include "ratmaps/strata.hpp"

using namespace ratmaps;
using namespace ratmaps::cli;

namespace {

RunConfig base(Space s) {
    RunConfig cfg;
    cfg.space = s;
    return cfg;
}

}  // namespace

TEST_CASE("count: formula and enumeration agree") {
    RunConfig cfg = base(Space::poly);
    cfg.d = 3;
    cfg.n = 2;
    cfg.m = 1;
    cfg.p = 3;
    cfg.method = Method::both;
    Report rep = cmd_count(cfg);
    CHECK(rep.results["formula"] == 18);
    CHECK(rep.results["brute"] == 18);
    CHECK(rep.results["agree"] == true);
    CHECK(exit_code(rep) == 0);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].pass);
}

TEST_CASE("count: pconf and the forced-empty case") {
    RunConfig cfg = base(Space::pconf);
    cfg.r = 3;
    cfg.p = 5;
    cfg.method = Method::both;
    Report rep = cmd_count(cfg);
    CHECK(rep.results["formula"] == 6);
    CHECK(rep.results["brute"] == 6);

    RunConfig cfg2 = base(Space::poly);
    cfg2.d = 1;
    cfg2.n = 1;
    cfg2.m = 1;
    cfg2.p = 7;
    cfg2.method = Method::both;
    CHECK(cmd_count(cfg2).results["formula"] == 0);
}

TEST_CASE("count: prime power fields and product spaces") {
    RunConfig cfg = base(Space::rat);
    cfg.d = 1;
    cfg.n = 2;
    cfg.p = 2;
    cfg.e = 2;  // F_4
    cfg.method = Method::both;
    Report rep = cmd_count(cfg);
    CHECK(rep.results["formula"] == 60);  // q^3 - q at q = 4
    CHECK(rep.results["brute"] == 60);

    RunConfig star = base(Space::m0m_star);
    star.m = 4;
    star.n = 1;
    star.d = 1;
    star.p = 5;
    star.method = Method::both;
    Report rep2 = cmd_count(star);
    CHECK(rep2.results["formula"] == 60);  // 3 * 20
    CHECK(rep2.results["brute"] == 60);
    CHECK(rep2.results["agree"] == true);

    RunConfig m0m = base(Space::m0m);
    m0m.m = 3;
    m0m.n = 1;
    m0m.d = 1;
    m0m.p = 2;
    m0m.method = Method::both;
    Report rep3 = cmd_count(m0m);
    CHECK(rep3.results["formula"] == 6);
    CHECK(rep3.results["brute"] == 6);
}

TEST_CASE("count: budget and validation errors") {
    RunConfig cfg = base(Space::poly);
    cfg.d = 30;
    cfg.n = 2;
    cfg.m = 1;
    cfg.p = 2;
    cfg.method = Method::brute;
    cfg.cap = 1000;
    CHECK_THROWS_AS(cmd_count(cfg), budget_error);

    RunConfig missing = base(Space::poly);
    missing.d = 2;
    missing.n = 1;
    missing.m = 1;
    CHECK_THROWS_AS(cmd_count(missing), std::invalid_argument);  // no field

    RunConfig nonprime = missing;
    nonprime.p = 6;
    CHECK_THROWS_AS(cmd_count(nonprime), std::invalid_argument);

    RunConfig badm = base(Space::m0m_star);
    badm.m = 2;
    badm.n = 1;
    badm.d = 1;
    badm.p = 3;
    CHECK_THROWS_AS(cmd_count(badm), std::invalid_argument);
}

TEST_CASE("motive: coefficient maps sorted by exponent") {
    RunConfig cfg = base(Space::rat);
    cfg.d = 1;
    cfg.n = 2;
    Report rep = cmd_motive(cfg);
    CHECK(rep.results["class"] == "L^3 - L");
    CHECK(rep.results["coefficients"]["1"] == -1);
    CHECK(rep.results["coefficients"]["3"] == 1);
    const std::string json = render_json(rep);
    CHECK(json.find("\"1\": -1") < json.find("\"3\": 1"));

    RunConfig star = base(Space::m0m_star);
    star.m = 4;
    star.n = 1;
    star.d = 1;
    Report rep2 = cmd_motive(star);
    // (L-2)(L^2-L) = L^3 - 3L^2 + 2L.
    CHECK(rep2.results["coefficients"]["1"] == 2);
    CHECK(rep2.results["coefficients"]["2"] == -3);
    CHECK(rep2.results["coefficients"]["3"] == 1);

    RunConfig stratum = base(Space::stratum);
    stratum.d = 2;
    stratum.n = 2;
    stratum.m = 1;
    stratum.k = 1;
    Report rep3 = cmd_motive(stratum);
    CHECK(rep3.results["coefficients"].size() == 1);
    CHECK(rep3.results["coefficients"]["1"] == 1);
}

TEST_CASE("tables: poly weights and consistency checks") {
    RunConfig cfg = base(Space::poly);
    cfg.d = 3;
    cfg.n = 2;
    cfg.m = 1;
    Report rep = cmd_tables(cfg);
    const auto& entries = rep.results["weights"]["entries"];
    REQUIRE(entries.size() == 2);
    CHECK(entries[0]["degree"] == 5);
    CHECK(entries[0]["twist"] == -2);
    CHECK(entries[1]["degree"] == 6);
    CHECK(entries[1]["twist"] == -3);
    CHECK(exit_code(rep) == 0);
    for (const CheckResult& c : rep.checks) CHECK(c.pass);
}

TEST_CASE("tables: pconf ranks and m0m-star diff section") {
    RunConfig cfg = base(Space::pconf);
    cfg.m = 5;
    Report rep = cmd_tables(cfg);
    CHECK(rep.results["betti"]["ordinary"]["0"] == 1);
    CHECK(rep.results["betti"]["ordinary"]["1"] == 5);
    CHECK(rep.results["betti"]["ordinary"]["2"] == 6);

    RunConfig star = base(Space::m0m_star);
    star.m = 3;
    star.n = 1;
    star.d = 1;
    Report rep2 = cmd_tables(star);
    CHECK(rep2.results.contains("weights_literal"));
    CHECK(rep2.results["diff"].size() == 2);  // degrees 3 and 5 disagree
    CHECK(exit_code(rep2) == 0);

    RunConfig bad = base(Space::stratum);
    bad.d = 2;
    bad.n = 2;
    bad.m = 1;
    bad.k = 1;
    CHECK_THROWS_AS(cmd_tables(bad), std::invalid_argument);
}

TEST_CASE("verify: suites pass and report grids") {
    RunConfig cfg = base(Space::poly);
    cfg.check = "recursion";
    cfg.max_d = 10;
    cfg.max_m = 3;
    Report rep = cmd_verify(cfg);
    CHECK(exit_code(rep) == 0);
    CHECK(rep.results["all_pass"] == true);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].name == "recursion");
    CHECK(rep.checks[0].details.find("165") != std::string::npos);  // grid size

    RunConfig strat = base(Space::poly);
    strat.check = "stratification";
    strat.d = 4;
    strat.n = 2;
    strat.m = 1;
    strat.p = 3;
    Report rep2 = cmd_verify(strat);
    CHECK(exit_code(rep2) == 0);
    CHECK(rep2.checks[0].details.find("81 tuples") != std::string::npos);

    RunConfig unknown = base(Space::poly);
    unknown.check = "frobnicate";
    CHECK_THROWS_AS(cmd_verify(unknown), std::invalid_argument);
}

TEST_CASE("verify: budget-limited sub-checks are reported, suite continues") {
    RunConfig cfg = base(Space::poly);
    cfg.check = "stratification";
    cfg.d = 30;
    cfg.n = 2;
    cfg.m = 1;
    cfg.p = 2;
    cfg.cap = 1000;
    Report rep = cmd_verify(cfg);
    REQUIRE(rep.checks.size() == 1);
    CHECK_FALSE(rep.checks[0].pass);
    CHECK(rep.checks[0].budget_exceeded);
    CHECK(rep.checks[0].details.find("1073741824") != std::string::npos);  // 2^30
    CHECK(exit_code(rep) == 3);
}

TEST_CASE("report schema and renderers") {
    RunConfig cfg = base(Space::poly);
    cfg.d = 2;
    cfg.n = 2;
    cfg.m = 1;
    cfg.p = 2;
    cfg.method = Method::both;
    Report rep = cmd_count(cfg);

    auto parsed = nlohmann::json::parse(render_json(rep));
    CHECK(parsed.contains("inputs"));
    CHECK(parsed.contains("results"));
    CHECK(parsed.contains("checks"));
    CHECK(parsed.contains("timing"));
    CHECK(parsed["timing"].contains("ms"));

    const std::string text = render_text(rep);
    CHECK(text.find("formula = 2") != std::string::npos);
    CHECK(text.find("[PASS] count-agreement") != std::string::npos);

    const std::string csv = render_csv(rep, "count");
    CHECK(csv.find("space,method,formula,brute,agree") == 0);
    CHECK(csv.find("poly,both,2,2,true") != std::string::npos);

    RunConfig tcfg = base(Space::poly);
    tcfg.d = 3;
    tcfg.n = 2;
    tcfg.m = 1;
    const std::string tcsv = render_csv(cmd_tables(tcfg), "tables");
    CHECK(tcsv.find("table,degree,twist,mult") == 0);
    CHECK(tcsv.find("weights,5,-2,1") != std::string::npos);

    RunConfig vcfg = base(Space::poly);
    vcfg.check = "recursion";
    vcfg.max_d = 5;
    const std::string vcsv = render_csv(cmd_verify(vcfg), "verify");
    CHECK(vcsv.find("check,pass,budget_exceeded,details") == 0);
    CHECK(vcsv.find("recursion,true") != std::string::npos);

    RunConfig mcfg = base(Space::rat);
    mcfg.d = 1;
    mcfg.n = 2;
    const std::string mcsv = render_csv(cmd_motive(mcfg), "motive");
    CHECK(mcsv.find("exponent,coefficient") == 0);
    CHECK(mcsv.find("1,-1") != std::string::npos);
    CHECK(mcsv.find("3,1") != std::string::npos);
}

TEST_CASE("reports are deterministic across worker counts") {
    for (unsigned workers : {1u, 4u}) {
        RunConfig cfg = base(Space::poly);
        cfg.d = 4;
        cfg.n = 2;
        cfg.m = 1;
        cfg.p = 3;
        cfg.method = Method::both;
        cfg.workers = workers;
        Report rep = cmd_count(cfg);
        CHECK(rep.results["brute"] == 54);  // 3^4 - 3^3
        CHECK(rep.results["agree"] == true);
    }
}

TEST_CASE("exact integers stay exact in json") {
    CHECK(json_int(BigInt(42)) == 42);
    CHECK(json_int(BigInt(-7)) == -7);
    BigInt huge = BigInt("123456789012345678901234567890");
    CHECK(json_int(huge) == "123456789012345678901234567890");
    // A count whose formula value overflows 64 bits.
    RunConfig cfg = base(Space::poly);
    cfg.d = 30;
    cfg.n = 2;
    cfg.m = 5;
    cfg.p = 1021;
    cfg.method = Method::formula;
    Report rep = cmd_count(cfg);
    CHECK(rep.results["formula"].is_string());
    CHECK(rep.results["formula"].get<std::string>().size() > 19);
}

TEST_CASE("verification suite entry points used by the acceptance harness") {
    CHECK(check_nu(8).pass);
    CHECK(check_rat_poly(4).pass);
    for (const CheckResult& c : check_trace(6, 2, 6, 4, 2)) CHECK(c.pass);
    CHECK(check_poly_count_sweep({{2, 1}, {3, 1}}, 2000).pass);
    CheckResult diff = check_literal_diff(3, 1, 1);
    CHECK(diff.pass);
    CHECK(diff.details.find("2 differing") != std::string::npos);
}
