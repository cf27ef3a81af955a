#include <doctest.h>

#include <functional>
#include <string>

#include "frobstab/serialize.hpp"
#include "support.hpp"

using frobstab::Json;
using testsupport::run_cli;
using testsupport::write_temp;

#define REQUIRE_CLI()                                        \
    if (testsupport::cli_path().empty()) {                   \
        MESSAGE("FROBSTAB_CLI not set; skipping e2e cases"); \
        return;                                              \
    }

namespace {

Json parse_out(const std::string& text) { return Json::parse(text); }

void check_no_floats(const Json& node) {
    CHECK_FALSE(node.is_number_float());
    if (node.is_object() || node.is_array())
        for (const auto& child : node) check_no_floats(child);
}

const char* kProfile = R"({"blocks": [{"rank": 2, "slope": "5/3"}, {"rank": 3, "slope": "1/6"}]})";
const char* kTwoBlock = R"({"blocks": [{"rank": 1, "slope": "1/1"}, {"rank": 1, "slope": "0/1"}]})";
const char* kCtx = R"({"n": 2, "p": 3, "mu_omega": "0/1", "lmax_omega": "0/1"})";

} // namespace

TEST_CASE("rank-tl emits the exact pinned bytes") {
    REQUIRE_CLI();
    const auto res = run_cli("rank-tl --r 2 --p 3 --l 2");
    CHECK(res.status == 0);
    CHECK(res.out == "{\n  \"rank\": \"3\",\n  \"oracle\": \"3\",\n  \"agrees\": true\n}\n");
}

TEST_CASE("forms table over JSON") {
    REQUIRE_CLI();
    const auto res = run_cli("forms --n 2 --p 3");
    REQUIRE(res.status == 0);
    const Json j = parse_out(res.out);
    CHECK(j["n"] == 2);
    CHECK(j["p"] == 3);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][1]["rank_b"] == "8");
    CHECK(j["rows"][1]["rank_z"] == "10");
    CHECK(j["rows"][1]["degb_coeff"] == "6/1");
    CHECK(j["rows"][1]["degz_coeff"] == "8/1");
    CHECK(j["rows"][2]["degz_coeff"] == "12/1");
    check_no_floats(j);
}

TEST_CASE("decomp-tl pinned pieces") {
    REQUIRE_CLI();
    const auto path = write_temp(
        "decomp_profile.json", R"({"blocks": [{"rank": 2, "slope": "1/2"}, {"rank": 1, "slope": "-1/1"}]})");
    const auto res = run_cli("decomp-tl --profile " + path + " --p 2 --l 2");
    REQUIRE(res.status == 0);
    const Json j = parse_out(res.out);
    CHECK(j["l"] == 2);
    CHECK(j["total_rank"] == "3");
    REQUIRE(j["pieces"].size() == 2);
    CHECK(j["pieces"][0] == Json::parse(R"({"slope": "1/1", "rank": "1"})"));
    CHECK(j["pieces"][1] == Json::parse(R"({"slope": "-1/2", "rank": "2"})"));
}

TEST_CASE("instab-tl reports exact value, cap, and citation") {
    REQUIRE_CLI();
    const auto path = write_temp("twoblock.json", kTwoBlock);
    const auto res = run_cli("instab-tl --profile " + path + " --p 3 --l 3");
    REQUIRE(res.status == 0);
    const Json j = parse_out(res.out);
    CHECK(j["mu_max"] == "2/1");
    CHECK(j["mu_min"] == "1/1");
    CHECK(j["instability"] == "1/1");
    CHECK(j["bound"] == "2/1");
    CHECK(j["citation"] == "Theorem Tl2");
    CHECK(j["bound_respected"] == true);
    check_no_floats(j);

    CHECK(run_cli("instab-tl --profile " + path + " --p 3 --l 5").status == 2);
}

TEST_CASE("hnp stats, polygon, and dominance comparison") {
    REQUIRE_CLI();
    const auto path = write_temp("stats_profile.json", kProfile);
    const auto res = run_cli("hnp --profile " + path);
    REQUIRE(res.status == 0);
    const Json j = parse_out(res.out);
    CHECK(j["stats"]["mu"] == "23/30");
    CHECK(j["stats"]["mu_max"] == "5/3");
    CHECK(j["stats"]["mu_min"] == "1/6");
    CHECK(j["stats"]["instability"] == "3/2");
    CHECK(j["polygon"]["vertices"].size() == 3);
    CHECK(j["compare"].is_null());

    const auto fine = write_temp("fine.json", kTwoBlock);
    const auto coarse = write_temp("coarse.json", R"({"blocks": [{"rank": 2, "slope": "1/2"}]})");
    const auto cmp = run_cli("hnp --profile " + fine + " --compare " + coarse);
    REQUIRE(cmp.status == 0);
    const Json c = parse_out(cmp.out);
    CHECK(c["compare"]["citation"] == "Lemma Shatz77");
    CHECK(c["compare"]["dominates"] == true);
    CHECK(c["compare"]["dominated_by"] == false);
    CHECK(c["compare"]["dominates_same_endpoints"] == true);
    CHECK(c["compare"]["dominated_by_same_endpoints"] == false);
}

TEST_CASE("pushforward report with canonical filtration") {
    REQUIRE_CLI();
    const auto ctx = write_temp("curve_ctx.json", R"({"n": 1, "p": 2, "mu_omega": "2/1"})");
    const auto res = run_cli("pushforward --ctx " + ctx + " --rank 1 --mu 0");
    REQUIRE(res.status == 0);
    const Json j = parse_out(res.out);
    CHECK(j["pushforward"]["m"] == 1);
    CHECK(j["pushforward"]["slope"] == "1/2");
    CHECK(j["pushforward"]["rank"] == "2");
    CHECK(j["pushforward"]["degree"] == "1/1");
    CHECK(j["canonical_filtration"]["citation"] == "Theorem CanonicalFiltration");
    REQUIRE(j["canonical_filtration"]["layers"].size() == 2);
    CHECK(j["canonical_filtration"]["layers"][1]["slope_offset"] == "2/1");

    const auto twice = run_cli("pushforward --ctx " + ctx + " --rank 1 --mu 0 --m 2");
    REQUIRE(twice.status == 0);
    const Json t = parse_out(twice.out);
    CHECK(t["pushforward"]["slope"] == "3/4");
    CHECK_FALSE(t["pushforward"].contains("rank"));
    CHECK_FALSE(t.contains("canonical_filtration"));
}

TEST_CASE("bounds default mode computes what it can and reports skips") {
    REQUIRE_CLI();
    const auto ctx = write_temp("bounds_ctx.json", kCtx);
    const auto res = run_cli("bounds --ctx " + ctx + " --rank 2 --instab 1/2");
    REQUIRE(res.status == 0);
    const Json j = parse_out(res.out);
    REQUIRE(j["bounds"].size() == 3);
    CHECK(j["bounds"][0]["name"] == "langer-gap");
    CHECK(j["bounds"][0]["value"] == "1/2");
    CHECK(j["bounds"][1]["name"] == "case-i");
    CHECK(j["bounds"][1]["value"].is_null());
    CHECK(j["bounds"][1]["skipped"] ==
          "hypotheses not satisfied: omega semistable and mu_omega <= 0");
    CHECK(j["bounds"][2]["name"] == "case-ii");
    CHECK(j["bounds"][2]["value"] == "3/1");
    CHECK(j["bounds"][2]["per_l"].size() == 5);
    check_no_floats(j);
}

TEST_CASE("bounds --which enforces inputs and hypotheses") {
    REQUIRE_CLI();
    const auto ctx = write_temp("bounds_ctx.json", kCtx);
    CHECK(run_cli("bounds --ctx " + ctx + " --rank 2 --which sun").status == 2);
    CHECK(run_cli("bounds --ctx " + ctx + " --rank 2 --which nonsense").status == 2);
    CHECK(run_cli("bounds --ctx " + ctx + " --rank 2 --which case-i").status == 3);

    const auto forced = run_cli("bounds --ctx " + ctx + " --rank 2 --which case-i --force");
    REQUIRE(forced.status == 0);
    const Json j = parse_out(forced.out);
    REQUIRE(j["bounds"].size() == 1);
    CHECK(j["bounds"][0]["hypotheses_satisfied"] == false);
    CHECK(j["bounds"][0]["value"] == "0/1");

    const auto banner = run_cli("bounds --ctx " + ctx + " --rank 2 --which case-i --force", true);
    CHECK(banner.out.find("WARNING: hypotheses not satisfied for bound case-i") != std::string::npos);

    const auto caps = write_temp("caps.json", R"(["1/2", "1/2", "1/2", "1/2", "1/2"])");
    const auto sun = run_cli("bounds --ctx " + ctx + " --rank 2 --caps " + caps + " --which sun");
    REQUIRE(sun.status == 0);
    CHECK(parse_out(sun.out)["bounds"][0]["value"] == "3/1");

    CHECK(run_cli("bounds --ctx " + ctx + " --rank 2 --caps /dev/null --which sun").status == 2);
}

TEST_CASE("check-zi full sweep with z1 section") {
    REQUIRE_CLI();
    const auto res = run_cli("check-zi --n 3 --p 2");
    REQUIRE(res.status == 0);
    const Json j = parse_out(res.out);
    CHECK(j["citation"] == "Prop. InstZiX");
    REQUIRE(j["verdicts"].size() == 2);
    CHECK(j["verdicts"][0]["sufficient_conflict"] == true);
    CHECK(j["verdicts"][0]["paper_sufficient_lhs"] == "9/7");
    CHECK(j["verdicts"][0]["exact_sufficient_lhs"] == "6/7");
    CHECK(j["z1"]["polygon"].is_null());
    CHECK(j["z1"]["slope_order_violation"].is_string());

    const auto good = run_cli("check-zi --n 3 --p 3 --i 1");
    REQUIRE(good.status == 0);
    const Json g = parse_out(good.out);
    REQUIRE(g["verdicts"].size() == 1);
    CHECK(g["verdicts"][0]["exact_destabilizes"] == true);
    CHECK(g["z1"]["slope_order_violation"].is_null());
    CHECK(g["z1"]["polygon"]["vertices"] == Json::parse(R"([[0, "0/1"], [26, "27/1"], [29, "30/1"]])"));
    CHECK(g["z1"]["assumptions"].size() == 2);

    CHECK(run_cli("check-zi --n 1 --p 2").status == 2);
}

TEST_CASE("advisor fires the pinned conclusions") {
    REQUIRE_CLI();
    const auto ctx = write_temp("advisor_ctx.json",
                                R"({"n": 2, "p": 3, "mu_omega": "0/1", "omega_semistable": true})");
    const auto res = run_cli("advisor --ctx " + ctx + " --e-semistable");
    REQUIRE(res.status == 0);
    const Json j = parse_out(res.out);
    REQUIRE(j["advice"].size() == 3);
    CHECK(j["advice"][0]["citation"] == "Prop. FroDirIm");
    CHECK(j["advice"][1]["citation"] == "Prop. BxZx0");
    CHECK(j["advice"][2]["citation"] == "Theorem DiIm-");

    // The context flag alone still yields the forms conclusion.
    const auto none = run_cli("advisor --ctx " + ctx);
    const Json n = parse_out(none.out);
    REQUIRE(n["advice"].size() == 1);
    CHECK(n["advice"][0]["citation"] == "Prop. BxZx0");

    const auto plain = write_temp("plain_ctx.json", R"({"n": 2, "p": 3, "mu_omega": "1/1"})");
    CHECK(parse_out(run_cli("advisor --ctx " + plain).out)["advice"].empty());
}

TEST_CASE("selfcheck is deterministic and reports its paper-notes ids") {
    REQUIRE_CLI();
    const auto a = run_cli("selfcheck --grid small --seed 7");
    const auto b = run_cli("selfcheck --grid small --seed 7");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const Json j = parse_out(a.out);
    CHECK(j["passed"] == true);
    CHECK(j["seed"] == 7);
    REQUIRE(j["paper-notes"].size() == 3);
    CHECK(j["paper-notes"][0]["id"] == "dvec-indexing");
    CHECK(j["paper-notes"][1]["id"] == "instzix-simplification");
    CHECK(j["paper-notes"][2]["id"] == "phi0-strict-inequality");
    check_no_floats(j);

    CHECK(run_cli("selfcheck --grid bogus").status == 2);
}

TEST_CASE("FROBSTAB_SEED is honored and validated") {
    REQUIRE_CLI();
    const std::string cli = testsupport::cli_path();
    const auto seeded = testsupport::run_cli("selfcheck --grid small --seed 42");
    FILE* pipe = ::popen(("FROBSTAB_SEED=42 '" + cli + "' selfcheck --grid small 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    CHECK(::pclose(pipe) == 0);
    CHECK(out == seeded.out);

    FILE* bad = ::popen(("FROBSTAB_SEED=xyz '" + cli + "' selfcheck --grid small >/dev/null 2>&1; echo $?").c_str(), "r");
    REQUIRE(bad != nullptr);
    std::string code;
    while ((got = std::fread(buf, 1, sizeof buf, bad)) > 0) code.append(buf, got);
    ::pclose(bad);
    CHECK(code == "2\n");
}

TEST_CASE("table format renders flat reports") {
    REQUIRE_CLI();
    const auto res = run_cli("--format table rank-tl --r 2 --p 3 --l 2");
    REQUIRE(res.status == 0);
    CHECK(res.out == "rank: 3\noracle: 3\nagrees: true\n");

    const auto forms = run_cli("--format table forms --n 2 --p 3");
    REQUIRE(forms.status == 0);
    CHECK(forms.out.find("rank_b") != std::string::npos);
    CHECK(forms.out.find("degz_coeff") != std::string::npos);

    // The global option is accepted after the subcommand as well.
    const auto trailing = run_cli("rank-tl --r 2 --p 3 --l 2 --format table");
    CHECK(trailing.status == 0);
    CHECK(trailing.out == res.out);
}

TEST_CASE("malformed inputs exit 2, help exits 0") {
    REQUIRE_CLI();
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("rank-tl --r 2 --p 1 --l 0").status == 2);
    CHECK(run_cli("rank-tl --r 2").status == 2);
    CHECK(run_cli("hnp --profile /nonexistent.json").status == 2);
    const auto garbage = write_temp("garbage.json", "{not json");
    CHECK(run_cli("hnp --profile " + garbage).status == 2);
    CHECK(run_cli("pushforward --ctx " + garbage + " --rank 1 --mu 0").status == 2);
    const auto ctx = write_temp("curve_ctx2.json", R"({"n": 1, "p": 2, "mu_omega": "2/1"})");
    CHECK(run_cli("pushforward --ctx " + ctx + " --rank 1 --mu 1.5").status == 2);
}
