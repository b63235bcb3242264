#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "essint/cli.hpp"
#include "essint/io.hpp"

using namespace essint;

namespace {

std::string fixture(const std::string& name) {
    return std::string(ESSINT_FIXTURES_DIR) + "/" + name;
}

struct RunResult {
    int code;
    std::string text;
    Json json;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out;
    int code = run_cli(args, out);
    RunResult r{code, out.str(), Json()};
    if (!r.text.empty() && r.text[0] == '{') r.json = Json::parse(r.text);
    return r;
}

}  // namespace

TEST_CASE("cli: help and usage errors") {
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.text.find("normal-cone") != std::string::npos);
    CHECK(help.text.find("certify-sip") != std::string::npos);

    auto bogus = run({"frobnicate", "x.json"});
    CHECK(bogus.code == 2);
    CHECK(bogus.json["error"]["kind"] == "usage");

    auto missing = run({"normal-cone", fixture("no_such_file.json")});
    CHECK(missing.code == 2);
    CHECK(missing.json["error"]["kind"] == "parse");
}

TEST_CASE("cli: normal-cone on the quadrant model") {
    auto r = run({"normal-cone", fixture("quadrant.json")});
    CHECK(r.code == 0);
    CHECK(r.json["version"] == kVersion);
    CHECK(r.json["command"] == "normal-cone");
    CHECK(r.json["input_digest"].get<std::string>().size() == 16);
    CHECK(r.json["set"] == "(essential intersection)");
    CHECK(r.json["tangent_parts"].size() == 1);
    CHECK(r.json["regular_generators"].size() == 2);
    CHECK(r.json["checker"]["ok"] == true);

    auto single = run({"normal-cone", fixture("quadrant.json"), "--set", "a"});
    CHECK(single.code == 0);
    CHECK(single.json["set"] == "a");
    CHECK(single.json["regular_generators"].size() == 1);

    auto ghost = run({"normal-cone", fixture("quadrant.json"), "--set", "ghost"});
    CHECK(ghost.code == 2);
    CHECK(ghost.json["error"]["kind"] == "parse");
    CHECK(ghost.json["error"]["where"] == "--set");
}

TEST_CASE("cli: tangent-cone self-check passes") {
    auto r = run({"tangent-cone", fixture("quadrant.json")});
    CHECK(r.code == 0);
    CHECK(r.json["checker"]["ok"] == true);
    CHECK(r.json["checker"]["max_step_distance"].get<double>() <= 1e-8);
}

TEST_CASE("cli: chip-check and nqc-check on the quadrant") {
    auto chip = run({"chip-check", fixture("quadrant.json")});
    CHECK(chip.code == 0);
    CHECK(chip.json["holds"] == true);
    CHECK(chip.json["witnesses"].empty());
    CHECK(chip.json["checker"]["ok"] == true);

    auto nqc = run({"nqc-check", fixture("quadrant.json")});
    CHECK(nqc.code == 0);
    CHECK(nqc.json["holds"] == true);
    CHECK(nqc.json["shortcut_interior"] == true);
    CHECK(nqc.json["kind"] == "regular");

    auto lim = run({"nqc-check", fixture("quadrant.json"), "--kind", "limiting"});
    CHECK(lim.code == 0);
    CHECK(lim.json["kind"] == "limiting");

    auto bad = run({"nqc-check", fixture("quadrant.json"), "--kind", "bogus"});
    CHECK(bad.code == 2);
    CHECK(bad.json["error"]["where"] == "--kind");
}

TEST_CASE("cli: nqc-check refutes opposite half-planes with a verified violator") {
    auto r = run({"nqc-check", fixture("nqc_opposite.json")});
    CHECK(r.code == 1);
    CHECK(r.json["holds"] == false);
    CHECK(r.json["checker"]["ok"] == true);
    CHECK(r.json["checker"]["violator_members"] == true);
    CHECK(r.json["checker"]["violator_balance"].get<double>() <= 1e-6);
    CHECK(r.json["checker"]["violator_max_norm"].get<double>() > 1e-6);
    CHECK(r.json["violator"].size() == 2);
}

TEST_CASE("cli: aumann pools the cone atoms") {
    auto r = run({"aumann", fixture("conic_2d.json")});
    CHECK(r.code == 0);
    CHECK(r.json["closure_needed"] == false);
    CHECK(r.json["checker"]["ok"] == true);
    CHECK(r.json["selections"].size() >= 1);

    auto flat = run({"aumann", fixture("sip_model.json")});
    CHECK(flat.code == 2);  // no sets block behind this command
}

TEST_CASE("cli: extremal-check confirms every scheduled shift") {
    auto r = run({"extremal-check", fixture("twocone_ep.json")});
    CHECK(r.code == 0);
    CHECK(r.json["extremal_all"] == true);
    CHECK(r.json["steps"].size() == 20);
    CHECK(r.json["checker"]["flags_match_distances"] == true);
    for (const auto& step : r.json["steps"]) CHECK(step["extremal"] == true);
}

TEST_CASE("cli: ep-solve emits audited witnesses") {
    auto r = run({"ep-solve", fixture("twocone_ep.json")});
    CHECK(r.code == 0);
    REQUIRE(r.json["witnesses"].size() == 20);
    const auto& w1 = r.json["witnesses"][0];
    CHECK(w1["k"] == 1);
    CHECK(w1["audit"]["ok"] == true);
    CHECK(std::abs(w1["xhat"][1].get<double>() + 0.5) <= 1e-6);
    CHECK(std::abs(w1["eps_k"].get<double>() - 1.0) <= 1e-6);
    CHECK(w1["ball_active"] == false);
    CHECK(r.json["checker"]["max_balance_residual"].get<double>() <= 1e-6);
    CHECK(r.json["checker"]["max_q_norm_error"].get<double>() <= 1e-6);
    CHECK(r.json["checker"]["max_normal_residual"].get<double>() <= 1e-6);

    auto unsupported = run({"ep-solve", fixture("twocone_ep.json"), "--p", "3"});
    CHECK(unsupported.code == 2);
    CHECK(unsupported.json["error"]["kind"] == "not_supported");

    auto wide = run({"ep-solve", fixture("twocone_ep.json"), "--radius", "2"});
    CHECK(wide.code == 0);
}

TEST_CASE("cli: conic-ep stabilizes on both conic fixtures") {
    auto plane = run({"conic-ep", fixture("conic_2d.json")});
    CHECK(plane.code == 0);
    CHECK(plane.json["limiting_membership"] == true);
    CHECK(plane.json["halvings"].get<int>() <= 3);
    CHECK(plane.json["last_delta"].get<double>() <= 1e-6);
    CHECK(plane.json["checker"]["ok"] == true);

    auto dyadic = run({"conic-ep", fixture("conic_dyadic.json")});
    CHECK(dyadic.code == 0);
    CHECK(dyadic.json["limiting_membership"] == true);
    // hand value: the positive dual component is sqrt(6/7)
    double first = dyadic.json["witness"]["xstar"][0][0].get<double>();
    CHECK(std::abs(first - std::sqrt(6.0 / 7.0)) <= 1e-6);
}

TEST_CASE("cli: certificates certify and refuse with consistent checkers") {
    auto yes = run({"certify-stochastic", fixture("cert_model.json")});
    CHECK(yes.code == 0);
    CHECK(yes.json["certificate"]["certified"] == true);
    REQUIRE(yes.json["certificate"]["multipliers"].size() == 2);
    for (const auto& m : yes.json["certificate"]["multipliers"])
        CHECK(std::abs(m["lambda"].get<double>() - 1.0) <= 1e-6);
    CHECK(yes.json["checker"]["matches_reported"] == true);

    auto ineq = run({"certify-inequality", fixture("cert_model.json")});
    CHECK(ineq.code == 0);
    CHECK(ineq.json["certificate"]["certified"] == true);

    auto no = run({"certify-stochastic", fixture("cert_refused.json")});
    CHECK(no.code == 1);
    CHECK(no.json["certificate"]["certified"] == false);
    CHECK(no.json["certificate"]["stationarity_residual"].get<double>() >= 0.5);

    auto no2 = run({"certify-inequality", fixture("cert_refused.json")});
    CHECK(no2.code == 1);
}

TEST_CASE("cli: certify-sip reports the flat density and honors overrides") {
    auto r = run({"certify-sip", fixture("sip_model.json")});
    CHECK(r.code == 0);
    CHECK(r.json["nodes"] == 11);
    CHECK(r.json["rule"] == "trapezoid");
    CHECK(r.json["abscissae"].size() == 11);
    REQUIRE(r.json["certificate"]["density"].size() == 11);
    for (const auto& lam : r.json["certificate"]["density"])
        CHECK(std::abs(lam.get<double>() - 1.0) <= 1e-6);
    CHECK(r.json["certificate"]["stationarity_residual"].get<double>() <= 1e-10);

    auto fine = run({"certify-sip", fixture("sip_model.json"), "--nodes", "21"});
    CHECK(fine.code == 0);
    CHECK(fine.json["nodes"] == 21);
    CHECK(fine.json["abscissae"].size() == 21);

    auto uniform = run({"certify-sip", fixture("sip_model.json"), "--rule", "uniform"});
    CHECK(uniform.code == 0);
    CHECK(uniform.json["rule"] == "uniform");

    auto refused = run({"certify-sip", fixture("sip_refused.json")});
    CHECK(refused.code == 1);
    CHECK(std::abs(refused.json["certificate"]["stationarity_residual"].get<double>() -
                   1.0) <= 1e-9);
}

TEST_CASE("cli: strict-min branches and guards") {
    auto one = run({"strict-min", fixture("strictmin_cone.json")});
    CHECK(one.code == 0);
    CHECK(one.json["branch"] == 1);
    CHECK(std::abs(one.json["subgradient"][1].get<double>() - 1.0) <= 1e-6);
    CHECK(one.json["stationarity_residual"].get<double>() <= 1e-6);
    CHECK(one.json["checker"]["ok"] == true);

    auto two = run({"strict-min", fixture("strictmin_degenerate.json")});
    CHECK(two.code == 0);
    CHECK(two.json["branch"] == 2);
    CHECK(two.json["violator_balance"].get<double>() <= 1e-6);
    CHECK(two.json["violator_max_norm"].get<double>() >= 1e-6);

    auto loose = run({"strict-min", fixture("strictmin_nonstrict.json")});
    CHECK(loose.code == 2);
    CHECK(loose.json["error"]["kind"] == "nonoverlap_failed");
}

TEST_CASE("cli: malformed matrices come back field-addressed") {
    auto r = run({"normal-cone", fixture("malformed_matrix.json")});
    CHECK(r.code == 2);
    CHECK(r.json["error"]["kind"] == "parse");
    CHECK(r.json["error"]["where"] == "sets.b.pieces[0].A[1]");
    CHECK(r.json["error"]["message"].get<std::string>().find(
              "row has 3 entries, expected 2") != std::string::npos);
}

TEST_CASE("cli: repeated runs are byte-identical") {
    const std::vector<std::vector<std::string>> cases = {
        {"normal-cone", fixture("quadrant.json")},
        {"ep-solve", fixture("twocone_ep.json")},
        {"conic-ep", fixture("conic_dyadic.json")},
        {"chip-check", fixture("quadrant.json")},
        {"nqc-check", fixture("nqc_opposite.json")},
        {"certify-stochastic", fixture("cert_model.json")},
        {"certify-sip", fixture("sip_model.json")},
        {"strict-min", fixture("strictmin_degenerate.json")},
    };
    for (const auto& args : cases) {
        auto first = run(args);
        auto second = run(args);
        CHECK(first.code == second.code);
        CHECK(first.text == second.text);
    }
}
