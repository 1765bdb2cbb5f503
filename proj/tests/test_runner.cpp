#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tensortail/runner.hpp"

using namespace tensortail;

namespace {

json experiment_doc() {
    return json{{"schema_version", 1},
                {"seed", 21},
                {"n", 2},
                {"trials", 2000},
                {"theta_grid", {1.0, 2.0, 4.0}},
                {"ensemble",
                 {{"kind", "diagonal_rademacher"}, {"shape", {2}}, {"T", 1.0}}},
                {"A", {{"generator", "identity"}}}};
}

}  // namespace

TEST_CASE("bound-eval emits the clamped composite row") {
    const json doc{{"schema_version", 1},
                   {"params",
                    {{"dim_product", 1},
                     {"T_dg", 1.0},
                     {"sigma2_dg", 1.0},
                     {"T_cp", 1.0},
                     {"sigma2_cp", 1.0},
                     {"C4", 1.0}}},
                   {"theta_grid", {2.0}}};
    const auto result = run_command("bound-eval", doc);
    CHECK(result.all_satisfied);
    CHECK(result.csv.find("theta,pdg,pcp,hw,regime") == 0);
    CHECK(result.csv.find("2,") != std::string::npos);
    const auto summary = json::parse(result.summary_json);
    CHECK(summary.at("rows")[0].at("hw").get<double>() == 1.0);  // clamped from 1.3747
    CHECK(summary.at("rows")[0].at("hw_raw").get<double>() ==
          doctest::Approx(1.3747).epsilon(1e-4));
}

TEST_CASE("verify commands produce the documented csv header") {
    const auto result = run_command("verify-bernstein", experiment_doc());
    CHECK(result.csv.find("theta,empirical_p,ci,bound,satisfied\n") == 0);
    CHECK(result.all_satisfied);
    const auto summary = json::parse(result.summary_json);
    CHECK(summary.at("config").at("seed") == 21);
    CHECK(summary.at("params").at("sigma2").get<double>() ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("overrides replace seed and grid") {
    RunOverrides overrides;
    overrides.seed = 99;
    overrides.theta_grid = std::vector<double>{1.5, 2.5};
    const auto result = run_command("verify-bernstein", experiment_doc(), overrides);
    const auto summary = json::parse(result.summary_json);
    CHECK(summary.at("config").at("seed") == 99);
    CHECK(summary.at("config").at("theta_grid")[0].get<double>() == 1.5);
    CHECK(summary.at("series").at("reports").size() == 2);
}

TEST_CASE("verify-decoupling summary carries the empirical constant") {
    auto doc = experiment_doc();
    doc["ensemble"]["kind"] = "rademacher_scaled";
    doc["exhaustive"] = true;
    const auto result = run_command("verify-decoupling", doc);
    const auto summary = json::parse(result.summary_json);
    CHECK(summary.at("empirical_C4").get<double>() >= 1.0);
    CHECK(summary.at("swap_identity_checked").get<bool>());
    CHECK(result.csv.find("theta,lhs_p,lhs_ci,rhs_p,c_theta,bounded\n") == 0);
}

TEST_CASE("verify-hw csv is byte-stable across repeated runs") {
    const auto once = run_command("verify-hw", experiment_doc());
    const auto again = run_command("verify-hw", experiment_doc());
    CHECK(once.csv == again.csv);
    CHECK(once.summary_json == again.summary_json);
}

TEST_CASE("verify-algebra passes its property suite") {
    const auto result = run_command("verify-algebra", json{{"seed", 3}, {"pairs", 120}});
    CHECK(result.all_satisfied);
    CHECK(result.csv.find("property,trials,max_error,tolerance,satisfied\n") == 0);
    const auto summary = json::parse(result.summary_json);
    for (const auto& row : summary.at("rows")) {
        CHECK(row.at("satisfied").get<bool>());
    }
}

TEST_CASE("unknown commands are parse errors") {
    try {
        run_command("frobnicate", json::object());
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
    }
}
