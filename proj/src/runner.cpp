#include "tensortail/runner.hpp"

#include <cmath>
#include <cstdio>

#include "tensortail/linalg.hpp"
#include "tensortail/spectral.hpp"

namespace tensortail {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(bool v) { return v ? "1" : "0"; }

ExperimentConfig load_experiment(const json& config, const RunOverrides& overrides) {
    json doc = config;
    if (overrides.seed) doc["seed"] = *overrides.seed;
    if (overrides.theta_grid) doc["theta_grid"] = *overrides.theta_grid;
    if (overrides.threads) doc["threads"] = *overrides.threads;
    return experiment_config_from_json(doc);
}

json config_echo(const ExperimentConfig& config) {
    return {{"schema_version", 1},
            {"seed", config.seed},
            {"n", config.n},
            {"trials", config.trials},
            {"theta_grid", config.theta_grid},
            {"C4", config.C4},
            {"threads", config.threads},
            {"exhaustive", config.exhaustive},
            {"ensemble", ensemble_spec_to_json(config.ensemble)}};
}

std::string tail_series_csv(const TailSeries& series) {
    std::string csv = "theta,empirical_p,ci,bound,satisfied\n";
    for (const auto& r : series.reports) {
        csv += fmt(r.theta) + "," + fmt(r.empirical_p) + "," + fmt(r.ci_halfwidth) + "," +
               fmt(r.analytic_bound) + "," + fmt(r.satisfied) + "\n";
    }
    return csv;
}

json tail_series_json(const TailSeries& series) {
    json reports = json::array();
    for (const auto& r : series.reports) {
        reports.push_back({{"theta", r.theta},
                           {"empirical_p", r.empirical_p},
                           {"ci_halfwidth", r.ci_halfwidth},
                           {"analytic_bound", r.analytic_bound},
                           {"satisfied", r.satisfied}});
    }
    return {{"reports", std::move(reports)},
            {"valid_trials", series.valid_trials},
            {"trial_errors", series.trial_errors}};
}

json hw_params_json(const HWParams& p) {
    return {{"dim_product", p.dim_product}, {"T_dg", p.T_dg},   {"sigma2_dg", p.sigma2_dg},
            {"T_cp", p.T_cp},               {"sigma2_cp", p.sigma2_cp}, {"C4", p.C4}};
}

RunResult run_bound_eval(const json& config, const RunOverrides& overrides) {
    auto p = hw_params_from_json(config.contains("params") ? config.at("params") : config);
    std::vector<double> grid;
    if (overrides.theta_grid) {
        grid = *overrides.theta_grid;
    } else if (config.contains("theta_grid")) {
        grid = config.at("theta_grid").get<std::vector<double>>();
    } else {
        throw Error(ErrorKind::Parse, "bound-eval: missing theta_grid");
    }
    const BernsteinParams dg{p.dim_product, p.T_dg, p.sigma2_dg};

    RunResult out;
    out.csv = "theta,pdg,pcp,hw,regime\n";
    json rows = json::array();
    for (double theta : grid) {
        const double pdg = pdg_bound(dg, theta);
        const double pcp = pcp_bound(p, theta);
        const double hw = hw_bound(p, theta);
        const auto regime = hw_regime(p, theta);
        out.csv += fmt(theta) + "," + fmt(pdg) + "," + fmt(pcp) + "," + fmt(hw) + "," + regime +
                   "\n";
        rows.push_back({{"theta", theta},
                        {"pdg", pdg},
                        {"pcp", pcp},
                        {"hw", hw},
                        {"hw_raw", hw_bound_raw(p, theta)},
                        {"regime", regime}});
    }
    out.summary_json = json{{"command", "bound-eval"},
                            {"params", hw_params_json(p)},
                            {"rows", std::move(rows)},
                            {"all_satisfied", true}}
                           .dump(2);
    out.all_satisfied = true;
    return out;
}

RunResult run_verify_bernstein(const json& config, const RunOverrides& overrides) {
    const auto experiment = load_experiment(config, overrides);
    const auto result = verify_bernstein(experiment);
    RunResult out;
    out.csv = tail_series_csv(result.series);
    out.summary_json =
        json{{"command", "verify-bernstein"},
             {"config", config_echo(experiment)},
             {"params",
              {{"dim_product", result.params.dim_product},
               {"T", result.params.T},
               {"sigma2", result.params.sigma2}}},
             {"series", tail_series_json(result.series)},
             {"all_satisfied", result.all_satisfied}}
            .dump(2);
    out.all_satisfied = result.all_satisfied;
    return out;
}

RunResult run_verify_symmetrization(const json& config, const RunOverrides& overrides) {
    const auto experiment = load_experiment(config, overrides);
    const auto result = verify_symmetrization(experiment);
    RunResult out;
    out.csv = "theta,empirical_p,ci,bound,satisfied\n";
    json rows = json::array();
    for (const auto& r : result.rows) {
        out.csv += fmt(r.theta) + "," + fmt(r.lhs_p) + "," + fmt(r.lhs_ci) + "," +
                   fmt(r.rhs_bound) + "," + fmt(r.satisfied) + "\n";
        rows.push_back({{"theta", r.theta},
                        {"lhs_p", r.lhs_p},
                        {"lhs_ci", r.lhs_ci},
                        {"rhs_p", r.rhs_p},
                        {"rhs_ci", r.rhs_ci},
                        {"rhs_bound", r.rhs_bound},
                        {"satisfied", r.satisfied}});
    }
    out.summary_json = json{{"command", "verify-symmetrization"},
                            {"config", config_echo(experiment)},
                            {"rows", std::move(rows)},
                            {"all_satisfied", result.all_satisfied}}
                           .dump(2);
    out.all_satisfied = result.all_satisfied;
    return out;
}

RunResult run_verify_decoupling(const json& config, const RunOverrides& overrides) {
    const auto experiment = load_experiment(config, overrides);
    const auto result = verify_decoupling(experiment);
    RunResult out;
    out.csv = "theta,lhs_p,lhs_ci,rhs_p,c_theta,bounded\n";
    json rows = json::array();
    for (const auto& r : result.rows) {
        out.csv += fmt(r.theta) + "," + fmt(r.lhs_p) + "," + fmt(r.lhs_ci) + "," + fmt(r.rhs_p) +
                   "," + (r.bounded ? fmt(r.c_theta) : std::string("inf")) + "," +
                   fmt(r.bounded) + "\n";
        rows.push_back({{"theta", r.theta},
                        {"lhs_p", r.lhs_p},
                        {"lhs_ci", r.lhs_ci},
                        {"rhs_p", r.rhs_p},
                        {"c_theta", r.bounded ? json(r.c_theta) : json("inf")},
                        {"bounded", r.bounded}});
    }
    out.summary_json = json{{"command", "verify-decoupling"},
                            {"config", config_echo(experiment)},
                            {"rows", std::move(rows)},
                            {"empirical_C4", result.empirical_c4},
                            {"unbounded_thetas", result.unbounded_thetas},
                            {"swap_identity_checked", result.swap_identity_checked},
                            {"swap_identity_error", result.swap_identity_error},
                            {"all_satisfied", result.all_satisfied}}
                           .dump(2);
    out.all_satisfied = result.all_satisfied;
    return out;
}

RunResult run_verify_hw(const json& config, const RunOverrides& overrides) {
    const auto experiment = load_experiment(config, overrides);
    const auto result = verify_hw(experiment);
    RunResult out;
    out.csv = tail_series_csv(result.total);
    out.summary_json = json{{"command", "verify-hw"},
                            {"config", config_echo(experiment)},
                            {"params", hw_params_json(result.params)},
                            {"total", tail_series_json(result.total)},
                            {"diag", tail_series_json(result.diag)},
                            {"coupling", tail_series_json(result.coupling)},
                            {"split_violations", result.split_violations},
                            {"all_satisfied", result.all_satisfied}}
                           .dump(2);
    out.all_satisfied = result.all_satisfied;
    return out;
}

struct PropertyRow {
    std::string name;
    std::size_t trials;
    double max_error;
    double tolerance;
    bool satisfied;
};

EinsteinTensor random_dense(const Shape& rs, const Shape& cs, RngStream& rng) {
    EinsteinTensor t(rs, cs);
    for (auto& e : t.entries()) e = {rng.next_normal(), rng.next_normal()};
    return t;
}

RunResult run_verify_algebra(const json& config, const RunOverrides& overrides) {
    std::uint64_t seed = config.contains("seed") ? config.at("seed").get<std::uint64_t>() : 0;
    if (overrides.seed) seed = *overrides.seed;
    const std::size_t pairs =
        config.contains("pairs") ? config.at("pairs").get<std::size_t>() : 500;
    std::vector<Shape> shapes{Shape{2}, Shape{3}, Shape{2, 2}, Shape{2, 3}};
    if (config.contains("shapes")) {
        shapes.clear();
        for (const auto& s : config.at("shapes")) {
            shapes.emplace_back(s.get<std::vector<std::int64_t>>());
        }
    }

    double homomorphism_err = 0.0, adjoint_err = 0.0, roundtrip_err = 0.0, trace_err = 0.0,
           inverse_err = 0.0;
    std::size_t inverse_trials = 0;
    auto rng = make_stream(seed, 0x5A, 0);
    for (std::size_t p = 0; p < pairs; ++p) {
        const Shape& shape = shapes[p % shapes.size()];
        const auto a = random_dense(shape, shape, rng);
        const auto b = random_dense(shape, shape, rng);

        const auto prod = einstein_product(a, b);
        const auto mm = linalg::matmul(unfold(a), unfold(b));
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < prod.entries().size(); ++i) {
            diff = std::max(diff, std::abs(prod.entries()[i] - mm.entries[i]));
            scale = std::max(scale, std::abs(mm.entries[i]));
        }
        homomorphism_err = std::max(homomorphism_err, diff / std::max(scale, 1e-300));

        const auto adj = unfold(conjugate_transpose(a));
        const auto madj = linalg::adjoint(unfold(a));
        for (std::size_t i = 0; i < adj.entries.size(); ++i) {
            adjoint_err = std::max(adjoint_err, std::abs(adj.entries[i] - madj.entries[i]));
        }

        roundtrip_err = std::max(
            roundtrip_err,
            max_abs_diff(fold(unfold(a), a.row_shape(), a.col_shape()), a));

        trace_err = std::max(trace_err, std::abs(trace(einstein_product(a, b)) -
                                                 trace(einstein_product(b, a))) /
                                            std::max(std::abs(trace(prod)), 1.0));

        if (p % 10 == 0) {
            try {
                const auto inv = inverse(a);
                const auto id = EinsteinTensor::identity(shape);
                inverse_err = std::max(inverse_err,
                                       frobenius_norm(einstein_product(inv, a) - id));
                inverse_err = std::max(inverse_err,
                                       frobenius_norm(einstein_product(a, inv) - id));
                ++inverse_trials;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Singular) throw;
            }
        }
    }

    const std::vector<PropertyRow> rows{
        {"unfold_homomorphism", pairs, homomorphism_err, 1e-12, homomorphism_err <= 1e-12},
        {"adjoint_compatibility", pairs, adjoint_err, 0.0, adjoint_err == 0.0},
        {"fold_unfold_roundtrip", pairs, roundtrip_err, 0.0, roundtrip_err == 0.0},
        {"trace_cyclicity", pairs, trace_err, 1e-10, trace_err <= 1e-10},
        {"inverse_residual", inverse_trials, inverse_err, 1e-10, inverse_err <= 1e-10},
    };

    RunResult out;
    out.csv = "property,trials,max_error,tolerance,satisfied\n";
    json jrows = json::array();
    out.all_satisfied = true;
    for (const auto& r : rows) {
        out.csv += r.name + "," + std::to_string(r.trials) + "," + fmt(r.max_error) + "," +
                   fmt(r.tolerance) + "," + fmt(r.satisfied) + "\n";
        jrows.push_back({{"property", r.name},
                         {"trials", r.trials},
                         {"max_error", r.max_error},
                         {"tolerance", r.tolerance},
                         {"satisfied", r.satisfied}});
        out.all_satisfied = out.all_satisfied && r.satisfied;
    }
    out.summary_json = json{{"command", "verify-algebra"},
                            {"seed", seed},
                            {"pairs", pairs},
                            {"rows", std::move(jrows)},
                            {"all_satisfied", out.all_satisfied}}
                           .dump(2);
    return out;
}

}  // namespace

RunResult run_command(const std::string& command, const json& config,
                      const RunOverrides& overrides) {
    if (command == "bound-eval") return run_bound_eval(config, overrides);
    if (command == "verify-bernstein") return run_verify_bernstein(config, overrides);
    if (command == "verify-symmetrization") return run_verify_symmetrization(config, overrides);
    if (command == "verify-decoupling") return run_verify_decoupling(config, overrides);
    if (command == "verify-hw") return run_verify_hw(config, overrides);
    if (command == "verify-algebra") return run_verify_algebra(config, overrides);
    throw Error(ErrorKind::Parse, "unknown command: " + command);
}

}  // namespace tensortail
