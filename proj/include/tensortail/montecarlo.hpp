#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tensortail/bounds.hpp"
#include "tensortail/ensembles.hpp"
#include "tensortail/quadform.hpp"

namespace tensortail {

struct ExperimentConfig {
    EnsembleSpec ensemble;
    BlockTensor a;
    std::size_t n = 1;
    std::size_t trials = 100;
    std::vector<double> theta_grid;
    double C4 = 1.0;
    std::uint64_t seed = 0;
    int threads = 1;
    /// Enumerate the ensemble support instead of sampling (finite-support
    /// ensembles only); tails become exact and intervals collapse to zero.
    bool exhaustive = false;

    void validate() const;
};

struct TailReport {
    double theta = 0.0;
    double empirical_p = 0.0;
    double ci_halfwidth = 0.0;   // empirical_p minus the 95% Wilson lower bound
    double analytic_bound = 0.0;
    bool satisfied = false;      // empirical_p - ci_halfwidth <= analytic_bound
};

/// Tail estimates for one statistic across a theta grid.
struct TailSeries {
    std::vector<TailReport> reports;
    std::size_t valid_trials = 0;
    std::size_t trial_errors = 0;  // non-finite statistics, excluded from counts
};

/// 95% Wilson lower confidence bound for a binomial proportion.
double wilson_lower_bound(double p_hat, std::size_t n);

/// Empirical tails of `statistics` across the grid; analytic bounds are
/// attached by the caller.
TailSeries estimate_tail(const std::vector<double>& statistics,
                         const std::vector<double>& theta_grid);

struct BernsteinResult {
    BernsteinParams params;
    TailSeries series;
    bool all_satisfied = false;
};

BernsteinResult verify_bernstein(const ExperimentConfig& config);

struct SymmetrizationRow {
    double theta = 0.0;
    double lhs_p = 0.0;       // Pr(lambda_max(sum X) >= theta)
    double lhs_ci = 0.0;
    double rhs_p = 0.0;       // Pr(lambda_max(sum X + sum Y) >= 2 theta / 3)
    double rhs_ci = 0.0;
    double rhs_bound = 0.0;   // 3 (rhs_p + rhs_ci)
    bool satisfied = false;   // lhs_p - lhs_ci <= rhs_bound
};

struct SymmetrizationResult {
    std::vector<SymmetrizationRow> rows;
    bool all_satisfied = false;
};

SymmetrizationResult verify_symmetrization(const ExperimentConfig& config);

struct DecouplingRow {
    double theta = 0.0;
    double lhs_p = 0.0;     // dependent coupling sum tail at theta
    double lhs_ci = 0.0;
    double rhs_p = 0.0;     // decoupled tail at theta / c_theta
    double c_theta = 1.0;   // smallest c >= 1 with lhs_p <= c * rhs(theta / c)
    bool bounded = true;
};

struct DecouplingResult {
    std::vector<DecouplingRow> rows;
    double empirical_c4 = 1.0;               // max of finite c_theta
    std::vector<double> unbounded_thetas;    // grid points with no finite c
    bool swap_identity_checked = false;
    double swap_identity_error = 0.0;        // max entrywise residual of the check
    bool all_satisfied = false;              // every grid point bounded
};

DecouplingResult verify_decoupling(const ExperimentConfig& config);

struct HWResult {
    HWParams params;
    TailSeries total;      // lambda_max(hermitized centered form) vs hw_bound(theta)
    TailSeries diag;       // diagonal part at theta/2 vs pdg_bound(theta)
    TailSeries coupling;   // coupling part at theta/2 vs pcp_bound(theta)
    std::size_t split_violations = 0;  // trials breaking the Weyl split inequality
    bool all_satisfied = false;        // over the total series
};

HWResult verify_hw(const ExperimentConfig& config);

/// Monte Carlo substitute for derive_composite_params when the ensemble has
/// continuous support: moments averaged and T taken as the empirical maximum
/// over `draws` estimation samples.
HWParams estimate_composite_params(const Sampler& sampler, const BlockTensor& a, double C4,
                                   std::size_t draws, std::uint64_t seed);

}  // namespace tensortail
