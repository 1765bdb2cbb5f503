#include "tensortail/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "tensortail/spectral.hpp"

namespace tensortail {

void ExperimentConfig::validate() const {
    if (!exhaustive && trials < 100) {
        throw Error(ErrorKind::Domain, "experiment: trials must be >= 100");
    }
    if (theta_grid.empty()) throw Error(ErrorKind::Domain, "experiment: empty theta grid");
    double prev = 0.0;
    for (double t : theta_grid) {
        if (!(t > prev)) {
            throw Error(ErrorKind::Domain,
                        "experiment: theta grid must be strictly increasing and positive");
        }
        prev = t;
    }
    if (threads < 1) throw Error(ErrorKind::Domain, "experiment: threads must be >= 1");
    if (a.n() != n) throw Error(ErrorKind::Dimension, "experiment: A grid size differs from n");
    if (a.shape() != ensemble.shape) {
        throw Error(ErrorKind::Dimension, "experiment: A block shape differs from ensemble shape");
    }
}

double wilson_lower_bound(double p_hat, std::size_t n) {
    if (n == 0) return 0.0;
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    const double center = p_hat + z2 / (2.0 * nn);
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn));
    const double lower = (center - half) / (1.0 + z2 / nn);
    return std::max(lower, 0.0);
}

namespace {

template <typename F>
void parallel_for(std::size_t count, int threads, F&& fn) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < count;
                 i += static_cast<std::size_t>(workers)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

/// Discrete tail distribution: either a Monte Carlo sample (unit weights) or
/// an exact enumeration (atom probabilities).
class TailEstimator {
public:
    TailEstimator(std::vector<std::pair<double, double>> atoms, bool exact,
                  std::size_t sample_count)
        : atoms_(std::move(atoms)), exact_(exact), samples_(sample_count) {
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        suffix_.resize(atoms_.size() + 1, 0.0);
        for (std::size_t i = atoms_.size(); i > 0; --i) {
            suffix_[i - 1] = suffix_[i] + atoms_[i - 1].second;
        }
    }

    double tail(double threshold) const {
        const auto it = std::lower_bound(
            atoms_.begin(), atoms_.end(), threshold,
            [](const auto& atom, double t) { return atom.first < t; });
        const auto idx = static_cast<std::size_t>(it - atoms_.begin());
        return std::min(suffix_[idx], 1.0);
    }

    double ci_halfwidth(double p_hat) const {
        if (exact_) return 0.0;
        return p_hat - wilson_lower_bound(p_hat, samples_);
    }

    bool exact() const noexcept { return exact_; }
    std::size_t samples() const noexcept { return samples_; }

private:
    std::vector<std::pair<double, double>> atoms_;
    bool exact_;
    std::size_t samples_;
    std::vector<double> suffix_;
};

TailEstimator from_samples(const std::vector<double>& stats) {
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(stats.size());
    const double w = stats.empty() ? 0.0 : 1.0 / static_cast<double>(stats.size());
    for (double s : stats) atoms.emplace_back(s, w);
    return {std::move(atoms), false, stats.size()};
}

/// Drops non-finite statistics; the count of dropped trials is reported.
std::size_t prune_nonfinite(std::vector<double>& stats) {
    const auto before = stats.size();
    std::erase_if(stats, [](double s) { return !std::isfinite(s); });
    return before - stats.size();
}

TailSeries series_from(const TailEstimator& est, const std::vector<double>& grid,
                       const std::function<double(double)>& bound_at,
                       const std::function<double(double)>& stat_threshold,
                       std::size_t trial_errors) {
    TailSeries out;
    out.valid_trials = est.samples();
    out.trial_errors = trial_errors;
    out.reports.reserve(grid.size());
    for (double theta : grid) {
        TailReport r;
        r.theta = theta;
        r.empirical_p = est.tail(stat_threshold(theta));
        r.ci_halfwidth = est.ci_halfwidth(r.empirical_p);
        r.analytic_bound = bound_at(theta);
        r.satisfied = r.empirical_p - r.ci_halfwidth <= r.analytic_bound + 1e-12;
        out.reports.push_back(r);
    }
    return out;
}

std::vector<EinsteinTensor> exact_or_estimated_moments(const Sampler& sampler,
                                                       std::uint64_t seed) {
    std::vector<EinsteinTensor> out;
    out.reserve(sampler.block_count());
    if (sampler.finite_support()) {
        for (std::size_t i = 0; i < sampler.block_count(); ++i) {
            out.push_back(sampler.second_moment(i));
        }
        return out;
    }
    constexpr std::size_t kMomentDraws = 20000;
    const Shape& shape = sampler.spec().shape;
    std::vector<EinsteinTensor> acc(sampler.block_count(), EinsteinTensor::zero(shape));
    auto rng = make_stream(seed, 0, 9);
    for (std::size_t d = 0; d < kMomentDraws; ++d) {
        for (std::size_t i = 0; i < sampler.block_count(); ++i) {
            const auto x = sampler.sample_block(i, rng);
            acc[i] += einstein_product(x, x);
        }
    }
    for (auto& m : acc) {
        m *= 1.0 / static_cast<double>(kMomentDraws);
        out.push_back(hermitize(m));
    }
    return out;
}

EinsteinTensor coupling_sum_of(const BlockTensor& a, const std::vector<EinsteinTensor>& x1,
                               const std::vector<EinsteinTensor>& x2) {
    EinsteinTensor sum = EinsteinTensor::zero(a.shape());
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t j = 0; j < a.n(); ++j) {
            if (i == j) continue;
            sum += einstein_product(einstein_product(a.at(i, j), x1[i]), x2[j]);
        }
    }
    return sum;
}

/// Enumerates the joint support of the n blocks; fn(blocks, probability).
template <typename F>
void enumerate_support(const Sampler& sampler, F&& fn) {
    const std::size_t n = sampler.block_count();
    std::vector<std::vector<std::pair<EinsteinTensor, double>>> supports;
    supports.reserve(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        supports.push_back(sampler.support(i));
        total *= supports.back().size();
        if (total > 4000000) {
            throw Error(ErrorKind::Unsupported, "joint support too large to enumerate");
        }
    }
    std::vector<std::size_t> idx(n, 0);
    std::vector<EinsteinTensor> blocks;
    for (;;) {
        blocks.clear();
        double prob = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            blocks.push_back(supports[i][idx[i]].first);
            prob *= supports[i][idx[i]].second;
        }
        fn(blocks, prob);
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == supports[pos].size()) idx[pos++] = 0;
        if (pos == n) break;
    }
}

double smallest_decoupling_constant(double lhs_p, const TailEstimator& rhs, double theta,
                                    bool& bounded) {
    constexpr double kCap = 1e9;
    auto holds = [&](double c) { return lhs_p <= c * rhs.tail(theta / c) + 1e-15; };
    if (lhs_p <= 0.0 || holds(1.0)) {
        bounded = true;
        return 1.0;
    }
    if (!holds(kCap)) {
        bounded = false;
        return std::numeric_limits<double>::infinity();
    }
    double lo = 1.0, hi = kCap;
    // c * rhs(theta / c) is nondecreasing in c, so bisection applies.
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? hi : lo) = mid;
    }
    bounded = true;
    return hi;
}

}  // namespace

TailSeries estimate_tail(const std::vector<double>& statistics,
                         const std::vector<double>& theta_grid) {
    auto stats = statistics;
    const auto errors = prune_nonfinite(stats);
    const auto est = from_samples(stats);
    return series_from(
        est, theta_grid, [](double) { return 0.0; }, [](double t) { return t; }, errors);
}

HWParams estimate_composite_params(const Sampler& sampler, const BlockTensor& a, double C4,
                                   std::size_t draws, std::uint64_t seed) {
    const std::size_t n = sampler.block_count();
    const Shape& shape = a.shape();
    const auto moments = exact_or_estimated_moments(sampler, seed);

    HWParams out;
    out.dim_product = shape.product();
    out.C4 = C4;
    out.T_dg = 0.0;
    out.T_cp = 0.0;

    EinsteinTensor sum_ey2 = EinsteinTensor::zero(shape);
    EinsteinTensor sum_ez2 = EinsteinTensor::zero(shape);
    auto rng = make_stream(seed, 0, 10);
    std::vector<EinsteinTensor> ey2(n, EinsteinTensor::zero(shape));
    BlockTensor zero_a(n, shape);
    std::vector<EinsteinTensor> ez2(n * n, EinsteinTensor::zero(shape));
    for (std::size_t d = 0; d < draws; ++d) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = sampler.sample_block(i, rng);
            const auto y = hermitize(
                einstein_product(a.at(i, i), einstein_product(x, x) - moments[i]));
            out.T_dg = std::max(out.T_dg, lambda_max(y, 1e-8));
            ey2[i] += einstein_product(y, y);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto x1 = sampler.sample_block(i, rng);
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const auto x2 = sampler.sample_block(j, rng);
                const auto z = hermitize(
                    einstein_product(einstein_product(a.at(i, j), x1), x2));
                out.T_cp = std::max(out.T_cp, lambda_max(z, 1e-8));
                ez2[i * n + j] += einstein_product(z, z);
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(draws);
    for (auto& m : ey2) sum_ey2 += inv * m;
    for (auto& m : ez2) sum_ez2 += inv * m;
    out.sigma2_dg = spectral_norm(sum_ey2);
    out.sigma2_cp = spectral_norm(sum_ez2);
    return out;
}

BernsteinResult verify_bernstein(const ExperimentConfig& config) {
    config.validate();
    const Sampler sampler(config.ensemble, config.n);

    BernsteinResult out;
    out.params.dim_product = config.ensemble.shape.product();
    out.params.T = config.ensemble.bound;
    {
        EinsteinTensor sum = EinsteinTensor::zero(config.ensemble.shape);
        if (sampler.finite_support()) {
            for (std::size_t i = 0; i < config.n; ++i) sum += sampler.second_moment(i);
        } else {
            for (const auto& m :
                 exact_or_estimated_moments(sampler, config.seed)) sum += m;
        }
        out.params.sigma2 = spectral_norm(sum);
    }

    std::vector<double> stats(config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t t) {
        auto rng = make_stream(config.seed, t + 1, 0);
        EinsteinTensor sum = EinsteinTensor::zero(config.ensemble.shape);
        for (std::size_t i = 0; i < config.n; ++i) sum += sampler.sample_block(i, rng);
        stats[t] = lambda_max(sum, 1e-8);
    });

    const auto errors = prune_nonfinite(stats);
    const auto est = from_samples(stats);
    out.series = series_from(
        est, config.theta_grid,
        [&](double theta) { return bernstein_bound(out.params, theta); },
        [](double t) { return t; }, errors);
    out.all_satisfied = std::all_of(out.series.reports.begin(), out.series.reports.end(),
                                    [](const TailReport& r) { return r.satisfied; });
    return out;
}

SymmetrizationResult verify_symmetrization(const ExperimentConfig& config) {
    config.validate();
    const Sampler sampler(config.ensemble, config.n);

    std::vector<double> lhs(config.trials), rhs(config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t t) {
        auto rng_x = make_stream(config.seed, t + 1, 0);
        auto rng_y = make_stream(config.seed, t + 1, 3);
        EinsteinTensor sx = EinsteinTensor::zero(config.ensemble.shape);
        EinsteinTensor sy = EinsteinTensor::zero(config.ensemble.shape);
        for (std::size_t i = 0; i < config.n; ++i) {
            sx += sampler.sample_block(i, rng_x);
            sy += sampler.sample_block(i, rng_y);
        }
        lhs[t] = lambda_max(sx, 1e-8);
        rhs[t] = lambda_max(sx + sy, 1e-8);
    });
    prune_nonfinite(lhs);
    prune_nonfinite(rhs);
    const auto lhs_est = from_samples(lhs);
    const auto rhs_est = from_samples(rhs);

    SymmetrizationResult out;
    out.rows.reserve(config.theta_grid.size());
    for (double theta : config.theta_grid) {
        SymmetrizationRow row;
        row.theta = theta;
        row.lhs_p = lhs_est.tail(theta);
        row.lhs_ci = lhs_est.ci_halfwidth(row.lhs_p);
        row.rhs_p = rhs_est.tail(2.0 * theta / 3.0);
        row.rhs_ci = rhs_est.ci_halfwidth(row.rhs_p);
        row.rhs_bound = 3.0 * (row.rhs_p + row.rhs_ci);
        row.satisfied = row.lhs_p - row.lhs_ci <= row.rhs_bound + 1e-12;
        out.rows.push_back(row);
    }
    out.all_satisfied = std::all_of(out.rows.begin(), out.rows.end(),
                                    [](const SymmetrizationRow& r) { return r.satisfied; });
    return out;
}

namespace {

double swap_identity_residual(const BlockTensor& a, const std::vector<EinsteinTensor>& x1,
                              const std::vector<EinsteinTensor>& x2) {
    const std::size_t n = x1.size();
    double worst = 0.0;
    const double scale = std::pow(0.5, static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            EinsteinTensor avg = EinsteinTensor::zero(a.shape());
            for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
                std::vector<int> rho(n);
                for (std::size_t b = 0; b < n; ++b) rho[b] = (mask >> b) & 1 ? 1 : -1;
                const auto sp = bernoulli_swap(x1, x2, rho);
                avg += scale * 4.0 *
                       einstein_product(einstein_product(a.at(i, j), sp.z1[i]), sp.z2[j]);
            }
            EinsteinTensor expected = EinsteinTensor::zero(a.shape());
            const auto& aij = a.at(i, j);
            expected += einstein_product(einstein_product(aij, x1[i]), x1[j]);
            expected += einstein_product(einstein_product(aij, x1[i]), x2[j]);
            expected += einstein_product(einstein_product(aij, x2[i]), x1[j]);
            expected += einstein_product(einstein_product(aij, x2[i]), x2[j]);
            worst = std::max(worst, max_abs_diff(avg, expected));
        }
    }
    return worst;
}

}  // namespace

DecouplingResult verify_decoupling(const ExperimentConfig& config) {
    config.validate();
    if (config.n < 2) throw Error(ErrorKind::Domain, "decoupling requires n >= 2");
    const Sampler sampler(config.ensemble, config.n);

    std::vector<std::pair<double, double>> lhs_atoms, rhs_atoms;
    bool exact = false;

    if (config.exhaustive) {
        if (!sampler.finite_support()) {
            throw Error(ErrorKind::Unsupported, "exhaustive mode needs a finite-support ensemble");
        }
        exact = true;
        enumerate_support(sampler, [&](const std::vector<EinsteinTensor>& x, double prob) {
            lhs_atoms.emplace_back(lambda_max(hermitize(coupling_sum_of(config.a, x, x)), 1e-8),
                                   prob);
        });
        enumerate_support(sampler, [&](const std::vector<EinsteinTensor>& x1, double p1) {
            enumerate_support(sampler, [&](const std::vector<EinsteinTensor>& x2, double p2) {
                rhs_atoms.emplace_back(
                    lambda_max(hermitize(coupling_sum_of(config.a, x1, x2)), 1e-8), p1 * p2);
            });
        });
    } else {
        std::vector<double> lhs(config.trials), rhs(config.trials);
        parallel_for(config.trials, config.threads, [&](std::size_t t) {
            auto rng_x = make_stream(config.seed, t + 1, 0);
            auto rng_1 = make_stream(config.seed, t + 1, 1);
            auto rng_2 = make_stream(config.seed, t + 1, 2);
            const auto x = sampler.sample(rng_x);
            const auto x1 = sampler.sample(rng_1);
            const auto x2 = sampler.sample(rng_2);
            lhs[t] = lambda_max(hermitize(coupling_sum_of(config.a, x, x)), 1e-8);
            rhs[t] = lambda_max(hermitize(coupling_sum_of(config.a, x1, x2)), 1e-8);
        });
        prune_nonfinite(lhs);
        prune_nonfinite(rhs);
        const double wl = lhs.empty() ? 0.0 : 1.0 / static_cast<double>(lhs.size());
        const double wr = rhs.empty() ? 0.0 : 1.0 / static_cast<double>(rhs.size());
        for (double s : lhs) lhs_atoms.emplace_back(s, wl);
        for (double s : rhs) rhs_atoms.emplace_back(s, wr);
    }

    const std::size_t lhs_n = lhs_atoms.size(), rhs_n = rhs_atoms.size();
    const TailEstimator lhs_est(std::move(lhs_atoms), exact, lhs_n);
    const TailEstimator rhs_est(std::move(rhs_atoms), exact, rhs_n);

    DecouplingResult out;
    for (double theta : config.theta_grid) {
        DecouplingRow row;
        row.theta = theta;
        row.lhs_p = lhs_est.tail(theta);
        row.lhs_ci = lhs_est.ci_halfwidth(row.lhs_p);
        row.c_theta = smallest_decoupling_constant(row.lhs_p, rhs_est, theta, row.bounded);
        row.rhs_p = row.bounded ? rhs_est.tail(theta / row.c_theta) : 0.0;
        if (row.bounded) {
            out.empirical_c4 = std::max(out.empirical_c4, row.c_theta);
        } else {
            out.unbounded_thetas.push_back(theta);
        }
        out.rows.push_back(row);
    }
    out.all_satisfied = out.unbounded_thetas.empty();

    // Algebraic spot check of the swap construction on one draw.
    if (config.n <= 6) {
        auto [x1, x2] = independent_copies(config.ensemble, config.n, config.seed);
        out.swap_identity_error = swap_identity_residual(config.a, x1, x2);
        out.swap_identity_checked = true;
    }
    return out;
}

HWResult verify_hw(const ExperimentConfig& config) {
    config.validate();
    const Sampler sampler(config.ensemble, config.n);

    HWResult out;
    if (sampler.finite_support()) {
        out.params = derive_composite_params(sampler, config.a, config.C4);
    } else {
        out.params = estimate_composite_params(sampler, config.a, config.C4, 20000, config.seed);
    }
    const auto moments = exact_or_estimated_moments(sampler, config.seed);

    std::vector<std::pair<double, double>> total_atoms, diag_atoms, cp_atoms;
    bool exact = false;
    std::size_t violations = 0;
    std::size_t errors = 0;

    auto record = [&](const std::vector<EinsteinTensor>& blocks, double prob) {
        const auto decomp = quad_form_centered(config.a, BlockVector{blocks}, moments);
        const double total = lambda_max(hermitize(decomp.total), 1e-8);
        const double diag = lambda_max(hermitize(decomp.diag_sum), 1e-8);
        const double cp = lambda_max(hermitize(decomp.coupling_sum), 1e-8);
        if (total > diag + cp + 1e-9) ++violations;
        total_atoms.emplace_back(total, prob);
        diag_atoms.emplace_back(diag, prob);
        cp_atoms.emplace_back(cp, prob);
    };

    if (config.exhaustive) {
        if (!sampler.finite_support()) {
            throw Error(ErrorKind::Unsupported, "exhaustive mode needs a finite-support ensemble");
        }
        exact = true;
        enumerate_support(sampler,
                          [&](const std::vector<EinsteinTensor>& x, double p) { record(x, p); });
    } else {
        std::vector<double> total(config.trials), diag(config.trials), cp(config.trials);
        std::vector<unsigned char> split_ok(config.trials, 1);
        parallel_for(config.trials, config.threads, [&](std::size_t t) {
            auto rng = make_stream(config.seed, t + 1, 0);
            const auto x = sampler.sample(rng);
            const auto decomp = quad_form_centered(config.a, BlockVector{x}, moments);
            total[t] = lambda_max(hermitize(decomp.total), 1e-8);
            diag[t] = lambda_max(hermitize(decomp.diag_sum), 1e-8);
            cp[t] = lambda_max(hermitize(decomp.coupling_sum), 1e-8);
            split_ok[t] = total[t] <= diag[t] + cp[t] + 1e-9;
        });
        violations = static_cast<std::size_t>(
            std::count(split_ok.begin(), split_ok.end(), static_cast<unsigned char>(0)));
        errors = prune_nonfinite(total);
        prune_nonfinite(diag);
        prune_nonfinite(cp);
        const double w = total.empty() ? 0.0 : 1.0 / static_cast<double>(total.size());
        for (double s : total) total_atoms.emplace_back(s, w);
        const double wd = diag.empty() ? 0.0 : 1.0 / static_cast<double>(diag.size());
        for (double s : diag) diag_atoms.emplace_back(s, wd);
        const double wc = cp.empty() ? 0.0 : 1.0 / static_cast<double>(cp.size());
        for (double s : cp) cp_atoms.emplace_back(s, wc);
    }

    const std::size_t nt = total_atoms.size(), nd = diag_atoms.size(), nc = cp_atoms.size();
    const TailEstimator total_est(std::move(total_atoms), exact, nt);
    const TailEstimator diag_est(std::move(diag_atoms), exact, nd);
    const TailEstimator cp_est(std::move(cp_atoms), exact, nc);

    out.total = series_from(
        total_est, config.theta_grid,
        [&](double theta) { return hw_bound(out.params, theta); },
        [](double t) { return t; }, errors);
    const BernsteinParams dg{out.params.dim_product, out.params.T_dg, out.params.sigma2_dg};
    out.diag = series_from(
        diag_est, config.theta_grid, [&](double theta) { return pdg_bound(dg, theta); },
        [](double t) { return t / 2.0; }, 0);
    out.coupling = series_from(
        cp_est, config.theta_grid,
        [&](double theta) { return pcp_bound(out.params, theta); },
        [](double t) { return t / 2.0; }, 0);
    out.split_violations = violations;
    out.all_satisfied = std::all_of(out.total.reports.begin(), out.total.reports.end(),
                                    [](const TailReport& r) { return r.satisfied; });
    return out;
}

}  // namespace tensortail
