#include "tensortail/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tensortail/spectral.hpp"

namespace tensortail {

namespace {

void require_positive_theta(double theta) {
    if (!(theta > 0.0)) throw Error(ErrorKind::Domain, "tail bound: theta must be > 0");
}

void require_params(const BernsteinParams& p) {
    if (p.dim_product < 1) throw Error(ErrorKind::Domain, "tail bound: dim_product must be >= 1");
    if (p.T < 0.0 || p.sigma2 < 0.0) {
        throw Error(ErrorKind::Domain, "tail bound: T and sigma^2 must be nonnegative");
    }
}

bool degenerate(double T, double sigma2) { return T == 0.0 && sigma2 == 0.0; }

double clamp01(double x) { return std::min(x, 1.0); }

void require_regime(bool ok, double boundary, const char* which) {
    if (!ok) {
        throw Error(ErrorKind::Regime, std::string("theta outside the ") + which +
                                           "-theta regime; boundary is " +
                                           std::to_string(boundary));
    }
}

}  // namespace

double scalar_hw_bound_raw(double theta, double alpha, double hs_norm, double op_norm, double C) {
    if (!(theta > 0.0 && alpha > 0.0 && hs_norm > 0.0 && op_norm > 0.0 && C > 0.0)) {
        throw Error(ErrorKind::Domain, "scalar tail bound: all arguments must be > 0");
    }
    const double quad = theta * theta / (alpha * alpha * alpha * alpha * hs_norm);
    const double lin = theta / (alpha * alpha * op_norm);
    return 2.0 * std::exp(-std::min(quad, lin) / C);
}

double scalar_hw_bound(double theta, double alpha, double hs_norm, double op_norm, double C) {
    return clamp01(scalar_hw_bound_raw(theta, alpha, hs_norm, op_norm, C));
}

double bernstein_bound_raw(const BernsteinParams& p, double theta) {
    require_positive_theta(theta);
    require_params(p);
    if (degenerate(p.T, p.sigma2)) return 0.0;
    const double dim = static_cast<double>(p.dim_product);
    return dim * std::exp(-(theta * theta / 2.0) / (p.sigma2 + p.T * theta / 3.0));
}

double bernstein_bound(const BernsteinParams& p, double theta) {
    return clamp01(bernstein_bound_raw(p, theta));
}

double bernstein_small_theta(const BernsteinParams& p, double theta) {
    require_positive_theta(theta);
    require_params(p);
    if (degenerate(p.T, p.sigma2)) return 0.0;
    require_regime(theta <= p.sigma2 / p.T, p.sigma2 / p.T, "small");
    const double dim = static_cast<double>(p.dim_product);
    return clamp01(dim * std::exp(-3.0 * theta * theta / (8.0 * p.sigma2)));
}

double bernstein_large_theta(const BernsteinParams& p, double theta) {
    require_positive_theta(theta);
    require_params(p);
    if (degenerate(p.T, p.sigma2)) return 0.0;
    require_regime(theta >= p.sigma2 / p.T, p.sigma2 / p.T, "large");
    const double dim = static_cast<double>(p.dim_product);
    return clamp01(dim * std::exp(-3.0 * theta / (8.0 * p.T)));
}

double pdg_bound_raw(const BernsteinParams& p, double theta) {
    require_positive_theta(theta);
    require_params(p);
    if (degenerate(p.T, p.sigma2)) return 0.0;
    const double dim = static_cast<double>(p.dim_product);
    return dim * std::exp(-theta * theta / (8.0 * p.sigma2 + 4.0 * p.T * theta / 3.0));
}

double pdg_bound(const BernsteinParams& p, double theta) {
    return clamp01(pdg_bound_raw(p, theta));
}

double pdg_small_theta(const BernsteinParams& p, double theta) {
    require_positive_theta(theta);
    require_params(p);
    if (degenerate(p.T, p.sigma2)) return 0.0;
    require_regime(theta <= 2.0 * p.sigma2 / p.T, 2.0 * p.sigma2 / p.T, "small");
    const double dim = static_cast<double>(p.dim_product);
    return clamp01(dim * std::exp(-3.0 * theta * theta / (32.0 * p.sigma2)));
}

double pdg_large_theta(const BernsteinParams& p, double theta) {
    require_positive_theta(theta);
    require_params(p);
    if (degenerate(p.T, p.sigma2)) return 0.0;
    require_regime(theta >= 2.0 * p.sigma2 / p.T, 2.0 * p.sigma2 / p.T, "large");
    const double dim = static_cast<double>(p.dim_product);
    return clamp01(dim * std::exp(-3.0 * theta / (16.0 * p.T)));
}

namespace {

void require_hw(const HWParams& p) {
    if (p.dim_product < 1) throw Error(ErrorKind::Domain, "tail bound: dim_product must be >= 1");
    if (p.T_cp < 0.0 || p.sigma2_cp < 0.0 || p.T_dg < 0.0 || p.sigma2_dg < 0.0) {
        throw Error(ErrorKind::Domain, "tail bound: T and sigma^2 must be nonnegative");
    }
    if (p.C4 < 1.0) throw Error(ErrorKind::Domain, "tail bound: C4 must be >= 1");
}

}  // namespace

double pcp_bound_raw(const HWParams& p, double theta) {
    require_positive_theta(theta);
    require_hw(p);
    if (degenerate(p.T_cp, p.sigma2_cp)) return 0.0;
    const double dim = static_cast<double>(p.dim_product);
    return dim * p.C4 *
           std::exp(-theta * theta / (8.0 * p.C4 * p.sigma2_cp + 4.0 * p.T_cp * theta / 3.0));
}

double pcp_bound(const HWParams& p, double theta) { return clamp01(pcp_bound_raw(p, theta)); }

double pcp_small_theta(const HWParams& p, double theta) {
    require_positive_theta(theta);
    require_hw(p);
    if (degenerate(p.T_cp, p.sigma2_cp)) return 0.0;
    const double boundary = 2.0 * p.sigma2_cp * p.C4 / p.T_cp;
    require_regime(theta <= boundary, boundary, "small");
    const double dim = static_cast<double>(p.dim_product);
    return clamp01(dim * p.C4 *
                   std::exp(-3.0 * theta * theta / (32.0 * p.sigma2_cp * p.C4 * p.C4)));
}

double pcp_large_theta(const HWParams& p, double theta) {
    require_positive_theta(theta);
    require_hw(p);
    if (degenerate(p.T_cp, p.sigma2_cp)) return 0.0;
    const double boundary = 2.0 * p.sigma2_cp * p.C4 / p.T_cp;
    require_regime(theta >= boundary, boundary, "large");
    const double dim = static_cast<double>(p.dim_product);
    return clamp01(dim * p.C4 * std::exp(-3.0 * theta / (16.0 * p.T_cp * p.C4)));
}

double hw_bound_raw(const HWParams& p, double theta) {
    const BernsteinParams dg{p.dim_product, p.T_dg, p.sigma2_dg};
    return pcp_bound_raw(p, theta) + pdg_bound_raw(dg, theta);
}

double hw_bound(const HWParams& p, double theta) { return clamp01(hw_bound_raw(p, theta)); }

std::string hw_regime(const HWParams& p, double theta) {
    require_positive_theta(theta);
    require_hw(p);
    const double cp_boundary =
        p.T_cp > 0.0 ? 2.0 * p.sigma2_cp * p.C4 / p.T_cp : std::numeric_limits<double>::infinity();
    const double dg_boundary =
        p.T_dg > 0.0 ? 2.0 * p.sigma2_dg / p.T_dg : std::numeric_limits<double>::infinity();
    if (theta <= cp_boundary && theta <= dg_boundary) return "small";
    if (theta >= cp_boundary && theta >= dg_boundary) return "large";
    return "mixed";
}

HWParams derive_composite_params(const Sampler& sampler, const BlockTensor& a, double C4) {
    if (!sampler.finite_support()) {
        throw Error(ErrorKind::Unsupported,
                    "composite parameters require a finite-support ensemble; "
                    "supply Monte Carlo estimates instead");
    }
    if (sampler.block_count() != a.n()) {
        throw Error(ErrorKind::Dimension, "composite parameters: block count mismatch");
    }
    const std::size_t n = a.n();
    const Shape& shape = a.shape();

    HWParams out;
    out.dim_product = shape.product();
    out.C4 = C4;
    out.T_dg = 0.0;
    out.T_cp = 0.0;

    // Diagonal terms: enumerate the support of each X_i.
    EinsteinTensor sum_ey2 = EinsteinTensor::zero(shape);
    for (std::size_t i = 0; i < n; ++i) {
        const auto moment = sampler.second_moment(i);
        EinsteinTensor ey2 = EinsteinTensor::zero(shape);
        for (const auto& [x, prob] : sampler.support(i)) {
            const auto y =
                hermitize(einstein_product(a.at(i, i), einstein_product(x, x) - moment));
            out.T_dg = std::max(out.T_dg, lambda_max(y, 1e-8));
            ey2 += prob * einstein_product(y, y);
        }
        sum_ey2 += ey2;
    }
    out.sigma2_dg = spectral_norm(sum_ey2);

    // Coupling terms: enumerate support(i) x support(j) for the two
    // independent copies of each ordered pair.
    EinsteinTensor sum_ez2 = EinsteinTensor::zero(shape);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            EinsteinTensor ez2 = EinsteinTensor::zero(shape);
            for (const auto& [x1, p1] : sampler.support(i)) {
                const auto ax1 = einstein_product(a.at(i, j), x1);
                for (const auto& [x2, p2] : sampler.support(j)) {
                    const auto z = hermitize(einstein_product(ax1, x2));
                    out.T_cp = std::max(out.T_cp, lambda_max(z, 1e-8));
                    ez2 += (p1 * p2) * einstein_product(z, z);
                }
            }
            sum_ez2 += ez2;
        }
    }
    out.sigma2_cp = spectral_norm(sum_ez2);

    // Exactly zero variance with a tiny negative rounding is still degenerate.
    out.sigma2_dg = std::max(out.sigma2_dg, 0.0);
    out.sigma2_cp = std::max(out.sigma2_cp, 0.0);
    if (out.T_dg < 1e-14 && out.sigma2_dg < 1e-20) { out.T_dg = 0.0; out.sigma2_dg = 0.0; }
    if (out.T_cp < 1e-14 && out.sigma2_cp < 1e-20) { out.T_cp = 0.0; out.sigma2_cp = 0.0; }
    return out;
}

}  // namespace tensortail
