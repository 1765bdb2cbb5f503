#pragma once

#include <cstdint>
#include <string>

#include "tensortail/ensembles.hpp"
#include "tensortail/quadform.hpp"

namespace tensortail {

/// Parameters of the bounded-lambda_max Bernstein tail bound for a sum of
/// independent zero-mean Hermitian tensors.
struct BernsteinParams {
    std::int64_t dim_product = 1;  // operator dimension after unfolding
    double T = 1.0;                // a.s. cap on lambda_max of each summand
    double sigma2 = 0.0;           // || sum_i E X_i^2 ||
};

/// Parameters of the composite quadratic-form tail bound: diagonal part,
/// coupling part, and the decoupling constant.
struct HWParams {
    std::int64_t dim_product = 1;
    double T_dg = 1.0;
    double sigma2_dg = 0.0;
    double T_cp = 1.0;
    double sigma2_cp = 0.0;
    double C4 = 1.0;
};

/// Scalar quadratic-form tail bound:
/// 2 exp(-(1/C) min(theta^2 / (alpha^4 hs), theta / (alpha^2 op))).
double scalar_hw_bound_raw(double theta, double alpha, double hs_norm, double op_norm, double C);
double scalar_hw_bound(double theta, double alpha, double hs_norm, double op_norm, double C);

/// dim * exp(-(theta^2/2) / (sigma^2 + T theta / 3)).
double bernstein_bound_raw(const BernsteinParams& p, double theta);
double bernstein_bound(const BernsteinParams& p, double theta);

/// dim * exp(-3 theta^2 / (8 sigma^2)) for theta <= sigma^2 / T.
double bernstein_small_theta(const BernsteinParams& p, double theta);
/// dim * exp(-3 theta / (8 T)) for theta >= sigma^2 / T.
double bernstein_large_theta(const BernsteinParams& p, double theta);

/// Diagonal-part bound dim * exp(-theta^2 / (8 sigma^2 + 4 T theta / 3));
/// identical to bernstein_bound at theta/2. Degenerate parts (T = sigma^2 = 0,
/// the term is identically zero) give a zero tail.
double pdg_bound_raw(const BernsteinParams& p, double theta);
double pdg_bound(const BernsteinParams& p, double theta);
/// Regime variants with boundary 2 sigma^2 / T.
double pdg_small_theta(const BernsteinParams& p, double theta);
double pdg_large_theta(const BernsteinParams& p, double theta);

/// Coupling-part bound dim * C4 * exp(-theta^2 / (8 C4 sigma_cp^2 + 4 T_cp theta / 3)).
double pcp_bound_raw(const HWParams& p, double theta);
double pcp_bound(const HWParams& p, double theta);
/// Regime variants with boundary 2 sigma_cp^2 C4 / T_cp.
double pcp_small_theta(const HWParams& p, double theta);
double pcp_large_theta(const HWParams& p, double theta);

/// Composite bound: pcp + pdg, clamped to 1.
double hw_bound_raw(const HWParams& p, double theta);
double hw_bound(const HWParams& p, double theta);

/// "small" when theta is below both regime boundaries, "large" when above
/// both, otherwise "mixed".
std::string hw_regime(const HWParams& p, double theta);

/// Exact (T_dg, sigma_dg^2, T_cp, sigma_cp^2) by enumerating the finite sign
/// support of the ensemble; spectral quantities are taken on hermitized
/// terms. ErrorKind::Unsupported for continuous-support ensembles.
HWParams derive_composite_params(const Sampler& sampler, const BlockTensor& a, double C4 = 1.0);

}  // namespace tensortail
