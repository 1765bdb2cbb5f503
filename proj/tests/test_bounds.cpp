#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tensortail/bounds.hpp"
#include "tensortail/spectral.hpp"

using namespace tensortail;

TEST_CASE("scalar bound arithmetic oracle") {
    CHECK(scalar_hw_bound(1.0, 1.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(scalar_hw_bound(1e-12, 1.0, 1.0, 1.0, 1.0) == 1.0);  // clamped from ~2
    CHECK(scalar_hw_bound_raw(1e-12, 1.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(scalar_hw_bound(-1.0, 1.0, 1.0, 1.0, 1.0), Error);

    double prev = 2.0;
    for (double theta = 0.1; theta < 10.0; theta += 0.1) {
        const double v = scalar_hw_bound_raw(theta, 1.0, 1.0, 1.0, 1.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("bernstein bound arithmetic oracles") {
    CHECK(bernstein_bound_raw({4, 1.0, 1.0}, 2.0) ==
          doctest::Approx(4.0 * std::exp(-1.2)).epsilon(1e-12));
    CHECK(bernstein_bound({4, 1.0, 1.0}, 2.0) == 1.0);
    CHECK(bernstein_bound({1, 1.0, 1.0}, 3.0) ==
          doctest::Approx(std::exp(-2.25)).epsilon(1e-12));
    CHECK_THROWS_AS(bernstein_bound({1, 1.0, 1.0}, 0.0), Error);
}

TEST_CASE("bernstein regime formulas and their boundary") {
    const BernsteinParams p{1, 1.0, 4.0};
    CHECK(bernstein_small_theta(p, 2.0) ==
          doctest::Approx(std::exp(-0.375)).epsilon(1e-12));
    // boundary theta* = sigma^2 / T = 4: both formulas give exp(-3 sigma^2 / (8 T^2))
    const double at_boundary = std::exp(-3.0 * 4.0 / 8.0);
    CHECK(bernstein_small_theta(p, 4.0) == doctest::Approx(at_boundary).epsilon(1e-12));
    CHECK(bernstein_large_theta(p, 4.0) == doctest::Approx(at_boundary).epsilon(1e-12));

    try {
        bernstein_small_theta(p, 5.0);
        FAIL("expected a regime error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Regime);
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
    CHECK_THROWS_AS(bernstein_large_theta(p, 3.0), Error);
}

TEST_CASE("diagonal-part bound equals the bernstein bound at half theta") {
    const BernsteinParams p{4, 1.0, 1.0};
    for (double theta = 0.25; theta < 8.0; theta += 0.25) {
        CHECK(pdg_bound_raw(p, theta) ==
              doctest::Approx(bernstein_bound_raw(p, theta / 2.0)).epsilon(1e-12));
    }
    CHECK(pdg_bound_raw(p, 2.0) ==
          doctest::Approx(4.0 * std::exp(-0.375)).epsilon(1e-12));
    CHECK(pdg_bound(p, 2.0) == 1.0);
    CHECK(pdg_small_theta({1, 1.0, 1.0}, 1.0) ==
          doctest::Approx(std::exp(-3.0 / 32.0)).epsilon(1e-12));

    // boundary 2 sigma^2 / T
    const BernsteinParams q{1, 2.0, 3.0};
    const double boundary = 2.0 * q.sigma2 / q.T;
    CHECK(pdg_small_theta(q, boundary) ==
          doctest::Approx(pdg_large_theta(q, boundary)).epsilon(1e-12));
}

TEST_CASE("degenerate diagonal part short-circuits to a zero tail") {
    const BernsteinParams zero{4, 0.0, 0.0};
    CHECK(pdg_bound(zero, 1.0) == 0.0);
    CHECK(pdg_bound_raw(zero, 3.0) == 0.0);
}

TEST_CASE("coupling-part bound arithmetic and identities") {
    const HWParams p{1, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(pcp_bound_raw(p, 4.0) == doctest::Approx(std::exp(-1.2)).epsilon(1e-12));

    // C4 = 1 reduces to the diagonal-part functional form with (T_cp, sigma_cp^2)
    for (double theta = 0.5; theta < 8.0; theta += 0.5) {
        CHECK(pcp_bound_raw(p, theta) ==
              doctest::Approx(pdg_bound_raw({1, p.T_cp, p.sigma2_cp}, theta)).epsilon(1e-12));
    }

    // the exponential-regime value is nondecreasing in C4
    double prev = 0.0;
    for (double c4 = 1.0; c4 < 8.0; c4 += 0.5) {
        HWParams q = p;
        q.C4 = c4;
        const double v = pcp_bound_raw(q, 3.0);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }

    // regime boundary 2 sigma_cp^2 C4 / T_cp
    HWParams r = p;
    r.C4 = 2.0;
    const double boundary = 2.0 * r.sigma2_cp * r.C4 / r.T_cp;
    CHECK(pcp_small_theta(r, boundary) ==
          doctest::Approx(pcp_large_theta(r, boundary)).epsilon(1e-12));
    CHECK_THROWS_AS(pcp_small_theta(r, boundary + 1.0), Error);
    CHECK_THROWS_AS(pcp_large_theta(r, boundary - 1.0), Error);
}

TEST_CASE("composite bound sums the two parts") {
    const HWParams p{1, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(hw_bound_raw(p, 2.0) ==
          doctest::Approx(2.0 * std::exp(-0.375)).epsilon(1e-12));
    CHECK(hw_bound(p, 2.0) == 1.0);
    CHECK(hw_bound(p, 100.0) < 1e-10);
    for (double theta = 0.5; theta < 12.0; theta += 0.5) {
        const double composite = hw_bound_raw(p, theta);
        CHECK(composite >= pcp_bound_raw(p, theta) - 1e-15);
        CHECK(composite >= pdg_bound_raw({p.dim_product, p.T_dg, p.sigma2_dg}, theta) - 1e-15);
    }
    CHECK(hw_regime(p, 0.5) == "small");
    CHECK(hw_regime(p, 50.0) == "large");
}

TEST_CASE("bounds are nonincreasing in theta and monotone in parameters") {
    const HWParams p{4, 1.0, 2.0, 1.5, 1.0, 2.0};
    double prev = 2.0;
    for (double theta = 0.1; theta < 20.0; theta += 0.1) {
        const double v = hw_bound(p, theta);
        CHECK(v <= prev + 1e-15);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    CHECK(bernstein_bound_raw({4, 1.0, 2.0}, 3.0) <= bernstein_bound_raw({4, 1.0, 3.0}, 3.0));
    CHECK(bernstein_bound_raw({4, 1.0, 2.0}, 3.0) <= bernstein_bound_raw({8, 1.0, 2.0}, 3.0));
    CHECK(bernstein_bound_raw({4, 1.0, 2.0}, 3.0) <= bernstein_bound_raw({4, 2.0, 2.0}, 3.0));
}

TEST_CASE("composite parameters by exhaustive enumeration") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::RademacherScaled;
    spec.shape = Shape{2};
    spec.bound = 1.0;
    spec.basis.push_back(EinsteinTensor({2}, {2}, std::vector<double>{1, 0, 0, -1}));
    const Sampler sampler(spec, 2);

    BlockTensor a(2, Shape{2});
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) a.at(i, j) = EinsteinTensor::identity(Shape{2});
    }

    const auto p = derive_composite_params(sampler, a, 1.0);
    CHECK(p.dim_product == 2);
    // X_i^2 = B^2 = I exactly, so every diagonal term vanishes
    CHECK(p.T_dg == 0.0);
    CHECK(p.sigma2_dg == 0.0);
    // Z_k = I * (+-B) * (+-B) = +-I; hand enumeration over the 4 sign patterns
    CHECK(p.T_cp == doctest::Approx(1.0).epsilon(1e-9));
    // sum over both ordered pairs of E Z_k^2 = 2 I
    CHECK(p.sigma2_cp == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("continuous-support ensembles refuse exact parameter derivation") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::BoundedGaussianHermitian;
    spec.shape = Shape{2};
    spec.bound = 1.0;
    const Sampler sampler(spec, 2);
    BlockTensor a(2, Shape{2});
    try {
        derive_composite_params(sampler, a, 1.0);
        FAIL("expected an unsupported-ensemble error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unsupported);
    }
}
