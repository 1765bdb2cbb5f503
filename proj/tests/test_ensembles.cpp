#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tensortail/ensembles.hpp"
#include "tensortail/spectral.hpp"

using namespace tensortail;

namespace {

EnsembleSpec make_spec(EnsembleKind kind, Shape shape, double bound = 1.0,
                       std::uint64_t seed = 7) {
    EnsembleSpec spec;
    spec.kind = kind;
    spec.shape = std::move(shape);
    spec.bound = bound;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("kind strings round trip") {
    for (auto kind : {EnsembleKind::RademacherScaled, EnsembleKind::BoundedGaussianHermitian,
                      EnsembleKind::DiagonalRademacher}) {
        CHECK(ensemble_kind_from_string(ensemble_kind_to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(ensemble_kind_from_string("nope"), Error);
}

TEST_CASE("diagonal rademacher draws are diagonal sign tensors with zero empirical mean") {
    const Sampler sampler(make_spec(EnsembleKind::DiagonalRademacher, Shape{2}), 1);
    auto rng = make_stream(1, 1);
    auto mean = EinsteinTensor::zero(Shape{2});
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto x = sampler.sample_block(0, rng);
        CHECK(std::abs(std::abs(x.at(0, 0).real()) - 1.0) < 1e-15);
        CHECK(std::abs(std::abs(x.at(1, 1).real()) - 1.0) < 1e-15);
        CHECK(x.at(0, 1) == cplx{0});
        mean += x;
    }
    mean *= 1.0 / draws;
    // entries are +-1, so the mean standard error is 1/sqrt(draws) per cell
    CHECK(frobenius_norm(mean) < 4.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("diagonal rademacher second moment is exactly T^2 I") {
    const Sampler sampler(make_spec(EnsembleKind::DiagonalRademacher, Shape{2}, 3.0), 1);
    const auto m2 = sampler.second_moment(0);
    CHECK(max_abs_diff(m2, 9.0 * EinsteinTensor::identity(Shape{2})) == 0.0);

    auto rng = make_stream(2, 1);
    auto empirical = EinsteinTensor::zero(Shape{2});
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto x = sampler.sample_block(0, rng);
        empirical += einstein_product(x, x);
    }
    empirical *= 1.0 / draws;
    CHECK(max_abs_diff(empirical, m2) < 1e-10);  // squares are deterministic
}

TEST_CASE("every ensemble respects the spectral cap") {
    for (auto kind : {EnsembleKind::RademacherScaled, EnsembleKind::BoundedGaussianHermitian,
                      EnsembleKind::DiagonalRademacher}) {
        const Sampler sampler(make_spec(kind, Shape{2}, 1.5), 3);
        auto rng = make_stream(3, 1);
        for (int rep = 0; rep < 200; ++rep) {
            for (std::size_t i = 0; i < 3; ++i) {
                const auto x = sampler.sample_block(i, rng);
                CHECK(x.is_hermitian(1e-12));
                CHECK(lambda_max(x) <= 1.5 + 1e-9);
                CHECK(lambda_min(x) >= -1.5 - 1e-9);
            }
        }
    }
}

TEST_CASE("rademacher scaled draws are +-B_i and the support matches") {
    auto spec = make_spec(EnsembleKind::RademacherScaled, Shape{2});
    const Sampler sampler(spec, 2);
    const auto support = sampler.support(0);
    REQUIRE(support.size() == 2);
    CHECK(support[0].second == 0.5);
    CHECK(support[1].second == 0.5);
    CHECK(max_abs_diff(support[0].first, -1.0 * support[1].first) < 1e-15);

    auto rng = make_stream(4, 1);
    for (int rep = 0; rep < 50; ++rep) {
        const auto x = sampler.sample_block(0, rng);
        const bool plus = max_abs_diff(x, support[0].first) < 1e-15;
        const bool minus = max_abs_diff(x, support[1].first) < 1e-15;
        CHECK((plus || minus));
    }

    const auto m2 = sampler.second_moment(0);
    CHECK(max_abs_diff(m2, einstein_product(support[0].first, support[0].first)) < 1e-15);
}

TEST_CASE("explicit basis is validated") {
    auto spec = make_spec(EnsembleKind::RademacherScaled, Shape{2});
    spec.basis.push_back(EinsteinTensor({2}, {2}, std::vector<double>{1, 0, 0, -1}));
    const Sampler ok(spec, 1);
    CHECK(max_abs_diff(ok.support(0)[0].first, spec.basis[0]) < 1e-15);

    spec.basis[0] = EinsteinTensor({2}, {2}, std::vector<double>{3, 0, 0, -3});
    CHECK_THROWS_AS(Sampler(spec, 1), Error);  // exceeds the cap

    spec.basis[0] = EinsteinTensor({2}, {2}, std::vector<double>{0, 1, 0, 0});
    CHECK_THROWS_AS(Sampler(spec, 1), Error);  // not Hermitian
}

TEST_CASE("diagonal rademacher support enumerates all sign patterns") {
    const Sampler sampler(make_spec(EnsembleKind::DiagonalRademacher, Shape{2}), 1);
    const auto support = sampler.support(0);
    REQUIRE(support.size() == 4);
    double total = 0.0;
    auto mean = EinsteinTensor::zero(Shape{2});
    for (const auto& [atom, prob] : support) {
        total += prob;
        mean += prob * atom;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(frobenius_norm(mean) < 1e-15);
}

TEST_CASE("gaussian ensemble has no analytic support or moment") {
    const Sampler sampler(make_spec(EnsembleKind::BoundedGaussianHermitian, Shape{2}), 1);
    CHECK_FALSE(sampler.finite_support());
    CHECK_THROWS_AS(sampler.second_moment(0), Error);
    CHECK_THROWS_AS(sampler.support(0), Error);
}

TEST_CASE("independent copies are reproducible and marginally consistent") {
    const auto spec = make_spec(EnsembleKind::DiagonalRademacher, Shape{2});
    const auto [x1, x2] = independent_copies(spec, 3, 99);
    const auto [y1, y2] = independent_copies(spec, 3, 99);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(max_abs_diff(x1[i], y1[i]) == 0.0);
        CHECK(max_abs_diff(x2[i], y2[i]) == 0.0);
    }
    // the two copies come from different streams
    bool all_equal = true;
    for (std::size_t i = 0; i < 3; ++i) all_equal = all_equal && max_abs_diff(x1[i], x2[i]) == 0.0;
    CHECK_FALSE(all_equal);
}

TEST_CASE("bernoulli swap follows the signs") {
    const auto spec = make_spec(EnsembleKind::DiagonalRademacher, Shape{2});
    const auto [x1, x2] = independent_copies(spec, 2, 5);

    const auto keep = bernoulli_swap(x1, x2, {1, 1});
    CHECK(max_abs_diff(keep.z1[0], x1[0]) == 0.0);
    CHECK(max_abs_diff(keep.z2[1], x2[1]) == 0.0);

    const auto swap = bernoulli_swap(x1, x2, {-1, -1});
    CHECK(max_abs_diff(swap.z1[0], x2[0]) == 0.0);
    CHECK(max_abs_diff(swap.z2[1], x1[1]) == 0.0);

    CHECK_THROWS_AS(bernoulli_swap(x1, x2, {1}), Error);
    CHECK_THROWS_AS(bernoulli_swap(x1, x2, {1, 0}), Error);
}
