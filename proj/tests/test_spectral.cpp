#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tensortail/ensembles.hpp"
#include "tensortail/spectral.hpp"

using namespace tensortail;

TEST_CASE("eigensystem of the 2x2 oracle") {
    const EinsteinTensor a({2}, {2}, std::vector<double>{1, 2, 2, 1});
    const auto eig = eigensystem(a);
    REQUIRE(eig.values.size() == 2);
    CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(eig.values[1] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(lambda_max(a) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(lambda_min(a) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("identity spectrum is flat") {
    const auto id = EinsteinTensor::identity(Shape{2, 2});
    for (double v : eigensystem(id).values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("residuals, orthonormality and trace identity on random hermitian tensors") {
    auto rng = make_stream(5, 1);
    for (int rep = 0; rep < 20; ++rep) {
        const auto c = hermitize(random_hermitian_tensor(Shape{2, 2}, rng, 1.0));
        const auto eig = eigensystem(c);
        const double scale = frobenius_norm(c);

        double sum = 0.0;
        for (std::size_t k = 0; k < eig.values.size(); ++k) {
            sum += eig.values[k];
            const auto& v = eig.vectors[k];
            const auto residual = einstein_product(c, v) - eig.values[k] * v;
            CHECK(frobenius_norm(residual) <= 1e-8 * std::max(scale, 1.0));
            for (std::size_t m = 0; m < eig.values.size(); ++m) {
                const double expected = (k == m) ? 1.0 : 0.0;
                CHECK(std::abs(inner(eig.vectors[k], eig.vectors[m]) - expected) < 1e-8);
            }
        }
        CHECK(sum == doctest::Approx(trace(c).real()).epsilon(1e-9));
    }
}

TEST_CASE("non-hermitian input violates the contract") {
    EinsteinTensor a({2}, {2}, std::vector<double>{0, 1, 0, 0});
    try {
        eigensystem(a);
        FAIL("expected a contract error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Contract);
    }
}

TEST_CASE("spectrum negation") {
    auto rng = make_stream(9, 1);
    const auto a = random_hermitian_tensor(Shape{3}, rng, 1.0);
    CHECK(lambda_max(-1.0 * a) == doctest::Approx(-lambda_min(a)).epsilon(1e-9));
}

TEST_CASE("rayleigh quotient stays inside the spectrum") {
    auto rng = make_stream(13, 1);
    const auto c = random_hermitian_tensor(Shape{2, 2}, rng, 1.0);
    const double lo = lambda_min(c);
    const double hi = lambda_max(c);
    for (int rep = 0; rep < 10000; ++rep) {
        EinsteinTensor x(Shape{2, 2}, Shape{});
        for (auto& e : x.entries()) e = {rng.next_normal(), rng.next_normal()};
        const double q = rayleigh_quotient(c, x);
        CHECK(q >= lo - 1e-8);
        CHECK(q <= hi + 1e-8);
    }

    const auto eig = eigensystem(c);
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        CHECK(rayleigh_quotient(c, eig.vectors[k]) ==
              doctest::Approx(eig.values[k]).epsilon(1e-8));
    }

    CHECK_THROWS_AS(rayleigh_quotient(c, EinsteinTensor(Shape{2, 2}, Shape{})), Error);
}

TEST_CASE("weyl check on degenerate perturbations") {
    auto rng = make_stream(21, 1);
    const auto a = random_hermitian_tensor(Shape{2, 2}, rng, 1.0);
    const auto zero = EinsteinTensor::zero(Shape{2, 2});
    const auto base = weyl_check(a, zero, 2);
    CHECK(base.lower == doctest::Approx(base.value).epsilon(1e-9));
    CHECK(base.upper == doctest::Approx(base.value).epsilon(1e-9));

    const auto shift = weyl_check(a, 0.7 * EinsteinTensor::identity(Shape{2, 2}), 3);
    CHECK(shift.value == doctest::Approx(eigensystem(a).values[2] + 0.7).epsilon(1e-8));
}

TEST_CASE("weyl sandwich over 1000 random pairs") {
    auto rng = make_stream(31, 1);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto a = random_hermitian_tensor(Shape{2, 2}, rng, 1.0);
        const auto b = random_hermitian_tensor(Shape{2, 2}, rng, 1.0);
        for (std::size_t k = 1; k <= 4; ++k) {
            const auto w = weyl_check(a, b, k);
            CHECK(w.lower <= w.value + 1e-8);
            CHECK(w.value <= w.upper + 1e-8);
        }
    }
}

TEST_CASE("semidefinite order") {
    const EinsteinTensor a({2}, {2}, std::vector<double>{1, 2, 2, 1});
    const auto zero = EinsteinTensor::zero(Shape{2});
    const auto id = EinsteinTensor::identity(Shape{2});
    CHECK(psd_order(a, a, 1e-10));
    CHECK(psd_order(id, zero, 1e-10));
    CHECK_FALSE(psd_order(a, zero, 1e-10));
}

TEST_CASE("spectrum is invariant under unitary conjugation") {
    auto rng = make_stream(37, 1);
    const auto c = random_hermitian_tensor(Shape{2}, rng, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    const EinsteinTensor u({2}, {2}, std::vector<double>{s, -s, s, s});
    const auto conj = einstein_product(einstein_product(conjugate_transpose(u), c), u);
    const auto original = eigensystem(c).values;
    const auto rotated = eigensystem(hermitize(conj)).values;
    for (std::size_t k = 0; k < original.size(); ++k) {
        CHECK(rotated[k] == doctest::Approx(original[k]).epsilon(1e-9));
    }
}
