#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tensortail/ensembles.hpp"
#include "tensortail/quadform.hpp"
#include "tensortail/spectral.hpp"

using namespace tensortail;

namespace {

BlockTensor random_block_tensor(std::size_t n, const Shape& shape, std::uint64_t seed) {
    BlockTensor a(n, shape);
    auto rng = make_stream(seed, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a.at(i, j) = random_hermitian_tensor(shape, rng, 1.0);
        }
    }
    return a;
}

BlockVector random_blocks(std::size_t n, const Shape& shape, std::uint64_t seed) {
    BlockVector x;
    auto rng = make_stream(seed, 2);
    for (std::size_t i = 0; i < n; ++i) {
        x.blocks.push_back(random_hermitian_tensor(shape, rng, 1.0));
    }
    return x;
}

}  // namespace

TEST_CASE("n = 1 has no coupling terms") {
    const auto a = random_block_tensor(1, Shape{2}, 3);
    const auto x = random_blocks(1, Shape{2}, 4);
    const std::vector<EinsteinTensor> m2{EinsteinTensor::identity(Shape{2})};

    const auto q = quad_form_centered(a, x, m2);
    CHECK(frobenius_norm(q.coupling_sum) == 0.0);
    const auto expected =
        einstein_product(a.at(0, 0), einstein_product(x.blocks[0], x.blocks[0]) - m2[0]);
    CHECK(max_abs_diff(q.diag_sum, expected) < 1e-12);
    CHECK(max_abs_diff(q.total, expected) < 1e-12);
    CHECK(coupling_terms(a, x, x).empty());
}

TEST_CASE("zero grid gives a zero form") {
    BlockTensor a(2, Shape{2});
    const auto x = random_blocks(2, Shape{2}, 5);
    const std::vector<EinsteinTensor> m2(2, EinsteinTensor::zero(Shape{2}));
    const auto q = quad_form_centered(a, x, m2);
    CHECK(frobenius_norm(q.total) == 0.0);
}

TEST_CASE("n = 2 matches the direct block expansion") {
    const auto a = random_block_tensor(2, Shape{2}, 6);
    const auto x = random_blocks(2, Shape{2}, 7);
    std::vector<EinsteinTensor> m2;
    for (int i = 0; i < 2; ++i) {
        auto rng = make_stream(8, 3, static_cast<std::uint64_t>(i));
        m2.push_back(random_hermitian_tensor(Shape{2}, rng, 1.0));
    }

    const auto q = quad_form_centered(a, x, m2);

    auto expected = EinsteinTensor::zero(Shape{2});
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            expected += einstein_product(a.at(i, j),
                                         einstein_product(x.blocks[i], x.blocks[j]));
        }
        expected -= einstein_product(a.at(i, i), m2[i]);
    }
    CHECK(max_abs_diff(q.total, expected) < 1e-11);
    CHECK(max_abs_diff(q.diag_sum + q.coupling_sum, q.total) < 1e-12);
}

TEST_CASE("diag terms sum to the diagonal part") {
    const auto a = random_block_tensor(3, Shape{2}, 9);
    const auto x = random_blocks(3, Shape{2}, 10);
    std::vector<EinsteinTensor> m2(3, EinsteinTensor::identity(Shape{2}));

    const auto q = quad_form_centered(a, x, m2);
    const auto terms = diag_terms(a, x, m2);
    REQUIRE(terms.size() == 3);
    auto sum = EinsteinTensor::zero(Shape{2});
    for (const auto& t : terms) sum += t;
    CHECK(max_abs_diff(sum, q.diag_sum) < 1e-12);
}

TEST_CASE("coupling terms follow the row-major pair order") {
    const auto a = random_block_tensor(3, Shape{2}, 11);
    const auto x1 = random_blocks(3, Shape{2}, 12);
    const auto x2 = random_blocks(3, Shape{2}, 13);

    const auto terms = coupling_terms(a, x1, x2);
    REQUIRE(terms.size() == 6);  // n^2 - n
    const std::vector<std::pair<std::size_t, std::size_t>> expected{
        {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
    for (std::size_t k = 0; k < terms.size(); ++k) {
        CHECK(coupling_pair(k, 3) == expected[k]);
        const auto [i, j] = expected[k];
        const auto direct = einstein_product(
            a.at(i, j), einstein_product(x1.blocks[i], x2.blocks[j]));
        CHECK(max_abs_diff(terms[k], direct) < 1e-12);
    }
}

TEST_CASE("weyl split bound after hermitization") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = random_block_tensor(2, Shape{2}, 100 + seed);
        const auto x = random_blocks(2, Shape{2}, 200 + seed);
        std::vector<EinsteinTensor> m2(2, EinsteinTensor::identity(Shape{2}));
        const auto q = quad_form_centered(a, x, m2);
        const double total = lambda_max(hermitize(q.total));
        const double parts =
            lambda_max(hermitize(q.diag_sum)) + lambda_max(hermitize(q.coupling_sum));
        CHECK(total <= parts + 1e-9);
    }
}

TEST_CASE("block tensor validation") {
    BlockTensor a(2, Shape{2});
    a.at(0, 1) = EinsteinTensor({2}, {2}, std::vector<double>{0, 1, 0, 0});
    CHECK_THROWS_AS(a.validate(), Error);

    CHECK_THROWS_AS(BlockTensor({{EinsteinTensor::zero(Shape{2})},
                                 {EinsteinTensor::zero(Shape{2}),
                                  EinsteinTensor::zero(Shape{2})}}),
                    Error);
}
