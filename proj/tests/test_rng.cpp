#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "tensortail/rng.hpp"

using namespace tensortail;

TEST_CASE("streams are a pure function of (seed, stream, counter)") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct seeds and streams diverge") {
    RngStream base(42, 7);
    RngStream other_seed(43, 7);
    RngStream other_stream(42, 8);
    int seed_same = 0, stream_same = 0;
    for (int i = 0; i < 64; ++i) {
        const auto v = base.next_u64();
        seed_same += v == other_seed.next_u64();
        stream_same += v == other_stream.next_u64();
    }
    CHECK(seed_same == 0);
    CHECK(stream_same == 0);
}

TEST_CASE("make_stream composes major and minor ids without collisions") {
    std::set<std::uint64_t> first_words;
    for (std::uint64_t major = 0; major < 32; ++major) {
        for (std::uint64_t minor = 0; minor < 8; ++minor) {
            auto s = make_stream(5, major, minor);
            first_words.insert(s.next_u64());
        }
    }
    CHECK(first_words.size() == 32 * 8);
}

TEST_CASE("uniform doubles land in [0, 1) with a sane mean") {
    RngStream s(1, 0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = s.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 100000 - 0.5) < 0.01);
}

TEST_CASE("signs are balanced") {
    RngStream s(2, 0);
    int total = 0;
    for (int i = 0; i < 100000; ++i) {
        const int v = s.next_sign();
        CHECK((v == 1 || v == -1));
        total += v;
    }
    CHECK(std::abs(total) < 1200);  // ~4 standard deviations
}

TEST_CASE("normal draws have unit variance and fixed draw count") {
    RngStream s(3, 0);
    double sum = 0.0, sq = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = s.next_normal();
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sq / n - 1.0) < 0.03);

    // two uniforms per call: the counter advance is deterministic
    RngStream a(9, 0), b(9, 0);
    (void)a.next_normal();
    (void)b.next_u64();
    (void)b.next_u64();
    CHECK(a.next_u64() == b.next_u64());
}
