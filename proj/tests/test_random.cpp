#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numeric>

#include "irsqr/random.hpp"

using namespace irsqr;

TEST_CASE("same seed replays the identical sequence") {
    RandomStream a(7), b(7);
    auto va = sample_complex_gaussian(a, 4, 1.0);
    auto vb = sample_complex_gaussian(b, 4, 1.0);
    REQUIRE(va.size() == 4);
    for (size_t i = 0; i < va.size(); ++i) CHECK(va[i] == vb[i]);
}

TEST_CASE("substream draws do not depend on derivation or consumption order") {
    RandomStream root(42);
    std::vector<uint64_t> forward(16), shuffled(16);

    for (uint64_t i = 0; i < 16; ++i) {
        RandomStream s = root.substream(i);
        forward[i] = s.next_u64();
    }
    // consume the parent and derive in a scrambled order; results must match
    root.next_u64();
    const int order[16] = {9, 3, 15, 0, 7, 1, 12, 5, 14, 2, 11, 6, 13, 4, 10, 8};
    for (int idx : order) {
        RandomStream s = root.substream(static_cast<uint64_t>(idx));
        shuffled[idx] = s.next_u64();
    }
    CHECK(forward == shuffled);
}

TEST_CASE("distinct substreams differ") {
    RandomStream root(1);
    CHECK(root.substream(0).next_u64() != root.substream(1).next_u64());
}

TEST_CASE("complex gaussian matches requested power") {
    RandomStream s(1234);
    const size_t n = 1'000'000;
    double p = 0.0;
    for (size_t i = 0; i < n; ++i) p += std::norm(s.next_complex_gaussian(2.0));
    p /= static_cast<double>(n);
    CHECK(p > 1.99);
    CHECK(p < 2.01);
}

TEST_CASE("complex gaussian is circularly symmetric") {
    RandomStream s(99);
    const size_t n = 1'000'000;
    double sum_re = 0, sum_im = 0, sum_cross = 0, var_re = 0, var_im = 0;
    for (size_t i = 0; i < n; ++i) {
        const auto z = s.next_complex_gaussian(1.0);
        sum_re += z.real();
        sum_im += z.imag();
        sum_cross += z.real() * z.imag();
        var_re += z.real() * z.real();
        var_im += z.imag() * z.imag();
    }
    const double corr = (sum_cross / n) / std::sqrt((var_re / n) * (var_im / n));
    CHECK(std::abs(corr) < 0.01);
    CHECK(std::abs(sum_re / n) < 0.01);
    CHECK(std::abs(sum_im / n) < 0.01);
    // each real dimension carries half the power
    CHECK(var_re / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(var_im / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("non-positive variance is rejected") {
    RandomStream s(5);
    CHECK_THROWS_AS(sample_complex_gaussian(s, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_complex_gaussian(s, 3, -1.0), std::invalid_argument);
}
