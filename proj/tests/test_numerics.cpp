#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irsqr/numerics.hpp"
#include "irsqr/random.hpp"
#include "oracles.hpp"

using namespace irsqr;

TEST_CASE("q_function at zero") { CHECK(q_function(0.0) == 0.5); }

TEST_CASE("q_function against the quadrature oracle") {
    CHECK(q_function(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
    CHECK(q_function(1.0) == doctest::Approx(oracle::gaussian_tail(1.0)).epsilon(1e-12));
    CHECK(q_function(-2.0) == doctest::Approx(1.0 - oracle::gaussian_tail(2.0)).epsilon(1e-12));
    for (double x = -10.0; x <= 10.0; x += 0.5)
        CHECK(q_function(x) == doctest::Approx(oracle::gaussian_tail(x)).epsilon(1e-12));
}

TEST_CASE("q_function symmetry and monotonicity") {
    // strict decrease is checked where 1 - Q(x) is still representable
    double prev = q_function(-7.5);
    for (double x = -7.25; x <= 7.5; x += 0.25) {
        const double q = q_function(x);
        CHECK(q < prev);
        prev = q;
    }
    for (double x = -10.0; x <= 10.0; x += 0.25)
        CHECK(q_function(x) + q_function(-x) == doctest::Approx(1.0).epsilon(1e-12));
}

namespace {

ComplexMatrix random_matrix(RandomStream& s, int rows, int cols) {
    ComplexMatrix m(rows, cols);
    for (auto& e : m.entries()) e = s.next_complex_gaussian(1.0);
    return m;
}

}  // namespace

TEST_CASE("principal eigenvector: identity") {
    const auto [v, lambda] = principal_eigenvector(ComplexMatrix::identity(3));
    CHECK(lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("principal eigenvector: diagonal") {
    ComplexMatrix a(2, 2);
    a.at(0, 0) = 3.0;
    a.at(1, 1) = 1.0;
    const auto [v, lambda] = principal_eigenvector(a);
    CHECK(lambda == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(std::abs(v[0]) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(v[0].real() > 0.0);  // phase convention
    CHECK(std::abs(v[1]) < 1e-8);
}

TEST_CASE("principal eigenvector matches the Jacobi oracle on B^H B") {
    RandomStream s(2024);
    for (int rep = 0; rep < 5; ++rep) {
        const ComplexMatrix b = random_matrix(s, 8, 8);
        const ComplexMatrix a = gram(b);
        const auto [v, lambda] = principal_eigenvector(a);

        std::vector<cxd> flat(a.entries().begin(), a.entries().end());
        auto eig = oracle::hermitian_eigenvalues(flat, 8);
        const double lmax = *std::max_element(eig.begin(), eig.end());
        CHECK(lambda == doctest::Approx(lmax).epsilon(1e-6));

        // Rayleigh quotient of the returned vector equals the returned value
        const auto av = multiply(a, v);
        double rq = 0.0;
        for (int i = 0; i < 8; ++i) rq += (std::conj(v[i]) * av[i]).real();
        CHECK(rq == doctest::Approx(lambda).epsilon(1e-8));

        // residual contract
        double resid = 0.0;
        for (int i = 0; i < 8; ++i) resid += std::norm(av[i] - lambda * v[i]);
        CHECK(std::sqrt(resid) <= 1e-8 * lambda);
    }
}

TEST_CASE("Jacobi oracle sanity") {
    // [[2, i], [-i, 2]] has eigenvalues 1 and 3
    std::vector<cxd> a{cxd(2, 0), cxd(0, 1), cxd(0, -1), cxd(2, 0)};
    auto eig = oracle::hermitian_eigenvalues(a, 2);
    std::sort(eig.begin(), eig.end());
    CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("principal eigenvector rejects non-Hermitian input") {
    ComplexMatrix a(2, 2);
    a.at(0, 1) = 1.0;
    CHECK_THROWS_AS(principal_eigenvector(a), std::invalid_argument);
}

TEST_CASE("left pseudo-inverse: identity and scaling") {
    const ComplexMatrix i4 = ComplexMatrix::identity(4);
    CHECK(max_abs_difference(left_pseudo_inverse(i4), i4) < 1e-12);

    ComplexMatrix two(3, 3);
    for (int i = 0; i < 3; ++i) two.at(i, i) = 2.0;
    const ComplexMatrix u = left_pseudo_inverse(two);
    for (int i = 0; i < 3; ++i) CHECK(u.at(i, i).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("left pseudo-inverse satisfies U V = I") {
    RandomStream s(77);
    const ComplexMatrix v = random_matrix(s, 16, 8);
    const ComplexMatrix u = left_pseudo_inverse(v);
    CHECK(max_abs_difference(multiply(u, v), ComplexMatrix::identity(8)) <= 1e-9);
}

TEST_CASE("U V = I over random shapes") {
    RandomStream s(31);
    for (int rep = 0; rep < 40; ++rep) {
        const int cols = 1 + static_cast<int>(s.next_u64() % 12);
        const int rows = cols + static_cast<int>(s.next_u64() % 12);
        const ComplexMatrix v = random_matrix(s, rows, cols);
        const ComplexMatrix u = left_pseudo_inverse(v);
        CHECK(max_abs_difference(multiply(u, v), ComplexMatrix::identity(cols)) <= 1e-9);
    }
}

TEST_CASE("rank-deficient input is rejected") {
    RandomStream s(5);
    ComplexMatrix v = random_matrix(s, 6, 3);
    for (int r = 0; r < 6; ++r) v.at(r, 2) = v.at(r, 0);  // duplicate column
    CHECK_THROWS_AS(left_pseudo_inverse(v), SingularMatrixError);
    CHECK_THROWS_AS(left_pseudo_inverse(random_matrix(s, 3, 5)), std::invalid_argument);
}

TEST_CASE("mpsk sep: guessing limit at vanishing snr") {
    CHECK(mpsk_sep_exact(1e-12, 4) == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(mpsk_sep_exact(1e-12, 16) == doctest::Approx(15.0 / 16.0).epsilon(1e-6));
}

TEST_CASE("mpsk sep reduces to the Gaussian tail for BPSK") {
    CHECK(mpsk_sep_exact(1.0, 2) ==
          doctest::Approx(q_function(std::numbers::sqrt2)).epsilon(1e-9));
    for (double snr : {0.1, 1.0, 10.0})
        CHECK(std::abs(mpsk_sep_exact(snr, 2) - q_function(std::sqrt(2.0 * snr))) < 1e-9);
}

TEST_CASE("mpsk sep matches Monte-Carlo at snr=10, M=8") {
    const double sep = mpsk_sep_exact(10.0, 8);
    // send x_0, count decisions outside its phase sector
    RandomStream s(314159);
    const uint64_t trials = 10'000'000;
    const double half_sector = std::numbers::pi / 8.0;
    uint64_t errors = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        const cxd y = cxd(1.0, 0.0) + s.next_complex_gaussian(1.0 / 10.0);
        if (std::abs(std::arg(y)) > half_sector) ++errors;
    }
    const double mc = static_cast<double>(errors) / trials;
    const double se = std::sqrt(mc * (1.0 - mc) / trials);
    CHECK(std::abs(mc - sep) < 3.0 * se + 1e-9);
}

TEST_CASE("invalid PSK order is rejected") {
    CHECK_THROWS_AS(mpsk_sep_exact(1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(mpsk_sep_exact(1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(mpsk_sep_exact(-1.0, 4), std::invalid_argument);
}
