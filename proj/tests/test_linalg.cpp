#include <catch2/catch_amalgamated.hpp>

#include "jamsim/linalg.hpp"
#include "jamsim/rng.hpp"
#include "test_support.hpp"

using namespace jamsim;

TEST_CASE("hermitian_eig on a diagonal matrix returns it unchanged") {
    ComplexMatrix d(4, 4);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 0.5;
    d(3, 3) = 0.1;
    const auto e = hermitian_eig(d);
    REQUIRE(e.eigenvalues == std::vector<double>{3.0, 1.0, 0.5, 0.1});
    // eigenvectors are permuted identity columns: here already sorted
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t r = 0; r < 4; ++r)
            REQUIRE(std::abs(e.eigenvectors(r, k) - (r == k ? cplx{1.0} : cplx{})) < 1e-15);
}

TEST_CASE("hermitian_eig solves the forced 2x2 characteristic polynomial") {
    ComplexMatrix s(2, 2);
    s(0, 0) = 2.0;
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    s(1, 1) = 2.0;
    const auto e = hermitian_eig(s);
    REQUIRE_THAT(e.eigenvalues[0], Catch::Matchers::WithinAbs(3.0, 1e-12));
    REQUIRE_THAT(e.eigenvalues[1], Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("hermitian_eig reconstructs seeded random Hermitian input") {
    Rng rng(20240401);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix h = oracle::random_hermitian(rng, 4);
        const auto e = hermitian_eig(h);
        ComplexMatrix err(4, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                cplx acc{};
                for (std::size_t k = 0; k < 4; ++k)
                    acc += e.eigenvectors(r, k) * e.eigenvalues[k] *
                           std::conj(e.eigenvectors(c, k));
                err(r, c) = acc - h(r, c);
            }
        REQUIRE(err.frobenius_norm() <= 1e-9 * h.frobenius_norm());
    }
}

TEST_CASE("hermitian_eig invariants: orthonormality, trace, descending order") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.uniform_int(5);  // up to 6x6
        const ComplexMatrix h = oracle::random_hermitian(rng, n);
        const auto e = hermitian_eig(h);
        const ComplexMatrix vhv = e.eigenvectors.conjugate_transpose().multiply(e.eigenvectors);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                REQUIRE(std::abs(vhv(r, c) - (r == c ? cplx{1.0} : cplx{})) <= 1e-9);
        double sum = 0.0;
        for (double l : e.eigenvalues) sum += l;
        REQUIRE_THAT(sum, Catch::Matchers::WithinRel(h.trace().real(), 1e-9));
        for (std::size_t k = 1; k < n; ++k)
            REQUIRE(e.eigenvalues[k] <= e.eigenvalues[k - 1]);
    }
}

TEST_CASE("hermitian_eig rejects bad input") {
    REQUIRE_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), DimensionError);
    ComplexMatrix nh(2, 2);
    nh(0, 1) = cplx{1.0, 0.0};
    nh(1, 0) = cplx{5.0, 0.0};  // far from conj-symmetric
    REQUIRE_THROWS_AS(hermitian_eig(nh), DimensionError);
}

TEST_CASE("solve_hermitian identity and scalar-matrix cases") {
    ComplexMatrix eye = ComplexMatrix::identity(4);
    const std::vector<cplx> a = {cplx{1, 1}, cplx{2, -1}, cplx{0, 3}, cplx{-1, 0}};
    const auto x = solve_hermitian(eye, a);
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(std::abs(x[i] - a[i]) < 1e-12);

    ComplexMatrix two = ComplexMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) two(i, i) = 2.0;
    const std::vector<cplx> ones(4, cplx{1.0});
    const auto half = solve_hermitian(two, ones);
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(std::abs(half[i] - cplx{0.5}) < 1e-12);
}

TEST_CASE("solve_hermitian residual on seeded SPD systems") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix h = oracle::random_spd(rng, 4);
        std::vector<cplx> b(4);
        for (auto& v : b) v = cplx{rng.gaussian(), rng.gaussian()};
        const auto x = solve_hermitian(h, b);
        const auto hx = h.multiply(std::span<const cplx>(x));
        double res = 0.0, bn = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            res += std::norm(hx[i] - b[i]);
            bn += std::norm(b[i]);
        }
        REQUIRE(std::sqrt(res) <= 1e-8 * std::sqrt(bn));
    }
}

TEST_CASE("solve_hermitian recovers x0 from H*x0 for conditioned matrices") {
    Rng rng(1234);
    for (int trial = 0; trial < 30; ++trial) {
        ComplexMatrix h = oracle::random_spd(rng, 4, 0.05);
        std::vector<cplx> x0(4);
        for (auto& v : x0) v = cplx{rng.gaussian(), rng.gaussian()};
        const auto b = h.multiply(std::span<const cplx>(x0));
        const auto x = solve_hermitian(h, b);
        REQUIRE(oracle::vec_rel_err(x, x0) <= 1e-8);
    }
}

TEST_CASE("solve_hermitian flags singular and indefinite input") {
    ComplexMatrix sing(3, 3);
    sing(0, 0) = 1.0;
    sing(1, 1) = 1.0;  // third eigenvalue exactly zero
    REQUIRE_THROWS_AS(solve_hermitian(sing, std::vector<cplx>(3, cplx{1.0})), ConditioningError);

    ComplexMatrix indef = ComplexMatrix::identity(3);
    indef(2, 2) = -1.0;
    REQUIRE_THROWS_AS(solve_hermitian(indef, std::vector<cplx>(3, cplx{1.0})), ConditioningError);
}

TEST_CASE("diagonally_loaded makes a rank-deficient covariance solvable") {
    // x x^H has rank one; loading must lift it past the conditioning gate.
    std::vector<cplx> x = {cplx{1, 0}, cplx{0, 1}, cplx{1, 1}, cplx{-1, 0}};
    ComplexMatrix r(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) r(i, k) = x[i] * std::conj(x[k]);
    REQUIRE_THROWS_AS(solve_hermitian(r, x), ConditioningError);
    REQUIRE_NOTHROW(solve_hermitian(diagonally_loaded(r), x));
}
