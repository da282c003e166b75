#include <catch2/catch_amalgamated.hpp>

#include <cstring>

#include "helpers.hpp"

using namespace wvcalc;
using testutil::kPi;
using testutil::mat2;
using testutil::max_abs_diff;
using testutil::pauli_x;
using testutil::pauli_z;

TEST_CASE("check_hermitian flags asymmetry exactly") {
    REQUIRE(check_hermitian(ComplexMatrix::identity(2)).max_asymmetry == 0.0);
    REQUIRE(check_hermitian(pauli_x()).max_asymmetry == 0.0);

    // [[0, i], [i, 0]]: the (0,1)/(1,0) pair differs by 2i
    const ComplexMatrix m = mat2(0.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 0.0);
    REQUIRE(check_hermitian(m).max_asymmetry == 2.0);
    REQUIRE_FALSE(is_hermitian(m, 1e-10));
}

TEST_CASE("eigh handles the identity and sigma_x") {
    const EigenSystem id = eigh(ComplexMatrix::identity(3));
    for (double ev : id.eigenvalues) REQUIRE(std::abs(ev - 1.0) <= 1e-14);

    const EigenSystem sx = eigh(pauli_x());
    REQUIRE(std::abs(sx.eigenvalues[0] + 1.0) <= 1e-14);
    REQUIRE(std::abs(sx.eigenvalues[1] - 1.0) <= 1e-14);
    const double r = 1.0 / std::sqrt(2.0);
    // phase convention: first component real positive
    REQUIRE(std::abs(sx.eigenvectors(0, 0) - cplx(r, 0.0)) <= 1e-14);
    REQUIRE(std::abs(sx.eigenvectors(1, 0) - cplx(-r, 0.0)) <= 1e-14);
    REQUIRE(std::abs(sx.eigenvectors(0, 1) - cplx(r, 0.0)) <= 1e-14);
    REQUIRE(std::abs(sx.eigenvectors(1, 1) - cplx(r, 0.0)) <= 1e-14);
}

TEST_CASE("eigh satisfies its residual invariants on random Hermitian matrices") {
    Rng rng(20240601);
    for (std::size_t dim = 2; dim <= 16; ++dim) {
        for (int rep = 0; rep < 4; ++rep) {
            const ComplexMatrix m = random_hermitian(rng, dim);
            const EigenSystem es = eigh(m);
            const double scale = 1.0 + m.max_abs();

            for (std::size_t k = 0; k + 1 < dim; ++k)
                REQUIRE(es.eigenvalues[k] <= es.eigenvalues[k + 1]);

            // reconstruction: max |M - V diag(lambda) V^H|
            ComplexMatrix rec(dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) {
                    cplx acc{};
                    for (std::size_t k = 0; k < dim; ++k)
                        acc += es.eigenvectors(i, k) * es.eigenvalues[k] *
                               std::conj(es.eigenvectors(j, k));
                    rec(i, j) = acc;
                }
            REQUIRE(max_abs_diff(m, rec) <= 1e-10 * scale);

            const ComplexMatrix gram = es.eigenvectors.adjoint() * es.eigenvectors;
            REQUIRE(max_abs_diff(gram, ComplexMatrix::identity(dim)) <= 1e-10);

            // eigenvector residual ||M v - lambda v||
            for (std::size_t k = 0; k < dim; ++k) {
                std::vector<cplx> v(dim);
                for (std::size_t i = 0; i < dim; ++i) v[i] = es.eigenvectors(i, k);
                std::vector<cplx> mv = m.apply(v);
                for (std::size_t i = 0; i < dim; ++i) mv[i] -= es.eigenvalues[k] * v[i];
                REQUIRE(norm2(mv) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("eigh rejects non-Hermitian input and is deterministic") {
    REQUIRE_THROWS_AS(eigh(mat2(0.0, 1.0, 0.0, 0.0)), NonHermitianInput);

    Rng rng(7);
    const ComplexMatrix m = random_hermitian(rng, 9);
    const EigenSystem a = eigh(m);
    const EigenSystem b = eigh(m);
    REQUIRE(std::memcmp(a.eigenvalues.data(), b.eigenvalues.data(),
                        a.eigenvalues.size() * sizeof(double)) == 0);
    REQUIRE(std::memcmp(a.eigenvectors.entries().data(), b.eigenvectors.entries().data(),
                        a.eigenvectors.entries().size() * sizeof(cplx)) == 0);
}

TEST_CASE("generator_exponential produces the spectral unitary") {
    Rng rng(99);

    SECTION("zero exponent gives the identity") {
        const ComplexMatrix u = generator_exponential(random_hermitian(rng, 5), 0.0);
        REQUIRE(max_abs_diff(u, ComplexMatrix::identity(5)) <= 1e-13);
    }

    SECTION("diagonal generator") {
        const ComplexMatrix u = generator_exponential(pauli_z(), kPi / 2.0);
        const ComplexMatrix want = mat2(cplx(0.0, -1.0), 0.0, 0.0, cplx(0.0, 1.0));
        REQUIRE(max_abs_diff(u, want) <= 1e-14);
    }

    SECTION("sigma_x closed form") {
        for (double t : {0.3, 1.0, -2.2}) {
            const ComplexMatrix u = generator_exponential(pauli_x(), t);
            const ComplexMatrix want = mat2(std::cos(t), cplx(0.0, -std::sin(t)),
                                            cplx(0.0, -std::sin(t)), std::cos(t));
            REQUIRE(max_abs_diff(u, want) <= 1e-12);
        }
    }

    SECTION("unitarity and the one-parameter group law") {
        for (std::size_t dim : {2, 5, 12}) {
            const ComplexMatrix a = random_hermitian(rng, dim);
            const double s1 = 2.0 * rng.uniform() - 1.0, s2 = 2.0 * rng.uniform() - 1.0;
            const ComplexMatrix u1 = generator_exponential(a, s1);
            REQUIRE(max_abs_diff(u1.adjoint() * u1, ComplexMatrix::identity(dim)) <= 1e-10);
            const ComplexMatrix u2 = generator_exponential(a, s2);
            const ComplexMatrix u12 = generator_exponential(a, s1 + s2);
            REQUIRE(max_abs_diff(u1 * u2, u12) <= 1e-9);
        }
    }
}
