#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace wvcalc;
using testutil::bloch_exp_x;
using testutil::bloch_exp_y;
using testutil::bloch_exp_z;
using testutil::bloch_state;
using testutil::kPi;
using testutil::pauli_x;
using testutil::pauli_z;

TEST_CASE("expectation values on qubit states") {
    const PureState psi = bloch_state(kPi / 3.0, 0.0);

    REQUIRE(std::abs(expectation(ComplexMatrix::identity(2), psi) - cplx(1.0, 0.0)) <= 1e-14);

    // frozen from the closed form sin(pi/3) = 0.86602540378443865
    REQUIRE(std::abs(expectation(pauli_x(), psi).real() - 0.86602540378443865) <= 1e-12);

    for (double theta : {0.4, 1.1, 2.7})
        for (double phi : {0.0, 0.9, 4.2}) {
            const PureState s = bloch_state(theta, phi);
            const cplx ez = expectation(pauli_z(), s);
            REQUIRE(std::abs(ez.real() - bloch_exp_z(theta)) <= 1e-12);
            REQUIRE(std::abs(ez.imag()) <= 1e-12);
            REQUIRE(std::abs(expectation(pauli_x(), s).real() - bloch_exp_x(theta, phi)) <= 1e-12);
        }

    REQUIRE_THROWS_AS(expectation(ComplexMatrix::identity(3), psi), DimensionMismatch);
}

TEST_CASE("seminorm") {
    const PureState psi = bloch_state(1.2, 0.6);
    REQUIRE(std::abs(seminorm(ComplexMatrix::identity(2), psi) - 1.0) <= 1e-14);

    // sigma_x squares to the identity, so ||sigma_x|| = 1 on any state
    REQUIRE(std::abs(seminorm(pauli_x(), psi) - 1.0) <= 1e-13);

    for (double theta : {0.3, kPi / 3.0, 2.0})
        for (double phi : {0.0, 1.7}) {
            const PureState s = bloch_state(theta, phi);
            const double mean = expectation(pauli_z(), s).real();
            const ComplexMatrix centered = pauli_z() - mean * ComplexMatrix::identity(2);
            REQUIRE(std::abs(seminorm(centered, s) - std::abs(std::sin(theta))) <= 1e-12);
        }
}

TEST_CASE("variance decomposition holds for random observables") {
    Rng rng(31);
    for (std::size_t dim : {2, 3, 5, 8}) {
        for (int rep = 0; rep < 10; ++rep) {
            const ComplexMatrix x = random_hermitian(rng, dim);
            const PureState psi = random_state(rng, dim);
            const double mean = expectation(x, psi).real();
            const ComplexMatrix centered = x - mean * ComplexMatrix::identity(dim);
            const double sem = seminorm(x, psi), cen = seminorm(centered, psi);
            REQUIRE(std::abs(cen * cen + mean * mean - sem * sem) <= 1e-10);
        }
    }
}

TEST_CASE("moments on the qubit example") {
    SECTION("self-covariance") {
        Rng rng(5);
        const ComplexMatrix a = random_hermitian(rng, 4);
        const PureState psi = random_state(rng, 4);
        const MomentReport m = moments(a, a, psi);
        REQUIRE(std::abs(m.cov - m.var_a) <= 1e-12);
        REQUIRE(std::abs(m.var_a - m.var_b) <= 1e-14);
        REQUIRE(std::abs(m.commutator_half) <= 1e-13);
    }

    SECTION("sigma_x / sigma_z moments match direct evaluation") {
        const MomentReport m = moments(pauli_x(), pauli_z(), bloch_state(kPi / 3.0, 0.0));
        // {sigma_x, sigma_z} = 0, so cov = -<A><B> = -sin(pi/3) cos(pi/3)
        REQUIRE(std::abs(m.cov - (-0.43301270189221935)) <= 1e-12);

        for (double theta : {0.5, kPi / 3.0, 2.4})
            for (double phi : {0.0, kPi / 4.0, 3.3}) {
                const MomentReport mm = moments(pauli_x(), pauli_z(), bloch_state(theta, phi));
                // [sigma_x, sigma_z] = -2i sigma_y
                REQUIRE(std::abs(mm.commutator_half - cplx(0.0, -bloch_exp_y(theta, phi))) <=
                        1e-12);
                REQUIRE(std::abs(mm.commutator_half.real()) <= 1e-13);
            }
    }

    SECTION("classical covariance bound on random instances") {
        Rng rng(77);
        for (int rep = 0; rep < 30; ++rep) {
            const std::size_t dim = 2 + rep % 7;
            const MomentReport m =
                moments(random_hermitian(rng, dim), random_hermitian(rng, dim),
                        random_state(rng, dim));
            REQUIRE(m.var_a >= 0.0);
            REQUIRE(m.var_b >= 0.0);
            REQUIRE(std::abs(m.cov) <= std::sqrt(m.var_a * m.var_b) + 1e-10);
            REQUIRE(std::abs(m.commutator_half.real()) <= 1e-10);
        }
    }
}

TEST_CASE("pure states validate their norm") {
    REQUIRE_THROWS_AS(PureState({cplx(0.5, 0.0)}), ValidationError);
    REQUIRE_THROWS_AS(PureState({cplx(0.3, 0.0), cplx(0.4, 0.0)}), ValidationError);

    const PureState s = PureState::normalized({cplx(3.0, 0.0), cplx(0.0, 4.0)});
    REQUIRE(std::abs(norm2(s.amplitudes()) - 1.0) <= 1e-15);
    REQUIRE(std::abs(s[0] - cplx(0.6, 0.0)) <= 1e-15);

    REQUIRE_THROWS_AS(PureState::normalized({cplx(0.0, 0.0)}), ValidationError);
}
