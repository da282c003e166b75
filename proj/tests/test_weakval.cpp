#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace wvcalc;
using testutil::bloch_state;
using testutil::kPi;
using testutil::mat2;
using testutil::max_abs_diff;
using testutil::pauli_x;
using testutil::pauli_z;

TEST_CASE("spectral_basis") {
    const SpectralBasis basis = spectral_basis(pauli_z());
    REQUIRE(std::abs(basis.eigenvalues()[0] + 1.0) <= 1e-14);
    REQUIRE(std::abs(basis.eigenvalues()[1] - 1.0) <= 1e-14);

    REQUIRE_THROWS_AS(spectral_basis(mat2(2.0, 0.0, 0.0, 2.0)), DegenerateSpectrum);
    REQUIRE_THROWS_AS(spectral_basis(mat2(0.0, 1.0, 0.0, 0.0)), NonHermitianInput);

    SECTION("reconstruction of a random non-degenerate observable") {
        Rng rng(11);
        const ComplexMatrix b = random_hermitian(rng, 6);
        const SpectralBasis bb = spectral_basis(b);
        ComplexMatrix rec(6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) {
                cplx acc{};
                for (std::size_t k = 0; k < 6; ++k)
                    acc += bb.eigenvectors()(i, k) * bb.eigenvalues()[k] *
                           std::conj(bb.eigenvectors()(j, k));
                rec(i, j) = acc;
            }
        REQUIRE(max_abs_diff(rec, b) <= 1e-10);
    }
}

TEST_CASE("weak value profile") {
    const SpectralBasis basis = spectral_basis(pauli_z());

    SECTION("A = B gives the eigenvalues, A = I gives ones") {
        const PureState psi = bloch_state(1.1, 0.4);
        const WeakValueProfile self = weak_value_profile(pauli_z(), basis, psi);
        for (std::size_t k = 0; k < 2; ++k)
            REQUIRE(std::abs(self.values()[k] - basis.eigenvalues()[k]) <= 1e-12);

        const WeakValueProfile unit = weak_value_profile(ComplexMatrix::identity(2), basis, psi);
        for (std::size_t k = 0; k < 2; ++k)
            REQUIRE(std::abs(unit.values()[k] - cplx(1.0, 0.0)) <= 1e-14);
    }

    SECTION("qubit closed forms: tan/cot of the half angle") {
        for (double theta : {0.5, kPi / 3.0, 2.3})
            for (double phi : {0.0, 0.8, kPi / 2.0, 4.0}) {
                const WeakValueProfile p =
                    weak_value_profile(pauli_x(), basis, bloch_state(theta, phi));
                const cplx want_minus = std::exp(cplx(0.0, -phi)) / std::tan(theta / 2.0);
                const cplx want_plus = std::exp(cplx(0.0, phi)) * std::tan(theta / 2.0);
                REQUIRE(std::abs(p.values()[0] - want_minus) <= 1e-11);
                REQUIRE(std::abs(p.values()[1] - want_plus) <= 1e-11);
            }
    }

    SECTION("vanishing overlap is rejected") {
        REQUIRE_THROWS_AS(
            weak_value_profile(pauli_x(), basis, PureState({cplx(1.0, 0.0), cplx(0.0, 0.0)})),
            ZeroOverlap);
    }

    SECTION("profile mean identities on random instances") {
        Rng rng(13);
        for (std::size_t dim : {2, 3, 6, 10}) {
            const ComplexMatrix a = random_hermitian(rng, dim);
            const SpectralBasis bb = spectral_basis(random_hermitian(rng, dim));
            const PureState psi = random_state(rng, dim);
            const WeakValueProfile p = weak_value_profile(a, bb, psi);
            REQUIRE(std::abs(p.mean_im()) <= 1e-12);
            REQUIRE(std::abs(p.mean_re() - expectation(a, psi).real()) <= 1e-12);
        }
    }
}

TEST_CASE("operator_function") {
    const SpectralBasis basis = spectral_basis(pauli_z());

    const ComplexMatrix c = operator_function(basis, SpectrumFunction::constant(2, 2.5));
    REQUIRE(max_abs_diff(c, 2.5 * ComplexMatrix::identity(2)) <= 1e-14);

    const ComplexMatrix b_again = operator_function(
        basis, SpectrumFunction::from_real(basis.eigenvalues()));
    REQUIRE(max_abs_diff(b_again, pauli_z()) <= 1e-12);

    SECTION("Re A_w vanishes identically at theta=pi/2, phi=pi/2") {
        const WeakValueProfile p =
            weak_value_profile(pauli_x(), basis, bloch_state(kPi / 2.0, kPi / 2.0));
        const ComplexMatrix z = operator_function(basis, optimal_proxy(p));
        REQUIRE(z.max_abs() <= 1e-13);
    }

    SECTION("Hermitian iff real; normal always") {
        Rng rng(17);
        const SpectralBasis bb = spectral_basis(random_hermitian(rng, 5));
        std::vector<cplx> vals(5);
        for (auto& v : vals) v = cplx(rng.gaussian(), rng.gaussian());
        const ComplexMatrix f = operator_function(bb, SpectrumFunction(vals));
        REQUIRE(check_hermitian(f).max_asymmetry > 1e-3); // generic complex values
        REQUIRE(max_abs_diff(f * f.adjoint(), f.adjoint() * f) <= 1e-12);

        const ComplexMatrix g =
            operator_function(bb, SpectrumFunction::from_real(gaussian_vector(rng, 5)));
        REQUIRE(check_hermitian(g).max_asymmetry <= 1e-13);
    }
}

TEST_CASE("optimal proxy") {
    const SpectralBasis basis = spectral_basis(pauli_z());

    SECTION("functionally dependent observables are recovered exactly") {
        Rng rng(23);
        const SpectralBasis bb = spectral_basis(random_hermitian(rng, 5));
        const std::vector<double> h = gaussian_vector(rng, 5);
        const ComplexMatrix a = operator_function(bb, SpectrumFunction::from_real(h));
        const PureState psi = random_state(rng, 5);
        const WeakValueProfile p = weak_value_profile(a, bb, psi);
        const SpectrumFunction f_opt = optimal_proxy(p);
        for (std::size_t k = 0; k < 5; ++k) REQUIRE(std::abs(f_opt[k] - h[k]) <= 1e-9);
        REQUIRE(approximation_error(a, f_opt, bb, psi) <= 1e-10);
    }

    SECTION("qubit values and the mean identity") {
        const WeakValueProfile p =
            weak_value_profile(pauli_x(), basis, bloch_state(kPi / 3.0, 0.0));
        const SpectrumFunction f_opt = optimal_proxy(p);
        // cot(pi/6) and tan(pi/6)
        REQUIRE(std::abs(f_opt[0].real() - 1.7320508075688772) <= 1e-12);
        REQUIRE(std::abs(f_opt[1].real() - 0.57735026918962573) <= 1e-12);

        double mean = 0.0;
        for (std::size_t k = 0; k < 2; ++k)
            mean += p.probabilities()[k] * f_opt[k].real();
        REQUIRE(std::abs(mean - 0.86602540378443865) <= 1e-12);
    }
}

TEST_CASE("optimal commutant") {
    const SpectralBasis basis = spectral_basis(pauli_z());

    SECTION("purely imaginary weak values give back sigma_z") {
        const PureState psi = bloch_state(kPi / 2.0, kPi / 2.0);
        const WeakValueProfile p = weak_value_profile(pauli_x(), basis, psi);
        const SpectrumFunction g = optimal_commutant(p);
        REQUIRE(std::abs(g[0].real() + 1.0) <= 1e-12);
        REQUIRE(std::abs(g[1].real() - 1.0) <= 1e-12);
        REQUIRE(std::abs(norm2(apply_spectrum_function(basis, g, psi.amplitudes())) - 1.0) <=
                1e-12);
    }

    SECTION("real weak values have no quantum component") {
        const WeakValueProfile p =
            weak_value_profile(pauli_x(), basis, bloch_state(kPi / 3.0, 0.0));
        REQUIRE_THROWS_AS(optimal_commutant(p), NoQuantumComponent);
    }

    SECTION("unit seminorm by construction") {
        Rng rng(37);
        for (int rep = 0; rep < 10; ++rep) {
            const std::size_t dim = 2 + rep % 5;
            const ComplexMatrix a = random_hermitian(rng, dim);
            const SpectralBasis bb = spectral_basis(random_hermitian(rng, dim));
            const PureState psi = random_state(rng, dim);
            const WeakValueProfile p = weak_value_profile(a, bb, psi);
            const SpectrumFunction g = optimal_commutant(p);
            REQUIRE(std::abs(norm2(apply_spectrum_function(bb, g, psi.amplitudes())) - 1.0) <=
                    1e-10);
        }
    }
}

TEST_CASE("approximation error") {
    const SpectralBasis basis = spectral_basis(pauli_z());
    const PureState psi = bloch_state(kPi / 3.0, kPi / 5.0);
    const WeakValueProfile p = weak_value_profile(pauli_x(), basis, psi);

    SECTION("optimal proxy reaches the imaginary-part norm") {
        REQUIRE(std::abs(approximation_error(pauli_x(), optimal_proxy(p), basis, psi) -
                         p.norm_im()) <= 1e-10);
    }

    SECTION("the constant proxy gives the standard deviation") {
        const double mean = expectation(pauli_x(), psi).real();
        const MomentReport m = moments(pauli_x(), pauli_z(), psi);
        REQUIRE(std::abs(
                    approximation_error(pauli_x(), SpectrumFunction::constant(2, mean), basis, psi) -
                    std::sqrt(m.var_a)) <= 1e-12);
    }

    SECTION("no real proxy beats the optimal one") {
        Rng rng(41);
        const SpectrumFunction f_opt = optimal_proxy(p);
        const double err_opt = approximation_error(pauli_x(), f_opt, basis, psi);
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<double> fv = f_opt.real_part();
            for (double& x : fv) x += rng.gaussian();
            const double err =
                approximation_error(pauli_x(), SpectrumFunction::from_real(fv), basis, psi);
            REQUIRE(err >= err_opt - 1e-12);
        }
    }

    REQUIRE_THROWS_AS(
        approximation_error(pauli_x(), SpectrumFunction({cplx(0.0, 1.0), cplx(0.0, 0.0)}), basis,
                            psi),
        NonRealFunction);
}

TEST_CASE("weak identities") {
    SECTION("all residuals vanish on random instances") {
        Rng rng(43);
        const std::size_t dim = 8;
        const ComplexMatrix a = random_hermitian(rng, dim);
        const SpectralBasis bb = spectral_basis(random_hermitian(rng, dim));
        const PureState psi = random_state(rng, dim);
        const SpectrumFunction f = SpectrumFunction::from_real(gaussian_vector(rng, dim));
        const IdentityReport r = verify_weak_identities(a, bb, psi, f);
        REQUIRE(r.residual_action <= 1e-10);
        REQUIRE(r.residual_mean_re <= 1e-10);
        REQUIRE(r.residual_mean_im <= 1e-10);
        REQUIRE(r.residual_norm_split <= 1e-10);
        REQUIRE(r.residual_pythagoras <= 1e-10);
        REQUIRE(r.residual_distance <= 1e-10);
    }

    SECTION("the qubit norm splits into 1.0 + 0.0") {
        const SpectralBasis basis = spectral_basis(pauli_z());
        const PureState psi = bloch_state(kPi / 3.0, 0.0);
        const WeakValueProfile p = weak_value_profile(pauli_x(), basis, psi);
        // sum p_k (Re A_w)^2 = 0.75/3 + 0.25*3 = 1, with Im A_w identically 0
        REQUIRE(std::abs(p.norm_re_sq() - 1.0) <= 1e-12);
        REQUIRE(p.norm_im_sq() <= 1e-15);
    }

    SECTION("A = I acts exactly") {
        const SpectralBasis basis = spectral_basis(pauli_z());
        const PureState psi = bloch_state(0.9, 2.0);
        const IdentityReport r = verify_weak_identities(
            ComplexMatrix::identity(2), basis, psi, SpectrumFunction::constant(2, 1.0));
        REQUIRE(r.residual_action == 0.0);
    }
}

TEST_CASE("weak value properties over random sweeps") {
    Rng rng(53);
    for (std::size_t dim : {2, 3, 4, 8, 16}) {
        for (int rep = 0; rep < 10; ++rep) {
            const ComplexMatrix a = random_hermitian(rng, dim);
            const SpectralBasis bb = spectral_basis(random_hermitian(rng, dim));
            const PureState psi = random_state(rng, dim);
            const WeakValueProfile p = weak_value_profile(a, bb, psi);
            const SpectrumFunction f = SpectrumFunction::from_real(gaussian_vector(rng, dim));

            // orthogonality of the projection residual against the proxy family
            const std::vector<cplx> apsi = a.apply(psi.amplitudes());
            const std::vector<cplx> foptpsi =
                apply_spectrum_function(bb, optimal_proxy(p), psi.amplitudes());
            const std::vector<cplx> fpsi = apply_spectrum_function(bb, f, psi.amplitudes());
            std::vector<cplx> x(dim), y(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] = apsi[i] - foptpsi[i];
                y[i] = foptpsi[i] - fpsi[i];
            }
            REQUIRE(std::abs(inner(x, y).real()) <= 1e-10);

            // correlation identity <f(B) A> = <f(B) A_w(B)>
            cplx rhs{};
            for (std::size_t k = 0; k < dim; ++k)
                rhs += p.probabilities()[k] * f[k].real() * p.values()[k];
            REQUIRE(std::abs(inner(fpsi, apsi) - rhs) <= 1e-10);

            // unit phases on the eigenvectors leave the profile unchanged
            std::vector<cplx> phases(dim);
            for (std::size_t k = 0; k < dim; ++k)
                phases[k] = std::exp(cplx(0.0, 2.0 * kPi * rng.uniform()));
            const WeakValueProfile shifted =
                weak_value_profile(a, bb.with_column_phases(phases), psi);
            for (std::size_t k = 0; k < dim; ++k)
                REQUIRE(std::abs(shifted.values()[k] - p.values()[k]) <= 1e-12);
        }
    }
}
