#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "inequalities.hpp"
#include "linalg.hpp"
#include "quantum.hpp"
#include "weakval.hpp"

namespace wvcalc {

namespace defaults {
inline constexpr double fisher_floor = 1e-10;
inline constexpr double unbiasedness_tol = 1e-6;
} // namespace defaults

// A unitary family |psi(t)> = exp(-i t A / hbar)|psi> with a true parameter
// value t0. In the time-energy reading the generator plays the Hamiltonian.
class EstimationSetup {
public:
    EstimationSetup(ComplexMatrix generator, PureState base_state, double t0 = 0.0,
                    PhysicsConfig config = {})
        : generator_(std::move(generator)),
          base_state_(std::move(base_state)),
          t0_(t0),
          config_(config) {
        if (generator_.dim() != base_state_.dim())
            throw DimensionMismatch("EstimationSetup: generator/state dims differ");
        require_hermitian(generator_, defaults::hermiticity_tol, "EstimationSetup generator");
        if (!(config_.hbar > 0.0))
            throw ValidationError("hbar", "must be positive, got " + std::to_string(config_.hbar));
    }

    const ComplexMatrix& generator() const noexcept { return generator_; }
    const PureState& base_state() const noexcept { return base_state_; }
    double t0() const noexcept { return t0_; }
    double hbar() const noexcept { return config_.hbar; }

private:
    ComplexMatrix generator_;
    PureState base_state_;
    double t0_;
    PhysicsConfig config_;
};

inline PureState evolve(const EstimationSetup& setup, double t) {
    const ComplexMatrix u = generator_exponential(setup.generator(), t / setup.hbar());
    return PureState(u.apply(setup.base_state().amplitudes()));
}

struct OutcomeDistribution {
    std::vector<double> probabilities; // aligned to the basis eigenvalues
};

inline OutcomeDistribution outcome_distribution(const SpectralBasis& basis, const PureState& psi) {
    if (basis.dim() != psi.dim()) throw DimensionMismatch("outcome_distribution: dims differ");
    OutcomeDistribution d;
    d.probabilities.resize(basis.dim());
    double sum = 0.0;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        d.probabilities[k] = std::norm(basis.overlap(k, psi.amplitudes()));
        sum += d.probabilities[k];
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw InternalConsistency("outcome_distribution: probabilities sum to " +
                                  std::to_string(sum));
    return d;
}

struct FisherReport {
    double fisher = 0.0;    // (2/hbar)^2 ||Im A_w(B)||^2 at psi(t)
    double fisher_fd = 0.0; // central-difference oracle sum (dp/dt)^2 / p
    SpectrumFunction estimator; // g_opt values; empty when Fisher information vanishes
    double cr_bound = std::numeric_limits<double>::quiet_NaN();   // 1 / fisher(t0)
    double variance_g = std::numeric_limits<double>::quiet_NaN(); // Var[g_opt(B)] at psi(t0)
    double unbiased_mean = std::numeric_limits<double>::quiet_NaN();
    double unbiased_slope = std::numeric_limits<double>::quiet_NaN();
};

// Classical Fisher information of the outcome distribution p(b, t) for the
// measurement of B along the family, two ways: the closed form through the
// weak-value profile and an independent finite-difference evaluation.
inline FisherReport fisher_information(const EstimationSetup& setup, const ComplexMatrix& b,
                                       double t, double overlap_tol = defaults::overlap_tol) {
    const SpectralBasis basis = spectral_basis(b);
    const PureState psi_t = evolve(setup, t);
    const WeakValueProfile profile =
        weak_value_profile(setup.generator(), basis, psi_t, overlap_tol);

    FisherReport r;
    const double two_over_hbar = 2.0 / setup.hbar();
    r.fisher = two_over_hbar * two_over_hbar * profile.norm_im_sq();

    const double h = 1e-5 * (1.0 + std::abs(t));
    const OutcomeDistribution p0 = outcome_distribution(basis, psi_t);
    const OutcomeDistribution pp = outcome_distribution(basis, evolve(setup, t + h));
    const OutcomeDistribution pm = outcome_distribution(basis, evolve(setup, t - h));
    double acc = 0.0;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const double dp = (pp.probabilities[k] - pm.probabilities[k]) / (2.0 * h);
        acc += dp * dp / p0.probabilities[k];
    }
    r.fisher_fd = acc;
    return r;
}

// g_opt(b) = 2 Im A_w(b) / (hbar I(t0)) + t0, the efficient locally unbiased
// estimator of the parameter.
inline SpectrumFunction optimal_estimator(const EstimationSetup& setup, const ComplexMatrix& b,
                                          double fisher_floor = defaults::fisher_floor,
                                          double overlap_tol = defaults::overlap_tol) {
    const SpectralBasis basis = spectral_basis(b);
    const PureState psi0 = evolve(setup, setup.t0());
    const WeakValueProfile profile =
        weak_value_profile(setup.generator(), basis, psi0, overlap_tol);
    const double two_over_hbar = 2.0 / setup.hbar();
    const double fisher = two_over_hbar * two_over_hbar * profile.norm_im_sq();
    if (fisher <= fisher_floor)
        throw VanishingFisher("optimal_estimator: Fisher information " + std::to_string(fisher) +
                              " is below the floor " + std::to_string(fisher_floor));

    const double coeff = 2.0 / (setup.hbar() * fisher);
    std::vector<cplx> v(basis.dim());
    for (std::size_t k = 0; k < basis.dim(); ++k)
        v[k] = cplx(coeff * profile.values()[k].imag() + setup.t0(), 0.0);
    return SpectrumFunction(std::move(v));
}

struct UnbiasednessCheck {
    double mean = 0.0;             // <g(B)> at psi(t0)
    double slope_fd = 0.0;         // central difference of <g(B)> across t0
    double slope_commutator = 0.0; // (i/hbar) <[A, g(B)]> at psi(t0)
    double mean_residual = 0.0;    // |mean - t0|
    double slope_residual = 0.0;   // |slope_fd - 1|
    double conjugacy_residual = 0.0; // |<[g(B), A]> - i hbar|
    double slope_gap = 0.0;        // |slope_fd - slope_commutator|
};

// Total diagnostic: never throws for a real g; callers decide what residual
// level counts as locally unbiased.
inline UnbiasednessCheck local_unbiasedness_check(const SpectrumFunction& g,
                                                  const EstimationSetup& setup,
                                                  const ComplexMatrix& b) {
    if (!g.is_real()) throw NonRealFunction("local_unbiasedness_check: estimator must be real");
    const SpectralBasis basis = spectral_basis(b);
    const double t0 = setup.t0();
    const double hbar = setup.hbar();

    const auto mean_g = [&](double t) {
        const PureState psi_t = evolve(setup, t);
        return inner(psi_t.amplitudes(), apply_spectrum_function(basis, g, psi_t.amplitudes()))
            .real();
    };

    UnbiasednessCheck r;
    r.mean = mean_g(t0);
    const double h = 1e-5 * (1.0 + std::abs(t0));
    r.slope_fd = (mean_g(t0 + h) - mean_g(t0 - h)) / (2.0 * h);

    const PureState psi0 = evolve(setup, t0);
    const std::vector<cplx>& amp = psi0.amplitudes();
    const std::vector<cplx> apsi = setup.generator().apply(amp);
    const std::vector<cplx> gpsi = apply_spectrum_function(basis, g, amp);
    const cplx zag = inner(amp, setup.generator().apply(gpsi));            // <A g(B)>
    const cplx zga = inner(amp, apply_spectrum_function(basis, g, apsi));  // <g(B) A>
    const cplx comm_ag = zag - zga;                                        // <[A, g(B)]>
    r.slope_commutator = (cplx(0.0, 1.0 / hbar) * comm_ag).real();
    r.conjugacy_residual = std::abs(-comm_ag - cplx(0.0, hbar));

    r.mean_residual = std::abs(r.mean - t0);
    r.slope_residual = std::abs(r.slope_fd - 1.0);
    r.slope_gap = std::abs(r.slope_fd - r.slope_commutator);
    return r;
}

// Var[g(B)] >= (d<g>/dt)^2 / I(t), the Cramer-Rao bound for the measurement
// of B. The sensitivity slope comes from the commutator identity.
inline InequalityReport cramer_rao_report(const SpectrumFunction& g, const EstimationSetup& setup,
                                          const ComplexMatrix& b, double t,
                                          double fisher_floor = defaults::fisher_floor,
                                          double sat_tol = defaults::saturation_tol) {
    if (!g.is_real()) throw NonRealFunction("cramer_rao_report: estimator must be real");
    const FisherReport fr = fisher_information(setup, b, t);
    if (fr.fisher <= fisher_floor)
        throw VanishingFisher("cramer_rao_report: Fisher information " +
                              std::to_string(fr.fisher) + " is below the floor");

    const SpectralBasis basis = spectral_basis(b);
    const PureState psi_t = evolve(setup, t);
    const std::vector<cplx>& amp = psi_t.amplitudes();
    const std::vector<cplx> gpsi = apply_spectrum_function(basis, g, amp);
    const double mean = inner(amp, gpsi).real();
    std::vector<cplx> dev = gpsi;
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] -= mean * amp[i];
    const double sg = norm2(dev);

    const std::vector<cplx> apsi = setup.generator().apply(amp);
    const cplx zag = inner(amp, setup.generator().apply(gpsi));
    const cplx zga = inner(amp, apply_spectrum_function(basis, g, apsi));
    const double slope = (cplx(0.0, 1.0 / setup.hbar()) * (zag - zga)).real();

    return make_inequality_report("cramer_rao", sg * sg, slope * slope / fr.fisher, sat_tol);
}

// ||H - f(B)|| * ||t0 - g(B)|| >= hbar/2 at psi(t0), for a locally unbiased
// estimator g. The generator plays H.
inline InequalityReport time_energy_report(const EstimationSetup& setup, const ComplexMatrix& b,
                                           const SpectrumFunction& f, const SpectrumFunction& g,
                                           double unbiasedness_tol = defaults::unbiasedness_tol,
                                           double sat_tol = defaults::saturation_tol) {
    if (!f.is_real()) throw NonRealFunction("time_energy_report: f must be real");
    const UnbiasednessCheck check = local_unbiasedness_check(g, setup, b);
    if (check.mean_residual > unbiasedness_tol || check.slope_residual > unbiasedness_tol)
        throw NotLocallyUnbiased("time_energy_report: mean residual " +
                                 std::to_string(check.mean_residual) + ", slope residual " +
                                 std::to_string(check.slope_residual) + " exceed " +
                                 std::to_string(unbiasedness_tol));

    const SpectralBasis basis = spectral_basis(b);
    const PureState psi0 = evolve(setup, setup.t0());
    const double energy_err = approximation_error(setup.generator(), f, basis, psi0);

    const std::vector<cplx>& amp = psi0.amplitudes();
    std::vector<cplx> dev = apply_spectrum_function(basis, g, amp); // (g(B) - t0)|psi>
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] -= setup.t0() * amp[i];
    const double time_err = norm2(dev);

    return make_inequality_report("time_energy", energy_err * time_err, 0.5 * setup.hbar(),
                                  sat_tol);
}

struct MonteCarloResult {
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    double empirical_mean = 0.0;
    double empirical_variance = 0.0; // unbiased (n-1) divisor; 0 by convention for n = 1
    double standard_error_mean = 0.0;
};

// Generator recorded with every Monte Carlo result: mt19937_64 raw output
// mapped to [0,1) with 53 bits, inverse CDF over the finite outcome list.
inline constexpr const char* monte_carlo_generator_name = "mt19937_64-inverse-cdf";

inline double uniform53(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Draws n outcomes of B at psi(t0) and returns sample statistics of g over
// the draws. Sequential and bit-reproducible for a fixed seed.
inline MonteCarloResult monte_carlo_estimate(const EstimationSetup& setup, const ComplexMatrix& b,
                                             const SpectrumFunction& g, std::size_t n,
                                             std::uint64_t seed) {
    if (!g.is_real()) throw NonRealFunction("monte_carlo_estimate: estimator must be real");
    if (n < 1) throw ValidationError("n", "sample count must be >= 1");

    const SpectralBasis basis = spectral_basis(b);
    if (g.size() != basis.dim())
        throw DimensionMismatch("monte_carlo_estimate: estimator length differs from dim");
    const OutcomeDistribution dist = outcome_distribution(basis, evolve(setup, setup.t0()));

    std::vector<double> cumulative(dist.probabilities.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < cumulative.size(); ++k) {
        acc += dist.probabilities[k];
        cumulative[k] = acc;
    }

    const std::vector<double> values = g.real_part();
    std::mt19937_64 eng(seed);
    std::vector<double> draws(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform53(eng);
        std::size_t idx = cumulative.size() - 1;
        for (std::size_t k = 0; k < cumulative.size(); ++k) {
            if (u < cumulative[k]) {
                idx = k;
                break;
            }
        }
        draws[i] = values[idx];
    }

    MonteCarloResult r;
    r.n_samples = n;
    r.seed = seed;
    double sum = 0.0;
    for (double x : draws) sum += x;
    r.empirical_mean = sum / static_cast<double>(n);
    if (n >= 2) {
        double ss = 0.0;
        for (double x : draws) {
            const double d = x - r.empirical_mean;
            ss += d * d;
        }
        r.empirical_variance = ss / static_cast<double>(n - 1);
    }
    r.standard_error_mean = std::sqrt(r.empirical_variance / static_cast<double>(n));
    return r;
}

// Fully populated Fisher report at t0: analytic and finite-difference Fisher
// information, the optimal estimator with its unbiasedness diagnostics, and
// the Cramer-Rao figures. The estimator fields stay empty/NaN when the Fisher
// information is below the floor.
inline FisherReport estimation_report(const EstimationSetup& setup, const ComplexMatrix& b,
                                      double fisher_floor = defaults::fisher_floor,
                                      double overlap_tol = defaults::overlap_tol) {
    FisherReport r = fisher_information(setup, b, setup.t0(), overlap_tol);
    if (r.fisher <= fisher_floor) return r;

    r.estimator = optimal_estimator(setup, b, fisher_floor, overlap_tol);
    r.cr_bound = 1.0 / r.fisher;

    const SpectralBasis basis = spectral_basis(b);
    const PureState psi0 = evolve(setup, setup.t0());
    const std::vector<cplx>& amp = psi0.amplitudes();
    const std::vector<cplx> gpsi = apply_spectrum_function(basis, r.estimator, amp);
    const double mean = inner(amp, gpsi).real();
    std::vector<cplx> dev = gpsi;
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] -= mean * amp[i];
    const double sg = norm2(dev);
    r.variance_g = sg * sg;

    const UnbiasednessCheck check = local_unbiasedness_check(r.estimator, setup, b);
    r.unbiased_mean = check.mean;
    r.unbiased_slope = check.slope_fd;
    return r;
}

} // namespace wvcalc
