#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "quantum.hpp"
#include "weakval.hpp"

namespace wvcalc {

namespace defaults {
inline constexpr double saturation_tol = 1e-8; // relative, |slack| <= tol*(1+lhs)
inline constexpr double variance_floor = 1e-12;
} // namespace defaults

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // lhs - rhs; nonnegative up to round-off for every bound here
    bool saturated = false;
};

inline InequalityReport make_inequality_report(std::string name, double lhs, double rhs,
                                               double sat_tol = defaults::saturation_tol) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = lhs - rhs;
    r.saturated = std::abs(r.slack) <= sat_tol * (1.0 + lhs);
    return r;
}

namespace detail {

// 1/2 |<[A, g(B)]>| with both commutator terms evaluated through matrix-vector
// products, so the result is independent of the weak-value machinery.
inline double half_commutator_bound(const ComplexMatrix& a, const SpectralBasis& basis,
                                    const SpectrumFunction& g, const PureState& psi) {
    const std::vector<cplx>& amp = psi.amplitudes();
    const std::vector<cplx> apsi = a.apply(amp);
    const std::vector<cplx> gpsi = apply_spectrum_function(basis, g, amp);
    const cplx zag = inner(amp, a.apply(gpsi));                           // <A g(B)>
    const cplx zga = inner(amp, apply_spectrum_function(basis, g, apsi)); // <g(B) A>
    return 0.5 * std::abs(zag - zga);
}

} // namespace detail

// ||A - f(B)|| * ||g(B)|| >= 1/2 |<[A, g(B)]>| for real f, g.
inline InequalityReport general_inequality(const ComplexMatrix& a, const SpectralBasis& basis,
                                           const SpectrumFunction& f, const SpectrumFunction& g,
                                           const PureState& psi,
                                           double sat_tol = defaults::saturation_tol) {
    if (!f.is_real() || !g.is_real())
        throw NonRealFunction("general_inequality: f and g must be real");
    const double lhs_left = approximation_error(a, f, basis, psi);
    const double lhs_right = norm2(apply_spectrum_function(basis, g, psi.amplitudes()));
    const double rhs = detail::half_commutator_bound(a, basis, g, psi);
    return make_inequality_report("general", lhs_left * lhs_right, rhs, sat_tol);
}

inline InequalityReport general_inequality(const ComplexMatrix& a, const ComplexMatrix& b,
                                           const SpectrumFunction& f, const SpectrumFunction& g,
                                           const PureState& psi,
                                           double sat_tol = defaults::saturation_tol) {
    return general_inequality(a, spectral_basis(b), f, g, psi, sat_tol);
}

// sigma(A) sigma(B) >= 1/2 |<[A,B]>|.
inline InequalityReport rk_inequality(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const PureState& psi,
                                      double sat_tol = defaults::saturation_tol) {
    const MomentReport m = moments(a, b, psi);
    const double lhs = std::sqrt(m.var_a) * std::sqrt(m.var_b);
    const double rhs = std::abs(m.commutator_half);
    return make_inequality_report("robertson_kennard", lhs, rhs, sat_tol);
}

struct OptimalInequality {
    InequalityReport report; // lhs = ||A - Re A_w(B)|| * sigma(B)
    double rk_lhs = 0.0;     // sigma(A) * sigma(B), for comparison
};

// The tightened bound at the optimal proxy: ||A - Re A_w(B)|| * sigma(B) >=
// 1/2 |<[A,B]>|. Its lhs never exceeds the RK lhs.
inline OptimalInequality optimal_inequality(const ComplexMatrix& a, const SpectralBasis& basis,
                                            const PureState& psi,
                                            double sat_tol = defaults::saturation_tol,
                                            double overlap_tol = defaults::overlap_tol) {
    const WeakValueProfile profile = weak_value_profile(a, basis, psi, overlap_tol);
    const MomentReport m = moments(a, basis.source(), psi);
    const double err_opt = approximation_error(a, optimal_proxy(profile), basis, psi);
    const double sigma_b = std::sqrt(m.var_b);

    OptimalInequality out;
    out.report = make_inequality_report("optimal", err_opt * sigma_b, std::abs(m.commutator_half),
                                        sat_tol);
    out.rk_lhs = std::sqrt(m.var_a) * sigma_b;
    return out;
}

inline OptimalInequality optimal_inequality(const ComplexMatrix& a, const ComplexMatrix& b,
                                            const PureState& psi,
                                            double sat_tol = defaults::saturation_tol,
                                            double overlap_tol = defaults::overlap_tol) {
    return optimal_inequality(a, spectral_basis(b), psi, sat_tol, overlap_tol);
}

// ||Re A_w(B) - <A>|| * sigma(B) >= |1/2 <{A,B}> - <A><B>|, the classical
// covariance bound. The rhs is cross-checked against Cov[Re A_w(B), B]
// computed from the profile.
inline InequalityReport covariance_inequality(const ComplexMatrix& a, const SpectralBasis& basis,
                                              const PureState& psi,
                                              double sat_tol = defaults::saturation_tol,
                                              double overlap_tol = defaults::overlap_tol) {
    const WeakValueProfile profile = weak_value_profile(a, basis, psi, overlap_tol);
    const MomentReport m = moments(a, basis.source(), psi);

    const std::vector<cplx>& amp = psi.amplitudes();
    std::vector<cplx> dev =
        apply_spectrum_function(basis, optimal_proxy(profile), amp); // (Re A_w(B) - <A>)|psi>
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] -= m.mean_a * amp[i];
    const double lhs = norm2(dev) * std::sqrt(m.var_b);
    const double rhs = std::abs(m.cov);

    double cov_profile = 0.0; // Cov[Re A_w(B), B] from the spectral route
    for (std::size_t k = 0; k < profile.dim(); ++k)
        cov_profile += profile.probabilities()[k] * (profile.values()[k].real() - m.mean_a) *
                       (basis.eigenvalues()[k] - m.mean_b);
    if (std::abs(std::abs(cov_profile) - rhs) > 1e-10 * (1.0 + rhs))
        throw InternalConsistency("covariance_inequality: moment-route bound " +
                                  std::to_string(rhs) + " disagrees with Cov[Re A_w(B), B] = " +
                                  std::to_string(cov_profile));
    return make_inequality_report("covariance", lhs, rhs, sat_tol);
}

inline InequalityReport covariance_inequality(const ComplexMatrix& a, const ComplexMatrix& b,
                                              const PureState& psi,
                                              double sat_tol = defaults::saturation_tol,
                                              double overlap_tol = defaults::overlap_tol) {
    return covariance_inequality(a, spectral_basis(b), psi, sat_tol, overlap_tol);
}

// Var[A] Var[B] >= |1/2 <[A,B]>|^2 + |1/2 <{A,B}> - <A><B>|^2.
inline InequalityReport schroedinger_inequality(const ComplexMatrix& a, const ComplexMatrix& b,
                                                const PureState& psi,
                                                double sat_tol = defaults::saturation_tol) {
    const MomentReport m = moments(a, b, psi);
    const double comm = std::abs(m.commutator_half);
    const double rhs = comm * comm + m.cov * m.cov;
    return make_inequality_report("schroedinger", m.var_a * m.var_b, rhs, sat_tol);
}

struct EqualityDiagnostics {
    double lambda = 0.0;        // best coefficient in Im A_w(B)|psi> ~ lambda (B - <B>)|psi>
    double mu = 0.0;            // best coefficient in (Re A_w(B) - <A>)|psi> ~ mu (B - <B>)|psi>
    cplx beta{};                // mu + i lambda
    double residual_im = 0.0;   // 2-norm of the Im condition residual vector
    double residual_re = 0.0;
    double residual_beta = 0.0; // residual of (A - <A>)|psi> = beta (B - <B>)|psi>
};

// Least-squares fit of the saturation conditions in the state-induced inner
// product. Residuals are zero exactly when the tightened/covariance bounds
// hold with equality.
inline EqualityDiagnostics equality_diagnostics(const ComplexMatrix& a, const SpectralBasis& basis,
                                                const PureState& psi,
                                                double overlap_tol = defaults::overlap_tol,
                                                double variance_floor = defaults::variance_floor) {
    const WeakValueProfile profile = weak_value_profile(a, basis, psi, overlap_tol);
    const MomentReport m = moments(a, basis.source(), psi);
    if (m.var_b <= variance_floor)
        throw DegenerateVariance("equality_diagnostics: Var[B] = " + std::to_string(m.var_b) +
                                 " is below the floor " + std::to_string(variance_floor));

    const std::size_t n = basis.dim();
    const std::vector<cplx>& amp = psi.amplitudes();

    std::vector<cplx> w = basis.source().apply(amp); // (B - <B>)|psi>
    for (std::size_t i = 0; i < n; ++i) w[i] -= m.mean_b * amp[i];

    std::vector<double> im_vals(n), re_vals(n);
    for (std::size_t k = 0; k < n; ++k) {
        im_vals[k] = profile.values()[k].imag();
        re_vals[k] = profile.values()[k].real();
    }
    const std::vector<cplx> u_im =
        apply_spectrum_function(basis, SpectrumFunction::from_real(im_vals), amp);
    std::vector<cplx> u_re =
        apply_spectrum_function(basis, SpectrumFunction::from_real(re_vals), amp);
    for (std::size_t i = 0; i < n; ++i) u_re[i] -= m.mean_a * amp[i];

    EqualityDiagnostics d;
    double lam_num = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        lam_num += profile.probabilities()[k] * (basis.eigenvalues()[k] - m.mean_b) * im_vals[k];
    d.lambda = lam_num / m.var_b;
    d.mu = m.cov / m.var_b;
    d.beta = cplx(d.mu, d.lambda);

    std::vector<cplx> rim(n), rre(n), rbeta(n);
    const std::vector<cplx> apsi = a.apply(amp);
    for (std::size_t i = 0; i < n; ++i) {
        rim[i] = u_im[i] - d.lambda * w[i];
        rre[i] = u_re[i] - d.mu * w[i];
        rbeta[i] = (apsi[i] - m.mean_a * amp[i]) - d.beta * w[i];
    }
    d.residual_im = norm2(rim);
    d.residual_re = norm2(rre);
    d.residual_beta = norm2(rbeta);
    return d;
}

inline EqualityDiagnostics equality_diagnostics(const ComplexMatrix& a, const ComplexMatrix& b,
                                                const PureState& psi,
                                                double overlap_tol = defaults::overlap_tol,
                                                double variance_floor = defaults::variance_floor) {
    return equality_diagnostics(a, spectral_basis(b), psi, overlap_tol, variance_floor);
}

} // namespace wvcalc
