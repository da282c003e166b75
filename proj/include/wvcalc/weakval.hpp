#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "quantum.hpp"

namespace wvcalc {

namespace defaults {
inline constexpr double degeneracy_tol = 1e-8;  // adjacent-gap floor, relative to spectral range
inline constexpr double overlap_tol = 1e-12;    // floor on |<b|psi>|^2
inline constexpr double reality_tol = 1e-12;
inline constexpr double quantum_component_floor = 1e-10; // ||Im A_w(B)|| floor
} // namespace defaults

// Scalar function sampled on the eigenvalues of a spectral basis, in
// ascending-eigenvalue order. Stores complex values with a reality test;
// real-valued functions correspond to self-adjoint operator functions,
// complex ones to normal operators.
class SpectrumFunction {
public:
    SpectrumFunction() = default;

    explicit SpectrumFunction(std::vector<cplx> values) : values_(std::move(values)) {}

    static SpectrumFunction from_real(const std::vector<double>& values) {
        std::vector<cplx> v(values.begin(), values.end());
        return SpectrumFunction(std::move(v));
    }

    static SpectrumFunction constant(std::size_t dim, cplx value) {
        return SpectrumFunction(std::vector<cplx>(dim, value));
    }

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    const std::vector<cplx>& values() const noexcept { return values_; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }

    bool is_real(double tol = defaults::reality_tol) const {
        for (const cplx& z : values_)
            if (std::abs(z.imag()) > tol) return false;
        return true;
    }

    std::vector<double> real_part() const {
        std::vector<double> out(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].real();
        return out;
    }

private:
    std::vector<cplx> values_;
};

// Non-degenerate eigendecomposition of an observable B: the common domain of
// every operator function f(B).
class SpectralBasis {
public:
    SpectralBasis(std::vector<double> eigenvalues, ComplexMatrix eigenvectors, ComplexMatrix source)
        : eigenvalues_(std::move(eigenvalues)),
          eigenvectors_(std::move(eigenvectors)),
          source_(std::move(source)) {}

    std::size_t dim() const noexcept { return eigenvalues_.size(); }
    const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
    const ComplexMatrix& eigenvectors() const noexcept { return eigenvectors_; }
    const ComplexMatrix& source() const noexcept { return source_; }

    // <b_k|v>
    cplx overlap(std::size_t k, const std::vector<cplx>& v) const {
        cplx acc{};
        for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(eigenvectors_(i, k)) * v[i];
        return acc;
    }

    // Basis with each eigenvector multiplied by a unit phase. Physically the
    // same decomposition; used to exercise phase invariance.
    SpectralBasis with_column_phases(const std::vector<cplx>& unit_phases) const {
        if (unit_phases.size() != dim())
            throw DimensionMismatch("with_column_phases: phase count differs from dim");
        ComplexMatrix v = eigenvectors_;
        for (std::size_t k = 0; k < dim(); ++k)
            for (std::size_t i = 0; i < dim(); ++i) v(i, k) *= unit_phases[k];
        return SpectralBasis(eigenvalues_, std::move(v), source_);
    }

private:
    std::vector<double> eigenvalues_;
    ComplexMatrix eigenvectors_;
    ComplexMatrix source_;
};

inline SpectralBasis spectral_basis(const ComplexMatrix& b,
                                    double degeneracy_tol = defaults::degeneracy_tol) {
    EigenSystem es = eigh(b);
    const std::size_t n = es.eigenvalues.size();
    if (n >= 2) {
        const double range = es.eigenvalues.back() - es.eigenvalues.front();
        const double gap_floor = degeneracy_tol * std::max(1.0, range);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double gap = es.eigenvalues[i + 1] - es.eigenvalues[i];
            if (gap <= gap_floor)
                throw DegenerateSpectrum("spectral_basis: adjacent eigenvalue gap " +
                                         std::to_string(gap) + " at index " + std::to_string(i) +
                                         " is below the floor " + std::to_string(gap_floor));
        }
    }
    return SpectralBasis(std::move(es.eigenvalues), std::move(es.eigenvectors), b);
}

// f(B)|psi> = sum_k f_k <b_k|psi> |b_k>, without forming the matrix.
inline std::vector<cplx> apply_spectrum_function(const SpectralBasis& basis,
                                                 const SpectrumFunction& fn,
                                                 const std::vector<cplx>& v) {
    const std::size_t n = basis.dim();
    if (fn.size() != n || v.size() != n)
        throw DimensionMismatch("apply_spectrum_function: length mismatch");
    std::vector<cplx> out(n, cplx{});
    for (std::size_t k = 0; k < n; ++k) {
        const cplx coeff = fn[k] * basis.overlap(k, v);
        for (std::size_t i = 0; i < n; ++i) out[i] += coeff * basis.eigenvectors()(i, k);
    }
    return out;
}

// f(B) = sum_k f_k |b_k><b_k|. Hermitian iff fn is real; normal always.
inline ComplexMatrix operator_function(const SpectralBasis& basis, const SpectrumFunction& fn) {
    const std::size_t n = basis.dim();
    if (fn.size() != n) throw DimensionMismatch("operator_function: function length differs from dim");
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const cplx left = fn[k] * basis.eigenvectors()(i, k);
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += left * std::conj(basis.eigenvectors()(j, k));
        }
    return out;
}

// The weak values A_w(b) = <b|A|psi>/<b|psi> of A over the eigenbasis of B,
// for a fixed state. Snapshot of (A, basis, psi); immutable.
class WeakValueProfile {
public:
    WeakValueProfile(std::vector<cplx> values, std::vector<cplx> overlaps, SpectralBasis basis,
                     PureState state)
        : values_(std::move(values)),
          overlaps_(std::move(overlaps)),
          probabilities_(values_.size()),
          basis_(std::move(basis)),
          state_(std::move(state)) {
        for (std::size_t i = 0; i < overlaps_.size(); ++i) probabilities_[i] = std::norm(overlaps_[i]);
    }

    std::size_t dim() const noexcept { return values_.size(); }
    const std::vector<cplx>& values() const noexcept { return values_; }
    const std::vector<cplx>& overlaps() const noexcept { return overlaps_; }
    const std::vector<double>& probabilities() const noexcept { return probabilities_; }
    const SpectralBasis& basis() const noexcept { return basis_; }
    const PureState& state() const noexcept { return state_; }

    // <Re A_w(B)> = sum p_k Re A_w(b_k)
    double mean_re() const {
        double s = 0.0;
        for (std::size_t k = 0; k < dim(); ++k) s += probabilities_[k] * values_[k].real();
        return s;
    }

    double mean_im() const {
        double s = 0.0;
        for (std::size_t k = 0; k < dim(); ++k) s += probabilities_[k] * values_[k].imag();
        return s;
    }

    // ||Re A_w(B)||^2 = sum p_k (Re A_w(b_k))^2
    double norm_re_sq() const {
        double s = 0.0;
        for (std::size_t k = 0; k < dim(); ++k)
            s += probabilities_[k] * values_[k].real() * values_[k].real();
        return s;
    }

    double norm_im_sq() const {
        double s = 0.0;
        for (std::size_t k = 0; k < dim(); ++k)
            s += probabilities_[k] * values_[k].imag() * values_[k].imag();
        return s;
    }

    double norm_im() const { return std::sqrt(norm_im_sq()); }

private:
    std::vector<cplx> values_;
    std::vector<cplx> overlaps_;
    std::vector<double> probabilities_;
    SpectralBasis basis_;
    PureState state_;
};

inline WeakValueProfile weak_value_profile(const ComplexMatrix& a, const SpectralBasis& basis,
                                           const PureState& psi,
                                           double overlap_tol = defaults::overlap_tol) {
    const std::size_t n = basis.dim();
    if (a.dim() != n || psi.dim() != n)
        throw DimensionMismatch("weak_value_profile: dims differ");

    const std::vector<cplx> apsi = a.apply(psi.amplitudes());
    std::vector<cplx> overlaps(n), values(n);
    for (std::size_t k = 0; k < n; ++k) {
        overlaps[k] = basis.overlap(k, psi.amplitudes());
        if (std::norm(overlaps[k]) < overlap_tol)
            throw ZeroOverlap("weak_value_profile: |<b|psi>|^2 = " +
                              std::to_string(std::norm(overlaps[k])) + " at eigenvalue " +
                              std::to_string(basis.eigenvalues()[k]) + " is below the floor " +
                              std::to_string(overlap_tol));
        values[k] = basis.overlap(k, apsi) / overlaps[k];
    }
    return WeakValueProfile(std::move(values), std::move(overlaps), basis, psi);
}

// Best real proxy function: f_opt(b) = Re A_w(b). Matches A in expectation
// and minimizes ||A - f(B)||.
inline SpectrumFunction optimal_proxy(const WeakValueProfile& profile) {
    std::vector<cplx> v(profile.dim());
    for (std::size_t k = 0; k < profile.dim(); ++k) v[k] = cplx(profile.values()[k].real(), 0.0);
    return SpectrumFunction(std::move(v));
}

// Unit-seminorm direction maximizing |<[A, g(B)]>|/2: Im A_w(b)/||Im A_w(B)||.
inline SpectrumFunction optimal_commutant(const WeakValueProfile& profile,
                                          double floor = defaults::quantum_component_floor) {
    const double nim = profile.norm_im();
    if (nim <= floor)
        throw NoQuantumComponent("optimal_commutant: ||Im A_w(B)|| = " + std::to_string(nim) +
                                 " is below the floor; A behaves as a function of B on this state");
    std::vector<cplx> v(profile.dim());
    for (std::size_t k = 0; k < profile.dim(); ++k)
        v[k] = cplx(profile.values()[k].imag() / nim, 0.0);
    return SpectrumFunction(std::move(v));
}

// ||A - f(B)|| for a real proxy function f.
inline double approximation_error(const ComplexMatrix& a, const SpectrumFunction& fn,
                                  const SpectralBasis& basis, const PureState& psi) {
    if (!fn.is_real()) throw NonRealFunction("approximation_error: proxy function must be real");
    if (a.dim() != basis.dim() || psi.dim() != basis.dim())
        throw DimensionMismatch("approximation_error: dims differ");
    std::vector<cplx> diff = a.apply(psi.amplitudes());
    const std::vector<cplx> fpsi = apply_spectrum_function(basis, fn, psi.amplitudes());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= fpsi[i];
    return norm2(diff);
}

struct IdentityReport {
    double residual_action = 0.0;     // || A|psi> - A_w(B)|psi> ||
    double residual_mean_re = 0.0;    // | <A> - <Re A_w(B)> |
    double residual_mean_im = 0.0;    // | <Im A_w(B)> |
    double residual_norm_split = 0.0; // | ||A||^2 - ||Re A_w(B)||^2 - ||Im A_w(B)||^2 |
    double residual_pythagoras = 0.0; // | ||A-f(B)||^2 - ||A-f_opt(B)||^2 - ||f_opt(B)-f(B)||^2 |
    double residual_distance = 0.0;   // | ||A - f_opt(B)|| - ||Im A_w(B)|| |
};

// Evaluates the exact weak-value identities as residuals; each one compares
// an operator-route computation against the spectral-sum route built from the
// profile, so both sides are computed independently.
inline IdentityReport verify_weak_identities(const ComplexMatrix& a, const SpectralBasis& basis,
                                             const PureState& psi, const SpectrumFunction& fn,
                                             double overlap_tol = defaults::overlap_tol) {
    if (!fn.is_real())
        throw NonRealFunction("verify_weak_identities: comparison function must be real");
    const WeakValueProfile profile = weak_value_profile(a, basis, psi, overlap_tol);
    const std::size_t n = basis.dim();

    IdentityReport r;

    const std::vector<cplx> apsi = a.apply(psi.amplitudes());
    const std::vector<cplx> awpsi =
        apply_spectrum_function(basis, SpectrumFunction(profile.values()), psi.amplitudes());
    {
        std::vector<cplx> diff = apsi;
        for (std::size_t i = 0; i < n; ++i) diff[i] -= awpsi[i];
        r.residual_action = norm2(diff);
    }

    const double mean_a = inner(psi.amplitudes(), apsi).real();
    r.residual_mean_re = std::abs(mean_a - profile.mean_re());
    r.residual_mean_im = std::abs(profile.mean_im());

    const double norm_a = norm2(apsi);
    r.residual_norm_split = std::abs(norm_a * norm_a - profile.norm_re_sq() - profile.norm_im_sq());

    const SpectrumFunction f_opt = optimal_proxy(profile);
    const double err_f = approximation_error(a, fn, basis, psi);
    const double err_opt = approximation_error(a, f_opt, basis, psi);
    double gap_sq = 0.0; // ||f_opt(B) - f(B)||^2 as a function of B
    for (std::size_t k = 0; k < n; ++k) {
        const double d = f_opt[k].real() - fn[k].real();
        gap_sq += profile.probabilities()[k] * d * d;
    }
    r.residual_pythagoras = std::abs(err_f * err_f - err_opt * err_opt - gap_sq);
    r.residual_distance = std::abs(err_opt - profile.norm_im());
    return r;
}

} // namespace wvcalc
