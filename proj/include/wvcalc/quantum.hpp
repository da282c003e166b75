#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace wvcalc {

namespace defaults {
inline constexpr double state_norm_tol = 1e-8;
} // namespace defaults

// Normalized complex vector. Validated on construction, never silently
// renormalized; use PureState::normalized for ingestion of raw amplitudes.
class PureState {
public:
    explicit PureState(std::vector<cplx> amplitudes, double norm_tol = defaults::state_norm_tol)
        : amps_(std::move(amplitudes)) {
        const double n = norm2(amps_);
        if (std::abs(n - 1.0) > norm_tol)
            throw ValidationError("state", "norm " + std::to_string(n) + " is not 1 within " +
                                               std::to_string(norm_tol));
    }

    static PureState normalized(std::vector<cplx> raw) {
        const double n = norm2(raw);
        if (n == 0.0) throw ValidationError("state", "cannot normalize the zero vector");
        for (cplx& z : raw) z /= n;
        return PureState(std::move(raw));
    }

    std::size_t dim() const noexcept { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const noexcept { return amps_; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }

private:
    std::vector<cplx> amps_;
};

struct PhysicsConfig {
    double hbar = 1.0;
};

// <psi|X|psi>. Real up to round-off when X is Hermitian; callers that know X
// is an observable take the real part.
inline cplx expectation(const ComplexMatrix& x, const PureState& psi) {
    if (x.dim() != psi.dim()) throw DimensionMismatch("expectation: operator/state dims differ");
    return inner(psi.amplitudes(), x.apply(psi.amplitudes()));
}

// ||X|| = sqrt(<X^dag X>) evaluated as the 2-norm of X|psi>; equals
// sqrt(<X^2>) for Hermitian X and is nonnegative by construction.
inline double seminorm(const ComplexMatrix& x, const PureState& psi) {
    if (x.dim() != psi.dim()) throw DimensionMismatch("seminorm: operator/state dims differ");
    return norm2(x.apply(psi.amplitudes()));
}

struct MomentReport {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    double cov = 0.0;                // 1/2 <{A,B}> - <A><B>
    cplx commutator_half{};          // <[A,B]>/2, purely imaginary for Hermitian A, B
    double anticommutator_half = 0.0; // Re <{A,B}>/2
};

inline MomentReport moments(const ComplexMatrix& a, const ComplexMatrix& b, const PureState& psi) {
    if (a.dim() != psi.dim() || b.dim() != psi.dim())
        throw DimensionMismatch("moments: operator/state dims differ");

    const std::vector<cplx>& amp = psi.amplitudes();
    const std::vector<cplx> apsi = a.apply(amp);
    const std::vector<cplx> bpsi = b.apply(amp);

    MomentReport r;
    r.mean_a = inner(amp, apsi).real();
    r.mean_b = inner(amp, bpsi).real();

    std::vector<cplx> da = apsi, db = bpsi;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        da[i] -= r.mean_a * amp[i];
        db[i] -= r.mean_b * amp[i];
    }
    const double sa = norm2(da), sb = norm2(db);
    r.var_a = sa * sa;
    r.var_b = sb * sb;

    const cplx zab = inner(amp, a.apply(bpsi)); // <A B>
    const cplx zba = inner(amp, b.apply(apsi)); // <B A>
    r.commutator_half = 0.5 * (zab - zba);
    r.anticommutator_half = 0.5 * (zab + zba).real();
    r.cov = r.anticommutator_half - r.mean_a * r.mean_b;
    return r;
}

} // namespace wvcalc
