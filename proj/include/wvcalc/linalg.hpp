#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace wvcalc {

using cplx = std::complex<double>;

namespace defaults {
inline constexpr double hermiticity_tol = 1e-10;
inline constexpr double reconstruction_tol = 1e-10;
} // namespace defaults

// Dense square complex matrix, row-major. Value type; all physics operations
// expect dim >= 2 but the container itself allows any size.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, cplx{}) {}

    ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_)
            throw DimensionMismatch("ComplexMatrix: entry count does not match dim*dim");
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    const std::vector<cplx>& entries() const noexcept { return entries_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : entries_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    // Matrix-vector product M v.
    std::vector<cplx> apply(const std::vector<cplx>& v) const {
        if (v.size() != dim_) throw DimensionMismatch("matrix-vector product: size mismatch");
        std::vector<cplx> out(dim_, cplx{});
        for (std::size_t i = 0; i < dim_; ++i) {
            cplx acc{};
            for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same_dim(a, b);
        ComplexMatrix out(a.dim_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) out.entries_[k] = a.entries_[k] + b.entries_[k];
        return out;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same_dim(a, b);
        ComplexMatrix out(a.dim_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) out.entries_[k] = a.entries_[k] - b.entries_[k];
        return out;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same_dim(a, b);
        const std::size_t n = a.dim_;
        ComplexMatrix out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend ComplexMatrix operator*(const cplx& c, const ComplexMatrix& m) {
        ComplexMatrix out(m.dim_);
        for (std::size_t k = 0; k < m.entries_.size(); ++k) out.entries_[k] = c * m.entries_[k];
        return out;
    }

    friend ComplexMatrix operator*(double c, const ComplexMatrix& m) { return cplx(c, 0.0) * m; }

private:
    static void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dimensions differ");
    }

    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

// <a|b> = sum conj(a_i) b_i
inline cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("inner product: size mismatch");
    cplx acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

inline double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

struct HermitianCheckReport {
    double max_asymmetry = 0.0; // max_ij |M_ij - conj(M_ji)|
};

inline HermitianCheckReport check_hermitian(const ComplexMatrix& m) {
    HermitianCheckReport report;
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            report.max_asymmetry = std::max(report.max_asymmetry, std::abs(m(i, j) - std::conj(m(j, i))));
    return report;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = defaults::hermiticity_tol) {
    return check_hermitian(m).max_asymmetry <= tol;
}

inline void require_hermitian(const ComplexMatrix& m, double tol, const std::string& who) {
    const double asym = check_hermitian(m).max_asymmetry;
    if (asym > tol)
        throw NonHermitianInput(who + ": max asymmetry " + std::to_string(asym) +
                                " exceeds tolerance " + std::to_string(tol));
}

struct EigenSystem {
    std::vector<double> eigenvalues; // ascending
    ComplexMatrix eigenvectors;      // column k belongs to eigenvalues[k]
};

// Cyclic Jacobi diagonalization for complex Hermitian matrices. Each rotation
// is the unitary that zeroes one off-diagonal 2x2 block; sweeps repeat until
// the off-diagonal mass is at round-off level. Deterministic: fixed pivot
// order, no data-dependent branching beyond the skip threshold.
inline EigenSystem eigh(const ComplexMatrix& m, double hermiticity_tol = defaults::hermiticity_tol) {
    const std::size_t n = m.dim();
    require_hermitian(m, hermiticity_tol, "eigh");

    // Iterate on the Hermitian part so input asymmetry at round-off scale
    // cannot drift through the sweeps.
    ComplexMatrix w(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = w.frobenius_norm();
    const double off_tol = 1e-14 * std::max(1.0, scale);
    const double skip_tol = 0.01 * off_tol / static_cast<double>(std::max<std::size_t>(n, 2));

    const auto off_norm = [&w, n] {
        double s = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * std::norm(w(p, q));
        return std::sqrt(s);
    };

    constexpr int max_sweeps = 80;
    bool converged = off_norm() <= off_tol;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx beta = w(p, q);
                const double ab = std::abs(beta);
                if (ab <= skip_tol) continue;

                const double alpha = w(p, p).real();
                const double gamma = w(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * ab);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const cplx s = (t * c / ab) * beta; // t*c * exp(i arg beta)

                for (std::size_t r = 0; r < n; ++r) { // W <- W R
                    const cplx wp = w(r, p), wq = w(r, q);
                    w(r, p) = c * wp - std::conj(s) * wq;
                    w(r, q) = s * wp + c * wq;
                }
                for (std::size_t r = 0; r < n; ++r) { // W <- R^H W
                    const cplx wp = w(p, r), wq = w(q, r);
                    w(p, r) = c * wp - s * wq;
                    w(q, r) = std::conj(s) * wp + c * wq;
                }
                for (std::size_t r = 0; r < n; ++r) { // V <- V R
                    const cplx vp = v(r, p), vq = v(r, q);
                    v(r, p) = c * vp - std::conj(s) * vq;
                    v(r, q) = s * vp + c * vq;
                }
                w(p, q) = cplx{};
                w(q, p) = cplx{};
                w(p, p) = cplx(w(p, p).real(), 0.0);
                w(q, q) = cplx(w(q, q).real(), 0.0);
            }
        }
        converged = off_norm() <= off_tol;
    }
    if (!converged)
        throw ConvergenceFailure("eigh: Jacobi sweeps did not reach residual tolerance in " +
                                 std::to_string(max_sweeps) + " sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&w](std::size_t a, std::size_t b) { return w(a, a).real() < w(b, b).real(); });

    EigenSystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = w(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }

    // Phase convention: first component of each eigenvector with modulus
    // above 1e-8 is made real positive, so repeated runs (and downstream
    // weak-value profiles) are byte-stable.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = 0; r < n; ++r) {
            const double mag = std::abs(out.eigenvectors(r, k));
            if (mag > 1e-8) {
                const cplx phase = out.eigenvectors(r, k) / mag;
                const cplx correction = std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) *= correction;
                break;
            }
        }
    }
    return out;
}

// exp(-i s A) for Hermitian A, via the spectral decomposition. Unitary up to
// round-off.
inline ComplexMatrix generator_exponential(const ComplexMatrix& a, double s,
                                           double hermiticity_tol = defaults::hermiticity_tol) {
    const EigenSystem es = eigh(a, hermiticity_tol);
    const std::size_t n = a.dim();
    std::vector<cplx> phase(n);
    for (std::size_t k = 0; k < n; ++k) phase[k] = std::exp(cplx(0.0, -s * es.eigenvalues[k]));

    ComplexMatrix u(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += es.eigenvectors(i, k) * phase[k] * std::conj(es.eigenvectors(j, k));
            u(i, j) = acc;
        }
    return u;
}

} // namespace wvcalc
