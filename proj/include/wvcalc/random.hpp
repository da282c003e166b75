#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "linalg.hpp"
#include "quantum.hpp"

namespace wvcalc {

// Seeded generator with fully specified output mapping: 53-bit uniforms and
// Box-Muller Gaussians built from them. std::*_distribution is avoided on
// purpose; its streams are implementation-defined and would not reproduce
// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(angle);
        has_spare_ = true;
        return r * std::cos(angle);
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream derived from (seed, stream index); used to make
// per-instance draws independent of evaluation order.
inline Rng derived_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed ^ splitmix64(stream)));
}

// Hermitian part of a matrix with independent standard complex Gaussian
// entries.
inline ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
    ComplexMatrix h(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

// Haar-like state: normalized vector of standard complex Gaussians.
inline PureState random_state(Rng& rng, std::size_t dim) {
    std::vector<cplx> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = cplx(rng.gaussian(), rng.gaussian());
    return PureState::normalized(std::move(v));
}

inline std::vector<double> gaussian_vector(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.gaussian();
    return v;
}

} // namespace wvcalc
