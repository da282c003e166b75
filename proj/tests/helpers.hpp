#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "wvcalc/wvcalc.hpp"

namespace testutil {

using wvcalc::cplx;
using wvcalc::ComplexMatrix;
using wvcalc::PureState;

inline constexpr double kPi = 3.14159265358979323846;

inline ComplexMatrix mat2(cplx a00, cplx a01, cplx a10, cplx a11) {
    ComplexMatrix m(2);
    m(0, 0) = a00;
    m(0, 1) = a01;
    m(1, 0) = a10;
    m(1, 1) = a11;
    return m;
}

inline ComplexMatrix pauli_x() { return mat2(0.0, 1.0, 1.0, 0.0); }
inline ComplexMatrix pauli_y() { return mat2(0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0); }
inline ComplexMatrix pauli_z() { return mat2(1.0, 0.0, 0.0, -1.0); }

// |psi> = (cos(theta/2), e^{i phi} sin(theta/2))
inline PureState bloch_state(double theta, double phi) {
    return PureState({cplx(std::cos(theta / 2.0), 0.0),
                      std::exp(cplx(0.0, phi)) * std::sin(theta / 2.0)});
}

// Closed-form qubit oracles, derived by direct 2x2 evaluation.
inline double bloch_exp_x(double theta, double phi) { return std::sin(theta) * std::cos(phi); }
inline double bloch_exp_y(double theta, double phi) { return std::sin(theta) * std::sin(phi); }
inline double bloch_exp_z(double theta) { return std::cos(theta); }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

} // namespace testutil
