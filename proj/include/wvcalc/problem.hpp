#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "linalg.hpp"
#include "quantum.hpp"

namespace wvcalc {

// One problem instance as ingested from disk: two observables, a state, and
// the physics parameters. Matrices are row-major; complex numbers are
// two-element [re, im] arrays.
struct ProblemFile {
    std::size_t dim = 0;
    double hbar = 1.0;
    double t0 = 0.0;
    ComplexMatrix a;
    ComplexMatrix b;
    PureState psi;
};

namespace detail {

inline cplx parse_complex(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(path + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexMatrix parse_matrix(const nlohmann::json& j, std::size_t dim,
                                  const std::string& name) {
    if (!j.is_array() || j.size() != dim)
        throw ValidationError(name, "expected " + std::to_string(dim) + " rows");
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const nlohmann::json& row = j[i];
        if (!row.is_array() || row.size() != dim)
            throw ValidationError(name + "[" + std::to_string(i) + "]",
                                  "expected " + std::to_string(dim) + " entries");
        for (std::size_t jj = 0; jj < dim; ++jj)
            m(i, jj) = parse_complex(row[jj],
                                     name + "[" + std::to_string(i) + "][" + std::to_string(jj) + "]");
    }
    return m;
}

inline void require_hermitian_field(const ComplexMatrix& m, const std::string& name) {
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double asym = std::abs(m(i, j) - std::conj(m(j, i)));
            if (asym > defaults::hermiticity_tol)
                throw ValidationError(name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                                      "not Hermitian: |M_ij - conj(M_ji)| = " + std::to_string(asym));
        }
}

} // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("problem file must be a JSON object");

    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw ValidationError("dim", "required integer field");
    const long long dim_raw = doc["dim"].get<long long>();
    if (dim_raw < 2) throw ValidationError("dim", "must be >= 2");
    const std::size_t dim = static_cast<std::size_t>(dim_raw);

    double hbar = 1.0;
    if (doc.contains("hbar")) {
        if (!doc["hbar"].is_number()) throw ValidationError("hbar", "must be a number");
        hbar = doc["hbar"].get<double>();
        if (!(hbar > 0.0)) throw ValidationError("hbar", "must be positive");
    }
    double t0 = 0.0;
    if (doc.contains("t0")) {
        if (!doc["t0"].is_number()) throw ValidationError("t0", "must be a number");
        t0 = doc["t0"].get<double>();
    }

    for (const char* field : {"A", "B", "psi"})
        if (!doc.contains(field)) throw ValidationError(field, "required field missing");

    ComplexMatrix a = detail::parse_matrix(doc["A"], dim, "A");
    ComplexMatrix b = detail::parse_matrix(doc["B"], dim, "B");
    detail::require_hermitian_field(a, "A");
    detail::require_hermitian_field(b, "B");

    const nlohmann::json& jpsi = doc["psi"];
    if (!jpsi.is_array() || jpsi.size() != dim)
        throw ValidationError("psi", "expected " + std::to_string(dim) + " amplitudes");
    std::vector<cplx> amps(dim);
    for (std::size_t i = 0; i < dim; ++i)
        amps[i] = detail::parse_complex(jpsi[i], "psi[" + std::to_string(i) + "]");
    const double norm = norm2(amps);
    if (std::abs(norm - 1.0) > defaults::state_norm_tol)
        throw ValidationError("psi", "norm " + std::to_string(norm) + " is not 1 within " +
                                         std::to_string(defaults::state_norm_tol));

    return ProblemFile{dim, hbar, t0, std::move(a), std::move(b), PureState(std::move(amps))};
}

inline ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

} // namespace wvcalc
