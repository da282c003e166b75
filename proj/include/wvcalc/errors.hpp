#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wvcalc {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitianInput : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };

// The spectral framework assumes a non-degenerate measured observable and
// nonvanishing overlaps <b|psi>; these signal that the assumption failed.
struct DegenerateSpectrum : Error { using Error::Error; };
struct ZeroOverlap : Error { using Error::Error; };

// Im A_w(B) vanishes on the state: A acts like a function of B there.
struct NoQuantumComponent : Error { using Error::Error; };

struct NonRealFunction : Error { using Error::Error; };
struct DegenerateVariance : Error { using Error::Error; };
struct VanishingFisher : Error { using Error::Error; };
struct NotLocallyUnbiased : Error { using Error::Error; };

// Cross-route consistency checks inside an operation failed; indicates a bug,
// not bad user input.
struct InternalConsistency : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };

// Input validation failure; carries the path of the offending field ("A[0][1]").
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace wvcalc
