#pragma once

#include <stdexcept>
#include <string>

namespace qns {

/// Error kinds raised by the library. The CLI maps these onto exit codes:
/// input/validation failures exit 2, numerical failures exit 3.
enum class Errc {
    pole_at_zero,
    not_invertible,
    not_invertible_image,
    dimension_mismatch,
    syntax_error,
    unknown_generator,
    missing_field,
    bad_q_value,
    pole_encountered,
    non_finite_state,
    singular_jacobian,
    reference_diverged,
    not_an_equilibrium,
    not_a_homomorphism,
    io_error,
};

const char* errc_name(Errc code);

/// True for errors that arise from numerics (poles, divergence) rather than
/// from malformed input.
bool is_numerical(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

/// Parse failure with a source position (1-based line and column).
class ParseError : public Error {
public:
    ParseError(Errc code, int line, int column, const std::string& message)
        : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                          ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Integration failure carrying the time at which it occurred.
class IntegrationError : public Error {
public:
    IntegrationError(Errc code, double time, const std::string& message)
        : Error(code, "t=" + std::to_string(time) + ": " + message), time_(time) {}

    double time() const { return time_; }

private:
    double time_;
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::pole_at_zero: return "PoleAtZero";
        case Errc::not_invertible: return "NotInvertible";
        case Errc::not_invertible_image: return "NotInvertibleImage";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::syntax_error: return "SyntaxError";
        case Errc::unknown_generator: return "UnknownGenerator";
        case Errc::missing_field: return "MissingField";
        case Errc::bad_q_value: return "BadQValue";
        case Errc::pole_encountered: return "PoleEncountered";
        case Errc::non_finite_state: return "NonFiniteState";
        case Errc::singular_jacobian: return "SingularJacobian";
        case Errc::reference_diverged: return "ReferenceDiverged";
        case Errc::not_an_equilibrium: return "NotAnEquilibrium";
        case Errc::not_a_homomorphism: return "NotAHomomorphism";
        case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

inline bool is_numerical(Errc code) {
    switch (code) {
        case Errc::pole_at_zero:
        case Errc::pole_encountered:
        case Errc::non_finite_state:
        case Errc::singular_jacobian:
        case Errc::reference_diverged:
            return true;
        default:
            return false;
    }
}

}  // namespace qns
