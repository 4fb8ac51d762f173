#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace symtower {

enum class ErrorKind {
    InvalidBase,
    NonCoprimeModulus,
    ArityMismatch,
    TowerMismatch,
    NotDescendable,
    DegreeMismatch,
    ModulusMismatch,
    NotLiftable,
    InnerUniformizer,
    NonMonomialEntry,
    IdentityFailure,
    NotTopDegree,
    MixedDegrees,
    GcdFailure,
    ZeroInput,
    ReciprocityViolation,
    ParseError,
    UnknownGenerator,
    PreconditionViolation,
};

const char* to_string(ErrorKind kind);

/// Engine-level error. `position` is set for parse errors (1-based column).
class CalcError : public std::runtime_error {
public:
    CalcError(ErrorKind kind, const std::string& message, std::optional<int> position = std::nullopt)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind),
          position_(position) {}

    ErrorKind kind() const { return kind_; }
    std::optional<int> position() const { return position_; }

private:
    ErrorKind kind_;
    std::optional<int> position_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw CalcError(kind, message);
}

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidBase: return "InvalidBase";
        case ErrorKind::NonCoprimeModulus: return "NonCoprimeModulus";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::TowerMismatch: return "TowerMismatch";
        case ErrorKind::NotDescendable: return "NotDescendable";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::ModulusMismatch: return "ModulusMismatch";
        case ErrorKind::NotLiftable: return "NotLiftable";
        case ErrorKind::InnerUniformizer: return "InnerUniformizer";
        case ErrorKind::NonMonomialEntry: return "NonMonomialEntry";
        case ErrorKind::IdentityFailure: return "IdentityFailure";
        case ErrorKind::NotTopDegree: return "NotTopDegree";
        case ErrorKind::MixedDegrees: return "MixedDegrees";
        case ErrorKind::GcdFailure: return "GcdFailure";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::ReciprocityViolation: return "ReciprocityViolation";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownGenerator: return "UnknownGenerator";
        case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    }
    return "UnknownError";
}

}  // namespace symtower
