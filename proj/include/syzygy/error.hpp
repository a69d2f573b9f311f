#pragma once

#include <stdexcept>
#include <string>

namespace syzygy {

enum class ErrorKind {
    Inconsistent,
    NotCoprime,
    NotAdmissible,
    NotFiniteDimensional,
    BimoduleMismatch,
    NotIdempotent,
    DimensionMismatch,
    AlgebraMismatch,
    NotStable,
    ShapeMismatch,
    CharTooSmall,
    NotIdempotentInQuotient,
    RandomnessExhausted,
    InvalidAlgebra,
    Parse,
    ResourceLimit,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotFiniteDimensional: return "NotFiniteDimensional";
    case ErrorKind::BimoduleMismatch: return "BimoduleMismatch";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::CharTooSmall: return "CharTooSmall";
    case ErrorKind::NotIdempotentInQuotient: return "NotIdempotentInQuotient";
    case ErrorKind::RandomnessExhausted: return "RandomnessExhausted";
    case ErrorKind::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace syzygy
