#pragma once

#include <stdexcept>
#include <string>

namespace tracelab {

enum class ErrorKind {
    NotPrime,
    CapExceeded,
    ZeroPolynomial,
    EvenCharacteristic,
    UnsupportedDivisor,
    UnsupportedCurve,
    ZeroFunction,
    NotTwoTorsion,
    InconsistentCounts,
    NonReducedSpectralCurve,
    SingularSpectralCurve,
    Parse,
    Internal,
};

inline const char *error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::UnsupportedDivisor: return "UnsupportedDivisor";
    case ErrorKind::UnsupportedCurve: return "UnsupportedCurve";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::NotTwoTorsion: return "NotTwoTorsion";
    case ErrorKind::InconsistentCounts: return "InconsistentCounts";
    case ErrorKind::NonReducedSpectralCurve: return "NonReducedSpectralCurve";
    case ErrorKind::SingularSpectralCurve: return "SingularSpectralCurve";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Internal invariant violation; never expected on valid input.
inline void check(bool cond, const char *what)
{
    if (!cond) {
        throw Error(ErrorKind::Internal, what);
    }
}

inline void check(bool cond, const std::string &what)
{
    if (!cond) {
        throw Error(ErrorKind::Internal, what);
    }
}

} // namespace tracelab
