#pragma once

#include <stdexcept>
#include <string>

namespace cmbound {

enum class ErrorKind {
    DegenerateInput,
    NotIrreducible,
    NotCM,
    UnsupportedDegree,
    NotAnOrder,
    NotConjugationStable,
    InvalidB,
    NotAGenerator,
    CaseMismatch,
    PrecisionExhausted,
    MixedAlgebras,
    NotIntegral,
    NotPrime,
    MalformedCertificate,
    SingularCurve,
    InvalidInvariants,
    MixedInput,
    AmbiguousReconstruction,
    MalformedInput,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    const char* kind_name() const noexcept;

private:
    ErrorKind kind_;
};

/* Domain errors are mathematical impossibilities of the input (not CM,
 * singular curve, ...), as opposed to malformed input or internal faults. */
bool is_domain_error(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

}  // namespace cmbound
