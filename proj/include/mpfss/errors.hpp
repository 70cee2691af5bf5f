#pragma once

#include <stdexcept>
#include <string>

namespace mpfss {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar-field errors.
struct InvalidScalar : Error {
    using Error::Error;
};

// Malformed or non-canonical serialized data (group elements, key files,
// share files, unknown PRG versions).
struct DecodeError : Error {
    using Error::Error;
};

// Sharing-parameter violations: 2m >= p.
struct MajorityViolation : Error {
    using Error::Error;
};

// cnf_open received views that do not cover every subset component.
struct IncompleteShares : Error {
    using Error::Error;
};

// Two replicas of the same subset component disagree.
struct InconsistentShares : Error {
    using Error::Error;
};

// Two values that must share parameters (p, m, group, invocation) do not.
struct ParameterMismatch : Error {
    using Error::Error;
};

// Evaluation/generation point outside the function domain.
struct DomainError : Error {
    using Error::Error;
};

// Encoder input outside the encodable range.
struct RangeError : Error {
    using Error::Error;
};

// Decoded value falls outside the decodable range (BSGS exhausted);
// signals beta >= bound_B or corrupted shares.
struct OutOfRangeError : Error {
    using Error::Error;
};

// Point encoding found no curve point in the padding window.
struct EncodingFailure : Error {
    using Error::Error;
};

}  // namespace mpfss
