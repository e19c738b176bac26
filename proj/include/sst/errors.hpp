#pragma once

#include <stdexcept>

namespace sst {

// Precondition violations (bad lengths, out-of-range parameters) are reported
// with std::invalid_argument. The types below cover the failure modes that
// callers are expected to distinguish.

/// Input outside the mathematical domain of an operation (zero-probability
/// symbol, symbol out of range, rank out of range).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A string of length n+k that is not the image of any length-n string.
class NotInImageError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The requested exact computation would exceed the configured enumeration cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bitstream or container that was not produced by the encoder.
class CorruptStreamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sst
