#pragma once

#include <stdexcept>
#include <string>

namespace toeprank {

/// Raised when user-supplied input violates a documented precondition
/// (bad labels, malformed files, k < 1, missing parameter values, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internally produced certificate fails its own checks.
/// Seeing this exception means a bug in the library, not in the input.
class CertificateError : public std::runtime_error {
public:
    explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a brute-force oracle would exceed its hard size guard.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace toeprank
