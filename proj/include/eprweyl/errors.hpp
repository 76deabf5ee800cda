#pragma once

#include <stdexcept>
#include <string>

namespace eprweyl {

// Bad input: dimension mismatch, malformed file, duplicate points.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured size limit (term count, point count) was exceeded.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A structural property that must hold failed (e.g. a Gram matrix that is not PSD).
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eprweyl
