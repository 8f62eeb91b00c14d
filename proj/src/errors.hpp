#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace minuscule {

// Every failure raised by the core derives from Error; the C boundary maps
// each subclass onto one status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller passed an argument outside the operation's domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Input data (files, tableaux, heights) failed validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

// An exhaustive traversal would exceed its configured cap.
class ResourceError : public Error {
public:
    ResourceError(const std::string &what, std::uint64_t cap)
        : Error(what + " (cap = " + std::to_string(cap) + ")"), cap_(cap) {}
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t cap_;
};

// The operation is not defined for this kind of poset.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// A mathematical invariant that must hold did not.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace minuscule
