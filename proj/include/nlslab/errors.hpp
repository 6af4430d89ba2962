#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

// Raised when an input violates the documented preconditions of an operation.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a numerical guard trips (blow-up, non-finite state).
class NumericalGuardError : public std::runtime_error {
public:
    explicit NumericalGuardError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a file cannot be read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw PreconditionError(msg);
}

} // namespace nlslab
