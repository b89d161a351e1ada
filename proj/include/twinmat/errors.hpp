#pragma once

#include <stdexcept>
#include <string>

namespace twinmat {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Index or rectangle outside the matrix / universe.
class BoundsError : public Error {
public:
    using Error::Error;
};

// Two rectangles that must be disjoint share an entry (or interior point).
class OverlapError : public Error {
public:
    using Error::Error;
};

// Malformed text or binary input. `line` is 1-based, 0 when not applicable.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class MalformedSequence : public Error {
public:
    using Error::Error;
};

class ContractViolation : public Error {
public:
    using Error::Error;
};

class EmptyError : public Error {
public:
    using Error::Error;
};

class InvalidN : public Error {
public:
    using Error::Error;
};

class ConstructionInvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace twinmat
