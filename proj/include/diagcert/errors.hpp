#ifndef DIAGCERT_ERRORS_HPP
#define DIAGCERT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diagcert {

/// Caller violated a precondition (mismatched rings, bad index, malformed input).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Polynomial or JSON text that does not follow the accepted grammar.
class ParseError : public UsageError {
public:
    ParseError(const std::string& what, std::size_t position)
        : UsageError(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class DivisionByZero : public UsageError {
public:
    DivisionByZero() : UsageError("division by zero") {}
};

/// A computation exceeded its step budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed: always a bug, never a verdict.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class FullRankRequired : public UsageError {
public:
    FullRankRequired() : UsageError("matrix must be square with nonzero determinant") {}
};

class NotEuclidean : public UsageError {
public:
    explicit NotEuclidean(const std::string& ring)
        : UsageError("ring " + ring + " is not Euclidean; use the diagonalizer instead") {}
};

} // namespace diagcert

#endif
