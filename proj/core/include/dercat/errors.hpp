#ifndef DERCAT_ERRORS_HPP
#define DERCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dercat {

/// Malformed input text (polynomials, interchange documents, numbers).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a structural invariant (d^2 != 0,
/// wrong entry degree, dimension mismatch, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configurable size guard was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Always a bug, never user error.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace dercat

#endif  // DERCAT_ERRORS_HPP
