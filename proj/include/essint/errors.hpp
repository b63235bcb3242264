#pragma once

#include <stdexcept>
#include <string>

namespace essint {

/// Base class for all toolkit errors.  The CLI maps these to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operation asked for a point of an empty set.
struct EmptySetError : Error {
    explicit EmptySetError(const std::string& what) : Error(what) {}
};

/// A point that must belong to a set does not.
struct NotMemberError : Error {
    explicit NotMemberError(const std::string& what) : Error(what) {}
};

/// Enumeration-based conversion requested above the supported ambient dimension.
struct DimensionTooLargeError : Error {
    explicit DimensionTooLargeError(const std::string& what) : Error(what) {}
};

/// A cross-atom or cross-piece product exceeds the enumeration budget.
struct SelectionBlowupError : Error {
    explicit SelectionBlowupError(const std::string& what) : Error(what) {}
};

/// An operation's mathematical hypotheses do not hold on the given data.
struct PreconditionFailedError : Error {
    explicit PreconditionFailedError(const std::string& what) : Error(what) {}
};

/// The penalty minimum is (numerically) zero, so no dual direction exists.
struct DegenerateZeroDualError : Error {
    explicit DegenerateZeroDualError(const std::string& what) : Error(what) {}
};

/// Scale halving did not stabilize the normalized witness within the budget.
struct NoStabilizationError : Error {
    explicit NoStabilizationError(const std::string& what) : Error(what) {}
};

/// Invalid interval or node count for a quadrature grid.
struct BadRangeError : Error {
    explicit BadRangeError(const std::string& what) : Error(what) {}
};

/// The reference point violates the constraint system.
struct InfeasibleError : Error {
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/// A constraint qualification required by a certificate does not hold.
struct QualificationFailedError : Error {
    explicit QualificationFailedError(const std::string& what) : Error(what) {}
};

/// The reference point is not an isolated point of the feasible set.
struct NonoverlapFailedError : Error {
    explicit NonoverlapFailedError(const std::string& what) : Error(what) {}
};

/// The constraint gradient vanishes at an active node.
struct GradientVanishesError : Error {
    explicit GradientVanishesError(const std::string& what) : Error(what) {}
};

/// Structured input could not be parsed; `where` addresses the offending field.
struct ParseError : Error {
    ParseError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), where(where) {}
    std::string where;
};

/// Requested exponent or mode that is declared but not implemented.
struct NotSupportedError : Error {
    explicit NotSupportedError(const std::string& what) : Error(what) {}
};

}  // namespace essint
