#pragma once

#include <stdexcept>
#include <string>

namespace thetalat {

struct NotSymmetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroRank : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyDegrees : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DependentGenerators : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotABasis : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration visited more points than the configured cap allows.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ToleranceUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EBelowMinimum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotArithmetic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInNE : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace thetalat
