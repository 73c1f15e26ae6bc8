#pragma once

#include <stdexcept>
#include <string>

namespace kquant {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structure constants that break antisymmetry or the Jacobi identity.
struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoordinateMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GraphError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested size is above the configured resource ceiling.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Form degree differs from the dimension of the configuration space, so the
// weight vanishes identically.
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The weight table does not reach the graph order a computation needs.
struct CoverageError : std::runtime_error {
    CoverageError(int order, const std::string& what)
        : std::runtime_error(what), missing_order(order) {}
    int missing_order;
};

struct ReconstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConstraint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistentConstraints : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JetOrderError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace kquant
