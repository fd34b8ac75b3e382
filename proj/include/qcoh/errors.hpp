#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Semantic dimension constraints (d < 2, qubit-only operations, grid limits).
struct DimensionError : Error {
    using Error::Error;
};

// Structural mismatches: entry-count vs rows*cols, non-square input,
// operands of incompatible sizes.
struct ShapeError : Error {
    using Error::Error;
};

// Non-finite entries or a Hermiticity violation on construction.
struct InvalidMatrixError : Error {
    using Error::Error;
};

// Trace or probability sum differs from 1 beyond tolerance.
struct NormalizationError : Error {
    using Error::Error;
};

// Positive semidefiniteness failed; carries the offending eigenvalue.
struct NotAStateError : Error {
    double min_eigenvalue;
    NotAStateError(const std::string& msg, double min_eig)
        : Error(msg), min_eigenvalue(min_eig) {}
};

// Eigen/singular solver did not converge.
struct EigenSolverError : Error {
    int dim;
    double residual;
    EigenSolverError(const std::string& msg, int dim_, double residual_)
        : Error(msg), dim(dim_), residual(residual_) {}
};

// Iterative minimizer exhausted its budget; carries the best value found.
struct ConvergenceError : Error {
    double best_value;
    ConvergenceError(const std::string& msg, double best)
        : Error(msg), best_value(best) {}
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

// Random generation exceeded its rejection cap or is infeasible.
struct GenerationError : Error {
    using Error::Error;
};

// Kraus set fails the completeness relation; carries the worst deviation.
struct CompletenessError : Error {
    double worst_deviation;
    CompletenessError(const std::string& msg, double dev)
        : Error(msg), worst_deviation(dev) {}
};

// An operator expected to be strictly incoherent is not.
struct SIOError : Error {
    using Error::Error;
};

// Malformed input file or JSON document.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace qcoh
