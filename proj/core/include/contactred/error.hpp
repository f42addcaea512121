#pragma once

#include <stdexcept>
#include <string>

namespace contactred {

// Base class for all failures raised by the library. Callers that only
// need coarse triage can catch this; the CLI maps subtypes to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input shapes don't match (ambient dimension, basis length, mu length, ...).
struct DimensionError : Error {
    using Error::Error;
};

// A point violates the manifold constraints beyond the admission tolerance.
struct OffManifoldError : Error {
    using Error::Error;
};

// A rank condition failed where the operation needs full rank
// (singular point of a constraint system, degenerate Reeb system, ...).
struct SingularityError : Error {
    using Error::Error;
};

// An iterative solve did not reach its residual target.
struct ConvergenceError : Error {
    using Error::Error;
};

// Malformed catalog data, scenario ids, or config files.
struct CatalogError : Error {
    using Error::Error;
};

// The operation is only implemented for the dimension range the scenario
// catalog actually uses.
struct UnsupportedDimensionError : Error {
    using Error::Error;
};

} // namespace contactred
