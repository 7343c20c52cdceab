#pragma once

#include <stdexcept>
#include <string>

namespace h2opa {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition on user-supplied arguments was violated.
struct InvalidParameters : Error {
    using Error::Error;
};

// Series summation hit max_terms before the stopping rule fired.
struct NonConvergence : Error {
    using Error::Error;
};

// A p = q+1 hypergeometric series was requested at or too near |z| = 1.
struct DivergentArgument : Error {
    using Error::Error;
};

// Linear solve failed: no acceptable pivot.  For the moment matrices handled
// here this cannot happen for valid inputs, so it signals a bug upstream.
struct SingularMatrix : Error {
    using Error::Error;
};

// The symmetric 2x2 reduction of the degree-1 system lost positivity.
// Like SingularMatrix, a bug sentinel rather than an expected outcome.
struct DegenerateSystem : Error {
    using Error::Error;
};

// Symmetric tridiagonal eigensolver did not converge (bug sentinel).
struct EigFailure : Error {
    using Error::Error;
};

// An iterative search (simplex descent, polynomial root iteration) ran out
// of its evaluation budget.
struct NoConvergence : Error {
    using Error::Error;
};

// An internal consistency check failed (e.g. a solver residual above its
// certification bound).  Always indicates a defect, never bad user input.
struct InternalError : Error {
    using Error::Error;
};

} // namespace h2opa
