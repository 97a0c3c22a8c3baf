#pragma once

#include <stdexcept>
#include <string>

namespace cyclab {

// |1 + Q| fell under the configured floor: the polar reduction
// dz/dphi = P/(1+Q) z is not usable for this field at this point.
struct DenominatorNearZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quantity left the smallness regime a formula requires (e.g. N*sqrt(d) >= 1).
struct RegimeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violation on plain-arithmetic operations (Jensen bound, constants).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Every contour radius tried by the zero counter had |f| dipping to ~0.
struct ZeroOnContour : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accumulated argument along the contour is not close to a multiple of 2*pi
// even after maximal refinement.
struct NonIntegerWinding : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sup |f| vanished on a positive-measure subset; an analytic f must be == 0.
struct DegenerateSup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative numeric routine (quadrature, refinement loop) ran out of budget.
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cyclab
