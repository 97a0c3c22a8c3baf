#pragma once

#include "cyclab/field.hpp"
#include "cyclab/integrate.hpp"

namespace cyclab {

// g_v(z) = P_v(z)/z - 1, continued through the origin by the linear part:
// g_v(0) = exp(f(pi(v))) - 1.
struct DisplacementValue {
    Complex z{0.0};
    Complex g{0.0};
    bool at_origin = false;
};

// z(2*pi) for the radial equation started at z0. Throws TrajectoryIncomplete
// unless the trajectory completes.
Complex poincare_map(const PolyField& field, Complex z0, const IntegratorOptions& opt = {});
Complex poincare_map(const PolarEvaluator& H, Complex z0, const IntegratorOptions& opt = {});

DisplacementValue displacement(const PolyField& field, Complex z, const IntegratorOptions& opt = {});
DisplacementValue displacement(const PolarEvaluator& H, const LinearPart& w, Complex z,
                               const IntegratorOptions& opt = {});

// The exponent of the explicit linear-center Poincare map P^l_w(z) = e^f z:
//   f(w) = integral over [0,2pi] of
//          (a10 cos^2 + b01 sin^2 + (a01+b10) sin cos)
//        / (1 + b10 cos^2 - a01 sin^2 + (b01-a10) sin cos) dphi,
// by periodic trapezoid doubling with Richardson verification. Throws
// DenominatorNearZero if the denominator modulus dips under 0.1 on a fine
// grid, ConvergenceFailure if doubling stalls.
Complex linear_f(const LinearPart& w, double tol = 1e-12);

struct Prop1Check {
    bool bound_holds = false;
    double margin = 0.0;        // bound - observed_max
    double observed_max = 0.0;  // max over the trajectory of |z(phi) - z(0)|
    double bound = 0.0;         // 8 pi N sqrt(d) |z0|
};

// Checks |z(phi) - z(0)| <= 8 pi N sqrt(d) |z(0)| along the whole trajectory:
// accepted steps plus 64 uniform dense-output checkpoints, so the verdict
// does not depend on adaptive step placement. norm_cap is the regime N
// (the field should satisfy coeff_norm <= 2N).
Prop1Check verify_prop1(const PolyField& field, Complex z0, double norm_cap,
                        const IntegratorOptions& opt = {}, double allowance = 1e-8);

}  // namespace cyclab
