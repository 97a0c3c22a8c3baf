#pragma once

#include <vector>

#include "cyclab/field.hpp"

namespace cyclab {

// Values of the polar-form data at one (z, phi):
//   P = (x F + y G) / r^2,   Q = (x G - y F) / r^2,   H = P / (1 + Q),
// with x = z cos(phi), y = z sin(phi) and the r^2 cancellation performed on
// monomial exponents, never by numeric division.
struct PolarEvaluation {
    Complex P{0.0}, Q{0.0}, H{0.0};
};

// Largest coefficient norm for which the smallness condition
// N <= 1/(40 pi sqrt(d)) holds.
double regime_norm(int degree);

// delta_N = N sqrt(d) / (1 - N sqrt(d)); the sup bound on |H| over
// D_1 x [0,2pi] for fields of coefficient norm N. Throws RegimeViolation
// when N sqrt(d) >= 1.
double delta_bound(double norm, int degree);

// Evaluates P and Q as polynomials of degree d-1 in z whose phi-dependent
// coefficients are monomial sums: each x^k y^i monomial of xF + yG carries
// r^(k+i+1), so after the r^2 cancellation the z-exponent is k+i-1 >= 0.
//
// Construct once per field; operator() is const and thread-safe.
class PolarEvaluator {
public:
    // denom_floor: |1 + Q| below this throws DenominatorNearZero. The
    // default 0.5 is far outside the theorem regime, where |Q| <= 3/(40 pi).
    explicit PolarEvaluator(const PolyField& field, double denom_floor = 0.5);

    PolarEvaluation operator()(Complex z, double phi) const;

    int degree() const { return degree_; }
    double denom_floor() const { return denom_floor_; }

private:
    int degree_;
    double denom_floor_;
    // Coefficients grouped by total degree m = k+i, k ascending inside a group.
    std::vector<Complex> a_, b_;
};

inline PolarEvaluation eval_polar(const PolyField& field, Complex z, double phi,
                                  double denom_floor = 0.5) {
    return PolarEvaluator(field, denom_floor)(z, phi);
}

}  // namespace cyclab
