#pragma once

#include <utility>
#include <vector>

#include "cyclab/errors.hpp"
#include "cyclab/field.hpp"
#include "cyclab/polar.hpp"

namespace cyclab {

enum class TrajectoryStatus {
    Completed,    // reached phi = 2*pi inside D_1
    LeftDomain,   // |z(phi)| reached 1; halted with the exit phi recorded
    StepFailure,  // step size underflowed or the step budget ran out
};

const char* to_string(TrajectoryStatus s);

// Quartic dense-output segment of one accepted step (Dormand-Prince
// continuous extension): z(phi0 + t*h) for t in [0,1].
struct DenseSegment {
    double phi0 = 0.0, h = 0.0;
    Complex c1, c2, c3, c4, c5;

    Complex eval(double t) const {
        const double t1 = 1.0 - t;
        return c1 + t * (c2 + t1 * (c3 + t * (c4 + t1 * c5)));
    }
};

struct IntegratorOptions {
    double tol = 1e-10;       // target for the accumulated error estimate
    double denom_floor = 0.5; // passed through to the polar evaluation
    double h_init = 0.1;
    double h_max = 0.7853981633974483;  // pi/4; keeps the trig coefficients resolved
    double h_min = 1e-13;
    long max_steps = 1000000;
    bool keep_dense = true;
};

// The complexified radial solution of dz/dphi = H(z,phi) z over [0, 2*pi].
struct Trajectory {
    Complex start{0.0}, end{0.0};
    std::vector<std::pair<double, Complex>> samples;  // accepted steps, (phi, z)
    long steps_taken = 0;
    double est_error = 0.0;
    TrajectoryStatus status = TrajectoryStatus::Completed;
    double exit_phi = 0.0;  // 2*pi when Completed, else phi where we halted
    std::vector<DenseSegment> dense;

    // Dense evaluation on [0, exit_phi]; requires keep_dense.
    Complex eval(double phi) const;
};

// Thrown by callers that need a completed trajectory (Poincare map,
// displacement) when the integration halted early.
struct TrajectoryIncomplete : std::runtime_error {
    TrajectoryIncomplete(TrajectoryStatus s, double phi);
    TrajectoryStatus status;
    double exit_phi;
};

// Adaptive Dormand-Prince 5(4) on dz/dphi = H(z,phi) z, phi from 0 to 2*pi,
// complex z handled as a unit. Error control is per unit phi, so the
// accumulated estimate satisfies est_error <= tol * (1 + |z0|) on completed
// runs. StepFailure is reported in the status, never silently accepted.
Trajectory integrate_radial(const PolarEvaluator& H, Complex z0,
                            const IntegratorOptions& opt = {});

Trajectory integrate_radial(const PolyField& field, Complex z0, double tol);

}  // namespace cyclab
