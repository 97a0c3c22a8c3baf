#include "cyclab/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace cyclab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat, for the embedded 4th-order error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights of the quartic continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

DenseSegment make_dense(double phi, double h, Complex y0, Complex y1, Complex k1, Complex k3,
                        Complex k4, Complex k5, Complex k6, Complex k7) {
    DenseSegment seg;
    seg.phi0 = phi;
    seg.h = h;
    const Complex dy = y1 - y0;
    seg.c1 = y0;
    seg.c2 = dy;
    seg.c3 = h * k1 - dy;
    seg.c4 = dy - h * k7 - seg.c3;
    seg.c5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    return seg;
}

}  // namespace

const char* to_string(TrajectoryStatus s) {
    switch (s) {
        case TrajectoryStatus::Completed: return "Completed";
        case TrajectoryStatus::LeftDomain: return "LeftDomain";
        case TrajectoryStatus::StepFailure: return "StepFailure";
    }
    return "?";
}

TrajectoryIncomplete::TrajectoryIncomplete(TrajectoryStatus s, double phi)
    : std::runtime_error(std::string("trajectory did not complete: ") + to_string(s) +
                         " at phi = " + std::to_string(phi)),
      status(s),
      exit_phi(phi) {}

Complex Trajectory::eval(double phi) const {
    if (dense.empty()) throw DomainError("Trajectory::eval: dense output not kept");
    if (phi <= dense.front().phi0) return start;
    const auto it = std::upper_bound(
        dense.begin(), dense.end(), phi,
        [](double p, const DenseSegment& seg) { return p < seg.phi0; });
    const DenseSegment& seg = (it == dense.begin()) ? *it : *(it - 1);
    const double t = std::clamp((phi - seg.phi0) / seg.h, 0.0, 1.0);
    return seg.eval(t);
}

Trajectory integrate_radial(const PolarEvaluator& H, Complex z0, const IntegratorOptions& opt) {
    if (opt.tol <= 0.0) throw DomainError("integrate_radial: tol must be > 0");

    auto rhs = [&H](Complex z, double phi) { return H(z, phi).H * z; };

    Trajectory traj;
    traj.start = z0;
    traj.samples.emplace_back(0.0, z0);

    double phi = 0.0;
    Complex z = z0;
    Complex k1 = rhs(z, 0.0);  // FSAL
    // Error scale per unit phi; the accumulated estimate then lands under
    // tol * (1 + |z0|) over the 2*pi horizon.
    const double scale = opt.tol * (1.0 + std::abs(z0)) / kTwoPi;
    double h = std::min(opt.h_init, opt.h_max);
    long steps = 0;

    auto finish = [&](TrajectoryStatus status, double exit_phi, Complex zend) {
        traj.status = status;
        traj.exit_phi = exit_phi;
        traj.end = zend;
        traj.steps_taken = steps;
        return traj;
    };

    while (phi < kTwoPi) {
        if (++steps > opt.max_steps) return finish(TrajectoryStatus::StepFailure, phi, z);
        h = std::min(h, kTwoPi - phi);

        const Complex k2 = rhs(z + h * (a21 * k1), phi + c2 * h);
        const Complex k3 = rhs(z + h * (a31 * k1 + a32 * k2), phi + c3 * h);
        const Complex k4 = rhs(z + h * (a41 * k1 + a42 * k2 + a43 * k3), phi + c4 * h);
        const Complex k5 = rhs(z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), phi + c5 * h);
        const Complex k6 =
            rhs(z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), phi + h);
        const Complex z1 = z + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Complex k7 = rhs(z1, phi + h);

        const double err =
            std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double budget = scale * h;  // error-per-unit-step control

        if (err <= budget) {
            const DenseSegment seg = make_dense(phi, h, z, z1, k1, k3, k4, k5, k6, k7);
            if (opt.keep_dense) traj.dense.push_back(seg);
            traj.est_error += err;

            if (std::abs(z1) >= 1.0) {
                // Locate |z| = 1 on the dense segment and halt there.
                double tlo = 0.0, thi = 1.0;
                for (int it = 0; it < 60 && thi - tlo > 1e-14; ++it) {
                    const double tm = 0.5 * (tlo + thi);
                    (std::abs(seg.eval(tm)) >= 1.0 ? thi : tlo) = tm;
                }
                const double exit_phi = phi + thi * h;
                const Complex zexit = seg.eval(thi);
                traj.samples.emplace_back(exit_phi, zexit);
                return finish(TrajectoryStatus::LeftDomain, exit_phi, zexit);
            }

            phi += h;
            z = z1;
            k1 = k7;
            traj.samples.emplace_back(phi, z);

            const double grow =
                (err > 0.0) ? 0.9 * std::pow(budget / err, 0.25) : 5.0;
            h = std::min(opt.h_max, h * std::clamp(grow, 0.2, 5.0));
        } else {
            h *= std::max(0.2, 0.9 * std::pow(budget / err, 0.25));
            if (h < opt.h_min) return finish(TrajectoryStatus::StepFailure, phi, z);
        }
    }
    return finish(TrajectoryStatus::Completed, kTwoPi, z);
}

Trajectory integrate_radial(const PolyField& field, Complex z0, double tol) {
    IntegratorOptions opt;
    opt.tol = tol;
    return integrate_radial(PolarEvaluator(field, opt.denom_floor), z0, opt);
}

}  // namespace cyclab
