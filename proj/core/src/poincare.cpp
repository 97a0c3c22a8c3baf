#include "cyclab/poincare.hpp"

#include <cmath>

namespace cyclab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.141592653589793238462643383279502884;
}  // namespace

Complex poincare_map(const PolarEvaluator& H, Complex z0, const IntegratorOptions& opt) {
    const Trajectory traj = integrate_radial(H, z0, opt);
    if (traj.status != TrajectoryStatus::Completed)
        throw TrajectoryIncomplete(traj.status, traj.exit_phi);
    return traj.end;
}

Complex poincare_map(const PolyField& field, Complex z0, const IntegratorOptions& opt) {
    return poincare_map(PolarEvaluator(field, opt.denom_floor), z0, opt);
}

DisplacementValue displacement(const PolarEvaluator& H, const LinearPart& w, Complex z,
                               const IntegratorOptions& opt) {
    DisplacementValue out;
    out.z = z;
    if (z == Complex{0.0}) {
        // g_0(v) = exp(f(pi(v))) - 1; the 0/0 limit is the linear part's map.
        out.at_origin = true;
        out.g = std::exp(linear_f(w, std::min(opt.tol, 1e-12))) - 1.0;
        return out;
    }
    out.g = poincare_map(H, z, opt) / z - 1.0;
    return out;
}

DisplacementValue displacement(const PolyField& field, Complex z, const IntegratorOptions& opt) {
    return displacement(PolarEvaluator(field, opt.denom_floor), field.linear_part(), z, opt);
}

Complex linear_f(const LinearPart& w, double tol) {
    if (tol <= 0.0) throw DomainError("linear_f: tol must be > 0");
    const Complex sum_diag = w.a01 + w.b10;
    const Complex diff = w.b01 - w.a10;

    auto numer = [&](double c, double s) { return w.a10 * c * c + w.b01 * s * s + sum_diag * s * c; };
    auto denom = [&](double c, double s) { return 1.0 + w.b10 * c * c - w.a01 * s * s + diff * s * c; };

    for (int j = 0; j < 4096; ++j) {
        const double phi = kTwoPi * j / 4096;
        if (std::abs(denom(std::cos(phi), std::sin(phi))) < 0.1)
            throw DenominatorNearZero("linear_f: integrand denominator under 0.1");
    }

    // Periodic trapezoid, doubling until the Richardson difference is under
    // tol; spectral for this integrand.
    auto trapezoid = [&](int n) {
        Complex acc{0.0};
        for (int j = 0; j < n; ++j) {
            const double phi = kTwoPi * j / n;
            const double c = std::cos(phi), s = std::sin(phi);
            acc += numer(c, s) / denom(c, s);
        }
        return acc * (kTwoPi / n);
    };

    Complex prev = trapezoid(16);
    for (int n = 32; n <= (1 << 20); n *= 2) {
        const Complex cur = trapezoid(n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw ConvergenceFailure("linear_f: trapezoid doubling did not converge");
}

Prop1Check verify_prop1(const PolyField& field, Complex z0, double norm_cap,
                        const IntegratorOptions& opt, double allowance) {
    if (norm_cap < 0.0) throw DomainError("verify_prop1: norm_cap must be >= 0");
    Prop1Check out;
    out.bound = 8.0 * kPi * norm_cap * std::sqrt(static_cast<double>(field.degree())) *
                std::abs(z0);

    const Trajectory traj = integrate_radial(PolarEvaluator(field, opt.denom_floor), z0, opt);
    if (traj.status != TrajectoryStatus::Completed)
        throw TrajectoryIncomplete(traj.status, traj.exit_phi);

    double observed = 0.0;
    for (const auto& [phi, z] : traj.samples) observed = std::max(observed, std::abs(z - z0));
    // 64 uniform checkpoints via the dense output, independent of where the
    // controller placed its steps.
    for (int j = 1; j < 64; ++j)
        observed = std::max(observed, std::abs(traj.eval(kTwoPi * j / 64) - z0));

    out.observed_max = observed;
    out.margin = out.bound - observed;
    out.bound_holds = observed <= out.bound + allowance;
    return out;
}

}  // namespace cyclab
