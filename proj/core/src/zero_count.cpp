#include "cyclab/zero_count.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cyclab/poincare.hpp"

namespace cyclab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.141592653589793238462643383279502884;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Real displacement at radius r, or nothing when the trajectory leaves D_1.
std::optional<double> real_displacement(const PolarEvaluator& H, double r,
                                        const IntegratorOptions& opt) {
    const Trajectory traj = integrate_radial(H, Complex{r, 0.0}, opt);
    if (traj.status == TrajectoryStatus::LeftDomain) return std::nullopt;
    if (traj.status != TrajectoryStatus::Completed)
        throw TrajectoryIncomplete(traj.status, traj.exit_phi);
    return traj.end.real() / r - 1.0;
}

struct ScanAnalysis {
    int count = 0;
    std::vector<double> crossings;
    std::vector<Suspect> suspects;
    bool origin_unresolved = false;
    int domain_exits = 0;
    bool bisection_trouble = false;
};

ScanAnalysis analyze_grid(const PolarEvaluator& H, const std::vector<double>& xs,
                          const std::vector<std::optional<double>>& gs, double threshold,
                          const IntegratorOptions& iopt, double root_xtol) {
    ScanAnalysis out;
    const int n = static_cast<int>(xs.size());

    double max_abs = 0.0;
    for (int j = 0; j < n; ++j) {
        if (!gs[j]) {
            ++out.domain_exits;
            continue;
        }
        max_abs = std::max(max_abs, std::abs(*gs[j]));
    }
    if (out.domain_exits == n || max_abs < threshold) {
        // g == 0 candidate on the whole scanned segment: a nonisolated
        // periodic annulus cannot be told apart from zero at this precision.
        out.origin_unresolved = true;
        out.suspects.push_back({Suspect::Kind::Origin, Complex{xs.front(), 0.0}});
        return out;
    }

    std::vector<char> crossing_adjacent(n, 0);
    for (int j = 0; j + 1 < n; ++j) {
        if (!gs[j] || !gs[j + 1]) continue;
        const int s0 = sign_of(*gs[j]), s1 = sign_of(*gs[j + 1]);
        bool bracket = s0 * s1 < 0;
        double lo = xs[j], hi = xs[j + 1];
        double glo = *gs[j];
        if (!bracket && s0 == 0 && j > 0 && gs[j - 1] && sign_of(*gs[j - 1]) * s1 < 0) {
            // Exact zero on a grid point with a sign flip across it.
            out.crossings.push_back(xs[j]);
            ++out.count;
            crossing_adjacent[j] = 1;
            continue;
        }
        if (!bracket) continue;

        crossing_adjacent[j] = crossing_adjacent[j + 1] = 1;
        bool ok = true;
        while (hi - lo > root_xtol) {
            const double mid = 0.5 * (lo + hi);
            const auto gm = real_displacement(H, mid, iopt);
            if (!gm) {
                ok = false;
                break;
            }
            if (sign_of(*gm) == sign_of(glo) || *gm == 0.0) {
                lo = mid;
                glo = *gm;
                if (*gm == 0.0) break;
            } else {
                hi = mid;
            }
        }
        if (ok) {
            out.crossings.push_back(0.5 * (lo + hi));
            ++out.count;
        } else {
            out.bisection_trouble = true;
            out.suspects.push_back({Suspect::Kind::Tangency, Complex{0.5 * (lo + hi), 0.0}});
        }
    }

    // Near-zero local minima with no sign change: even-multiplicity cycle
    // candidates, invisible to a sign scan.
    for (int j = 0; j < n; ++j) {
        if (!gs[j] || crossing_adjacent[j] || std::abs(*gs[j]) >= threshold) continue;
        const bool left_ok = j == 0 || !gs[j - 1] || std::abs(*gs[j - 1]) >= std::abs(*gs[j]);
        const bool right_ok =
            j + 1 == n || !gs[j + 1] || std::abs(*gs[j + 1]) >= std::abs(*gs[j]);
        if (left_ok && right_ok)
            out.suspects.push_back({Suspect::Kind::Tangency, Complex{xs[j], 0.0}});
    }
    return out;
}

}  // namespace

const char* to_string(Suspect::Kind k) {
    switch (k) {
        case Suspect::Kind::Tangency: return "tangency";
        case Suspect::Kind::ContourDip: return "contour_dip";
        case Suspect::Kind::Origin: return "origin";
    }
    return "?";
}

ZeroCountResult count_real_cycles(const PolyField& field, const RealScanOptions& opt) {
    if (!field.is_real())
        throw DomainError("count_real_cycles: field must have real coefficients");
    if (opt.eps_inner <= 0.0 || opt.eps_inner >= opt.r_max)
        throw DomainError("count_real_cycles: need 0 < eps_inner < r_max");
    if (opt.grid < 64) throw DomainError("count_real_cycles: grid must be >= 64");

    const PolarEvaluator H(field, opt.denom_floor);
    IntegratorOptions iopt;
    iopt.tol = opt.tol;
    iopt.denom_floor = opt.denom_floor;
    iopt.keep_dense = false;

    const double norm_scale = opt.norm_cap >= 0.0 ? opt.norm_cap : coeff_norm(field);
    const double threshold =
        1e-9 * (1.0 + 8.0 * kPi * norm_scale * std::sqrt(static_cast<double>(field.degree())));

    // Nested uniform grids: doubling the interval count reuses every value.
    std::vector<double> xs;
    std::vector<std::optional<double>> gs;
    auto grid_x = [&](int intervals, int j) {
        return opt.eps_inner + (opt.r_max - opt.eps_inner) * j / intervals;
    };
    int intervals = opt.grid;
    xs.reserve(2 * intervals + 1);
    for (int j = 0; j <= intervals; ++j) {
        xs.push_back(grid_x(intervals, j));
        gs.push_back(real_displacement(H, xs.back(), iopt));
    }

    ScanAnalysis prev = analyze_grid(H, xs, gs, threshold, iopt, opt.root_xtol);
    ScanAnalysis best = prev;
    bool agreed = false;
    for (int dbl = 0; dbl < opt.max_doublings && !prev.origin_unresolved; ++dbl) {
        const int fine = intervals * 2;
        std::vector<double> xs2(fine + 1);
        std::vector<std::optional<double>> gs2(fine + 1);
        for (int j = 0; j <= fine; ++j) {
            if (j % 2 == 0) {
                xs2[j] = xs[j / 2];
                gs2[j] = gs[j / 2];
            } else {
                xs2[j] = grid_x(fine, j);
                gs2[j] = real_displacement(H, xs2[j], iopt);
            }
        }
        xs.swap(xs2);
        gs.swap(gs2);
        intervals = fine;
        const ScanAnalysis cur = analyze_grid(H, xs, gs, threshold, iopt, opt.root_xtol);
        if (cur.count == prev.count) {
            best = cur;
            agreed = true;
            break;
        }
        prev = cur;
        best = cur;
    }

    ZeroCountResult res;
    res.count = best.count;
    res.crossings = best.crossings;
    res.suspects = best.suspects;
    res.origin_unresolved = best.origin_unresolved;
    res.domain_exits = best.domain_exits;
    res.reliable =
        agreed && !best.origin_unresolved && best.suspects.empty() && !best.bisection_trouble;
    return res;
}

namespace {

struct ContourAttempt {
    bool dipped = false;
    std::vector<Suspect> dips;
    long samples = 0;
    double total_arg = 0.0;
    bool refinement_exhausted = false;
};

ContourAttempt run_contour(const std::function<Complex(Complex)>& f, double rho,
                           const ContourOptions& opt) {
    ContourAttempt out;
    std::vector<double> thetas;
    std::vector<Complex> vals;
    thetas.reserve(opt.initial_samples * 2);
    for (int j = 0; j < opt.initial_samples; ++j) {
        const double t = kTwoPi * j / opt.initial_samples;
        thetas.push_back(t);
        vals.push_back(f(rho * Complex{std::cos(t), std::sin(t)}));
    }

    // Split every arc whose phase jump reaches pi/4; an unresolvable jump
    // ends up as a dip below.
    bool changed = true;
    while (changed && static_cast<long>(thetas.size()) < opt.max_samples) {
        changed = false;
        std::vector<double> nt;
        std::vector<Complex> nv;
        const size_t n = thetas.size();
        nt.reserve(2 * n);
        nv.reserve(2 * n);
        for (size_t j = 0; j < n; ++j) {
            nt.push_back(thetas[j]);
            nv.push_back(vals[j]);
            const size_t next = (j + 1) % n;
            const double t1 = thetas[next] + (next == 0 ? kTwoPi : 0.0);
            if (vals[j] == Complex{0.0} || vals[next] == Complex{0.0}) continue;
            if (std::abs(std::arg(vals[next] / vals[j])) >= opt.max_arg_step) {
                const double tm = 0.5 * (thetas[j] + t1);
                nt.push_back(tm);
                nv.push_back(f(rho * Complex{std::cos(tm), std::sin(tm)}));
                changed = true;
            }
        }
        thetas.swap(nt);
        vals.swap(nv);
    }
    out.refinement_exhausted = changed;
    out.samples = static_cast<long>(thetas.size());

    double max_abs = 0.0;
    for (const auto& v : vals) max_abs = std::max(max_abs, std::abs(v));
    const double floor = opt.floor_rel * max_abs;
    for (size_t j = 0; j < vals.size(); ++j) {
        if (std::abs(vals[j]) <= floor) {
            out.dipped = true;
            out.dips.push_back({Suspect::Kind::ContourDip,
                                rho * Complex{std::cos(thetas[j]), std::sin(thetas[j])}});
        }
    }
    if (out.dipped) return out;

    for (size_t j = 0; j < vals.size(); ++j) {
        const size_t next = (j + 1) % vals.size();
        out.total_arg += std::arg(vals[next] / vals[j]);
    }
    return out;
}

}  // namespace

ZeroCountResult count_complex_zeros(const std::function<Complex(Complex)>& f, double rho,
                                    const ContourOptions& opt) {
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("count_complex_zeros: need rho in (0,1)");

    ZeroCountResult res;
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        // Nudge trail 0, -1%, +1%, -2%, +2%, ...; trying down first keeps a
        // nudged count dominated by the count at the requested radius.
        const int step = (attempt + 1) / 2;
        const double delta = (attempt == 0) ? 0.0
                             : (attempt % 2 == 1 ? -opt.nudge_frac * step : opt.nudge_frac * step);
        const double rho_a = rho * (1.0 + delta);
        res.attempt_rhos.push_back(rho_a);

        const ContourAttempt run = run_contour(f, rho_a, opt);
        res.contour_samples += run.samples;
        if (run.dipped || run.refinement_exhausted) {
            for (const auto& s : run.dips) res.suspects.push_back(s);
            if (run.refinement_exhausted && run.dips.empty())
                res.suspects.push_back({Suspect::Kind::ContourDip, Complex{rho_a, 0.0}});
            continue;
        }

        const double w = run.total_arg / kTwoPi;
        const long rounded = std::lround(w);
        const double residual = std::abs(run.total_arg - kTwoPi * rounded);
        if (residual > 0.1)
            throw NonIntegerWinding("count_complex_zeros: accumulated argument " +
                                    std::to_string(run.total_arg) + " is " +
                                    std::to_string(residual) + " from a multiple of 2*pi");
        if (rounded < 0)
            throw NonIntegerWinding("count_complex_zeros: negative winding " +
                                    std::to_string(rounded) + "; evaluator not analytic?");
        res.count = static_cast<int>(rounded);
        res.used_rho = rho_a;
        res.winding_residual = residual;
        res.reliable = (attempt == 0) && residual <= kTwoPi * 1e-3;
        return res;
    }
    throw ZeroOnContour("count_complex_zeros: |f| dipped under the floor on all " +
                        std::to_string(opt.max_attempts) + " contour radii");
}

JensenBound jensen_bound(double M_f, double f0_abs, double r) {
    if (!(f0_abs > 0.0))
        throw DomainError("jensen_bound: requires |f(0)| > 0 (the bound needs f(0) != 0)");
    if (M_f < f0_abs)
        throw DomainError("jensen_bound: requires M_f >= |f(0)|");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("jensen_bound: requires 0 < r < 1");
    JensenBound out;
    out.M_f = M_f;
    out.f0_abs = f0_abs;
    out.r = r;
    out.bound = std::log(M_f / f0_abs) / std::log(1.0 / r);
    return out;
}

SampleCount count_cycles_of_sample(const PolyField& field, const CycleCountOptions& opt) {
    SampleCount out;

    RealScanOptions ropt = opt.real_scan;
    ropt.tol = opt.integrator_tol;
    out.real_detail = count_real_cycles(field, ropt);
    out.real_cycles = out.real_detail.count;

    if (out.real_detail.origin_unresolved) {
        // g == 0 candidate: the contour integrand would dip everywhere, so
        // the complex count is skipped and the sample stays excluded.
        out.complex_zeros = 0;
        out.reliable = false;
        return out;
    }

    const PolarEvaluator H(field, ropt.denom_floor);
    const LinearPart w = field.linear_part();
    IntegratorOptions iopt;
    iopt.tol = opt.integrator_tol;
    iopt.denom_floor = ropt.denom_floor;
    iopt.keep_dense = false;
    auto g_rescaled = [&](Complex zeta) {
        return displacement(H, w, opt.rescale * zeta, iopt).g;
    };
    out.complex_detail = count_complex_zeros(g_rescaled, opt.rho, opt.contour);
    out.complex_zeros = out.complex_detail.count;
    out.reliable = out.real_detail.reliable && out.complex_detail.reliable;
    return out;
}

}  // namespace cyclab
