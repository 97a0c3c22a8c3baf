#pragma once

#include <functional>
#include <vector>

#include "cyclab/field.hpp"
#include "cyclab/integrate.hpp"

namespace cyclab {

struct Suspect {
    enum class Kind {
        Tangency,    // |g| near zero without a sign change on the real scan
        ContourDip,  // |f| under the relative floor on a contour sample
        Origin,      // |g| under threshold on the whole scanned segment
    };
    Kind kind = Kind::Tangency;
    Complex where{0.0};
};

const char* to_string(Suspect::Kind k);

struct ZeroCountResult {
    int count = 0;
    bool reliable = true;
    std::vector<Suspect> suspects;

    // Real scan only.
    bool origin_unresolved = false;     // g == 0 candidate over the whole segment
    std::vector<double> crossings;      // refined radii of confirmed crossings
    int domain_exits = 0;               // grid points whose trajectory left D_1

    // Contour counter only.
    long contour_samples = 0;
    double used_rho = 0.0;              // radius the accepted contour ran at
    std::vector<double> attempt_rhos;   // nudge trail, requested radius first
    double winding_residual = 0.0;      // |accumulated arg - 2 pi count|
};

struct RealScanOptions {
    double r_max = 0.5;
    double eps_inner = 1e-3;   // z = 0 is always a fixed point; excluded
    int grid = 512;            // intervals at the first resolution
    int max_doublings = 4;     // resolution doublings until counts must agree
    double tol = 1e-10;        // integrator tolerance for g evaluations
    double root_xtol = 1e-8;   // bisection window for crossing radii
    double denom_floor = 0.5;
    // Regime N for the tangency threshold 1e-9*(1 + 8 pi N sqrt(d)); when
    // negative the field's own coefficient norm is used for the scale.
    double norm_cap = -1.0;
};

// Counts limit cycles as confirmed sign crossings of the real displacement
// on [eps_inner, r_max]. Even-multiplicity cycles cannot flip the sign; the
// near-zero minima they produce are reported as Tangency suspects and clear
// `reliable`. A displacement under threshold across the whole segment marks
// origin_unresolved (count 0, unreliable) instead of guessing.
ZeroCountResult count_real_cycles(const PolyField& field, const RealScanOptions& opt = {});

struct ContourOptions {
    int initial_samples = 64;
    long max_samples = 1 << 16;  // refinement budget per attempt
    int max_attempts = 8;        // contour radius nudges, the first is rho itself
    double nudge_frac = 0.01;
    double floor_rel = 1e-9;     // |f| floor relative to the contour max
    double max_arg_step = 0.7853981633974483;  // pi/4
};

// Zero count of f on the closed disk of radius rho by the argument
// principle: winding number of f along |z| = rho, counted with multiplicity.
// Adaptive sampling splits every arc whose phase jump reaches pi/4. If |f|
// dips under the relative floor the radius is nudged by +-1% per attempt and
// the trail is recorded (result unreliable). Throws ZeroOnContour when every
// attempt dips, NonIntegerWinding when the accumulated argument is farther
// than 0.1 from a multiple of 2*pi after maximal refinement.
ZeroCountResult count_complex_zeros(const std::function<Complex(Complex)>& f, double rho,
                                    const ContourOptions& opt = {});

struct JensenBound {
    double M_f = 0.0;
    double f0_abs = 0.0;
    double r = 0.0;
    double bound = 0.0;  // log(M_f/f0_abs) / log(1/r)
};

// Upper bound on the zero count of a holomorphic function in the closed
// r-disk from its sup on the unit circle and its value at 0. Throws
// DomainError unless M_f >= f0_abs > 0 and 0 < r < 1 (f(0) = 0 makes the
// bound inapplicable).
JensenBound jensen_bound(double M_f, double f0_abs, double r);

struct CycleCountOptions {
    RealScanOptions real_scan;
    ContourOptions contour;
    double rho = 2.0 / 3.0;    // contour radius for the rescaled displacement
    double rescale = 0.75;     // counts zeros of z -> g_v(rescale * z)
    double integrator_tol = 1e-10;
};

struct SampleCount {
    int real_cycles = 0;    // C(v)
    int complex_zeros = 0;  // N_{g,rho}(v)
    bool reliable = false;
    ZeroCountResult real_detail;
    ZeroCountResult complex_detail;
};

// The paired count behind the tail experiment: C(v) from the real scan on
// [eps, 1/2] and the zero count of z -> g_v(3z/4) on the closed 2/3-disk.
// The rescale maps that disk onto the closed 1/2-disk, so every real cycle
// is among the complex zeros and C <= N on reliable samples.
SampleCount count_cycles_of_sample(const PolyField& field, const CycleCountOptions& opt = {});

}  // namespace cyclab
