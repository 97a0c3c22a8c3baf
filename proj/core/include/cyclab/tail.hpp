#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclab/field.hpp"
#include "cyclab/rng.hpp"
#include "cyclab/zero_count.hpp"

namespace cyclab {

// Convex slice V of the coefficient ball: offset + frame * y, |y| <= radius,
// with an orthonormal frame of k column vectors in R^s.
struct SliceSpec {
    std::vector<double> offset;               // length s
    std::vector<std::vector<double>> frame;   // k vectors, each length s
    double radius = 0.0;

    int subspace_dim() const { return static_cast<int>(frame.size()); }
    void validate(int s) const;  // orthonormality, sizes; throws DomainError
};

// delta = |E(4,N)| / |pi(V)| where pi projects onto the four linear
// coefficients. The projected slice is an ellipsoid, so the volume is exact:
// |pi(V)| = vol(B_4) * radius^4 * prod(singular values of pi(frame)).
// Returns +inf when the projection is rank deficient.
double slice_delta(const SliceSpec& slice, int degree, double norm);

struct DeltaEstimate {
    double delta = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // 95% binomial interval on |pi(V)|
};

// Independent hit-or-miss estimate of the same ratio (samples E(4, r_box)
// and tests least-norm preimage membership). Cross-checks slice_delta.
DeltaEstimate slice_delta_hit_or_miss(const SliceSpec& slice, int degree, double norm,
                                      long trials, std::uint64_t seed);

struct ExperimentConfig {
    int degree = 2;
    double norm = -1.0;  // < 0: the regime default 1/(40 pi sqrt(d))
    long samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    double integrator_tol = 1e-10;
    RealScanOptions real_scan;   // r_max, eps_inner, grid, ...
    ContourOptions contour;
    double rho = 2.0 / 3.0;
    double rescale = 0.75;
    bool override_regime = false;
    std::optional<SliceSpec> slice;

    double resolved_norm() const;
    int dimension() const { return degree * (degree + 3); }
    // Throws DomainError / RegimeViolation; checks N against the smallness
    // condition unless override_regime, and s < 3 d^2.
    void validate() const;
};

struct SampleRecord {
    long sample_id = 0;
    std::uint64_t stream_seed = 0;
    int C = 0;
    int N_complex = 0;
    bool reliable = false;
    std::vector<Suspect> suspects;
    double integrator_tol = 0.0;
    std::string error;  // nonempty: the sample failed and is excluded

    std::string to_json_line() const;
};

struct TailPoint {
    int T = 0;
    double fraction = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
};

struct RunManifest {
    std::string version;
    std::string config_json;  // fully resolved configuration echo
    std::vector<std::pair<long, long>> worker_ranges;  // [lo, hi) per worker
    double wall_seconds = 0.0;
};

struct TailReport {
    std::map<int, long> histogram;   // reliable samples only
    long included = 0;               // reliable sample count
    long excluded = 0;               // unreliable or failed samples
    std::vector<TailPoint> tail;     // T = 0 .. max+1, Clopper-Pearson 95% CIs
    double mean_C = 0.0;
    double fitted_rate = 0.0;        // LS slope of -log tail(T) on tail > 0
    bool rate_defined = false;
    // Bracket under the two inclusion policies for non-reliable samples:
    // count-as-0 and count-as-(max+1). tail_lo <= tail <= tail_hi pointwise.
    double mean_lo = 0.0, mean_hi = 0.0;
    std::vector<TailPoint> tail_lo, tail_hi;
    RunManifest manifest;
    std::vector<SampleRecord> records;  // in sample_id order
};

// Replaceable counting stage; the default runs count_cycles_of_sample. The
// rng handed in is the tail of the per-sample stream (field already drawn),
// which lets synthetic stubs stay deterministic per sample.
using CounterFn =
    std::function<SampleCount(const PolyField&, SampleRng&, const ExperimentConfig&)>;

// Monte Carlo over E(s,N) (or the configured slice): draws config.samples
// fields, counts (C, N_complex) per sample, and aggregates. Per-sample
// records are identical for any worker count; failures are logged on the
// record and counted in `excluded`, never dropped.
TailReport run_experiment(const ExperimentConfig& config, const CounterFn& counter = {});

// Fraction of samples with count >= T, with its confidence interval.
TailPoint empirical_tail(const std::map<int, long>& histogram, int T, double alpha = 0.05);

struct MeanVsLog {
    double mean_C = 0.0;
    double c_hat = 0.0;  // mean_C / (log delta + log d); reported, not asserted
};

MeanVsLog mean_vs_log_bound(const TailReport& report, double delta, int degree);

struct TheoremConstants {
    double C1 = 0.0, C2 = 0.0, C3 = 0.0;
};

// The explicit tail-bound constants evaluated at a Chebyshev degree D:
//   C1 = 6 * 32^(1 + 1/(2D)),  C2 = 2 + 1/(2D),  C3 = log(3/2)/D.
// Throws DomainError when D <= 0.
TheoremConstants theorem_constants(double D);

void write_jsonl(const TailReport& report, std::ostream& out);
void write_tail_csv(const TailReport& report, std::ostream& out);
std::string report_to_json(const TailReport& report);
std::string manifest_to_json(const RunManifest& manifest);
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
SliceSpec slice_from_json(const std::string& text);

}  // namespace cyclab
