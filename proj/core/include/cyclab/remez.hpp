#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cyclab/rng.hpp"

namespace cyclab {

// An interval I = [lo, hi] with a subset omega: a union of at most a few
// disjoint closed subintervals of positive total measure.
struct IntervalSubset {
    double lo = 0.0, hi = 1.0;
    std::vector<std::pair<double, double>> omega;

    double length() const { return hi - lo; }
    double measure() const;
    void validate() const;  // throws DomainError on a malformed pair
};

struct RemezCheckResult {
    bool holds = false;
    double lhs = 0.0;  // sup_I |f| on the grid
    double rhs = 0.0;  // (4 |I| / |omega|)^d * sup_omega |f|
};

// Checks sup_I |f| <= (4|I|/|omega|)^d sup_omega |f|. Sups are grid maxima
// at `grid` and 2*`grid` uniform points (plus omega piece endpoints); the
// grid slack is folded into the tolerance of `holds` (relative 1e-6).
RemezCheckResult remez_check(const std::function<double(double)>& f,
                             const IntervalSubset& pair, double d, int grid = 4096);

struct ChebDegreeEstimate {
    double d_hat = 0.0;
    int trials = 0;
    IntervalSubset worst_pair;  // the pair achieving the max
};

// Estimates the Chebyshev degree of f as the sup over the pair family of
//   log(sup_I |f| / sup_omega |f|) / log(4 |I| / |omega|).
// By construction remez_check(f, pair, d_hat) holds on every sampled pair.
// Requires |omega| < |I| for every pair (so the log base exceeds 4); throws
// DegenerateSup when sup_omega |f| = 0 on a positive-measure subset.
ChebDegreeEstimate estimate_cheb_degree(const std::function<double(double)>& f,
                                        std::span<const IntervalSubset> family,
                                        int grid = 4096);

// Random pair on [lo, hi]: up to max_pieces disjoint subintervals, total
// measure in [min_frac, max_frac] of the interval, each piece at least 1% of
// it. Deterministic given the rng stream.
IntervalSubset random_interval_subset(double lo, double hi, SampleRng& rng,
                                      int max_pieces = 4, double min_frac = 0.05,
                                      double max_frac = 0.9);

}  // namespace cyclab
