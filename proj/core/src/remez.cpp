#include "cyclab/remez.hpp"

#include <algorithm>
#include <cmath>

#include "cyclab/errors.hpp"

namespace cyclab {

namespace {

// Grid max of |f| over [lo, hi] at n+1 and 2n+1 uniform points.
double grid_sup(const std::function<double(double)>& f, double lo, double hi, int n) {
    double m = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const int pts = pass == 0 ? n : 2 * n;
        for (int j = 0; j <= pts; ++j)
            m = std::max(m, std::abs(f(lo + (hi - lo) * j / pts)));
    }
    return m;
}

double omega_sup(const std::function<double(double)>& f, const IntervalSubset& pair, int grid) {
    double m = 0.0;
    for (const auto& [lo, hi] : pair.omega) {
        // Point budget proportional to the piece length, endpoints always in.
        const int n = std::max(16, static_cast<int>(std::lround(grid * (hi - lo) / pair.length())));
        m = std::max(m, grid_sup(f, lo, hi, n));
    }
    return m;
}

}  // namespace

double IntervalSubset::measure() const {
    double m = 0.0;
    for (const auto& [a, b] : omega) m += b - a;
    return m;
}

void IntervalSubset::validate() const {
    if (!(hi > lo)) throw DomainError("IntervalSubset: empty interval I");
    if (omega.empty()) throw DomainError("IntervalSubset: omega is empty");
    double prev = lo;
    for (const auto& [a, b] : omega) {
        if (!(b > a)) throw DomainError("IntervalSubset: degenerate omega piece");
        if (a < prev - 1e-15 * std::abs(prev))
            throw DomainError("IntervalSubset: omega pieces overlap or leave I");
        prev = b;
    }
    if (prev > hi + 1e-15 * std::abs(hi)) throw DomainError("IntervalSubset: omega leaves I");
    if (!(measure() > 0.0)) throw DomainError("IntervalSubset: omega has zero measure");
}

RemezCheckResult remez_check(const std::function<double(double)>& f, const IntervalSubset& pair,
                             double d, int grid) {
    pair.validate();
    if (d < 0.0) throw DomainError("remez_check: exponent must be >= 0");
    RemezCheckResult out;
    out.lhs = grid_sup(f, pair.lo, pair.hi, grid);
    const double ratio = 4.0 * pair.length() / pair.measure();
    out.rhs = std::pow(ratio, d) * omega_sup(f, pair, grid);
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-6);
    return out;
}

ChebDegreeEstimate estimate_cheb_degree(const std::function<double(double)>& f,
                                        std::span<const IntervalSubset> family, int grid) {
    ChebDegreeEstimate out;
    out.trials = static_cast<int>(family.size());
    for (const auto& pair : family) {
        pair.validate();
        if (!(pair.measure() < pair.length()))
            throw DomainError("estimate_cheb_degree: needs |omega| < |I|");
        const double sup_i = grid_sup(f, pair.lo, pair.hi, grid);
        const double sup_o = omega_sup(f, pair, grid);
        if (sup_o == 0.0)
            throw DegenerateSup("estimate_cheb_degree: sup over omega vanished");
        const double d =
            std::log(std::max(sup_i, sup_o) / sup_o) / std::log(4.0 * pair.length() / pair.measure());
        if (d >= out.d_hat) {
            out.d_hat = d;
            out.worst_pair = pair;
        }
    }
    return out;
}

IntervalSubset random_interval_subset(double lo, double hi, SampleRng& rng, int max_pieces,
                                      double min_frac, double max_frac) {
    if (!(hi > lo)) throw DomainError("random_interval_subset: empty interval");
    const double len = hi - lo;
    IntervalSubset pair;
    pair.lo = lo;
    pair.hi = hi;
    for (int tries = 0; tries < 1000; ++tries) {
        const int pieces = 1 + static_cast<int>(rng.uniform01() * max_pieces);
        std::vector<double> cuts(2 * pieces);
        for (auto& c : cuts) c = rng.uniform(lo, hi);
        std::sort(cuts.begin(), cuts.end());
        pair.omega.clear();
        for (int p = 0; p < pieces; ++p) pair.omega.emplace_back(cuts[2 * p], cuts[2 * p + 1]);
        const double meas = pair.measure();
        if (meas < min_frac * len || meas > max_frac * len) continue;
        bool ok = true;
        for (const auto& [a, b] : pair.omega)
            if (b - a < 0.01 * len) ok = false;
        for (size_t p = 0; p + 1 < pair.omega.size(); ++p)
            if (pair.omega[p + 1].first - pair.omega[p].second < 1e-12 * len) ok = false;
        if (ok) return pair;
    }
    throw ConvergenceFailure("random_interval_subset: could not draw a valid pair");
}

}  // namespace cyclab
