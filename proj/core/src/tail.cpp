#include "cyclab/tail.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "cyclab/ball.hpp"
#include "cyclab/polar.hpp"
#include "cyclab/stats.hpp"
#include "cyclab/version.hpp"

namespace cyclab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Packed-vector indices of (a10, a01, b10, b01); the a-family comes first,
// degree-1 pairs in (k+i, k) order are (0,1) then (1,0).
std::array<int, 4> linear_indices(int degree) {
    const int n = coeff_pair_count(degree);
    return {1, 0, n + 1, n};
}

// det of the 4x4 Gram matrix by Gaussian elimination with partial pivoting.
double det4(std::array<std::array<double, 4>, 4> m) {
    double det = 1.0;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (m[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < 4; ++r) {
            const double f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

bool solve4(std::array<std::array<double, 4>, 4> m, std::array<double, 4>& rhs) {
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (m[piv][c] == 0.0) return false;
        std::swap(m[piv], m[c]);
        std::swap(rhs[piv], rhs[c]);
        for (int r = c + 1; r < 4; ++r) {
            const double f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (int c = 3; c >= 0; --c) {
        for (int k = c + 1; k < 4; ++k) rhs[c] -= m[c][k] * rhs[k];
        rhs[c] /= m[c][c];
    }
    return true;
}

std::array<std::array<double, 4>, 4> projected_gram(const SliceSpec& slice, int degree) {
    const auto idx = linear_indices(degree);
    const int k = slice.subspace_dim();
    std::array<std::array<double, 4>, 4> g{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            double s = 0.0;
            for (int j = 0; j < k; ++j) s += slice.frame[j][idx[r]] * slice.frame[j][idx[c]];
            g[r][c] = s;
        }
    return g;
}

nlohmann::ordered_json suspects_json(const std::vector<Suspect>& suspects) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : suspects) {
        nlohmann::ordered_json o;
        o["kind"] = to_string(s.kind);
        o["re"] = s.where.real();
        o["im"] = s.where.imag();
        arr.push_back(std::move(o));
    }
    return arr;
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void SliceSpec::validate(int s) const {
    if (static_cast<int>(offset.size()) != s)
        throw DomainError("SliceSpec: offset has wrong dimension");
    if (frame.empty() || static_cast<int>(frame.size()) > s)
        throw DomainError("SliceSpec: frame must hold between 1 and s vectors");
    if (!(radius > 0.0)) throw DomainError("SliceSpec: radius must be > 0");
    for (const auto& v : frame)
        if (static_cast<int>(v.size()) != s)
            throw DomainError("SliceSpec: frame vector has wrong dimension");
    for (size_t i = 0; i < frame.size(); ++i)
        for (size_t j = i; j < frame.size(); ++j) {
            double dot = 0.0;
            for (int c = 0; c < s; ++c) dot += frame[i][c] * frame[j][c];
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(dot - want) > 1e-10)
                throw DomainError("SliceSpec: frame is not orthonormal");
        }
}

double slice_delta(const SliceSpec& slice, int degree, double norm) {
    slice.validate(degree * (degree + 3));
    const double det = det4(projected_gram(slice, degree));
    if (det <= 1e-300) return std::numeric_limits<double>::infinity();
    // |pi(V)| = vol(B4) * radius^4 * sqrt(det Gram); the B4 volumes cancel.
    return std::pow(norm / slice.radius, 4) / std::sqrt(det);
}

DeltaEstimate slice_delta_hit_or_miss(const SliceSpec& slice, int degree, double norm,
                                      long trials, std::uint64_t seed) {
    const int s = degree * (degree + 3);
    slice.validate(s);
    if (trials <= 0) throw DomainError("slice_delta_hit_or_miss: trials must be > 0");
    const auto idx = linear_indices(degree);
    const auto gram = projected_gram(slice, degree);
    const int k = slice.subspace_dim();

    std::array<double, 4> proj_off{};
    for (int r = 0; r < 4; ++r) proj_off[r] = slice.offset[idx[r]];
    double off_norm = std::sqrt(proj_off[0] * proj_off[0] + proj_off[1] * proj_off[1] +
                                proj_off[2] * proj_off[2] + proj_off[3] * proj_off[3]);
    const double box_r = off_norm + slice.radius;  // pi(V) fits in E(4, box_r)

    SampleRng rng(seed, 0x51a5eULL);
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
        const auto x = sample_ball(4, box_r, rng);
        std::array<double, 4> q;
        for (int r = 0; r < 4; ++r) q[r] = x[r] - proj_off[r];
        auto u = q;
        if (!solve4(gram, u)) throw RegimeViolation("slice_delta_hit_or_miss: rank-deficient projection");
        // Least-norm preimage y* = M^T (M M^T)^{-1} q; membership <=> |y*| <= radius.
        double y2 = 0.0;
        for (int j = 0; j < k; ++j) {
            double yj = 0.0;
            for (int r = 0; r < 4; ++r) yj += slice.frame[j][idx[r]] * u[r];
            y2 += yj * yj;
        }
        if (y2 <= slice.radius * slice.radius * (1.0 + 1e-12)) ++hits;
    }
    if (hits == 0) throw ConvergenceFailure("slice_delta_hit_or_miss: no hits; enlarge trials");

    const double frac = static_cast<double>(hits) / trials;
    const auto ci = clopper_pearson(hits, trials);
    DeltaEstimate out;
    const double scale = std::pow(norm / box_r, 4);
    out.delta = scale / frac;
    out.ci_lo = scale / ci.hi;  // larger measured volume -> smaller delta
    out.ci_hi = ci.lo > 0.0 ? scale / ci.lo : std::numeric_limits<double>::infinity();
    return out;
}

double ExperimentConfig::resolved_norm() const {
    return norm < 0.0 ? regime_norm(degree) : norm;
}

void ExperimentConfig::validate() const {
    if (degree < 2) throw DomainError("config: degree must be >= 2");
    if (samples < 0) throw DomainError("config: samples must be >= 0");
    if (workers < 1) throw DomainError("config: workers must be >= 1");
    if (!(integrator_tol > 0.0)) throw DomainError("config: integrator_tol must be > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("config: rho must be in (0,1)");
    if (!(rescale > 0.0 && rescale < 1.0)) throw DomainError("config: rescale must be in (0,1)");
    const int s = dimension();
    if (s >= 3 * degree * degree)
        throw DomainError("config: dimension bound s < 3d^2 violated");  // cannot happen for d >= 2
    const double n = resolved_norm();
    if (!override_regime && n > regime_norm(degree) * (1.0 + 1e-12))
        throw RegimeViolation("config: norm " + std::to_string(n) +
                              " exceeds the smallness bound 1/(40 pi sqrt(d)) = " +
                              std::to_string(regime_norm(degree)) +
                              "; pass override_regime to force");
    if (slice) {
        slice->validate(s);
        double off2 = 0.0;
        for (double x : slice->offset) off2 += x * x;
        if (!override_regime && std::sqrt(off2) + slice->radius > n * (1.0 + 1e-9))
            throw RegimeViolation("config: slice is not contained in E(s, N)");
    }
}

TailPoint empirical_tail(const std::map<int, long>& histogram, int T, double alpha) {
    long n = 0, k = 0;
    for (const auto& [c, cnt] : histogram) {
        n += cnt;
        if (c >= T) k += cnt;
    }
    if (n == 0) throw DomainError("empirical_tail: histogram is empty");
    TailPoint p;
    p.T = T;
    p.fraction = static_cast<double>(k) / n;
    const auto ci = clopper_pearson(k, n, alpha);
    p.ci_lo = ci.lo;
    p.ci_hi = ci.hi;
    return p;
}

MeanVsLog mean_vs_log_bound(const TailReport& report, double delta, int degree) {
    MeanVsLog out;
    out.mean_C = report.mean_C;
    if (report.mean_C == 0.0) {
        out.c_hat = 0.0;
        return out;
    }
    const double denom = std::log(delta) + std::log(static_cast<double>(degree));
    if (denom <= 0.0) throw DomainError("mean_vs_log_bound: log(delta) + log(d) must be > 0");
    out.c_hat = report.mean_C / denom;
    return out;
}

TheoremConstants theorem_constants(double D) {
    if (!(D > 0.0)) throw DomainError("theorem_constants: D must be > 0");
    TheoremConstants c;
    c.C1 = 6.0 * std::pow(32.0, 1.0 + 1.0 / (2.0 * D));
    c.C2 = 2.0 + 1.0 / (2.0 * D);
    c.C3 = std::log(1.5) / D;
    return c;
}

namespace {

PolyField draw_field(const ExperimentConfig& config, SampleRng& rng) {
    if (config.slice) {
        const auto y = sample_ball(config.slice->subspace_dim(), config.slice->radius, rng);
        std::vector<double> v = config.slice->offset;
        for (size_t j = 0; j < y.size(); ++j)
            for (size_t c = 0; c < v.size(); ++c) v[c] += y[j] * config.slice->frame[j][c];
        return field_from_vector(config.degree, v);
    }
    return sample_field(config.degree, config.resolved_norm(), rng);
}

CounterFn default_counter() {
    return [](const PolyField& field, SampleRng&, const ExperimentConfig& config) {
        CycleCountOptions opt;
        opt.real_scan = config.real_scan;
        opt.real_scan.tol = config.integrator_tol;
        if (opt.real_scan.norm_cap < 0.0) opt.real_scan.norm_cap = config.resolved_norm();
        opt.contour = config.contour;
        opt.rho = config.rho;
        opt.rescale = config.rescale;
        opt.integrator_tol = config.integrator_tol;
        return count_cycles_of_sample(field, opt);
    };
}

}  // namespace

TailReport run_experiment(const ExperimentConfig& config, const CounterFn& counter) {
    config.validate();
    const CounterFn count = counter ? counter : default_counter();
    const auto t0 = std::chrono::steady_clock::now();

    TailReport report;
    report.records.resize(static_cast<size_t>(config.samples));
    report.manifest.version = std::string(kVersion);
    report.manifest.config_json = config_to_json(config);

    const long n = config.samples;
    const int workers = static_cast<int>(std::min<long>(config.workers, std::max<long>(n, 1)));
    const long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo < hi) report.manifest.worker_ranges.emplace_back(lo, hi);
    }

    auto run_range = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            SampleRng rng(config.seed, static_cast<std::uint64_t>(i));
            SampleRecord& rec = report.records[static_cast<size_t>(i)];
            rec.sample_id = i;
            rec.stream_seed = rng.stream_seed();
            rec.integrator_tol = config.integrator_tol;
            try {
                const PolyField field = draw_field(config, rng);
                const SampleCount sc = count(field, rng, config);
                rec.C = sc.real_cycles;
                rec.N_complex = sc.complex_zeros;
                rec.reliable = sc.reliable;
                rec.suspects = sc.real_detail.suspects;
                rec.suspects.insert(rec.suspects.end(), sc.complex_detail.suspects.begin(),
                                    sc.complex_detail.suspects.end());
            } catch (const std::exception& e) {
                rec.reliable = false;
                rec.error = e.what();
            }
        }
    };

    if (workers <= 1) {
        run_range(0, n);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex mu;
        for (const auto& [lo, hi] : report.manifest.worker_ranges)
            pool.emplace_back([&, lo = lo, hi = hi] {
                try {
                    run_range(lo, hi);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    // Aggregation: reliable samples feed the histogram; everything else is
    // excluded but kept on the record.
    long long sum_counts = 0;
    for (const auto& rec : report.records) {
        if (rec.error.empty() && rec.reliable) {
            ++report.histogram[rec.C];
            ++report.included;
            sum_counts += rec.C;
        } else {
            ++report.excluded;
        }
    }

    if (report.included > 0) {
        const int t_max = report.histogram.rbegin()->first;
        for (int T = 0; T <= t_max + 1; ++T) report.tail.push_back(empirical_tail(report.histogram, T));
        report.mean_C = static_cast<double>(sum_counts) / report.included;

        std::vector<double> xs, ys;
        for (const auto& p : report.tail)
            if (p.fraction > 0.0) {
                xs.push_back(p.T);
                ys.push_back(-std::log(p.fraction));
            }
        if (xs.size() >= 2) {
            report.fitted_rate = ls_slope(xs, ys);
            report.rate_defined = true;
        }

        // Inclusion-policy bracket: non-reliable samples as 0 or as t_max+1.
        const long total = report.included + report.excluded;
        report.mean_lo = static_cast<double>(sum_counts) / total;
        report.mean_hi =
            (static_cast<double>(sum_counts) + static_cast<double>(report.excluded) * (t_max + 1)) /
            total;
        std::map<int, long> hist_lo = report.histogram;
        std::map<int, long> hist_hi = report.histogram;
        if (report.excluded > 0) {
            hist_lo[0] += report.excluded;
            hist_hi[t_max + 1] += report.excluded;
        }
        for (int T = 0; T <= t_max + 2; ++T) {
            report.tail_lo.push_back(empirical_tail(hist_lo, T));
            report.tail_hi.push_back(empirical_tail(hist_hi, T));
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    report.manifest.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return report;
}

std::string SampleRecord::to_json_line() const {
    nlohmann::ordered_json o;
    o["sample_id"] = sample_id;
    o["seed"] = stream_seed;
    o["C"] = C;
    o["N_complex"] = N_complex;
    o["reliable"] = reliable;
    o["suspects"] = suspects_json(suspects);
    o["integrator_tol"] = integrator_tol;
    if (!error.empty()) o["error"] = error;
    return o.dump();
}

void write_jsonl(const TailReport& report, std::ostream& out) {
    for (const auto& rec : report.records) out << rec.to_json_line() << '\n';
}

void write_tail_csv(const TailReport& report, std::ostream& out) {
    out << "T,fraction,ci_lo,ci_hi\n";
    for (const auto& p : report.tail)
        out << p.T << ',' << fmt_double(p.fraction) << ',' << fmt_double(p.ci_lo) << ','
            << fmt_double(p.ci_hi) << '\n';
}

std::string config_to_json(const ExperimentConfig& config) {
    nlohmann::ordered_json o;
    o["degree"] = config.degree;
    o["norm"] = config.resolved_norm();
    o["samples"] = config.samples;
    o["seed"] = config.seed;
    o["workers"] = config.workers;
    o["integrator_tol"] = config.integrator_tol;
    o["r_max"] = config.real_scan.r_max;
    o["eps_inner"] = config.real_scan.eps_inner;
    o["grid"] = config.real_scan.grid;
    o["max_doublings"] = config.real_scan.max_doublings;
    o["root_xtol"] = config.real_scan.root_xtol;
    o["denom_floor"] = config.real_scan.denom_floor;
    o["rho"] = config.rho;
    o["rescale"] = config.rescale;
    o["override_regime"] = config.override_regime;
    o["contour"] = {{"initial_samples", config.contour.initial_samples},
                    {"max_samples", config.contour.max_samples},
                    {"max_attempts", config.contour.max_attempts},
                    {"nudge_frac", config.contour.nudge_frac},
                    {"floor_rel", config.contour.floor_rel}};
    if (config.slice) {
        nlohmann::ordered_json s;
        s["offset"] = config.slice->offset;
        s["frame"] = config.slice->frame;
        s["radius"] = config.slice->radius;
        o["slice"] = std::move(s);
    }
    return o.dump();
}

ExperimentConfig config_from_json(const std::string& text) {
    const auto o = nlohmann::json::parse(text);
    ExperimentConfig c;
    c.degree = o.value("degree", c.degree);
    c.norm = o.value("norm", c.norm);
    c.samples = o.value("samples", c.samples);
    c.seed = o.value("seed", c.seed);
    c.workers = o.value("workers", c.workers);
    c.integrator_tol = o.value("integrator_tol", c.integrator_tol);
    c.real_scan.r_max = o.value("r_max", c.real_scan.r_max);
    c.real_scan.eps_inner = o.value("eps_inner", c.real_scan.eps_inner);
    c.real_scan.grid = o.value("grid", c.real_scan.grid);
    c.real_scan.max_doublings = o.value("max_doublings", c.real_scan.max_doublings);
    c.real_scan.root_xtol = o.value("root_xtol", c.real_scan.root_xtol);
    c.real_scan.denom_floor = o.value("denom_floor", c.real_scan.denom_floor);
    c.rho = o.value("rho", c.rho);
    c.rescale = o.value("rescale", c.rescale);
    c.override_regime = o.value("override_regime", c.override_regime);
    if (o.contains("contour")) {
        const auto& k = o.at("contour");
        c.contour.initial_samples = k.value("initial_samples", c.contour.initial_samples);
        c.contour.max_samples = k.value("max_samples", c.contour.max_samples);
        c.contour.max_attempts = k.value("max_attempts", c.contour.max_attempts);
        c.contour.nudge_frac = k.value("nudge_frac", c.contour.nudge_frac);
        c.contour.floor_rel = k.value("floor_rel", c.contour.floor_rel);
    }
    if (o.contains("slice")) c.slice = slice_from_json(o.at("slice").dump());
    return c;
}

SliceSpec slice_from_json(const std::string& text) {
    const auto o = nlohmann::json::parse(text);
    SliceSpec s;
    s.offset = o.at("offset").get<std::vector<double>>();
    s.frame = o.at("frame").get<std::vector<std::vector<double>>>();
    s.radius = o.at("radius").get<double>();
    return s;
}

std::string manifest_to_json(const RunManifest& manifest) {
    nlohmann::ordered_json o;
    o["version"] = manifest.version;
    o["config"] = nlohmann::ordered_json::parse(manifest.config_json);
    auto ranges = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : manifest.worker_ranges) ranges.push_back({lo, hi});
    o["worker_ranges"] = std::move(ranges);
    o["wall_seconds"] = manifest.wall_seconds;
    return o.dump(2);
}

std::string report_to_json(const TailReport& report) {
    nlohmann::ordered_json o;
    o["included"] = report.included;
    o["excluded"] = report.excluded;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [c, cnt] : report.histogram) hist[std::to_string(c)] = cnt;
    o["histogram"] = std::move(hist);
    auto tail_json = [](const std::vector<TailPoint>& tail) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& p : tail)
            arr.push_back({{"T", p.T},
                           {"fraction", p.fraction},
                           {"ci_lo", p.ci_lo},
                           {"ci_hi", p.ci_hi}});
        return arr;
    };
    o["tail"] = tail_json(report.tail);
    o["tail_bracket_lo"] = tail_json(report.tail_lo);
    o["tail_bracket_hi"] = tail_json(report.tail_hi);
    o["mean_C"] = report.mean_C;
    o["fitted_rate"] = report.fitted_rate;
    o["rate_defined"] = report.rate_defined;
    o["mean_bracket"] = {report.mean_lo, report.mean_hi};
    o["manifest"] = nlohmann::ordered_json::parse(manifest_to_json(report.manifest));
    return o.dump(2);
}

}  // namespace cyclab
