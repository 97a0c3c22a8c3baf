// cyclab: numerical laboratory for limit cycles of planar polynomial
// perturbations of the linear center. One binary, subcommand style; the
// defaults encode the small-norm regime N = 1/(40 pi sqrt(d)), rho = 2/3,
// r_max = 1/2.

#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclab/ball.hpp"
#include "cyclab/errors.hpp"
#include "cyclab/poincare.hpp"
#include "cyclab/polar.hpp"
#include "cyclab/remez.hpp"
#include "cyclab/tail.hpp"
#include "cyclab/version.hpp"
#include "cyclab/zero_count.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::vector<cyclab::PolyField> read_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::vector<cyclab::PolyField> fields;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        fields.push_back(cyclab::field_from_json(line));
    }
    return fields;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

int cmd_sample(long n, int degree, double norm, std::uint64_t seed, const std::string& out_path,
               bool norm_check) {
    const double radius = norm < 0.0 ? cyclab::regime_norm(degree) : norm;

    ordered_json echo;
    echo["command"] = "sample";
    echo["version"] = std::string(cyclab::kVersion);
    echo["n"] = n;
    echo["degree"] = degree;
    echo["norm"] = radius;
    echo["seed"] = seed;
    echo["out"] = out_path;
    std::cout << echo.dump() << "\n";

    double max_norm = 0.0;
    {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        for (long i = 0; i < n; ++i) {
            cyclab::SampleRng rng(seed, static_cast<std::uint64_t>(i));
            const auto field = cyclab::sample_field(degree, radius, rng);
            max_norm = std::max(max_norm, cyclab::coeff_norm(field));
            out << cyclab::field_to_json(field) << '\n';
        }
    }

    ordered_json result;
    result["written"] = n;
    result["max_norm"] = max_norm;
    if (norm_check) {
        double reread_max = 0.0;
        for (const auto& f : read_field_file(out_path))
            reread_max = std::max(reread_max, cyclab::coeff_norm(f));
        result["reread_max_norm"] = reread_max;
        result["norm_check_passed"] = (reread_max == max_norm) && (reread_max <= radius * (1.0 + 1e-12));
        std::cout << result.dump() << "\n";
        return result["norm_check_passed"].get<bool>() ? 0 : 2;
    }
    std::cout << result.dump() << "\n";
    return 0;
}

int cmd_poincare(const std::string& field_file, long index, int degree, double norm,
                 std::uint64_t seed, double z0_re, double z0_im, double tol,
                 const std::string& traj_csv) {
    cyclab::PolyField field = [&] {
        if (!field_file.empty()) {
            auto fields = read_field_file(field_file);
            if (index < 0 || index >= static_cast<long>(fields.size()))
                throw std::runtime_error("--index out of range for " + field_file);
            return fields[static_cast<size_t>(index)];
        }
        const double radius = norm < 0.0 ? cyclab::regime_norm(degree) : norm;
        cyclab::SampleRng rng(seed, 0);
        return cyclab::sample_field(degree, radius, rng);
    }();

    const std::complex<double> z0{z0_re, z0_im};
    cyclab::IntegratorOptions opt;
    opt.tol = tol;

    ordered_json out;
    out["command"] = "poincare";
    out["version"] = std::string(cyclab::kVersion);
    out["degree"] = field.degree();
    out["coeff_norm"] = cyclab::coeff_norm(field);
    out["z0"] = {z0.real(), z0.imag()};
    out["tol"] = tol;

    const auto traj = cyclab::integrate_radial(cyclab::PolarEvaluator(field, opt.denom_floor), z0, opt);
    out["status"] = cyclab::to_string(traj.status);
    out["steps"] = traj.steps_taken;
    out["est_error"] = traj.est_error;
    out["exit_phi"] = traj.exit_phi;
    out["end"] = {traj.end.real(), traj.end.imag()};
    if (traj.status == cyclab::TrajectoryStatus::Completed) {
        const auto g = cyclab::displacement(field, z0, opt);
        out["g"] = {g.g.real(), g.g.imag()};
        const auto f = cyclab::linear_f(field.linear_part(), std::min(tol, 1e-12));
        out["linear_f"] = {f.real(), f.imag()};
    }
    if (!traj_csv.empty()) {
        std::ostringstream csv;
        csv << "phi,re_z,im_z\n";
        for (const auto& [phi, z] : traj.samples)
            csv << phi << ',' << z.real() << ',' << z.imag() << '\n';
        write_text(traj_csv, csv.str());
        out["traj_csv"] = traj_csv;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_count(const std::string& field_file, long index, double tol, double r_max,
              double eps_inner, int grid, double rho, double rescale) {
    const auto fields = read_field_file(field_file);
    cyclab::CycleCountOptions opt;
    opt.integrator_tol = tol;
    opt.real_scan.r_max = r_max;
    opt.real_scan.eps_inner = eps_inner;
    opt.real_scan.grid = grid;
    opt.rho = rho;
    opt.rescale = rescale;

    long lo = 0, hi = static_cast<long>(fields.size());
    if (index >= 0) {
        if (index >= hi) throw std::runtime_error("--index out of range");
        lo = index;
        hi = index + 1;
    }
    for (long i = lo; i < hi; ++i) {
        ordered_json rec;
        rec["index"] = i;
        try {
            const auto sc = cyclab::count_cycles_of_sample(fields[static_cast<size_t>(i)], opt);
            rec["C"] = sc.real_cycles;
            rec["N_complex"] = sc.complex_zeros;
            rec["reliable"] = sc.reliable;
            rec["crossings"] = sc.real_detail.crossings;
            rec["origin_unresolved"] = sc.real_detail.origin_unresolved;
        } catch (const std::exception& e) {
            rec["error"] = e.what();
        }
        std::cout << rec.dump() << "\n";
    }
    return 0;
}

int cmd_verify_bounds(int degree, double norm, long trials, std::uint64_t seed, int starts,
                      double tol) {
    const double cap = norm < 0.0 ? cyclab::regime_norm(degree) : norm;
    if (cap > cyclab::regime_norm(degree) * (1.0 + 1e-12))
        throw cyclab::RegimeViolation("verify-bounds: norm exceeds the smallness condition");
    const double bound_g = 8.0 * 3.141592653589793 * cap * std::sqrt(static_cast<double>(degree));
    cyclab::IntegratorOptions opt;
    opt.tol = tol;

    long prop1_failures = 0, g_failures = 0;
    double worst_prop1 = std::numeric_limits<double>::infinity();
    double worst_g = std::numeric_limits<double>::infinity();
    std::vector<std::string> offenders;

    for (long t = 0; t < trials; ++t) {
        cyclab::SampleRng rng(seed, static_cast<std::uint64_t>(t));
        const auto field = cyclab::sample_field(degree, 2.0 * cap, rng);
        for (int sidx = 0; sidx < starts; ++sidx) {
            const double r = 0.74 * std::sqrt(rng.uniform01());
            const double th = rng.uniform(0.0, 6.283185307179586);
            const std::complex<double> z0 = r * std::complex<double>{std::cos(th), std::sin(th)};
            const auto chk = cyclab::verify_prop1(field, z0, cap, opt);
            worst_prop1 = std::min(worst_prop1, chk.margin);
            if (!chk.bound_holds) {
                ++prop1_failures;
                offenders.push_back(cyclab::field_to_json(field));
            }
            const auto g = cyclab::displacement(field, z0, opt);
            const double margin = bound_g - std::abs(g.g);
            worst_g = std::min(worst_g, margin);
            if (margin < -1e-8) {
                ++g_failures;
                offenders.push_back(cyclab::field_to_json(field));
            }
        }
    }

    ordered_json out;
    out["command"] = "verify-bounds";
    out["version"] = std::string(cyclab::kVersion);
    out["degree"] = degree;
    out["norm"] = cap;
    out["ensemble_norm"] = 2.0 * cap;
    out["trials"] = trials;
    out["starts_per_trial"] = starts;
    out["prop1_failures"] = prop1_failures;
    out["g_bound_failures"] = g_failures;
    out["worst_prop1_margin"] = worst_prop1;
    out["worst_g_margin"] = worst_g;
    std::cout << out.dump(2) << "\n";
    for (const auto& o : offenders) std::cerr << "offending field: " << o << "\n";
    return (prop1_failures + g_failures) == 0 ? 0 : 2;
}

int cmd_remez(bool g0_line, int degree, double norm, int polys, int max_degree, int pairs,
              std::uint64_t seed, int grid) {
    cyclab::SampleRng rng(seed, 0);
    ordered_json out;
    out["command"] = "remez";
    out["version"] = std::string(cyclab::kVersion);
    out["seed"] = seed;
    out["grid"] = grid;
    auto results = ordered_json::array();

    auto pair_json = [](const cyclab::IntervalSubset& p) {
        ordered_json o;
        o["I"] = {p.lo, p.hi};
        auto om = ordered_json::array();
        for (const auto& [a, b] : p.omega) om.push_back({a, b});
        o["omega"] = std::move(om);
        return o;
    };

    if (g0_line) {
        const double cap = norm < 0.0 ? cyclab::regime_norm(degree) : norm;
        // Restrict g0 = exp(f) - 1 to a random line through the linear
        // coefficient ball E(4, cap).
        std::array<double, 4> dir{};
        double d2 = 0.0;
        for (auto& c : dir) {
            c = rng.normal();
            d2 += c * c;
        }
        for (auto& c : dir) c /= std::sqrt(d2);
        auto f = [&](double t) {
            cyclab::LinearPart w;
            w.a10 = t * cap * dir[0];
            w.a01 = t * cap * dir[1];
            w.b10 = t * cap * dir[2];
            w.b01 = t * cap * dir[3];
            return std::exp(cyclab::linear_f(w, 1e-11)).real() - 1.0;
        };
        std::vector<cyclab::IntervalSubset> family;
        for (int p = 0; p < pairs; ++p)
            family.push_back(cyclab::random_interval_subset(-1.0, 1.0, rng));
        const auto est = cyclab::estimate_cheb_degree(f, family, grid);
        ordered_json r;
        r["f"] = "g0 on a random line through E(4,N)";
        r["norm"] = cap;
        r["direction"] = dir;
        r["d_hat"] = est.d_hat;
        r["trials"] = est.trials;
        r["worst_pair"] = pair_json(est.worst_pair);
        results.push_back(std::move(r));
    } else {
        for (int pidx = 0; pidx < polys; ++pidx) {
            const int m = 1 + static_cast<int>(rng.uniform01() * max_degree);
            std::vector<double> coeff(static_cast<size_t>(m) + 1);
            for (auto& c : coeff) c = rng.uniform(-1.0, 1.0);
            auto f = [&coeff](double x) {
                double acc = 0.0;
                for (size_t j = coeff.size(); j-- > 0;) acc = acc * x + coeff[j];
                return acc;
            };
            std::vector<cyclab::IntervalSubset> family;
            for (int p = 0; p < pairs; ++p)
                family.push_back(cyclab::random_interval_subset(-1.0, 1.0, rng));
            bool holds_all = true;
            for (const auto& pr : family)
                holds_all = holds_all && cyclab::remez_check(f, pr, m, grid).holds;
            const auto est = cyclab::estimate_cheb_degree(f, family, grid);
            ordered_json r;
            r["f"] = "random polynomial";
            r["degree"] = m;
            r["coefficients"] = coeff;
            r["holds_at_degree_exponent"] = holds_all;
            r["d_hat"] = est.d_hat;
            r["trials"] = est.trials;
            r["worst_pair"] = pair_json(est.worst_pair);
            results.push_back(std::move(r));
        }
    }
    out["results"] = std::move(results);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_tails(const std::string& config_file, const std::string& out_dir, int degree, double norm,
              long samples, std::uint64_t seed, int workers, double tol,
              const std::string& slice_file, bool override_regime, bool have_degree,
              bool have_norm, bool have_samples, bool have_seed, bool have_workers, bool have_tol) {
    cyclab::ExperimentConfig config;
    if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) throw std::runtime_error("cannot open config: " + config_file);
        std::stringstream ss;
        ss << in.rdbuf();
        config = cyclab::config_from_json(ss.str());
    }
    if (have_degree) config.degree = degree;
    if (have_norm) config.norm = norm;
    if (have_samples) config.samples = samples;
    if (have_seed) config.seed = seed;
    if (have_workers) config.workers = workers;
    if (have_tol) config.integrator_tol = tol;
    if (override_regime) config.override_regime = true;
    if (!slice_file.empty()) {
        std::ifstream in(slice_file);
        if (!in) throw std::runtime_error("cannot open slice: " + slice_file);
        std::stringstream ss;
        ss << in.rdbuf();
        config.slice = cyclab::slice_from_json(ss.str());
    }
    config.validate();

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    // Echo the fully resolved configuration before computing anything.
    cyclab::RunManifest pre;
    pre.version = std::string(cyclab::kVersion);
    pre.config_json = cyclab::config_to_json(config);
    write_text(dir / "manifest.json", cyclab::manifest_to_json(pre));

    const auto report = cyclab::run_experiment(config);

    {
        std::ofstream out(dir / "samples.jsonl");
        cyclab::write_jsonl(report, out);
    }
    {
        std::ofstream out(dir / "tail.csv");
        cyclab::write_tail_csv(report, out);
    }
    write_text(dir / "report.json", cyclab::report_to_json(report));
    write_text(dir / "manifest.json", cyclab::manifest_to_json(report.manifest));

    const double delta = config.slice
                             ? cyclab::slice_delta(*config.slice, config.degree, config.resolved_norm())
                             : 1.0;
    ordered_json summary;
    summary["command"] = "tails";
    summary["out_dir"] = out_dir;
    summary["samples"] = config.samples;
    summary["included"] = report.included;
    summary["excluded"] = report.excluded;
    summary["mean_C"] = report.mean_C;
    summary["delta"] = delta;
    if (report.mean_C > 0.0)
        summary["c_hat"] = cyclab::mean_vs_log_bound(report, delta, config.degree).c_hat;
    else
        summary["c_hat"] = 0.0;
    summary["fitted_rate"] = report.fitted_rate;
    summary["wall_seconds"] = report.manifest.wall_seconds;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_constants(double cheb_degree) {
    const auto c = cyclab::theorem_constants(cheb_degree);
    ordered_json out;
    out["command"] = "constants";
    out["D"] = cheb_degree;
    out["C1"] = c.C1;
    out["C2"] = c.C2;
    out["C3"] = c.C3;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclab: limit-cycle statistics of near-center planar polynomial fields"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "draw fields from the coefficient ball");
    long s_n = 1;
    int s_degree = 2;
    double s_norm = -1.0;
    std::uint64_t s_seed = 0;
    std::string s_out;
    bool s_norm_check = false;
    sample->add_option("-n,--n,--samples", s_n, "number of fields");
    sample->add_option("-d,--degree", s_degree, "field degree (>= 2)");
    sample->add_option("--norm", s_norm, "ball radius N (default 1/(40 pi sqrt(d)))");
    sample->add_option("--seed", s_seed, "rng seed");
    sample->add_option("--out", s_out, "output JSONL path")->required();
    sample->add_flag("--norm-check", s_norm_check, "re-read the file and recompute norms");

    // poincare
    auto* poin = app.add_subcommand("poincare", "integrate one field over [0, 2pi]");
    std::string p_field;
    long p_index = 0;
    int p_degree = 2;
    double p_norm = -1.0;
    std::uint64_t p_seed = 0;
    double p_z0re = 0.3, p_z0im = 0.0, p_tol = 1e-10;
    std::string p_csv;
    poin->add_option("--field", p_field, "JSONL field file (else a field is sampled)");
    poin->add_option("--index", p_index, "record index in --field");
    poin->add_option("-d,--degree", p_degree, "degree when sampling");
    poin->add_option("--norm", p_norm, "ball radius when sampling");
    poin->add_option("--seed", p_seed, "rng seed when sampling");
    poin->add_option("--z0-re", p_z0re, "Re z0");
    poin->add_option("--z0-im", p_z0im, "Im z0");
    poin->add_option("--tol", p_tol, "integrator tolerance");
    poin->add_option("--traj-csv", p_csv, "dump the trajectory as CSV (phi,re_z,im_z)");

    // count
    auto* count = app.add_subcommand("count", "count real cycles and complex zeros");
    std::string c_field;
    long c_index = -1;
    double c_tol = 1e-10, c_rmax = 0.5, c_eps = 1e-3, c_rho = 2.0 / 3.0, c_rescale = 0.75;
    int c_grid = 512;
    count->add_option("--field", c_field, "JSONL field file")->required();
    count->add_option("--index", c_index, "only this record (default: all)");
    count->add_option("--tol", c_tol, "integrator tolerance");
    count->add_option("--r-max", c_rmax, "outer radius of the real scan");
    count->add_option("--eps-inner", c_eps, "inner cutoff of the real scan");
    count->add_option("--grid", c_grid, "real-scan grid intervals");
    count->add_option("--rho", c_rho, "contour radius for the complex count");
    count->add_option("--rescale", c_rescale, "argument rescale for the complex count");

    // verify-bounds
    auto* verify = app.add_subcommand("verify-bounds", "check the trajectory/displacement bounds");
    int v_degree = 2, v_starts = 5;
    double v_norm = -1.0, v_tol = 1e-10;
    long v_trials = 100;
    std::uint64_t v_seed = 0;
    verify->add_option("-d,--degree", v_degree, "field degree");
    verify->add_option("--norm", v_norm, "regime N (default 1/(40 pi sqrt(d))); ensemble uses 2N");
    verify->add_option("--trials", v_trials, "number of random fields");
    verify->add_option("--starts", v_starts, "random starts per field");
    verify->add_option("--seed", v_seed, "rng seed");
    verify->add_option("--tol", v_tol, "integrator tolerance");

    // remez
    auto* remez = app.add_subcommand("remez", "Remez checks and Chebyshev-degree estimates");
    bool r_g0 = false;
    int r_degree = 2, r_polys = 10, r_maxdeg = 8, r_pairs = 200, r_grid = 4096;
    double r_norm = -1.0;
    std::uint64_t r_seed = 0;
    remez->add_flag("--g0-line", r_g0, "estimate for g0 restricted to a random line");
    remez->add_option("-d,--degree", r_degree, "field degree (g0 mode)");
    remez->add_option("--norm", r_norm, "linear-ball radius (g0 mode)");
    remez->add_option("--polys", r_polys, "number of random polynomials");
    remez->add_option("--max-degree", r_maxdeg, "max polynomial degree");
    remez->add_option("--pairs", r_pairs, "interval/subset pairs per function");
    remez->add_option("--grid", r_grid, "sup-evaluation grid");
    remez->add_option("--seed", r_seed, "rng seed");

    // tails
    auto* tails = app.add_subcommand("tails", "run the tail-distribution experiment");
    std::string t_config, t_out, t_slice;
    int t_degree = 2, t_workers = 1;
    double t_norm = -1.0, t_tol = 1e-10;
    long t_samples = 1000;
    std::uint64_t t_seed = 0;
    bool t_override = false;
    tails->add_option("--config", t_config, "JSON config file (flags override it)");
    auto* od = tails->add_option("--out-dir", t_out, "output directory")->required();
    (void)od;
    auto* o_deg = tails->add_option("-d,--degree", t_degree, "field degree");
    auto* o_norm = tails->add_option("--norm", t_norm, "ball radius N");
    auto* o_samp = tails->add_option("--samples", t_samples, "sample count");
    auto* o_seed = tails->add_option("--seed", t_seed, "experiment seed");
    auto* o_work = tails->add_option("--workers", t_workers, "worker threads");
    auto* o_tol = tails->add_option("--tol", t_tol, "integrator tolerance");
    tails->add_option("--slice", t_slice, "JSON slice descriptor (convex slice V)");
    tails->add_flag("--override-regime", t_override, "allow N beyond the smallness condition");

    // constants
    auto* consts = app.add_subcommand("constants", "tail-bound constants at a Chebyshev degree");
    double k_D = 1.0;
    consts->add_option("--cheb-degree", k_D, "Chebyshev degree D")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) return cmd_sample(s_n, s_degree, s_norm, s_seed, s_out, s_norm_check);
        if (*poin)
            return cmd_poincare(p_field, p_index, p_degree, p_norm, p_seed, p_z0re, p_z0im, p_tol,
                                p_csv);
        if (*count) return cmd_count(c_field, c_index, c_tol, c_rmax, c_eps, c_grid, c_rho, c_rescale);
        if (*verify) return cmd_verify_bounds(v_degree, v_norm, v_trials, v_seed, v_starts, v_tol);
        if (*remez) return cmd_remez(r_g0, r_degree, r_norm, r_polys, r_maxdeg, r_pairs, r_seed, r_grid);
        if (*tails)
            return cmd_tails(t_config, t_out, t_degree, t_norm, t_samples, t_seed, t_workers, t_tol,
                             t_slice, t_override, o_deg->count() > 0, o_norm->count() > 0,
                             o_samp->count() > 0, o_seed->count() > 0, o_work->count() > 0,
                             o_tol->count() > 0);
        if (*consts) return cmd_constants(k_D);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
