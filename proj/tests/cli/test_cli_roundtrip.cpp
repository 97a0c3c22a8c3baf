// End-to-end checks of the cyclab binary: determinism of sample files,
// norm containment and the re-read check, tails output determinism across
// worker counts, and the constants subcommand. Takes the binary path as
// argv[1] and a scratch directory as argv[2].

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cyclab/field.hpp"
#include "cyclab/polar.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

#define CHECK_MSG(cond, msg)                                              \
    do {                                                                  \
        if (!(cond)) {                                                    \
            std::cerr << "[FAIL] " << __LINE__ << ": " << (msg) << "\n";  \
            ++g_failures;                                                 \
        }                                                                 \
    } while (0)

int run_cmd(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli_roundtrip <cyclab-binary> <scratch-dir>\n";
        return 64;
    }
    const std::string bin = argv[1];
    const fs::path dir = fs::path(argv[2]) / "cli_roundtrip";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // sample: identical bytes across reruns, norms inside the ball.
    {
        const auto f1 = (dir / "s1.jsonl").string();
        const auto f2 = (dir / "s2.jsonl").string();
        CHECK_MSG(run_cmd(bin + " sample -n 50 --degree 2 --seed 7 --out " + f1 + " > /dev/null") == 0,
                  "sample run 1 failed");
        CHECK_MSG(run_cmd(bin + " sample -n 50 --degree 2 --seed 7 --out " + f2 + " > /dev/null") == 0,
                  "sample run 2 failed");
        CHECK_MSG(slurp(f1) == slurp(f2), "sample output not deterministic");

        const double cap = cyclab::regime_norm(2);
        std::ifstream in(f1);
        std::string line;
        int records = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto field = cyclab::field_from_json(line);
            CHECK_MSG(cyclab::coeff_norm(field) <= cap * (1.0 + 1e-12), "sampled norm exceeds N");
            ++records;
        }
        CHECK_MSG(records == 50, "expected 50 records");
        CHECK_MSG(run_cmd(bin + " sample -n 200 --degree 3 --seed 9 --norm-check --out " +
                          (dir / "s3.jsonl").string() + " > " + (dir / "nc.json").string()) == 0,
                  "norm-check run failed");
    }

    // poincare: runs, writes a trajectory CSV with the right header.
    {
        const auto csv = (dir / "traj.csv").string();
        const auto out = (dir / "poincare.json").string();
        CHECK_MSG(run_cmd(bin + " poincare --degree 2 --seed 3 --z0-re 0.3 --traj-csv " + csv +
                          " > " + out) == 0,
                  "poincare failed");
        const std::string text = slurp(csv);
        CHECK_MSG(text.rfind("phi,re_z,im_z\n", 0) == 0, "trajectory CSV header");
        const auto rep = nlohmann::json::parse(slurp(out));
        CHECK_MSG(rep.at("status") == "Completed", "poincare status");
    }

    // count: the cubic field with one cycle at r = 1/4.
    {
        const auto field_file = (dir / "cubic.jsonl").string();
        std::ofstream f(field_file);
        f << R"({"degree":3,"a":[[0,1,0.0,0.0],[1,0,-0.0625,0.0],[0,2,0.0,0.0],[1,1,0.0,0.0],)"
          << R"([2,0,0.0,0.0],[0,3,0.0,0.0],[1,2,1.0,0.0],[2,1,0.0,0.0],[3,0,1.0,0.0]],)"
          << R"("b":[[0,1,-0.0625,0.0],[1,0,0.0,0.0],[0,2,0.0,0.0],[1,1,0.0,0.0],[2,0,0.0,0.0],)"
          << R"([0,3,1.0,0.0],[1,2,0.0,0.0],[2,1,1.0,0.0],[3,0,0.0,0.0]]})"
          << "\n";
        f.close();
        const auto out = (dir / "count.json").string();
        // The out-of-regime contour would blow up; count the real scan only
        // by keeping rho small enough that g stays finite.
        CHECK_MSG(run_cmd(bin + " count --field " + field_file + " --rho 0.35 > " + out) == 0,
                  "count failed");
        const auto rep = nlohmann::json::parse(slurp(out));
        CHECK_MSG(rep.at("C").get<int>() == 1, "cubic field must show C = 1");
    }

    // tails: byte-identical samples.jsonl for 1 vs 2 workers.
    {
        const auto d1 = (dir / "t1").string(), d2 = (dir / "t2").string();
        const std::string common =
            " tails --degree 2 --samples 12 --seed 5 --tol 1e-9 --out-dir ";
        CHECK_MSG(run_cmd(bin + common + d1 + " --workers 1 > /dev/null") == 0, "tails w1 failed");
        CHECK_MSG(run_cmd(bin + common + d2 + " --workers 2 > /dev/null") == 0, "tails w2 failed");
        CHECK_MSG(slurp(fs::path(d1) / "samples.jsonl") == slurp(fs::path(d2) / "samples.jsonl"),
                  "tails JSONL differs across worker counts");
        CHECK_MSG(slurp(fs::path(d1) / "tail.csv").rfind("T,fraction,ci_lo,ci_hi\n", 0) == 0,
                  "tail.csv header");
        const auto manifest = nlohmann::json::parse(slurp(fs::path(d1) / "manifest.json"));
        CHECK_MSG(manifest.at("config").at("samples").get<long>() == 12, "manifest echo");
        CHECK_MSG(nlohmann::json::parse(slurp(fs::path(d1) / "report.json")).contains("tail"),
                  "report.json missing tail");
    }

    // constants
    {
        const auto out = (dir / "constants.json").string();
        CHECK_MSG(run_cmd(bin + " constants --cheb-degree 1 > " + out) == 0, "constants failed");
        const auto rep = nlohmann::json::parse(slurp(out));
        CHECK_MSG(std::abs(rep.at("C1").get<double>() - 1086.1160159025371) < 1e-6, "C1 value");
        CHECK_MSG(rep.at("C2").get<double>() == 2.5, "C2 value");
    }

    // verify-bounds: small run must pass cleanly (exit 0).
    CHECK_MSG(run_cmd(bin + " verify-bounds --degree 2 --trials 20 --seed 1 > " +
                      (dir / "vb.json").string()) == 0,
              "verify-bounds failed");

    // remez: small polynomial run, all checks must hold.
    {
        const auto out = (dir / "remez.json").string();
        CHECK_MSG(run_cmd(bin + " remez --polys 3 --max-degree 4 --pairs 40 --seed 2 > " + out) == 0,
                  "remez failed");
        const auto rep = nlohmann::json::parse(slurp(out));
        for (const auto& r : rep.at("results")) {
            CHECK_MSG(r.at("holds_at_degree_exponent").get<bool>(), "remez check failed");
            CHECK_MSG(r.at("d_hat").get<double>() <= r.at("degree").get<double>() + 1e-9,
                      "d_hat exceeds the degree");
        }
    }

    if (g_failures == 0) std::cout << "cli_roundtrip: all checks passed\n";
    return g_failures == 0 ? 0 : 1;
}
