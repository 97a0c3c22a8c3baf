#include <doctest.h>

#include <cmath>
#include <set>

#include "cyclab/ball.hpp"
#include "cyclab/errors.hpp"
#include "cyclab/field.hpp"
#include "cyclab/polar.hpp"
#include "cyclab/rng.hpp"
#include "cyclab/stats.hpp"

#include "test_helpers.hpp"

using namespace cyclab;

TEST_SUITE_BEGIN("field");

TEST_CASE("coefficient pair count is d(d+3)/2 per family") {
    for (int d = 2; d <= 8; ++d) {
        int pairs = 0;
        std::set<int> indices;
        for (int k = 0; k <= d; ++k)
            for (int i = 0; i <= d; ++i)
                if (k + i >= 1 && k + i <= d) {
                    ++pairs;
                    indices.insert(coeff_pair_index(k, i));
                }
        CHECK(pairs == d * (d + 3) / 2);
        CHECK(pairs == coeff_pair_count(d));
        // The linear index is a bijection onto [0, pairs).
        CHECK(static_cast<int>(indices.size()) == pairs);
        CHECK(*indices.begin() == 0);
        CHECK(*indices.rbegin() == pairs - 1);
        CHECK(PolyField(d).real_dimension() == d * (d + 3));
    }
}

TEST_CASE("coeff_norm: zero field and the extremal diagonal field") {
    PolyField zero(2);
    CHECK(coeff_norm(zero) == 0.0);

    const double N = regime_norm(2);
    PolyField v0(2);
    v0.set_a(1, 0, N / std::sqrt(2.0));
    v0.set_b(0, 1, N / std::sqrt(2.0));
    CHECK(coeff_norm(v0) == doctest::Approx(N).epsilon(1e-15));
}

TEST_CASE("coeff_norm matches a direct-summation oracle on random degree-3 fields") {
    SampleRng rng(42, 7);
    for (int trial = 0; trial < 20; ++trial) {
        const PolyField f = sample_field(3, 1.7, rng);
        // Oracle: a separate route through the packed vector.
        double acc = 0.0;
        for (double c : field_to_vector(f)) acc += c * c;
        const double oracle = std::sqrt(acc);
        CHECK(coeff_norm(f) == doctest::Approx(oracle).epsilon(1e-14));
    }
}

TEST_CASE("field JSON record round-trips exactly and is canonically ordered") {
    SampleRng rng(3, 0);
    const PolyField f = sample_field(4, 0.9, rng);
    const std::string rec = field_to_json(f);
    CHECK(field_from_json(rec) == f);
    // Degree-1 block first, k ascending: (0,1) then (1,0).
    CHECK(rec.find("\"a\":[[0,1,") != std::string::npos);

    PolyField g(2);
    g.set_a(1, 1, Complex{0.25, -1.5});
    g.set_b(0, 2, Complex{0.0, 3.0});
    CHECK(field_from_json(field_to_json(g)) == g);
}

TEST_CASE("sample_ball basics") {
    SampleRng rng(11, 0);
    SUBCASE("radius 0 gives the origin") {
        const auto x = sample_ball(5, 0.0, rng);
        for (double c : x) CHECK(c == 0.0);
    }
    SUBCASE("containment") {
        for (int t = 0; t < 10000; ++t) {
            const auto x = sample_ball(7, 2.5, rng);
            double n2 = 0.0;
            for (double c : x) n2 += c * c;
            CHECK(n2 <= 2.5 * 2.5 * (1.0 + 1e-14));
        }
    }
}

TEST_CASE("sample_ball: dim-2 area ratio") {
    SampleRng rng(2024, 0);
    const int n = 100000;
    int inside = 0;
    for (int t = 0; t < n; ++t) {
        const auto x = sample_ball(2, 1.0, rng);
        if (x[0] * x[0] + x[1] * x[1] <= 0.25) ++inside;
    }
    // Area-ratio oracle: (1/2)^2 = 1/4; allow 3 binomial sigmas.
    const double frac = static_cast<double>(inside) / n;
    const double sigma = std::sqrt(0.25 * 0.75 / n);
    CHECK(std::abs(frac - 0.25) <= 3.0 * sigma);
}

TEST_CASE("sample_ball: norm^dim is uniform (KS at the 1% level)") {
    const int dim = 10;
    const int n = 100000;
    SampleRng rng(5150, 0);
    std::vector<double> u(n);
    for (int t = 0; t < n; ++t) {
        const auto x = sample_ball(dim, 2.0, rng);
        double n2 = 0.0;
        for (double c : x) n2 += c * c;
        u[t] = std::pow(std::sqrt(n2) / 2.0, dim);
    }
    CHECK(ks_statistic(u) < ks_critical(0.01, n));
}

TEST_CASE("eval_polar: zero and linear fields") {
    PolyField zero(3);
    const auto e0 = eval_polar(zero, Complex{0.4, 0.1}, 1.3);
    CHECK(e0.P == Complex{0.0});
    CHECK(e0.Q == Complex{0.0});
    CHECK(e0.H == Complex{0.0});

    // a10 = b01 = lambda: xF + yG = lambda r^2 and xG - yF = 0.
    const double lambda = 0.37;
    PolyField lin(2);
    lin.set_a(1, 0, lambda);
    lin.set_b(0, 1, lambda);
    for (double phi : {0.0, 0.9, 2.7, 5.8})
        for (Complex z : {Complex{0.0}, Complex{0.5, 0.0}, Complex{0.2, -0.3}}) {
            const auto e = eval_polar(lin, z, phi);
            CHECK(std::abs(e.P - lambda) < 1e-15);
            CHECK(std::abs(e.Q) < 1e-15);
            CHECK(std::abs(e.H - lambda) < 1e-15);
        }
}

TEST_CASE("eval_polar matches the Cartesian oracle") {
    SUBCASE("fixed quadratic field at (0.3, 1.0)") {
        SampleRng rng(99, 5);
        const PolyField f = sample_field(2, 0.8, rng);
        const auto got = eval_polar(f, Complex{0.3, 0.0}, 1.0);
        const auto want = testutil::cartesian_polar_oracle(f, Complex{0.3, 0.0}, 1.0);
        CHECK(std::abs(got.P - want.P) <= 1e-12 * std::abs(want.P));
        CHECK(std::abs(got.Q - want.Q) <= 1e-12 * std::max(1e-30, std::abs(want.Q)) + 1e-15);
        CHECK(std::abs(got.H - want.H) <= 1e-12 * std::abs(want.H));
    }
    SUBCASE("random fields of degree <= 5, random z in the punctured disk") {
        SampleRng rng(1234, 0);
        for (int trial = 0; trial < 50; ++trial) {
            const int d = 2 + static_cast<int>(rng.uniform01() * 4);
            const PolyField f = sample_field(d, 0.5, rng);
            const double r = 0.05 + 0.94 * rng.uniform01();
            const double arg = rng.uniform(0.0, testutil::kTwoPi);
            const Complex z = r * Complex{std::cos(arg), std::sin(arg)};
            const double phi = rng.uniform(0.0, testutil::kTwoPi);
            const auto got = eval_polar(f, z, phi);
            const auto want = testutil::cartesian_polar_oracle(f, z, phi);
            const double scale = std::abs(want.P) + std::abs(want.Q) + 1e-12;
            CHECK(std::abs(got.P - want.P) <= 1e-10 * scale);
            CHECK(std::abs(got.Q - want.Q) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("eval_polar component bounds |P|,|Q| <= 2N sqrt(d) and |H| <= delta_2N") {
    SampleRng rng(777, 0);
    for (int d : {2, 3, 5}) {
        const double N = regime_norm(d);
        const double bound = 2.0 * N * std::sqrt(static_cast<double>(d));
        const double hbound = delta_bound(2.0 * N, d);
        for (int trial = 0; trial < 40; ++trial) {
            const PolyField f = sample_field(d, 2.0 * N, rng);
            const PolarEvaluator H(f);
            const double r = 0.999 * rng.uniform01();
            const double arg = rng.uniform(0.0, testutil::kTwoPi);
            const Complex z = r * Complex{std::cos(arg), std::sin(arg)};
            const double phi = rng.uniform(0.0, testutil::kTwoPi);
            const auto e = H(z, phi);
            CHECK(std::abs(e.P) <= bound * (1.0 + 1e-12));
            CHECK(std::abs(e.Q) <= bound * (1.0 + 1e-12));
            CHECK(std::abs(e.H) <= hbound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("eval_polar: H real for real field, real z, |Q| < 1") {
    SampleRng rng(31337, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const PolyField f = sample_field(3, 0.3, rng);
        const auto e = eval_polar(f, Complex{rng.uniform(0.01, 0.99), 0.0},
                                  rng.uniform(0.0, testutil::kTwoPi));
        const double scale = std::abs(e.H) + 1.0;
        CHECK(std::abs(e.H.imag()) <= 1e-14 * scale);
    }
}

TEST_CASE("eval_polar throws DenominatorNearZero outside the regime") {
    PolyField f(2);
    f.set_b(1, 0, -1.2);  // 1 + Q = -0.2 at phi = 0
    CHECK_THROWS_AS(eval_polar(f, Complex{0.0}, 0.0), DenominatorNearZero);
}

TEST_CASE("delta_bound") {
    CHECK(delta_bound(0.0, 4) == 0.0);
    // x/(1-x) at x = 1/2.
    CHECK(delta_bound(0.5 / std::sqrt(3.0), 3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(delta_bound(1.0 / std::sqrt(2.0), 2), RegimeViolation);
    CHECK_THROWS_AS(delta_bound(0.7, 9), RegimeViolation);

    // In the smallness regime, delta_2N < 3 N sqrt(d) <= 3/(40 pi).
    for (int d : {2, 3, 5, 8}) {
        const double N = regime_norm(d);
        const double d2N = delta_bound(2.0 * N, d);
        CHECK(d2N < 3.0 * N * std::sqrt(static_cast<double>(d)));
        CHECK(3.0 * N * std::sqrt(static_cast<double>(d)) <= 3.0 / (40.0 * 3.141592653589793) * (1 + 1e-12));
    }
}

TEST_CASE("complex-coefficient fields: norm and polar evaluation stay consistent") {
    SampleRng rng(8, 8);
    const PolyField f = sample_field_complex(3, 0.4, rng);
    CHECK(!f.is_real());
    CHECK(coeff_norm(f) <= 0.4 * (1.0 + 1e-12));
    const Complex z{0.3, 0.2};
    const auto got = eval_polar(f, z, 0.77);
    const auto want = testutil::cartesian_polar_oracle(f, z, 0.77);
    CHECK(std::abs(got.P - want.P) <= 1e-10 * (std::abs(want.P) + 1.0));
    CHECK(std::abs(got.Q - want.Q) <= 1e-10 * (std::abs(want.Q) + 1.0));
}

TEST_SUITE_END();
