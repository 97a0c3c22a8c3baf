#include <doctest.h>

#include <cmath>

#include "cyclab/errors.hpp"
#include "cyclab/poincare.hpp"
#include "cyclab/polar.hpp"
#include "cyclab/remez.hpp"
#include "cyclab/rng.hpp"

using namespace cyclab;

namespace {

double cheb4(double x) { return 8.0 * x * x * x * x - 8.0 * x * x + 1.0; }

std::function<double(double)> random_poly(int deg, SampleRng& rng) {
    std::vector<double> coeff(static_cast<size_t>(deg) + 1);
    for (auto& c : coeff) c = rng.uniform(-1.0, 1.0);
    return [coeff](double x) {
        double acc = 0.0;
        for (size_t j = coeff.size(); j-- > 0;) acc = acc * x + coeff[j];
        return acc;
    };
}

}  // namespace

TEST_SUITE_BEGIN("remez");

TEST_CASE("interval subset validation") {
    IntervalSubset good{0.0, 1.0, {{0.1, 0.3}, {0.5, 0.8}}};
    good.validate();
    CHECK(good.measure() == doctest::Approx(0.5));

    CHECK_THROWS_AS((IntervalSubset{0.0, 1.0, {}}).validate(), DomainError);
    CHECK_THROWS_AS((IntervalSubset{0.0, 1.0, {{0.4, 0.2}}}).validate(), DomainError);
    CHECK_THROWS_AS((IntervalSubset{0.0, 1.0, {{0.1, 0.5}, {0.4, 0.8}}}).validate(), DomainError);
    CHECK_THROWS_AS((IntervalSubset{0.0, 1.0, {{0.5, 1.2}}}).validate(), DomainError);
}

TEST_CASE("remez_check: identity on [0,1] with omega = [0,1/2], exponent 1") {
    const auto res = remez_check([](double x) { return x; },
                                 IntervalSubset{0.0, 1.0, {{0.0, 0.5}}}, 1.0);
    CHECK(res.holds);
    CHECK(res.lhs == 1.0);   // grid includes the endpoint
    CHECK(res.rhs == 4.0);   // (4*1/0.5)^1 * 0.5
}

TEST_CASE("remez_check: a constant with exponent 0 holds with equality") {
    const auto res = remez_check([](double) { return -2.5; },
                                 IntervalSubset{-1.0, 3.0, {{0.0, 1.0}}}, 0.0);
    CHECK(res.holds);
    CHECK(res.lhs == 2.5);
    CHECK(res.rhs == 2.5);
}

TEST_CASE("remez_check: Chebyshev T4 on [-1,1] with omega = [-0.9, 0.9]") {
    const auto res = remez_check(cheb4, IntervalSubset{-1.0, 1.0, {{-0.9, 0.9}}}, 4.0);
    CHECK(res.holds);
    CHECK(res.lhs == doctest::Approx(1.0).epsilon(1e-9));  // |T4| peaks at the endpoints
    // Interior extrema of T4 (at cos(k pi/4)) lie inside omega, so
    // sup_omega = 1 and rhs = (8/1.8)^4.
    CHECK(res.rhs == doctest::Approx(std::pow(8.0 / 1.8, 4.0)).epsilon(1e-9));
}

TEST_CASE("estimate_cheb_degree: constants give 0, degenerate sup throws") {
    SampleRng rng(7, 0);
    std::vector<IntervalSubset> family;
    for (int t = 0; t < 50; ++t) family.push_back(random_interval_subset(-1.0, 1.0, rng));

    const auto est = estimate_cheb_degree([](double) { return 3.0; }, family);
    CHECK(est.d_hat == 0.0);
    CHECK(est.trials == 50);

    CHECK_THROWS_AS(estimate_cheb_degree([](double) { return 0.0; }, family), DegenerateSup);
}

TEST_CASE("estimate_cheb_degree: f(x) = x stays at or under degree 1") {
    SampleRng rng(8, 0);
    std::vector<IntervalSubset> family;
    for (int t = 0; t < 1000; ++t) family.push_back(random_interval_subset(-1.0, 1.0, rng));
    const auto est = estimate_cheb_degree([](double x) { return x; }, family);
    CHECK(est.d_hat >= 0.0);
    CHECK(est.d_hat <= 1.0);
}

TEST_CASE("random polynomials of degree m: d_hat <= m and the check closes") {
    SampleRng rng(9, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 1 + static_cast<int>(rng.uniform01() * 8);
        const auto f = random_poly(m, rng);
        std::vector<IntervalSubset> family;
        for (int t = 0; t < 100; ++t) family.push_back(random_interval_subset(-1.0, 1.0, rng));

        for (const auto& pair : family) CHECK(remez_check(f, pair, m).holds);

        const auto est = estimate_cheb_degree(f, family);
        CHECK(est.d_hat <= m);
        // By construction of the max, the check at d_hat holds on every pair.
        for (const auto& pair : family) CHECK(remez_check(f, pair, est.d_hat).holds);
    }
}

TEST_CASE("d_hat is monotone under family growth") {
    SampleRng rng(10, 0);
    const auto f = random_poly(5, rng);
    std::vector<IntervalSubset> family;
    for (int t = 0; t < 200; ++t) family.push_back(random_interval_subset(-1.0, 1.0, rng));
    const auto small = estimate_cheb_degree(
        f, std::span<const IntervalSubset>(family.data(), 50));
    const auto large = estimate_cheb_degree(f, family);
    CHECK(small.d_hat <= large.d_hat);
}

TEST_CASE("random_interval_subset draws valid pairs") {
    SampleRng rng(11, 0);
    for (int t = 0; t < 500; ++t) {
        const auto pair = random_interval_subset(-2.0, 3.0, rng);
        pair.validate();
        CHECK(pair.measure() >= 0.05 * pair.length());
        CHECK(pair.measure() < pair.length());
        CHECK(static_cast<int>(pair.omega.size()) <= 4);
    }
}

TEST_CASE("g0 restricted to a line through E(4,N): the estimate is finite") {
    // The function whose Chebyshev degree drives the tail constants; no
    // ground-truth value exists, so this is an observational smoke check.
    SampleRng rng(12, 0);
    const double N = regime_norm(2);
    std::array<double, 4> dir{};
    double d2 = 0.0;
    for (auto& c : dir) {
        c = rng.normal();
        d2 += c * c;
    }
    for (auto& c : dir) c /= std::sqrt(d2);
    auto f = [&](double t) {
        LinearPart w;
        w.a10 = t * N * dir[0];
        w.a01 = t * N * dir[1];
        w.b10 = t * N * dir[2];
        w.b01 = t * N * dir[3];
        return std::exp(linear_f(w, 1e-11)).real() - 1.0;
    };
    std::vector<IntervalSubset> family;
    for (int t = 0; t < 16; ++t) family.push_back(random_interval_subset(-1.0, 1.0, rng));
    const auto est = estimate_cheb_degree(f, family, 256);
    CHECK(est.d_hat >= 0.0);
    CHECK(std::isfinite(est.d_hat));
    CHECK(est.trials == 16);
}

TEST_SUITE_END();
