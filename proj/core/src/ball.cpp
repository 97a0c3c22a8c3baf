#include "cyclab/ball.hpp"

#include <cmath>

#include "cyclab/errors.hpp"

namespace cyclab {

std::vector<double> sample_ball(int dim, double radius, SampleRng& rng) {
    if (dim < 1) throw DomainError("sample_ball: dim must be >= 1");
    if (radius < 0.0) throw DomainError("sample_ball: radius must be >= 0");
    std::vector<double> x(dim);
    double nrm2 = 0.0;
    do {
        nrm2 = 0.0;
        for (auto& xi : x) {
            xi = rng.normal();
            nrm2 += xi * xi;
        }
    } while (nrm2 == 0.0);
    const double r = radius * std::pow(rng.uniform01(), 1.0 / dim);
    const double scale = r / std::sqrt(nrm2);
    for (auto& xi : x) xi *= scale;
    return x;
}

PolyField sample_field(int degree, double radius, SampleRng& rng) {
    const auto v = sample_ball(degree * (degree + 3), radius, rng);
    return field_from_vector(degree, v);
}

PolyField sample_field_complex(int degree, double radius, SampleRng& rng) {
    const int n = coeff_pair_count(degree);
    const auto v = sample_ball(4 * n, radius, rng);
    PolyField f(degree);
    for (int m = 1, idx = 0; m <= degree; ++m)
        for (int k = 0; k <= m; ++k, ++idx) {
            f.set_a(k, m - k, Complex{v[2 * idx], v[2 * idx + 1]});
            f.set_b(k, m - k, Complex{v[2 * n + 2 * idx], v[2 * n + 2 * idx + 1]});
        }
    return f;
}

}  // namespace cyclab
