#pragma once

#include <vector>

#include "cyclab/field.hpp"
#include "cyclab/rng.hpp"

namespace cyclab {

// Uniform point in the closed Euclidean ball of the given radius:
// Gaussian direction scaled by radius * U^(1/dim). Exact in any dimension.
std::vector<double> sample_ball(int dim, double radius, SampleRng& rng);

// Uniform field in E(s, radius), s = d(d+3), real coefficients.
PolyField sample_field(int degree, double radius, SampleRng& rng);

// Uniform field in the complex coefficient ball B(s, radius) (2s real
// dimensions); used only by the bound-verification suites.
PolyField sample_field_complex(int degree, double radius, SampleRng& rng);

}  // namespace cyclab
