#include "cyclab/polar.hpp"

#include <cmath>

#include "cyclab/errors.hpp"

namespace cyclab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kMaxDegree = 32;
}  // namespace

double regime_norm(int degree) {
    if (degree < 1) throw DomainError("regime_norm: degree must be >= 1");
    return 1.0 / (40.0 * kPi * std::sqrt(static_cast<double>(degree)));
}

double delta_bound(double norm, int degree) {
    if (norm < 0.0) throw DomainError("delta_bound: norm must be >= 0");
    const double x = norm * std::sqrt(static_cast<double>(degree));
    if (x >= 1.0)
        throw RegimeViolation("delta_bound: N sqrt(d) = " + std::to_string(x) + " >= 1");
    return x / (1.0 - x);
}

PolarEvaluator::PolarEvaluator(const PolyField& field, double denom_floor)
    : degree_(field.degree()),
      denom_floor_(denom_floor),
      a_(field.a_coeffs().begin(), field.a_coeffs().end()),
      b_(field.b_coeffs().begin(), field.b_coeffs().end()) {
    if (denom_floor_ <= 0.0) throw DomainError("PolarEvaluator: denom_floor must be > 0");
}

// With x = z cos(phi), y = z sin(phi):
//   x F + y G = sum_{k,i} z^{k+i+1} (a_ki c^{k+1} s^i + b_ki c^k s^{i+1}),
//   x G - y F = sum_{k,i} z^{k+i+1} (b_ki c^{k+1} s^i - a_ki c^k s^{i+1}),
// so P and Q are polynomials in z with exponent k+i-1 >= 0 after dividing
// by r^2 = z^2 on the exponents.
PolarEvaluation PolarEvaluator::operator()(Complex z, double phi) const {
    const double c = std::cos(phi);
    const double s = std::sin(phi);

    double cpow[kMaxDegree + 2], spow[kMaxDegree + 2];
    cpow[0] = 1.0;
    spow[0] = 1.0;
    for (int j = 1; j <= degree_ + 1; ++j) {
        cpow[j] = cpow[j - 1] * c;
        spow[j] = spow[j - 1] * s;
    }

    PolarEvaluation out;
    Complex zpow{1.0};  // z^{m-1}
    int idx = 0;
    for (int m = 1; m <= degree_; ++m) {
        Complex pm{0.0}, qm{0.0};
        for (int k = 0; k <= m; ++k, ++idx) {
            const int i = m - k;
            const double cs_a = cpow[k + 1] * spow[i];  // c^{k+1} s^i
            const double cs_b = cpow[k] * spow[i + 1];  // c^k s^{i+1}
            pm += a_[idx] * cs_a + b_[idx] * cs_b;
            qm += b_[idx] * cs_a - a_[idx] * cs_b;
        }
        out.P += pm * zpow;
        out.Q += qm * zpow;
        zpow *= z;
    }

    const Complex denom = 1.0 + out.Q;
    if (std::abs(denom) < denom_floor_)
        throw DenominatorNearZero("eval_polar: |1+Q| = " + std::to_string(std::abs(denom)) +
                                  " under floor " + std::to_string(denom_floor_));
    out.H = out.P / denom;
    return out;
}

}  // namespace cyclab
