#include "cyclab/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/beta.hpp>

#include "cyclab/errors.hpp"

namespace cyclab {

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete_beta: a, b must be > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a, b, x);
}

BinomialInterval clopper_pearson(long k, long n, double alpha) {
    if (n <= 0 || k < 0 || k > n) throw DomainError("clopper_pearson: need 0 <= k <= n, n > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("clopper_pearson: alpha in (0,1)");
    BinomialInterval out;
    const double kd = static_cast<double>(k), nd = static_cast<double>(n);
    out.lo = (k == 0) ? 0.0
                      : boost::math::quantile(boost::math::beta_distribution<>(kd, nd - kd + 1.0),
                                              alpha / 2.0);
    out.hi = (k == n) ? 1.0
                      : boost::math::quantile(boost::math::beta_distribution<>(kd + 1.0, nd - kd),
                                              1.0 - alpha / 2.0);
    return out;
}

double ks_statistic(std::vector<double> xs) {
    if (xs.empty()) throw DomainError("ks_statistic: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        d = std::max(d, std::abs((i + 1) / n - xs[i]));
        d = std::max(d, std::abs(xs[i] - i / n));
    }
    return d;
}

double ks_critical(double alpha, long n) {
    if (n <= 0) throw DomainError("ks_critical: n must be > 0");
    double c;
    if (alpha == 0.10)
        c = 1.224;
    else if (alpha == 0.05)
        c = 1.358;
    else if (alpha == 0.01)
        c = 1.628;
    else
        c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c / std::sqrt(static_cast<double>(n));
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("ls_slope: need two equal-length samples of size >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw DomainError("ls_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace cyclab
