#pragma once

#include <span>
#include <vector>

namespace cyclab {

struct BinomialInterval {
    double lo = 0.0, hi = 1.0;
};

// Clopper-Pearson exact two-sided interval for k successes out of n at
// confidence 1 - alpha.
BinomialInterval clopper_pearson(long k, long n, double alpha = 0.05);

// Kolmogorov-Smirnov statistic of xs against U[0,1]; xs need not be sorted.
double ks_statistic(std::vector<double> xs);

// Asymptotic critical value c(alpha)/sqrt(n) for alpha in {0.10, 0.05, 0.01}.
double ks_critical(double alpha, long n);

// Least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

}  // namespace cyclab
