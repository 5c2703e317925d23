#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dilative {

/// Unbiased cumulant estimates (k-statistics) of orders 1..4.
struct KStats {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double k4 = 0.0;

    double order(int n) const;
};

/// k-statistics from the classical power-sum formulas; needs at least 4 samples
/// for k4 to be defined (orders above the sample size are left at 0).
KStats k_statistics(std::span<const double> sample);

/// Jackknife (leave-one-out) standard error of the k-statistic of the given
/// order, computed with O(n) power-sum downdates.
double jackknife_se_kstat(std::span<const double> sample, int order);

/// Running power sums S_r = sum x^r, r = 1..4, with O(1) add/remove; the
/// building block for jackknifed k-statistics.
struct PowerSums {
    double n = 0.0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;

    void add(double x);
    void remove(double x);
    double kstat(int order) const;
};

/// Jackknife standard error of k_A(order) - k_B(order) for paired samples
/// (same index set, e.g. the same Monte Carlo paths).
double jackknife_se_kstat_difference(std::span<const double> a,
                                     std::span<const double> b, int order);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);      // unbiased, divisor n-1
double standard_error_of_mean(std::span<const double> xs);

/// Empirical covariance of paired samples, with the standard error of the
/// covariance estimate (sd of the centered products / sqrt(n)).
struct CovEstimate {
    double cov = 0.0;
    double se = 0.0;
};
CovEstimate covariance_with_se(std::span<const double> xs, std::span<const double> ys);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

/// Least squares for y ~ a + b*x1 + c*x2 (normal equations, 3x3 solve).
struct TwoVarFit {
    double intercept = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
};
TwoVarFit two_var_fit(std::span<const double> x1, std::span<const double> x2,
                      std::span<const double> y);

double median(std::vector<double> xs);

} // namespace dilative
