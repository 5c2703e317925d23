#include "dilative/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace dilative {

namespace {

std::array<double, 5> power_sums(std::span<const double> xs) {
    std::array<double, 5> s{};
    for (double x : xs) {
        const double x2 = x * x;
        s[1] += x;
        s[2] += x2;
        s[3] += x2 * x;
        s[4] += x2 * x2;
    }
    s[0] = static_cast<double>(xs.size());
    return s;
}

KStats kstats_from_sums(const std::array<double, 5>& s) {
    const double n = s[0];
    KStats k;
    if (n >= 1) k.k1 = s[1] / n;
    if (n >= 2) k.k2 = (n * s[2] - s[1] * s[1]) / (n * (n - 1.0));
    if (n >= 3)
        k.k3 = (2.0 * s[1] * s[1] * s[1] - 3.0 * n * s[1] * s[2] + n * n * s[3]) /
               (n * (n - 1.0) * (n - 2.0));
    if (n >= 4)
        k.k4 = (-6.0 * std::pow(s[1], 4) + 12.0 * n * s[1] * s[1] * s[2] -
                3.0 * n * (n - 1.0) * s[2] * s[2] - 4.0 * n * (n + 1.0) * s[1] * s[3] +
                n * n * (n + 1.0) * s[4]) /
               (n * (n - 1.0) * (n - 2.0) * (n - 3.0));
    return k;
}

} // namespace

double KStats::order(int n) const {
    switch (n) {
        case 1: return k1;
        case 2: return k2;
        case 3: return k3;
        case 4: return k4;
        default: throw std::invalid_argument("KStats::order: only orders 1..4");
    }
}

KStats k_statistics(std::span<const double> sample) {
    return kstats_from_sums(power_sums(sample));
}

void PowerSums::add(double x) {
    const double x2 = x * x;
    n += 1.0;
    s1 += x;
    s2 += x2;
    s3 += x2 * x;
    s4 += x2 * x2;
}

void PowerSums::remove(double x) {
    const double x2 = x * x;
    n -= 1.0;
    s1 -= x;
    s2 -= x2;
    s3 -= x2 * x;
    s4 -= x2 * x2;
}

double PowerSums::kstat(int order) const {
    return kstats_from_sums({n, s1, s2, s3, s4}).order(order);
}

double jackknife_se_kstat_difference(std::span<const double> a,
                                     std::span<const double> b, int order) {
    if (a.size() != b.size() || a.size() < 6)
        throw std::invalid_argument("jackknife_se_kstat_difference: need paired samples >= 6");
    PowerSums pa, pb;
    for (double x : a) pa.add(x);
    for (double x : b) pb.add(x);

    const std::size_t n = a.size();
    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) {
        PowerSums qa = pa, qb = pb;
        qa.remove(a[i]);
        qb.remove(b[i]);
        loo[i] = qa.kstat(order) - qb.kstat(order);
    }
    const double m = mean(loo);
    double ss = 0.0;
    for (double v : loo) ss += (v - m) * (v - m);
    const double nn = static_cast<double>(n);
    return std::sqrt((nn - 1.0) / nn * ss);
}

double jackknife_se_kstat(std::span<const double> sample, int order) {
    const std::size_t n = sample.size();
    if (n < 6) throw std::invalid_argument("jackknife_se_kstat: need at least 6 samples");
    const auto s = power_sums(sample);

    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = sample[i];
        const double x2 = x * x;
        std::array<double, 5> si = s;
        si[0] -= 1.0;
        si[1] -= x;
        si[2] -= x2;
        si[3] -= x2 * x;
        si[4] -= x2 * x2;
        loo[i] = kstats_from_sums(si).order(order);
    }
    const double m = mean(loo);
    double ss = 0.0;
    for (double v : loo) ss += (v - m) * (v - m);
    const double nn = static_cast<double>(n);
    return std::sqrt((nn - 1.0) / nn * ss);
}

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return ss / static_cast<double>(n - 1);
}

double standard_error_of_mean(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

CovEstimate covariance_with_se(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("covariance_with_se: paired samples required");
    const double mx = mean(xs);
    const double my = mean(ys);
    std::vector<double> prods(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        prods[i] = (xs[i] - mx) * (ys[i] - my);
    CovEstimate out;
    const double n = static_cast<double>(xs.size());
    out.cov = mean(prods) * n / (n - 1.0);
    out.se = standard_error_of_mean(prods);
    return out;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_fit: need paired samples, size >= 2");
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

TwoVarFit two_var_fit(std::span<const double> x1, std::span<const double> x2,
                      std::span<const double> y) {
    const std::size_t n = y.size();
    if (x1.size() != n || x2.size() != n || n < 3)
        throw std::invalid_argument("two_var_fit: need >= 3 paired samples");

    // normal equations for [1, x1, x2]
    double s1 = 0, sx1 = 0, sx2 = 0, sx1x1 = 0, sx1x2 = 0, sx2x2 = 0;
    double sy = 0, sx1y = 0, sx2y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s1 += 1.0;
        sx1 += x1[i];
        sx2 += x2[i];
        sx1x1 += x1[i] * x1[i];
        sx1x2 += x1[i] * x2[i];
        sx2x2 += x2[i] * x2[i];
        sy += y[i];
        sx1y += x1[i] * y[i];
        sx2y += x2[i] * y[i];
    }
    double a[3][4] = {
        {s1, sx1, sx2, sy},
        {sx1, sx1x1, sx1x2, sx1y},
        {sx2, sx1x2, sx2x2, sx2y},
    };
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300)
            throw std::invalid_argument("two_var_fit: collinear regressors");
        std::swap(a[col], a[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
        }
    }
    TwoVarFit fit;
    fit.intercept = a[0][3] / a[0][0];
    fit.b1 = a[1][3] / a[1][1];
    fit.b2 = a[2][3] / a[2][2];
    return fit;
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

} // namespace dilative
