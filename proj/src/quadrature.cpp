#include "dilative/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace dilative {

GaussLegendre::GaussLegendre(int order) {
    if (order < 2) throw std::invalid_argument("GaussLegendre: order must be >= 2");
    nodes.resize(order);
    weights.resize(order);
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess, then Newton on P_n(x) = 0.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

double GaussLegendre::integrate(const std::function<double(double)>& f,
                                double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
}

namespace {

double panel_sum(const GaussLegendre& rule, const std::function<double(double)>& f,
                 double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k)
        sum += rule.integrate(f, a + k * h, a + (k + 1) * h);
    return sum;
}

} // namespace

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int order) {
    if (panels < 1) throw std::invalid_argument("integrate_panels: panels must be >= 1");
    if (order == 16) {
        static const GaussLegendre gl16(16);
        return panel_sum(gl16, f, a, b, panels);
    }
    return panel_sum(GaussLegendre(order), f, a, b, panels);
}

} // namespace dilative
