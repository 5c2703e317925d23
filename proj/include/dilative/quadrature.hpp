#pragma once

#include <functional>
#include <vector>

namespace dilative {

/// Gauss-Legendre nodes and weights on [-1, 1], computed to machine
/// precision by Newton iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int order);

    double integrate(const std::function<double(double)>& f, double a, double b) const;
};

/// Composite Gauss-Legendre over `panels` equal subintervals of [a, b].
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int order = 16);

} // namespace dilative
