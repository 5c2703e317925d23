#include "dilative/core_model.hpp"

#include <cmath>
#include <stdexcept>

namespace dilative {

std::vector<std::string> validate_params(const DilativeParams& p) {
    std::vector<std::string> violations;
    if (!(p.alpha > 0.0))
        violations.push_back("alpha must be > 0");
    if (!(p.delta <= 2.0 * p.alpha))
        violations.push_back("delta <= 2*alpha violated");
    if (p.stationary_increments) {
        if (!(p.alpha > 0.0 && p.alpha <= 1.0))
            violations.push_back("stationary increments require H in (0,1]");
        if (p.alpha == 1.0 && p.delta != 0.0)
            violations.push_back("H=1 forces delta=0");
    }
    return violations;
}

CumulantVector CumulantVector::gaussian(double var, int p_max) {
    std::vector<double> c(static_cast<std::size_t>(p_max), 0.0);
    if (p_max >= 2) c[1] = var;
    return CumulantVector(std::move(c));
}

double CumulantVector::order(int n) const {
    if (n < 1 || n > p_max())
        throw std::invalid_argument("cumulant order out of range (1.." +
                                    std::to_string(p_max()) + "): " + std::to_string(n));
    return entries[static_cast<std::size_t>(n - 1)];
}

std::vector<std::string> CumulantVector::validate() const {
    std::vector<std::string> violations;
    if (p_max() < 2 || p_max() % 2 != 0)
        violations.push_back("p_max must be an even integer >= 2");
    if (p_max() >= 1 && entries[0] != 0.0)
        violations.push_back("c_1 must be 0 (zero-mean convention)");
    if (p_max() >= 2 && !(entries[1] > 0.0))
        violations.push_back("c_2 must be > 0");
    for (int n = 4; n <= p_max(); n += 2)
        if (entries[static_cast<std::size_t>(n - 1)] < 0.0)
            violations.push_back("even-order cumulant c_" + std::to_string(n) +
                                 " must be >= 0");
    return violations;
}

std::size_t SamplePath::index_of_time(double t) const {
    // relative tolerance; times can live many orders of magnitude apart on
    // geometric grids, so an absolute floor would merge neighbours
    const double tol = 1e-12 * std::abs(t);
    // binary search on the sorted times
    std::size_t lo = 0, hi = times.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (times[mid] < t - tol)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < times.size() && std::abs(times[lo] - t) <= tol) return lo;
    throw std::runtime_error("sampling mismatch: time " + std::to_string(t) +
                             " is not a sample point of the path");
}

std::vector<std::string> SamplePath::validate() const {
    std::vector<std::string> violations;
    if (times.size() != values.size())
        violations.push_back("times and values must have equal length");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) {
            violations.push_back("times must be strictly increasing");
            break;
        }
    if (!times.empty() && times.front() < 0.0)
        violations.push_back("times must be >= 0");
    if (!times.empty() && times.front() == 0.0 && values.front() != 0.0)
        violations.push_back("value at time 0 must be 0");
    return violations;
}

double cumulant_at(const DilativeParams& p, const CumulantVector& c, int n, double t) {
    if (n < 2 || n > c.p_max())
        throw std::invalid_argument("cumulant_at: order out of range: " + std::to_string(n));
    if (!(t > 0.0))
        throw std::invalid_argument("cumulant_at: t must be > 0");
    const double expo = (p.alpha - 0.5 * p.delta) * n + p.delta;
    return std::pow(t, expo) * c.order(n);
}

double fbm_covariance(double hurst, double var1, double t1, double t2) {
    if (!(hurst > 0.0 && hurst <= 1.0))
        throw std::invalid_argument("fbm_covariance: H must be in (0,1]");
    if (!(var1 > 0.0))
        throw std::invalid_argument("fbm_covariance: var1 must be > 0");
    if (t1 < 0.0 || t2 < 0.0)
        throw std::invalid_argument("fbm_covariance: times must be >= 0");
    const double h2 = 2.0 * hurst;
    return 0.5 * var1 *
           (std::pow(t1, h2) + std::pow(t2, h2) - std::pow(std::abs(t1 - t2), h2));
}

HolderCase holder_case(const DilativeParams& p) {
    if (!p.stationary_increments)
        throw std::invalid_argument("holder_case: requires stationary increments");
    const double h = p.alpha;
    const double d = p.delta;
    if (d < 0.0) return {HolderRegime::case_i, h};
    if (d < 2.0 * h) return {HolderRegime::case_ii, h - 0.5 * d};
    if (d == 2.0 * h) {
        if (h > 0.5) return {HolderRegime::case_iii, h - 0.5};
        throw std::invalid_argument(
            "holder_case: unsupported case delta = 2H with H <= 1/2");
    }
    throw std::invalid_argument("holder_case: delta > 2*alpha is not a valid parameter");
}

ProcessSpec ProcessSpec::fbm_spec(double hurst, double var1, int p_max) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("fbm: H must be in (0,1)");
    if (!(var1 > 0.0)) throw std::invalid_argument("fbm: var1 must be > 0");
    ProcessSpec s;
    s.kind = ProcessKind::fbm;
    s.hurst = hurst;
    s.var1 = var1;
    s.params = DilativeParams{hurst, 0.0, true};
    s.cumulants = CumulantVector::gaussian(var1, p_max);
    s.gaussian = true;
    return s;
}

ProcessSpec ProcessSpec::deterministic_spec(DeterministicKind kind, double beta) {
    if (kind == DeterministicKind::power && !(beta > 0.0))
        throw std::invalid_argument("deterministic power path: beta must be > 0");
    ProcessSpec s;
    s.kind = ProcessKind::deterministic;
    s.det_kind = kind;
    s.det_beta = beta;
    const double expo = (kind == DeterministicKind::identity) ? 1.0 : beta;
    s.params = DilativeParams{expo, 0.0, false};
    return s;
}

} // namespace dilative
