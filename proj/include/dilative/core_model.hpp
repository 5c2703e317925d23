#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace dilative {

// ---------------------------------------------------------------------------
// Parameter objects and the closed-form scaling laws every other module
// consumes. All operations here are pure; values are immutable after
// construction and safe to share across threads.
// ---------------------------------------------------------------------------

/// The scaling pair (alpha, delta); alpha is written H when the process has
/// stationary increments.
struct DilativeParams {
    double alpha = 0.5;
    double delta = 0.0;
    bool stationary_increments = false;

    double hurst() const { return alpha; }
};

/// All violated invariants of `p`; empty means valid.
///   - delta <= 2*alpha
///   - stationary increments force alpha in (0,1]
///   - stationary increments with alpha == 1 force delta == 0
std::vector<std::string> validate_params(const DilativeParams& p);

/// Cumulants c_1..c_pmax of the time-1 marginal, the sufficient statistic for
/// every moment and scaling formula in this library. Stored permissively;
/// `validate` reports violations as data so corrupted vectors can be used as
/// negative controls.
struct CumulantVector {
    // entries[n-1] = cumulant of order n
    std::vector<double> entries;

    CumulantVector() = default;
    explicit CumulantVector(std::vector<double> c) : entries(std::move(c)) {}

    static CumulantVector gaussian(double var, int p_max = 8);

    int p_max() const { return static_cast<int>(entries.size()); }
    double order(int n) const;

    std::vector<std::string> validate() const;
};

/// Strictly increasing times with matching values; the universal currency of
/// simulation and estimation. If times[0] == 0 then values[0] must be 0.
struct SamplePath {
    std::vector<double> times;
    std::vector<double> values;

    std::size_t size() const { return times.size(); }

    /// Index of the sample at time t (relative tolerance 1e-12); throws a
    /// sampling-mismatch error when t is not on the grid. Interpolation is
    /// deliberately not offered.
    std::size_t index_of_time(double t) const;
    double value_at(double t) const { return values[index_of_time(t)]; }

    std::vector<std::string> validate() const;
};

/// c_n(t) = t^{(alpha-delta/2)n+delta} * c_n(1).
/// This is the cumulant form of the dilative scaling relation: cumulants are
/// linear in the convolution exponent, so the T^delta convolution power
/// contributes the +delta in the exponent.
double cumulant_at(const DilativeParams& p, const CumulantVector& c, int n, double t);

/// 0.5*var1*(t1^{2H} + t2^{2H} - |t1-t2|^{2H}); the covariance shared by every
/// dilatively stable process with stationary increments and by FBM itself.
double fbm_covariance(double hurst, double var1, double t1, double t2);

/// Local Holder continuity regime of the stationary-increments case.
enum class HolderRegime { case_i, case_ii, case_iii };

struct HolderCase {
    HolderRegime regime;
    double bound; // supremum of guaranteed local Holder orders
};

/// CaseI (delta<0, bound H), CaseII (0<=delta<2H, bound H-delta/2),
/// CaseIII (delta==2H, H>1/2, bound H-1/2). Throws when delta==2H and
/// H<=1/2 (outside the theorem's hypothesis) or when increments are not
/// stationary.
HolderCase holder_case(const DilativeParams& p);

/// Known process families used throughout the toolkit.
enum class ProcessKind { fbm, flp, deterministic };

enum class DeterministicKind { identity, power, zero };

struct LevySpec; // simulate.hpp

/// A concrete process: family, scaling parameters and (when available) the
/// analytic cumulant vector of X(1). FBM is the Gaussian baseline; it is not
/// itself dilatively stable (Def. requires a non-Gaussian marginal), which is
/// recorded in `gaussian` rather than enforced numerically.
struct ProcessSpec {
    ProcessKind kind = ProcessKind::fbm;
    DilativeParams params;
    CumulantVector cumulants;
    bool gaussian = false;

    double hurst = 0.5;
    double var1 = 1.0;

    // flp only
    std::shared_ptr<const LevySpec> levy;
    double window_mult = 250.0; // truncation window M = window_mult * horizon

    // deterministic only
    DeterministicKind det_kind = DeterministicKind::identity;
    double det_beta = 1.0;

    static ProcessSpec fbm_spec(double hurst, double var1 = 1.0, int p_max = 8);
    static ProcessSpec deterministic_spec(DeterministicKind kind, double beta = 1.0);
    // flp_spec lives in simulate.hpp (needs LevySpec and the kernel quadrature).
};

} // namespace dilative
