#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "dilative/core_model.hpp"

namespace dilative {

// ---------------------------------------------------------------------------
// Generators for the concrete processes of interest: fractional Brownian
// motion (the Gaussian baseline) and non-Gaussian fractional Levy processes,
// plus the Levy increment drivers beneath them. Generators are pure given
// (spec, grid, seed); Monte Carlo batches derive per-path seeds so results do
// not depend on evaluation order.
// ---------------------------------------------------------------------------

/// Uniform simulation grid: times k*T/n for k = 0..n.
struct SimGrid {
    double horizon = 1.0;
    int steps = 256;
    std::uint64_t seed = 1;

    std::vector<double> times() const;
    double dt() const { return horizon / steps; }
};

/// Positive jumps of an exponential law with the given mean, compensated to
/// zero mean by drift. E[J^n] = n! * mean^n.
struct ExponentialJumps {
    double mean = 1.0;
};

/// Jump a with probability prob, -b otherwise; centered (prob*a = (1-prob)*b).
struct TwoPointJumps {
    double a = 1.0;
    double b = 1.0;
    double prob = 0.5;
};

using JumpLaw = std::variant<ExponentialJumps, TwoPointJumps>;

struct CompoundPoissonComponent {
    double rate = 1.0; // jumps per unit time
    JumpLaw jumps;
};

/// A two-sided Levy driver: compound Poisson components (compensated to mean
/// zero) plus an optional Gaussian component. All cumulants are finite because
/// every jump law has moments of all orders.
struct LevySpec {
    std::vector<CompoundPoissonComponent> jump_components;
    double gaussian_sigma = 0.0;

    /// Violations of the driver invariants: zero mean, at least one jump
    /// component with positive rate (the marginal must be non-Gaussian).
    std::vector<std::string> validate() const;

    /// n-th cumulant of L(1): sum of rate * E[J^n] over components, plus
    /// sigma^2 at n = 2. n >= 2.
    double cumulant(int n) const;

    CumulantVector cumulant_vector(int p_max = 8) const;
};

double jump_moment(const JumpLaw& law, int n);

enum class FbmMethod {
    auto_select, // Cholesky up to 2^12 steps, circulant embedding beyond
    cholesky,
    circulant,
};

/// Exact FBM generator on a uniform grid; both methods sample the exact joint
/// law (the circulant embedding pads to a power of two and works for any
/// size). The factorization is done once; paths are then cheap to draw.
class FbmSampler {
public:
    FbmSampler(double hurst, double var1, double horizon, int steps,
               FbmMethod method = FbmMethod::auto_select);

    /// One exact sample path; values[0] = 0.
    SamplePath path(std::uint64_t seed) const;

    double hurst() const { return hurst_; }

private:
    FbmMethod method_ = FbmMethod::cholesky;
    double hurst_;
    double var1_;
    double horizon_;
    int steps_;
    std::size_t embed_size_ = 0;     // circulant length (power of two)
    std::vector<double> chol_;       // lower-triangular factor, row-major
    std::vector<double> sqrt_eigen_; // circulant eigenvalue roots
};

SamplePath simulate_fbm(double hurst, double var1, const SimGrid& grid);

/// Exact joint FBM sample at arbitrary strictly increasing times (>= 0).
/// Factorizes the correlation matrix rather than the covariance, which stays
/// well conditioned on geometric grids reaching very small times.
SamplePath fbm_sample_at(double hurst, double var1, std::vector<double> times,
                         std::uint64_t seed);

/// i.i.d. increments of the Levy driver over windows of length dt:
/// Poisson-many jumps plus Gaussian part, compensated to mean zero.
std::vector<double> simulate_levy_increments(const LevySpec& levy, double dt,
                                             std::size_t count, std::uint64_t seed);

/// Moving-average fractional Levy process sampler with kernel
///   f(t,s) = ((t-s)_+^{H-1/2} - (-s)_+^{H-1/2}) / Gamma(H+1/2)
/// discretized as a left-point Riemann sum over a uniform s-grid with the same
/// step as the time grid, truncated to s in [-M, T]. One instance prepares the
/// kernel once and serves any number of paths.
class FlpSampler {
public:
    /// window M = window_mult * horizon; require M >= T.
    FlpSampler(double hurst, LevySpec levy, double horizon, int steps,
               double window_mult = 250.0);

    /// Full path on the uniform grid; switches to FFT convolution when the
    /// direct sum would be large. values[0] = 0 exactly.
    SamplePath path(std::uint64_t seed) const;

    /// Values of the same discretized process at arbitrary times >= 0 (not
    /// restricted to the grid); consistent with path() for equal seeds at
    /// grid times up to rounding.
    std::vector<double> values_at(std::uint64_t seed,
                                  const std::vector<double>& times) const;

    /// Quadrature of integral f(t,s)^n ds over s in [-M, t]; the analytic
    /// route to the cumulants of the continuum process, independent of the
    /// sampling code.
    double kernel_moment_integral(int n, double t) const;

    /// Fraction of integral f(t,s)^2 ds lost to the [-M, ...] truncation,
    /// relative to the untruncated integral.
    double truncation_deficit(double t) const;

    double hurst() const { return hurst_; }
    double horizon() const { return horizon_; }
    double window() const { return window_; }
    const LevySpec& levy() const { return levy_; }

    std::vector<double> increments(std::uint64_t seed) const;
    std::vector<double> kernel_weights_at(double t) const;

private:
    double hurst_;
    LevySpec levy_;
    double horizon_;
    int steps_;
    double window_;     // M
    double ds_;
    std::size_t left_windows_;  // windows covering [-M, 0)
    std::size_t total_windows_; // windows covering [-M, T)
    double gamma_norm_;         // Gamma(H + 1/2)
    std::vector<double> power_table_; // (u*ds)^{H-1/2}, u = 0..total_windows_
};

/// Example 1.3 flagship: the non-Gaussian FLP is (H,1)-dilatively stable with
/// stationary increments; analytic cumulants c_n(1) = c_n(L(1)) * integral of
/// f(1,s)^n ds come from the kernel quadrature.
ProcessSpec flp_spec(double hurst, const LevySpec& levy, double window_mult = 250.0,
                     int p_max = 8);

SamplePath simulate_flp(double hurst, const LevySpec& levy, const SimGrid& grid,
                        double window_mult = 250.0);

/// f(t) = t, t^beta or 0 on the grid; oracle inputs for the estimators.
SamplePath deterministic_path(DeterministicKind kind, const SimGrid& grid,
                              double beta = 1.0);
SamplePath deterministic_path_at(DeterministicKind kind, std::vector<double> times,
                                 double beta = 1.0);

/// Dispatch on a ProcessSpec (used by verify and the CLI).
SamplePath simulate_process(const ProcessSpec& spec, const SimGrid& grid);

} // namespace dilative
