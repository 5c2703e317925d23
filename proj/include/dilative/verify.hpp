#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dilative/core_model.hpp"
#include "dilative/pathstats.hpp"
#include "dilative/simulate.hpp"

namespace dilative {

// ---------------------------------------------------------------------------
// Monte Carlo and deterministic verification harness. Every check is a pure
// function of (config, master seed) and produces a reproducible, machine
// readable CheckReport. Paths use seeds derived per index, so reports do not
// depend on evaluation order.
// ---------------------------------------------------------------------------

struct McConfig {
    std::size_t paths = 2000;
    SimGrid grid;
    double tolerance_sigmas = 4.0;

    std::vector<std::string> validate() const;
};

enum class CheckComparison {
    absolute,    // pass iff |statistic - expected| <= tolerance
    upper_bound, // pass iff statistic <= expected + tolerance
};

struct CheckReport {
    std::string check_id;
    double statistic = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    CheckComparison comparison = CheckComparison::absolute;
    bool pass = false;
    std::size_t sample_size = 0;
    std::uint64_t seed = 0;
    std::string notes;

    static CheckReport make(std::string id, double stat, double expect, double tol,
                            CheckComparison cmp, std::size_t sample_size,
                            std::uint64_t seed, std::string notes = {});
};

nlohmann::ordered_json check_report_to_json(const CheckReport& report);

/// Every simulated path must start at exactly zero (X(0) = 0 almost surely is
/// implied by the scaling relation itself).
CheckReport verify_start_at_zero(const ProcessSpec& spec, const McConfig& mc);
CheckReport check_paths_start_at_zero(const std::vector<SamplePath>& paths,
                                      std::uint64_t seed);

/// Empirical covariance at probe pairs against the FBM-form covariance
/// shared by all dilatively stable processes with stationary increments.
CheckReport verify_covariance(const ProcessSpec& spec,
                              const std::vector<std::pair<double, double>>& probe_pairs,
                              const McConfig& mc);

/// log-log slope of the empirical cumulant c_n(t) across paths against the
/// scaling-law exponent (alpha - delta/2) n + delta. Orders <= 4 (empirical
/// cumulants of higher order are too noisy at desk scale).
CheckReport verify_cumulant_scaling(const ProcessSpec& spec, const std::vector<int>& orders,
                                    const std::vector<double>& times, const McConfig& mc);

/// First four cumulants of X(t+h) - X(t) must agree across anchors t.
CheckReport verify_stationary_increments(const ProcessSpec& spec,
                                         const std::vector<double>& lags,
                                         const std::vector<double>& anchors,
                                         const McConfig& mc);
/// Same comparison on caller-provided paths (used for negative controls).
CheckReport check_stationary_increments_on(const std::vector<SamplePath>& paths,
                                           const std::vector<double>& lags,
                                           const std::vector<double>& anchors,
                                           double tolerance_sigmas, std::uint64_t seed);

/// Two-sided Kolmogorov-condition check: (a) deterministic dominance
/// scaled_increment_moment <= kolmogorov_bound on a dense h-grid, and
/// (b) Monte Carlo E|X(h)-X(0)|^p against the analytic scaled moment.
CheckReport verify_kolmogorov_bound(const ProcessSpec& spec, int p,
                                    const std::vector<double>& lags, const McConfig& mc);

enum class DiscriminationFamily { fbm, deterministic_power };

struct DiscriminationConfig {
    DiscriminationFamily family = DiscriminationFamily::fbm;
    GeometricGrid grid{0.0, 0.7, 96, GridDirection::to_zero};
    DichotomyRule rule{88, 1.0125, 1.0 / 1.0125};
    double accuracy_floor = 0.90;
    double max_undecided_rate = 0.20;
    bool null_control = false; // H1 == H2 allowed; expect chance accuracy
};

struct DiscriminationOutcome {
    CheckReport report;
    double accuracy = 0.0;
    double undecided_rate = 0.0;
    std::size_t decided = 0;
    std::vector<DiscriminationLabel> labels; // first mc.paths from H1, rest from H2
};

/// Simulates paths from family(H1) and family(H2), labels each one with
/// `discriminate`, and reports accuracy among decided paths. The finite-sample
/// surrogate of the singularity statement: paths of different H are separated.
DiscriminationOutcome discrimination_experiment(double h1, double h2,
                                                const DiscriminationConfig& config,
                                                const McConfig& mc);

/// Exact joint FBM values at the geometric points (ascending, with t = 0
/// prepended); the sampling layout used by the estimation and discrimination
/// experiments.
SamplePath fbm_path_on_geometric_grid(double hurst, double var1,
                                      const GeometricGrid& grid, std::uint64_t seed);

} // namespace dilative
