#include "dilative/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dilative/partitions.hpp"
#include "dilative/rng.hpp"
#include "dilative/stats.hpp"

namespace dilative {

namespace {

// Values of `paths` Monte Carlo replications at the requested times, laid out
// as one sample vector per time. Path i uses derive_seed(master, i).
std::vector<std::vector<double>> collect_values(const ProcessSpec& spec,
                                                const std::vector<double>& times,
                                                std::size_t paths, const SimGrid& grid) {
    std::vector<std::vector<double>> out(times.size());
    for (auto& v : out) v.resize(paths);

    if (spec.kind == ProcessKind::fbm) {
        FbmSampler sampler(spec.hurst, spec.var1, grid.horizon, grid.steps);
        // probe times must lie on the grid
        std::vector<std::size_t> idx(times.size());
        const double dt = grid.dt();
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double k = times[i] / dt;
            const auto kr = static_cast<std::size_t>(std::llround(k));
            if (std::abs(k - static_cast<double>(kr)) > 1e-9 ||
                kr > static_cast<std::size_t>(grid.steps))
                throw std::invalid_argument("probe time not on the simulation grid: " +
                                            std::to_string(times[i]));
            idx[i] = kr;
        }
        for (std::size_t p = 0; p < paths; ++p) {
            const SamplePath path = sampler.path(derive_seed(grid.seed, p));
            for (std::size_t i = 0; i < times.size(); ++i)
                out[i][p] = path.values[idx[i]];
        }
        return out;
    }

    if (spec.kind == ProcessKind::flp) {
        if (!spec.levy) throw std::invalid_argument("flp spec without Levy driver");
        FlpSampler sampler(spec.hurst, *spec.levy, grid.horizon, grid.steps,
                           spec.window_mult);
        std::vector<std::vector<double>> weights(times.size());
        for (std::size_t i = 0; i < times.size(); ++i)
            if (times[i] > 0.0) weights[i] = sampler.kernel_weights_at(times[i]);
        for (std::size_t p = 0; p < paths; ++p) {
            const std::vector<double> inc = sampler.increments(derive_seed(grid.seed, p));
            for (std::size_t i = 0; i < times.size(); ++i) {
                if (times[i] == 0.0) {
                    out[i][p] = 0.0;
                    continue;
                }
                double s = 0.0;
                const auto& w = weights[i];
                for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * inc[j];
                out[i][p] = s;
            }
        }
        return out;
    }

    // deterministic: identical replications
    const SamplePath path = deterministic_path_at(spec.det_kind, times, spec.det_beta);
    for (std::size_t i = 0; i < times.size(); ++i)
        std::fill(out[i].begin(), out[i].end(), path.values[i]);
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

} // namespace

std::vector<std::string> McConfig::validate() const {
    std::vector<std::string> violations;
    if (paths < 1) violations.push_back("paths must be >= 1");
    if (!(tolerance_sigmas >= 2.0 && tolerance_sigmas <= 6.0))
        violations.push_back("tolerance_sigmas must be in [2, 6]");
    return violations;
}

CheckReport CheckReport::make(std::string id, double stat, double expect, double tol,
                              CheckComparison cmp, std::size_t sample_size,
                              std::uint64_t seed, std::string notes) {
    CheckReport r;
    r.check_id = std::move(id);
    r.statistic = stat;
    r.expected = expect;
    r.tolerance = tol;
    r.comparison = cmp;
    r.pass = (cmp == CheckComparison::absolute) ? std::abs(stat - expect) <= tol
                                                : stat <= expect + tol;
    r.sample_size = sample_size;
    r.seed = seed;
    r.notes = std::move(notes);
    return r;
}

nlohmann::ordered_json check_report_to_json(const CheckReport& report) {
    nlohmann::ordered_json j;
    j["check_id"] = report.check_id;
    j["statistic"] = report.statistic;
    j["expected"] = report.expected;
    j["tolerance"] = report.tolerance;
    j["comparison"] =
        report.comparison == CheckComparison::absolute ? "absolute" : "upper_bound";
    j["pass"] = report.pass;
    j["sample_size"] = report.sample_size;
    j["seed"] = report.seed;
    j["notes"] = report.notes;
    return j;
}

CheckReport check_paths_start_at_zero(const std::vector<SamplePath>& paths,
                                      std::uint64_t seed) {
    double worst = 0.0;
    for (const auto& p : paths) {
        if (p.times.empty() || p.times.front() != 0.0)
            throw std::invalid_argument("start_at_zero: paths must begin at time 0");
        worst = std::max(worst, std::abs(p.values.front()));
    }
    return CheckReport::make("start_at_zero", worst, 0.0, 0.0, CheckComparison::upper_bound,
                             paths.size(), seed,
                             "max |X(0)| over paths; must be exactly 0");
}

CheckReport verify_start_at_zero(const ProcessSpec& spec, const McConfig& mc) {
    std::vector<SamplePath> paths;
    paths.reserve(mc.paths);
    for (std::size_t i = 0; i < mc.paths; ++i) {
        SimGrid g = mc.grid;
        g.seed = derive_seed(mc.grid.seed, i);
        paths.push_back(simulate_process(spec, g));
    }
    return check_paths_start_at_zero(paths, mc.grid.seed);
}

CheckReport verify_covariance(const ProcessSpec& spec,
                              const std::vector<std::pair<double, double>>& probe_pairs,
                              const McConfig& mc) {
    if (probe_pairs.empty())
        throw std::invalid_argument("verify_covariance: no probe pairs");
    std::vector<double> times;
    for (const auto& [t1, t2] : probe_pairs) {
        times.push_back(t1);
        times.push_back(t2);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const auto values = collect_values(spec, times, mc.paths, mc.grid);
    auto index_of = [&](double t) {
        return static_cast<std::size_t>(
            std::lower_bound(times.begin(), times.end(), t) - times.begin());
    };

    const double c2 = spec.cumulants.order(2);
    double max_z = 0.0;
    std::ostringstream notes;
    for (const auto& [t1, t2] : probe_pairs) {
        const auto est = covariance_with_se(values[index_of(t1)], values[index_of(t2)]);
        const double expected = fbm_covariance(spec.hurst, c2, t1, t2);
        const double z = std::abs(est.cov - expected) / est.se;
        max_z = std::max(max_z, z);
        notes << "cov(" << fmt(t1) << "," << fmt(t2) << ")=" << fmt(est.cov) << " expect "
              << fmt(expected) << " z=" << fmt(z) << "; ";
    }
    return CheckReport::make("covariance", max_z, 0.0, mc.tolerance_sigmas,
                             CheckComparison::upper_bound, mc.paths, mc.grid.seed,
                             notes.str());
}

CheckReport verify_cumulant_scaling(const ProcessSpec& spec, const std::vector<int>& orders,
                                    const std::vector<double>& times, const McConfig& mc) {
    if (times.size() < 2)
        throw std::invalid_argument("verify_cumulant_scaling: need at least two times");
    for (int n : orders)
        if (n < 2 || n > 4)
            throw std::invalid_argument(
                "verify_cumulant_scaling: orders must be in [2,4] "
                "(higher empirical cumulants are too noisy)");

    const auto values = collect_values(spec, times, mc.paths, mc.grid);

    auto slope_tolerance = [](int n) { return n <= 2 ? 0.10 : (n == 3 ? 0.25 : 0.40); };

    double max_norm_dev = 0.0;
    std::ostringstream notes;
    bool failed_positivity = false;
    for (int n : orders) {
        const double expected_slope =
            (spec.params.alpha - 0.5 * spec.params.delta) * n + spec.params.delta;
        if (!(spec.cumulants.order(n) > 0.0))
            throw std::invalid_argument("verify_cumulant_scaling: analytic cumulant of order " +
                                        std::to_string(n) + " is not positive");
        std::vector<double> log_t, log_c;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double k = k_statistics(values[i]).order(n);
            if (!(k > 0.0)) {
                failed_positivity = true;
                notes << "order " << n << ": empirical cumulant at t=" << fmt(times[i])
                      << " is " << fmt(k) << " but theory predicts positive; ";
                continue;
            }
            log_t.push_back(std::log(times[i]));
            log_c.push_back(std::log(k));
        }
        if (log_t.size() < 2) {
            failed_positivity = true;
            continue;
        }
        const double slope = linear_fit(log_t, log_c).slope;
        const double dev = std::abs(slope - expected_slope) / slope_tolerance(n);
        max_norm_dev = std::max(max_norm_dev, dev);
        notes << "order " << n << ": slope=" << fmt(slope) << " expect "
              << fmt(expected_slope) << " +-" << fmt(slope_tolerance(n)) << "; ";
    }

    CheckReport r = CheckReport::make(
        "cumulant_scaling", failed_positivity ? std::nan("") : max_norm_dev, 0.0, 1.0,
        CheckComparison::upper_bound, mc.paths, mc.grid.seed, notes.str());
    if (failed_positivity) r.pass = false;
    return r;
}

CheckReport check_stationary_increments_on(const std::vector<SamplePath>& paths,
                                           const std::vector<double>& lags,
                                           const std::vector<double>& anchors,
                                           double tolerance_sigmas, std::uint64_t seed) {
    if (paths.empty() || lags.empty() || anchors.size() < 2)
        throw std::invalid_argument(
            "stationary_increments: need paths, lags and >= 2 anchors");

    double max_z = 0.0;
    std::ostringstream notes;
    for (double lag : lags) {
        // increment samples per anchor
        std::vector<std::vector<double>> inc(anchors.size());
        for (std::size_t a = 0; a < anchors.size(); ++a) {
            inc[a].resize(paths.size());
            for (std::size_t p = 0; p < paths.size(); ++p)
                inc[a][p] = paths[p].value_at(anchors[a] + lag) - paths[p].value_at(anchors[a]);
        }
        for (std::size_t a = 1; a < anchors.size(); ++a) {
            for (int order = 1; order <= 4; ++order) {
                const double d = k_statistics(inc[a]).order(order) -
                                 k_statistics(inc[0]).order(order);
                const double se = jackknife_se_kstat_difference(inc[a], inc[0], order);
                const double z = std::abs(d) / std::max(se, 1e-300);
                if (z > max_z) {
                    max_z = z;
                    notes.str("");
                    notes << "worst: lag=" << fmt(lag) << " anchor=" << fmt(anchors[a])
                          << " vs " << fmt(anchors[0]) << " order " << order
                          << " diff=" << fmt(d) << " se=" << fmt(se);
                }
            }
        }
    }
    return CheckReport::make("stationary_increments", max_z, 0.0, tolerance_sigmas,
                             CheckComparison::upper_bound, paths.size(), seed, notes.str());
}

CheckReport verify_stationary_increments(const ProcessSpec& spec,
                                         const std::vector<double>& lags,
                                         const std::vector<double>& anchors,
                                         const McConfig& mc) {
    // gather the needed probe times and rebuild per-path mini sample paths
    std::vector<double> times;
    for (double a : anchors) {
        times.push_back(a);
        for (double h : lags) times.push_back(a + h);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const auto values = collect_values(spec, times, mc.paths, mc.grid);
    std::vector<SamplePath> paths(mc.paths);
    for (std::size_t p = 0; p < mc.paths; ++p) {
        paths[p].times = times;
        paths[p].values.resize(times.size());
        for (std::size_t i = 0; i < times.size(); ++i)
            paths[p].values[i] = values[i][p];
    }
    return check_stationary_increments_on(paths, lags, anchors, mc.tolerance_sigmas,
                                          mc.grid.seed);
}

CheckReport verify_kolmogorov_bound(const ProcessSpec& spec, int p,
                                    const std::vector<double>& lags, const McConfig& mc) {
    if (p % 2 != 0 || p < 2 || p > 8)
        throw std::invalid_argument("verify_kolmogorov_bound: p must be even, in [2,8]");
    const HolderCase hc = holder_case(spec.params);
    if (hc.regime == HolderRegime::case_iii && p != 2)
        throw std::invalid_argument(
            "verify_kolmogorov_bound: CaseIII (delta = 2H) supports p = 2 only");

    // (a) deterministic dominance on a dense h-grid
    double max_excess = 0.0;
    for (int k = 1; k <= 999; ++k) {
        const double h = static_cast<double>(k) / 1000.0;
        const double lhs = scaled_increment_moment(spec.params, spec.cumulants, p, h);
        const double rhs = kolmogorov_bound(spec.params, spec.cumulants, p, h);
        max_excess = std::max(max_excess, (lhs - rhs) / rhs);
    }
    const bool analytic_ok = max_excess <= 1e-12;

    // (b) Monte Carlo moment at the requested lags vs the analytic expansion
    const auto values = collect_values(spec, lags, mc.paths, mc.grid);
    double max_z = 0.0;
    std::ostringstream notes;
    notes << "analytic max excess=" << max_excess << "; ";
    for (std::size_t i = 0; i < lags.size(); ++i) {
        std::vector<double> powers(values[i].size());
        for (std::size_t j = 0; j < values[i].size(); ++j)
            powers[j] = std::pow(std::abs(values[i][j]), p);
        const double est = mean(powers);
        const double se = standard_error_of_mean(powers);
        const double expected = scaled_increment_moment(spec.params, spec.cumulants, p, lags[i]);
        const double z = std::abs(est - expected) / std::max(se, 1e-300);
        max_z = std::max(max_z, z);
        notes << "E|X(" << fmt(lags[i]) << ")|^" << p << "=" << fmt(est) << " expect "
              << fmt(expected) << " z=" << fmt(z) << "; ";
    }

    const double stat = std::max(max_excess / 1e-12, max_z / mc.tolerance_sigmas);
    CheckReport r = CheckReport::make("kolmogorov_bound", stat, 0.0, 1.0,
                                      CheckComparison::upper_bound, mc.paths, mc.grid.seed,
                                      notes.str());
    r.pass = analytic_ok && (max_z <= mc.tolerance_sigmas);
    return r;
}

SamplePath fbm_path_on_geometric_grid(double hurst, double var1,
                                      const GeometricGrid& grid, std::uint64_t seed) {
    if (grid.direction == GridDirection::to_anchor)
        throw std::invalid_argument(
            "fbm_path_on_geometric_grid: use a to_zero or to_infinity grid "
            "(stationary increments reduce the anchored case to these)");
    std::vector<double> times = build_sequence(grid);
    std::sort(times.begin(), times.end());
    times.insert(times.begin(), 0.0);
    return fbm_sample_at(hurst, var1, std::move(times), seed);
}

DiscriminationOutcome discrimination_experiment(double h1, double h2,
                                                const DiscriminationConfig& config,
                                                const McConfig& mc) {
    if (h1 == h2 && !config.null_control)
        throw std::invalid_argument(
            "discrimination_experiment: H1 == H2 requires null_control mode");

    const double h_small = std::min(h1, h2);
    DiscriminationOutcome out;
    out.labels.reserve(2 * mc.paths);

    std::size_t correct = 0, wrong = 0, undecided = 0;
    for (int side = 0; side < 2; ++side) {
        const double h = (side == 0) ? h1 : h2;
        const DiscriminationLabel truth =
            (h == h_small) ? DiscriminationLabel::first : DiscriminationLabel::second;
        for (std::size_t i = 0; i < mc.paths; ++i) {
            const std::uint64_t seed =
                derive_seed(mc.grid.seed, static_cast<std::uint64_t>(side) * mc.paths + i);
            SamplePath path;
            if (config.family == DiscriminationFamily::fbm) {
                path = fbm_path_on_geometric_grid(h, 1.0, config.grid, seed);
            } else {
                std::vector<double> times = build_sequence(config.grid);
                std::sort(times.begin(), times.end());
                times.insert(times.begin(), 0.0);
                path = deterministic_path_at(DeterministicKind::power, std::move(times), h);
            }
            const DiscriminationLabel label =
                discriminate(path, config.grid, h1, h2, config.rule);
            out.labels.push_back(label);
            if (label == DiscriminationLabel::undecided)
                ++undecided;
            else if (label == truth)
                ++correct;
            else
                ++wrong;
        }
    }

    out.decided = correct + wrong;
    out.accuracy = out.decided > 0 ? static_cast<double>(correct) / out.decided : 0.0;
    out.undecided_rate = static_cast<double>(undecided) / (2.0 * mc.paths);

    std::ostringstream notes;
    notes << "accuracy=" << fmt(out.accuracy) << " undecided=" << fmt(out.undecided_rate)
          << " decided=" << out.decided << " (H1=" << fmt(h1) << ", H2=" << fmt(h2) << ")";

    if (config.null_control) {
        out.report = CheckReport::make("discrimination_null_control", out.accuracy, 0.5,
                                       0.10, CheckComparison::absolute, 2 * mc.paths,
                                       mc.grid.seed, notes.str());
    } else {
        CheckReport r = CheckReport::make("discrimination", out.accuracy,
                                          config.accuracy_floor, 0.0,
                                          CheckComparison::absolute, 2 * mc.paths,
                                          mc.grid.seed, notes.str());
        r.pass = out.accuracy >= config.accuracy_floor &&
                 out.undecided_rate <= config.max_undecided_rate;
        out.report = r;
    }
    return out;
}

} // namespace dilative
