#include "dilative/pathstats.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "dilative/rng.hpp"
#include "dilative/simulate.hpp"
#include "dilative/stats.hpp"

namespace dilative {

std::vector<std::string> GeometricGrid::validate() const {
    std::vector<std::string> violations;
    if (!(ratio > 0.0 && ratio < 1.0))
        violations.push_back("ratio must be in (0,1)");
    if (count < 4) violations.push_back("count must be >= 4");
    if (anchor < 0.0) violations.push_back("anchor must be >= 0");
    if (direction == GridDirection::to_zero && anchor != 0.0)
        violations.push_back("to_zero grids require anchor 0");
    if (direction == GridDirection::to_infinity && anchor != 0.0)
        violations.push_back("to_infinity grids use anchor 0");
    return violations;
}

std::vector<double> build_sequence(const GeometricGrid& grid) {
    const auto violations = grid.validate();
    if (!violations.empty())
        throw std::invalid_argument("GeometricGrid: " + violations.front());
    std::vector<double> t(static_cast<std::size_t>(grid.count));
    double power = 1.0;
    for (int n = 1; n <= grid.count; ++n) {
        power *= grid.ratio;
        switch (grid.direction) {
            case GridDirection::to_zero: t[n - 1] = power; break;
            case GridDirection::to_anchor: t[n - 1] = grid.anchor + power; break;
            case GridDirection::to_infinity: t[n - 1] = 1.0 / power; break;
        }
    }
    return t;
}

std::vector<std::string> DichotomyRule::validate() const {
    std::vector<std::string> violations;
    if (window < 2) violations.push_back("window must be >= 2");
    if (!(diverge_threshold > 1.0)) violations.push_back("diverge threshold must be > 1");
    if (!(vanish_threshold < 1.0 && vanish_threshold > 0.0))
        violations.push_back("vanish threshold must be in (0,1)");
    return violations;
}

std::string to_string(Dichotomy d) {
    switch (d) {
        case Dichotomy::vanishes: return "vanishes";
        case Dichotomy::diverges: return "diverges";
        case Dichotomy::indeterminate: return "indeterminate";
    }
    return "?";
}

std::vector<double> ratio_statistics(const SamplePath& path, const GeometricGrid& grid,
                                     double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("ratio_statistics: kappa must be > 0");
    const std::vector<double> seq = build_sequence(grid);
    const double anchor_value =
        (grid.direction == GridDirection::to_anchor) ? path.value_at(grid.anchor)
                                                     : path.value_at(0.0);
    const double t0 = (grid.direction == GridDirection::to_anchor) ? grid.anchor : 0.0;

    std::vector<double> r(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const double gap = std::abs(seq[n] - t0);
        r[n] = std::abs(path.value_at(seq[n]) - anchor_value) / std::pow(gap, kappa);
    }
    return r;
}

Dichotomy classify_dichotomy(const std::vector<double>& ratios, const DichotomyRule& rule) {
    const auto violations = rule.validate();
    if (!violations.empty())
        throw std::invalid_argument("DichotomyRule: " + violations.front());
    const std::size_t n = ratios.size();
    if (n < static_cast<std::size_t>(rule.window) + 1)
        throw std::invalid_argument("classify_dichotomy: need at least window+1 ratios");

    constexpr double tiny = 1e-300;
    const double last = std::max(ratios[n - 1], tiny);
    const double prev = std::max(ratios[n - 1 - static_cast<std::size_t>(rule.window)], tiny);
    const double trend = std::pow(last / prev, 1.0 / rule.window);

    if (trend >= rule.diverge_threshold) return Dichotomy::diverges;
    if (trend <= rule.vanish_threshold) return Dichotomy::vanishes;
    return Dichotomy::indeterminate;
}

AlphaEstimate estimate_alpha(const SamplePath& path, const GeometricGrid& grid,
                             const std::vector<double>& kappa_grid,
                             const DichotomyRule& rule) {
    if (kappa_grid.empty())
        throw std::invalid_argument("estimate_alpha: empty kappa grid");

    // Toward the anchor the ratios vanish below alpha and diverge above it;
    // toward infinity the roles are mirrored.
    const bool mirrored = grid.direction == GridDirection::to_infinity;
    const Dichotomy below_verdict = mirrored ? Dichotomy::diverges : Dichotomy::vanishes;
    const Dichotomy above_verdict = mirrored ? Dichotomy::vanishes : Dichotomy::diverges;

    AlphaEstimate out;
    bool have_below = false, have_above = false;
    for (double kappa : kappa_grid) {
        const std::vector<double> r = ratio_statistics(path, grid, kappa);
        const Dichotomy verdict = classify_dichotomy(r, rule);
        out.trace.push_back({kappa, verdict});
        if (verdict == below_verdict) {
            if (!have_below || kappa > out.bracket_low) out.bracket_low = kappa;
            have_below = true;
        } else if (verdict == above_verdict) {
            if (!have_above || kappa < out.bracket_high) out.bracket_high = kappa;
            have_above = true;
        }
    }

    if (!have_below && !have_above)
        out.status = AlphaStatus::no_transition;
    else if (!have_below)
        out.status = mirrored ? AlphaStatus::no_diverge : AlphaStatus::no_vanish;
    else if (!have_above)
        out.status = mirrored ? AlphaStatus::no_vanish : AlphaStatus::no_diverge;
    else
        out.estimate = 0.5 * (out.bracket_low + out.bracket_high);
    return out;
}

std::vector<double> default_kappa_grid(double step, double hi) {
    if (!(step > 0.0 && hi > step))
        throw std::invalid_argument("default_kappa_grid: need 0 < step < hi");
    std::vector<double> grid;
    for (int k = 1;; ++k) {
        const double kappa = step * k;
        if (kappa > hi + 1e-12) break;
        grid.push_back(kappa);
    }
    return grid;
}

namespace {

struct MaxProfileFit {
    double gamma = 0.0;
    double ev_coef = 0.0;
    double rms_residual = 0.0;
    bool degenerate = false;
    std::vector<double> levels;
    std::vector<double> maxima;
};

MaxProfileFit fit_max_profile(const SamplePath& path, int min_level, int max_level) {
    const std::size_t n = path.size();
    const std::size_t steps = n - 1;
    const double dt = path.times[1] - path.times[0];
    const double horizon = dt * static_cast<double>(steps);

    std::vector<double> log_h, log_s, log_ev;
    MaxProfileFit out;
    for (int j = min_level; j <= max_level; ++j) {
        const std::size_t lag = steps >> j; // h_j = 2^{-j} * T in grid steps
        if (lag == 0) break;
        double smax = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i)
            smax = std::max(smax, std::abs(path.values[i + lag] - path.values[i]));
        const double h = dt * static_cast<double>(lag);
        out.levels.push_back(static_cast<double>(j));
        out.maxima.push_back(smax);
        if (smax > 0.0) {
            log_h.push_back(std::log(h));
            log_s.push_back(std::log(smax));
            log_ev.push_back(std::log(2.0 * std::log(horizon / h)));
        }
    }
    if (log_s.size() < 4) {
        out.degenerate = true;
        return out;
    }
    const TwoVarFit fit = two_var_fit(log_h, log_ev, log_s);
    out.gamma = fit.b1;
    out.ev_coef = fit.b2;
    double ss = 0.0;
    for (std::size_t i = 0; i < log_s.size(); ++i) {
        const double r = log_s[i] - fit.intercept - fit.b1 * log_h[i] - fit.b2 * log_ev[i];
        ss += r * r;
    }
    out.rms_residual = std::sqrt(ss / static_cast<double>(log_s.size()));
    return out;
}

std::uint64_t hash_values(const std::vector<double>& values) {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (double v : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        h ^= bits + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace

HolderEstimate estimate_holder_exponent(const SamplePath& path, const ScaleRange& range) {
    if (range.min_level < 1 || range.max_level <= range.min_level)
        throw std::invalid_argument("estimate_holder_exponent: bad scale range");
    const std::size_t n = path.size();
    if (n < 3) throw std::invalid_argument("estimate_holder_exponent: path too short");
    const std::size_t steps = n - 1;
    if (steps < (std::size_t{1} << range.max_level))
        throw std::invalid_argument(
            "estimate_holder_exponent: grid needs at least 2^max_level points");

    // uniform grid required
    const double dt = path.times[1] - path.times[0];
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (std::abs(path.times[i + 1] - path.times[i] - dt) > 1e-9 * dt)
            throw std::invalid_argument("estimate_holder_exponent: grid must be uniform");

    const MaxProfileFit raw = fit_max_profile(path, range.min_level, range.max_level);
    HolderEstimate out;
    out.levels = raw.levels;
    out.max_increments = raw.maxima;
    if (raw.degenerate) {
        out.constant_path = true;
        return out;
    }
    out.raw_exponent = raw.gamma;
    out.ev_coefficient = raw.ev_coef;
    out.exponent = raw.gamma;

    // An exact power path fits the model with zero residual; only noisy paths
    // carry the Gaussian-extremes drift worth bootstrapping away.
    if (range.bootstrap <= 0 || raw.rms_residual < 1e-8) return out;

    const double pilot = std::min(0.95, std::max(0.05, raw.gamma));
    const double horizon = path.times.back() - path.times.front();
    // circulant generation keeps the surrogate cost O(n log n) at any size
    FbmSampler surrogate(pilot, 1.0, horizon, static_cast<int>(steps),
                         FbmMethod::circulant);
    const std::uint64_t seed0 = hash_values(path.values);
    double boot_sum = 0.0;
    int boot_count = 0;
    for (int b = 0; b < range.bootstrap; ++b) {
        const SamplePath sp = surrogate.path(derive_seed(seed0, b));
        const MaxProfileFit bf = fit_max_profile(sp, range.min_level, range.max_level);
        if (!bf.degenerate) {
            boot_sum += bf.gamma;
            ++boot_count;
        }
    }
    if (boot_count > 0) out.exponent = raw.gamma - (boot_sum / boot_count - pilot);
    return out;
}

std::string to_string(DiscriminationLabel label) {
    switch (label) {
        case DiscriminationLabel::first: return "first";
        case DiscriminationLabel::second: return "second";
        case DiscriminationLabel::undecided: return "undecided";
    }
    return "?";
}

DiscriminationLabel discriminate(const SamplePath& path, const GeometricGrid& grid,
                                 double h1, double h2, const DichotomyRule& rule) {
    // Order is normalized internally: "first" always names the smaller-H
    // hypothesis, so the label is invariant under swapping the arguments.
    if (h1 > h2) std::swap(h1, h2);
    const double kappa_star = 0.5 * (h1 + h2);
    const std::vector<double> r = ratio_statistics(path, grid, kappa_star);
    const bool mirrored = grid.direction == GridDirection::to_infinity;
    switch (classify_dichotomy(r, rule)) {
        case Dichotomy::vanishes:
            // toward the anchor, vanishing ratios mean the true exponent
            // exceeds kappa*; toward infinity the roles mirror
            return mirrored ? DiscriminationLabel::first : DiscriminationLabel::second;
        case Dichotomy::diverges:
            return mirrored ? DiscriminationLabel::second : DiscriminationLabel::first;
        case Dichotomy::indeterminate:
            return DiscriminationLabel::undecided;
    }
    return DiscriminationLabel::undecided;
}

} // namespace dilative
