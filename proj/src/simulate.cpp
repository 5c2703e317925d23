#include "dilative/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "dilative/fft.hpp"
#include "dilative/quadrature.hpp"
#include "dilative/rng.hpp"

namespace dilative {

namespace {

constexpr int kCholeskyMaxSteps = 1 << 12;
constexpr int kFbmMaxSteps = 1 << 16;

// In-place Cholesky of a dense symmetric matrix (row-major, n x n).
// Returns false if a pivot fails, i.e. the matrix is numerically not PSD.
bool cholesky_in_place(std::vector<double>& a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0)) return false;
        const double root = std::sqrt(d);
        a[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / root;
        }
    }
    // zero the upper triangle to keep the factor clean
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = 0.0;
    return true;
}

// FBM correlation of points 0 < ti <= tj computed cancellation-free:
// corr = (q^H + q^{-H} (1-(1-q)^{2H})) / 2 with q = ti/tj.
double fbm_correlation(double hurst, double ti, double tj) {
    if (ti > tj) std::swap(ti, tj);
    const double q = ti / tj;
    if (q == 1.0) return 1.0;
    const double one_minus = -std::expm1(2.0 * hurst * std::log1p(-q));
    return 0.5 * (std::pow(q, hurst) + std::pow(q, -hurst) * one_minus);
}

} // namespace

std::vector<double> SimGrid::times() const {
    if (steps < 2) throw std::invalid_argument("SimGrid: steps must be >= 2");
    if (!(horizon > 0.0)) throw std::invalid_argument("SimGrid: horizon must be > 0");
    std::vector<double> t(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k)
        t[static_cast<std::size_t>(k)] = horizon * k / steps;
    return t;
}

std::vector<std::string> LevySpec::validate() const {
    std::vector<std::string> violations;
    bool has_jumps = false;
    for (const auto& comp : jump_components) {
        if (!(comp.rate > 0.0)) {
            violations.push_back("compound Poisson rate must be > 0");
            continue;
        }
        has_jumps = true;
        if (const auto* tp = std::get_if<TwoPointJumps>(&comp.jumps)) {
            if (!(tp->a > 0.0 && tp->b > 0.0 && tp->prob > 0.0 && tp->prob < 1.0))
                violations.push_back("two-point jumps need a,b > 0 and prob in (0,1)");
            else if (std::abs(tp->prob * tp->a - (1.0 - tp->prob) * tp->b) >
                     1e-9 * (tp->a + tp->b))
                violations.push_back("two-point jumps must be centered: prob*a = (1-prob)*b");
        } else if (const auto* ex = std::get_if<ExponentialJumps>(&comp.jumps)) {
            if (!(ex->mean > 0.0))
                violations.push_back("exponential jump mean must be > 0");
        }
    }
    if (!has_jumps)
        violations.push_back("driver must have a jump component with rate > 0 "
                             "(the marginal must be non-Gaussian)");
    if (gaussian_sigma < 0.0) violations.push_back("gaussian sigma must be >= 0");
    return violations;
}

double jump_moment(const JumpLaw& law, int n) {
    if (n < 1) throw std::invalid_argument("jump_moment: order must be >= 1");
    if (const auto* ex = std::get_if<ExponentialJumps>(&law)) {
        // E[J^n] = n! mean^n
        double m = 1.0;
        for (int k = 2; k <= n; ++k) m *= k;
        return m * std::pow(ex->mean, n);
    }
    const auto& tp = std::get<TwoPointJumps>(law);
    return tp.prob * std::pow(tp.a, n) + (1.0 - tp.prob) * std::pow(-tp.b, n);
}

double LevySpec::cumulant(int n) const {
    if (n < 2) throw std::invalid_argument("LevySpec::cumulant: order must be >= 2");
    double c = 0.0;
    for (const auto& comp : jump_components) c += comp.rate * jump_moment(comp.jumps, n);
    if (n == 2) c += gaussian_sigma * gaussian_sigma;
    return c;
}

CumulantVector LevySpec::cumulant_vector(int p_max) const {
    std::vector<double> c(static_cast<std::size_t>(p_max), 0.0);
    for (int n = 2; n <= p_max; ++n) c[static_cast<std::size_t>(n - 1)] = cumulant(n);
    return CumulantVector(std::move(c));
}

// ---------------------------------------------------------------------------
// FBM
// ---------------------------------------------------------------------------

FbmSampler::FbmSampler(double hurst, double var1, double horizon, int steps,
                       FbmMethod method)
    : hurst_(hurst), var1_(var1), horizon_(horizon), steps_(steps) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("FbmSampler: H must be in (0,1)");
    if (!(var1 > 0.0)) throw std::invalid_argument("FbmSampler: var1 must be > 0");
    if (steps < 2 || steps > kFbmMaxSteps)
        throw std::invalid_argument("FbmSampler: steps must be in [2, 2^16]");
    if (!(horizon > 0.0)) throw std::invalid_argument("FbmSampler: horizon must be > 0");

    method_ = method;
    if (method == FbmMethod::auto_select)
        method_ = steps <= kCholeskyMaxSteps ? FbmMethod::cholesky : FbmMethod::circulant;

    const std::size_t n = static_cast<std::size_t>(steps);
    if (method_ == FbmMethod::cholesky) {
        const double dt = horizon / steps;
        chol_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double cij =
                    fbm_covariance(hurst, var1, (i + 1) * dt, (j + 1) * dt);
                chol_[i * n + j] = cij;
                chol_[j * n + i] = cij;
            }
        if (!cholesky_in_place(chol_, n))
            throw std::runtime_error(
                "FBM generation error: covariance factorization failed "
                "(numerically not positive definite) for H=" + std::to_string(hurst));
    } else {
        // circulant embedding of the increment (FGN) covariance, padded to a
        // power of two; the first n increments keep the exact law
        const double dt = horizon / steps;
        const double scale = var1 * std::pow(dt, 2.0 * hurst);
        const std::size_t m = next_pow2(2 * n);
        embed_size_ = m;
        auto gamma = [&](std::size_t k) {
            const double kk = static_cast<double>(k);
            return 0.5 * scale *
                   (std::pow(kk + 1.0, 2.0 * hurst) - 2.0 * std::pow(kk, 2.0 * hurst) +
                    std::pow(std::abs(kk - 1.0), 2.0 * hurst));
        };
        std::vector<std::complex<double>> circ(m);
        for (std::size_t j = 0; j <= m / 2; ++j) circ[j] = gamma(j);
        for (std::size_t j = m / 2 + 1; j < m; ++j) circ[j] = gamma(m - j);
        fft_radix2(circ, false);
        sqrt_eigen_.resize(m);
        double max_eig = 0.0;
        for (const auto& z : circ) max_eig = std::max(max_eig, z.real());
        for (std::size_t k = 0; k < m; ++k) {
            const double lam = circ[k].real();
            if (lam < -1e-9 * max_eig)
                throw std::runtime_error(
                    "FBM generation error: circulant embedding produced a negative "
                    "eigenvalue for H=" + std::to_string(hurst));
            sqrt_eigen_[k] = std::sqrt(std::max(lam, 0.0));
        }
    }
}

SamplePath FbmSampler::path(std::uint64_t seed) const {
    const std::size_t n = static_cast<std::size_t>(steps_);
    const double dt = horizon_ / steps_;
    Rng rng(seed);

    SamplePath out;
    out.times.resize(n + 1);
    out.values.assign(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) out.times[k] = dt * static_cast<double>(k);

    if (method_ == FbmMethod::cholesky) {
        std::vector<double> z(n);
        for (auto& v : z) v = rng.normal();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j <= i; ++j) s += chol_[i * n + j] * z[j];
            out.values[i + 1] = s;
        }
    } else {
        const std::size_t m = embed_size_;
        std::vector<std::complex<double>> y(m);
        y[0] = sqrt_eigen_[0] * rng.normal();
        y[m / 2] = sqrt_eigen_[m / 2] * rng.normal();
        const double half = std::sqrt(0.5);
        for (std::size_t k = 1; k < m / 2; ++k) {
            const double re = half * rng.normal();
            const double im = half * rng.normal();
            y[k] = sqrt_eigen_[k] * std::complex<double>(re, im);
            y[m - k] = std::conj(y[k]);
        }
        fft_radix2(y, false);
        const double norm = 1.0 / std::sqrt(static_cast<double>(m));
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += y[j].real() * norm;
            out.values[j + 1] = acc;
        }
    }
    return out;
}

SamplePath simulate_fbm(double hurst, double var1, const SimGrid& grid) {
    return FbmSampler(hurst, var1, grid.horizon, grid.steps).path(grid.seed);
}

SamplePath fbm_sample_at(double hurst, double var1, std::vector<double> times,
                         std::uint64_t seed) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("fbm_sample_at: H must be in (0,1)");
    if (!(var1 > 0.0)) throw std::invalid_argument("fbm_sample_at: var1 must be > 0");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1]))
            throw std::invalid_argument("fbm_sample_at: times must be strictly increasing");
    if (!times.empty() && times.front() < 0.0)
        throw std::invalid_argument("fbm_sample_at: times must be >= 0");

    SamplePath out;
    out.times = std::move(times);
    out.values.assign(out.times.size(), 0.0);
    if (out.times.empty()) return out;

    const bool has_zero = out.times.front() == 0.0;
    const std::size_t offset = has_zero ? 1 : 0;
    const std::size_t n = out.times.size() - offset;
    if (n == 0) return out;

    // Factor the correlation matrix; it stays well conditioned on geometric
    // grids where covariances span many orders of magnitude.
    std::vector<double> corr(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double cij =
                fbm_correlation(hurst, out.times[offset + j], out.times[offset + i]);
            corr[i * n + j] = cij;
            corr[j * n + i] = cij;
        }
    if (!cholesky_in_place(corr, n))
        throw std::runtime_error(
            "FBM generation error: correlation factorization failed for H=" +
            std::to_string(hurst));

    Rng rng(seed);
    std::vector<double> z(n);
    for (auto& v : z) v = rng.normal();
    const double sd1 = std::sqrt(var1);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j) s += corr[i * n + j] * z[j];
        out.values[offset + i] = sd1 * std::pow(out.times[offset + i], hurst) * s;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Levy driver
// ---------------------------------------------------------------------------

std::vector<double> simulate_levy_increments(const LevySpec& levy, double dt,
                                             std::size_t count, std::uint64_t seed) {
    if (!(dt > 0.0))
        throw std::invalid_argument("simulate_levy_increments: dt must be > 0");
    Rng rng(seed);

    double drift = 0.0; // compensation of the jump means
    for (const auto& comp : levy.jump_components)
        drift += comp.rate * jump_moment(comp.jumps, 1);
    const double sigma_dt = levy.gaussian_sigma * std::sqrt(dt);

    std::vector<double> inc(count);
    for (std::size_t i = 0; i < count; ++i) {
        double x = -drift * dt;
        for (const auto& comp : levy.jump_components) {
            const std::uint64_t njumps = rng.poisson(comp.rate * dt);
            for (std::uint64_t j = 0; j < njumps; ++j) {
                if (const auto* ex = std::get_if<ExponentialJumps>(&comp.jumps))
                    x += rng.exponential(ex->mean);
                else {
                    const auto& tp = std::get<TwoPointJumps>(comp.jumps);
                    x += (rng.uniform() < tp.prob) ? tp.a : -tp.b;
                }
            }
        }
        if (sigma_dt > 0.0) x += sigma_dt * rng.normal();
        inc[i] = x;
    }
    return inc;
}

// ---------------------------------------------------------------------------
// FLP
// ---------------------------------------------------------------------------

FlpSampler::FlpSampler(double hurst, LevySpec levy, double horizon, int steps,
                       double window_mult)
    : hurst_(hurst), levy_(std::move(levy)), horizon_(horizon), steps_(steps) {
    if (!(hurst > 0.5 && hurst < 1.0))
        throw std::invalid_argument("FlpSampler: H must be in (1/2,1)");
    if (steps < 2) throw std::invalid_argument("FlpSampler: steps must be >= 2");
    if (!(horizon > 0.0)) throw std::invalid_argument("FlpSampler: horizon must be > 0");
    const auto violations = levy_.validate();
    if (!violations.empty())
        throw std::invalid_argument("FlpSampler: invalid Levy driver: " + violations.front());
    if (!(window_mult * horizon >= horizon))
        throw std::invalid_argument("FlpSampler: window M must be >= horizon T");

    ds_ = horizon_ / steps_;
    left_windows_ = static_cast<std::size_t>(std::ceil(window_mult * horizon_ / ds_ - 1e-9));
    window_ = static_cast<double>(left_windows_) * ds_;
    total_windows_ = left_windows_ + static_cast<std::size_t>(steps_);

    gamma_norm_ = std::tgamma(hurst_ + 0.5);
    const double a = hurst_ - 0.5;
    power_table_.resize(total_windows_ + 1);
    power_table_[0] = 0.0;
    for (std::size_t u = 1; u <= total_windows_; ++u)
        power_table_[u] = std::pow(static_cast<double>(u) * ds_, a);
}

std::vector<double> FlpSampler::increments(std::uint64_t seed) const {
    return simulate_levy_increments(levy_, ds_, total_windows_, seed);
}

SamplePath FlpSampler::path(std::uint64_t seed) const {
    const std::vector<double> inc = increments(seed);
    const std::size_t n = static_cast<std::size_t>(steps_);

    SamplePath out;
    out.times.resize(n + 1);
    out.values.assign(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) out.times[k] = ds_ * static_cast<double>(k);

    // A_k = sum_{u>=1} (u ds)^{H-1/2} dL_{left+k-u}; X(t_k) = (A_k - A_0)/Gamma.
    std::vector<double> a(n + 1, 0.0);
    const double direct_cost =
        static_cast<double>(n + 1) * static_cast<double>(total_windows_);
    if (direct_cost <= 3.0e7) {
        for (std::size_t k = 0; k <= n; ++k) {
            const std::size_t terms = left_windows_ + k;
            double s = 0.0;
            for (std::size_t u = 1; u <= terms; ++u)
                s += power_table_[u] * inc[left_windows_ + k - u];
            a[k] = s;
        }
    } else {
        const std::vector<double> conv = convolve_real(power_table_, inc);
        for (std::size_t k = 0; k <= n; ++k) a[k] = conv[left_windows_ + k];
    }

    const double inv_gamma = 1.0 / gamma_norm_;
    for (std::size_t k = 1; k <= n; ++k) out.values[k] = (a[k] - a[0]) * inv_gamma;
    out.values[0] = 0.0; // kernel vanishes identically at t = 0
    return out;
}

std::vector<double> FlpSampler::kernel_weights_at(double t) const {
    if (t < 0.0) throw std::invalid_argument("FlpSampler: probe time must be >= 0");
    if (t > horizon_ + 1e-12)
        throw std::invalid_argument("FlpSampler: probe time beyond horizon");
    const double a = hurst_ - 0.5;
    const double inv_gamma = 1.0 / gamma_norm_;
    std::vector<double> w(total_windows_, 0.0);

    const double k_real = t / ds_;
    const long k_round = std::lround(k_real);
    // snap to the table only for genuine grid indices; a positive t far below
    // the step must keep its (t-s)^(H-1/2) head term rather than collapse to 0
    const bool on_grid = std::abs(k_real - static_cast<double>(k_round)) < 1e-9 &&
                         (k_round > 0 || t == 0.0);

    for (std::size_t j = 0; j < total_windows_; ++j) {
        const double s = -window_ + static_cast<double>(j) * ds_;
        double first;
        if (on_grid) {
            const long idx = static_cast<long>(left_windows_) + k_round - static_cast<long>(j);
            first = idx > 0 ? power_table_[static_cast<std::size_t>(idx)] : 0.0;
        } else {
            first = (t - s) > 0.0 ? std::pow(t - s, a) : 0.0;
        }
        const double second =
            j < left_windows_ ? power_table_[left_windows_ - j] : 0.0;
        w[j] = (first - second) * inv_gamma;
    }
    return w;
}

std::vector<double> FlpSampler::values_at(std::uint64_t seed,
                                          const std::vector<double>& times) const {
    const std::vector<double> inc = increments(seed);
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] == 0.0) continue;
        const std::vector<double> w = kernel_weights_at(times[i]);
        double s = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * inc[j];
        out[i] = s;
    }
    return out;
}

double FlpSampler::kernel_moment_integral(int n, double t) const {
    if (n < 1) throw std::invalid_argument("kernel_moment_integral: order must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("kernel_moment_integral: t must be > 0");
    const double a = hurst_ - 0.5;

    // s in [0, t]: integrand ((t-s)^a)^n, exact in closed form.
    const double pos_part = std::pow(t, a * n + 1.0) / (a * n + 1.0);

    // s in [-M, 0): substitute u = -s; split off [0, u1] with u = v^4 to tame
    // the u^a endpoint, then geometric panels up to M.
    auto q = [&](double u) { return std::pow(std::pow(t + u, a) - std::pow(u, a), n); };
    const double u1 = std::min(t, window_);
    double neg_part = integrate_panels(
        [&](double v) { return q(v * v * v * v) * 4.0 * v * v * v; }, 0.0,
        std::pow(u1, 0.25), 24, 16);
    double lo = u1;
    while (lo < window_) {
        const double hi = std::min(2.0 * lo, window_);
        neg_part += integrate_panels(q, lo, hi, 8, 16);
        lo = hi;
    }

    return (pos_part + neg_part) / std::pow(gamma_norm_, n);
}

double FlpSampler::truncation_deficit(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("truncation_deficit: t must be > 0");
    const double a = hurst_ - 0.5;
    auto q = [&](double u) {
        const double d = std::pow(t + u, a) - std::pow(u, a);
        return d * d;
    };
    // tail integral over [M, infinity): geometric panels plus the asymptotic
    // remainder a^2 t^2 U^{2a-1} / (1 - 2a)
    double tail = 0.0;
    double lo = window_;
    for (int k = 0; k < 60; ++k) {
        const double hi = 2.0 * lo;
        tail += integrate_panels(q, lo, hi, 8, 16);
        lo = hi;
    }
    tail += a * a * t * t * std::pow(lo, 2.0 * a - 1.0) / (1.0 - 2.0 * a);

    const double gamma2 = gamma_norm_ * gamma_norm_;
    const double truncated = kernel_moment_integral(2, t); // already / Gamma^2
    const double full = truncated + tail / gamma2;
    return (tail / gamma2) / full;
}

ProcessSpec flp_spec(double hurst, const LevySpec& levy, double window_mult, int p_max) {
    // A small sampler instance only to reuse the kernel quadrature.
    FlpSampler sampler(hurst, levy, 1.0, 16, window_mult);
    ProcessSpec s;
    s.kind = ProcessKind::flp;
    s.hurst = hurst;
    s.window_mult = window_mult;
    s.params = DilativeParams{hurst, 1.0, true};
    s.gaussian = false;
    s.levy = std::make_shared<const LevySpec>(levy);

    std::vector<double> c(static_cast<std::size_t>(p_max), 0.0);
    for (int n = 2; n <= p_max; ++n)
        c[static_cast<std::size_t>(n - 1)] =
            levy.cumulant(n) * sampler.kernel_moment_integral(n, 1.0);
    s.cumulants = CumulantVector(std::move(c));
    s.var1 = s.cumulants.order(2);
    return s;
}

SamplePath simulate_flp(double hurst, const LevySpec& levy, const SimGrid& grid,
                        double window_mult) {
    return FlpSampler(hurst, levy, grid.horizon, grid.steps, window_mult).path(grid.seed);
}

SamplePath deterministic_path_at(DeterministicKind kind, std::vector<double> times,
                                 double beta) {
    if (kind == DeterministicKind::power && !(beta > 0.0))
        throw std::invalid_argument("deterministic power path: beta must be > 0");
    SamplePath out;
    out.values.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        switch (kind) {
            case DeterministicKind::identity: out.values[i] = times[i]; break;
            case DeterministicKind::power: out.values[i] = std::pow(times[i], beta); break;
            case DeterministicKind::zero: out.values[i] = 0.0; break;
        }
    }
    out.times = std::move(times);
    return out;
}

SamplePath deterministic_path(DeterministicKind kind, const SimGrid& grid, double beta) {
    return deterministic_path_at(kind, grid.times(), beta);
}

SamplePath simulate_process(const ProcessSpec& spec, const SimGrid& grid) {
    switch (spec.kind) {
        case ProcessKind::fbm:
            return simulate_fbm(spec.hurst, spec.var1, grid);
        case ProcessKind::flp:
            if (!spec.levy)
                throw std::invalid_argument("simulate_process: flp spec without Levy driver");
            return simulate_flp(spec.hurst, *spec.levy, grid, spec.window_mult);
        case ProcessKind::deterministic:
            return deterministic_path(spec.det_kind, grid, spec.det_beta);
    }
    throw std::logic_error("simulate_process: unreachable");
}

} // namespace dilative
