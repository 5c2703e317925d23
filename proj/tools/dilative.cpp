// Command-line front end for the dilative-stability toolkit:
//   simulate | moments | estimate | verify | discriminate
// Exit codes: 0 success/pass, 1 runtime or check failure, 2 usage/validation.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dilative/core_model.hpp"
#include "dilative/csv.hpp"
#include "dilative/partitions.hpp"
#include "dilative/pathstats.hpp"
#include "dilative/rng.hpp"
#include "dilative/simulate.hpp"
#include "dilative/stats.hpp"
#include "dilative/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace dilative;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct GlobalOpts {
    std::uint64_t seed = 12345;
    std::string config_file;
    std::string out;
    std::string format = "json";
    bool no_timestamp = false;
};

std::string default_out_dir() {
    if (const char* env = std::getenv("DILATIVE_OUT_DIR")) return env;
    return ".";
}

fs::path resolve_out(const GlobalOpts& g, const std::string& default_name) {
    if (!g.out.empty()) {
        fs::path p(g.out);
        if (fs::is_directory(p)) return p / default_name;
        return p;
    }
    return fs::path(default_out_dir()) / default_name;
}

ordered_json base_report(const GlobalOpts& g, ordered_json config_echo) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    if (!g.no_timestamp) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["timestamp"] = buf;
    }
    j["seed"] = g.seed;
    j["config_echo"] = std::move(config_echo);
    return j;
}

void write_json_report(const ordered_json& j, const fs::path& file) {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
    os << j.dump(2) << '\n';
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Levy driver syntax: "cpois:rate=5,jumps=cexp:mu=1"
//                  or "cpois:rate=5,jumps=twopoint:a=1,b=1,p=0.5"
LevySpec parse_levy(const std::string& text, double gauss_sigma) {
    LevySpec levy;
    levy.gaussian_sigma = gauss_sigma;
    if (text.empty()) return levy;
    if (text.rfind("cpois:", 0) != 0)
        throw std::invalid_argument("unsupported Levy driver syntax: " + text);

    CompoundPoissonComponent comp;
    std::string rest = text.substr(6);
    const std::string jumps_key = "jumps=";
    const std::size_t jpos = rest.find(jumps_key);
    if (jpos == std::string::npos)
        throw std::invalid_argument("Levy driver needs a jumps= clause: " + text);

    for (const auto& kv : split(rest.substr(0, jpos), ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        if (key == "rate") comp.rate = std::stod(kv.substr(eq + 1));
        else throw std::invalid_argument("unknown Levy driver field: " + key);
    }

    const std::string jspec = rest.substr(jpos + jumps_key.size());
    if (jspec.rfind("cexp:", 0) == 0) {
        ExponentialJumps jumps;
        for (const auto& kv : split(jspec.substr(5), ',')) {
            const auto eq = kv.find('=');
            if (eq != std::string::npos && kv.substr(0, eq) == "mu")
                jumps.mean = std::stod(kv.substr(eq + 1));
        }
        comp.jumps = jumps;
    } else if (jspec.rfind("twopoint:", 0) == 0) {
        TwoPointJumps jumps;
        for (const auto& kv : split(jspec.substr(9), ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = kv.substr(0, eq);
            const double val = std::stod(kv.substr(eq + 1));
            if (key == "a") jumps.a = val;
            else if (key == "b") jumps.b = val;
            else if (key == "p") jumps.prob = val;
        }
        comp.jumps = jumps;
    } else {
        throw std::invalid_argument("unknown jump law: " + jspec);
    }
    levy.jump_components.push_back(comp);
    return levy;
}

struct ProcessOpts {
    std::string process = "fbm";
    double hurst = 0.7;
    double var1 = 1.0;
    std::string levy_text = "cpois:rate=5,jumps=cexp:mu=1";
    double gauss_sigma = 0.0;
    double window_mult = 250.0;
    std::string det_name = "power";
    double beta = 0.8;
};

void add_process_options(CLI::App* cmd, ProcessOpts& p) {
    cmd->add_option("--process", p.process, "Process family: fbm|flp|deterministic")
        ->check(CLI::IsMember({"fbm", "flp", "deterministic"}));
    cmd->add_option("--hurst", p.hurst, "Hurst/scaling parameter H");
    cmd->add_option("--var1", p.var1, "Variance of X(1) (fbm)");
    cmd->add_option("--levy", p.levy_text,
                    "Levy driver, e.g. cpois:rate=5,jumps=cexp:mu=1");
    cmd->add_option("--gauss-sigma", p.gauss_sigma, "Gaussian component sigma of the driver");
    cmd->add_option("--window-mult", p.window_mult, "FLP truncation window M = mult*T");
    cmd->add_option("--name", p.det_name, "Deterministic path: identity|power|zero")
        ->check(CLI::IsMember({"identity", "power", "zero"}));
    cmd->add_option("--beta", p.beta, "Deterministic power exponent");
}

ProcessSpec build_spec(const ProcessOpts& p) {
    if (p.process == "fbm") {
        if (!(p.hurst > 0.0 && p.hurst < 1.0))
            throw std::invalid_argument("fbm requires H in (0,1), got " +
                                        std::to_string(p.hurst));
        return ProcessSpec::fbm_spec(p.hurst, p.var1);
    }
    if (p.process == "flp") {
        if (!(p.hurst > 0.5 && p.hurst < 1.0))
            throw std::invalid_argument("flp requires H in (1/2,1), got " +
                                        std::to_string(p.hurst));
        const LevySpec levy = parse_levy(p.levy_text, p.gauss_sigma);
        const auto violations = levy.validate();
        if (!violations.empty())
            throw std::invalid_argument("invalid Levy driver: " + violations.front());
        return flp_spec(p.hurst, levy, p.window_mult);
    }
    DeterministicKind kind = DeterministicKind::power;
    if (p.det_name == "identity") kind = DeterministicKind::identity;
    else if (p.det_name == "zero") kind = DeterministicKind::zero;
    return ProcessSpec::deterministic_spec(kind, p.beta);
}

ordered_json echo_process(const ProcessOpts& p) {
    ordered_json j;
    j["process"] = p.process;
    j["hurst"] = p.hurst;
    if (p.process == "fbm") j["var1"] = p.var1;
    if (p.process == "flp") {
        j["levy"] = p.levy_text;
        j["gauss_sigma"] = p.gauss_sigma;
        j["window_mult"] = p.window_mult;
    }
    if (p.process == "deterministic") {
        j["name"] = p.det_name;
        j["beta"] = p.beta;
    }
    return j;
}

// Applies config-file values for keys the user did not pass explicitly.
// Flags win over config; config wins over defaults.
void apply_config(CLI::App& app, const std::string& config_file) {
    if (config_file.empty()) return;
    std::ifstream is(config_file);
    if (!is) throw std::invalid_argument("cannot open config file: " + config_file);
    nlohmann::json cfg = nlohmann::json::parse(is);

    std::vector<CLI::App*> scopes{&app};
    for (CLI::App* sub : app.get_subcommands()) scopes.push_back(sub); // parsed only

    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const std::string flag = "--" + it.key();
        CLI::Option* opt = nullptr;
        for (CLI::App* scope : scopes) {
            opt = scope->get_option_no_throw(flag);
            if (opt) break;
        }
        if (!opt)
            throw std::invalid_argument("unknown config key: " + it.key());
        if (opt->count() > 0) continue; // explicit flag wins
        const std::string value =
            it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        opt->add_result(value);
        opt->run_callback();
    }
}

int run_simulate(const GlobalOpts& g, const ProcessOpts& p, int steps, double horizon,
                 int paths) {
    const ProcessSpec spec = build_spec(p);
    const auto violations = validate_params(spec.params);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "parameter violation: " << v << '\n';
        return 2;
    }

    const fs::path dir = g.out.empty() ? fs::path(default_out_dir()) : fs::path(g.out);
    fs::create_directories(dir);
    for (int i = 0; i < paths; ++i) {
        SimGrid grid{horizon, steps, derive_seed(g.seed, static_cast<std::uint64_t>(i))};
        const SamplePath path = simulate_process(spec, grid);
        char name[64];
        std::snprintf(name, sizeof(name), "path_%04d.csv", i);
        write_sample_path_csv(path, (dir / name).string());
    }
    std::cout << "simulate: process=" << p.process << " n=" << steps << " T=" << horizon
              << " paths=" << paths << " seed=" << g.seed << " out=" << dir.string()
              << '\n';
    return 0;
}

int run_moments(const GlobalOpts& g, const ProcessOpts& popts, std::vector<int> orders,
                std::vector<double> lags, double delta, const std::string& cumulants_text,
                bool process_given) {
    for (int p : orders)
        if (p % 2 != 0 || p < 2) {
            std::cerr << "moments: p must be even and >= 2, got " << p << '\n';
            return 2;
        }

    DilativeParams params{popts.hurst, delta, true};
    CumulantVector cum;
    if (process_given) {
        const ProcessSpec spec = build_spec(popts);
        params = spec.params;
        cum = spec.cumulants;
    } else {
        std::vector<double> entries = parse_double_list(cumulants_text);
        cum = CumulantVector(std::move(entries));
    }
    const auto violations = validate_params(params);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "parameter violation: " << v << '\n';
        return 2;
    }

    ordered_json rows = ordered_json::array();
    std::ostringstream table;
    table << "p,h,scaled_increment_moment,kolmogorov_bound\n";
    for (int p : orders) {
        for (double h : lags) {
            const double m = scaled_increment_moment(params, cum, p, h);
            const double b = kolmogorov_bound(params, cum, p, h);
            table << p << ',' << format_double(h) << ',' << format_double(m) << ','
                  << format_double(b) << '\n';
            ordered_json row;
            row["p"] = p;
            row["h"] = h;
            row["scaled_increment_moment"] = m;
            row["kolmogorov_bound"] = b;
            rows.push_back(row);
        }
    }
    std::cout << table.str();
    if (!g.out.empty()) {
        if (g.format == "csv") {
            const fs::path file = resolve_out(g, "moments.csv");
            std::ofstream os(file, std::ios::binary);
            if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
            os << table.str();
        } else {
            ordered_json echo;
            echo["command"] = "moments";
            echo["hurst"] = params.alpha;
            echo["delta"] = params.delta;
            ordered_json j = base_report(g, echo);
            j["results"] = rows;
            write_json_report(j, resolve_out(g, "moments.json"));
        }
    }
    return 0;
}

int run_estimate(const GlobalOpts& g, const ProcessOpts& popts,
                 const std::vector<std::string>& inputs, const std::string& estimator,
                 int paths, int steps, double horizon, const GeometricGrid& grid_in,
                 const DichotomyRule& rule, double kappa_step, double kappa_max,
                 const ScaleRange& scale_range) {
    GeometricGrid grid = grid_in;
    const std::vector<double> kappa_grid = default_kappa_grid(kappa_step, kappa_max);

    const bool want_alpha = estimator == "alpha" || estimator == "both";
    const bool want_holder = estimator == "holder" || estimator == "both";

    ordered_json results = ordered_json::array();
    auto alpha_json = [&](const AlphaEstimate& est) {
        ordered_json a;
        switch (est.status) {
            case AlphaStatus::ok: a["status"] = "ok"; break;
            case AlphaStatus::no_vanish: a["status"] = "bracket-failure: no vanishing kappa"; break;
            case AlphaStatus::no_diverge: a["status"] = "bracket-failure: no diverging kappa"; break;
            case AlphaStatus::no_transition: a["status"] = "bracket-failure: no transition"; break;
        }
        if (est.status == AlphaStatus::ok) {
            a["estimate"] = est.estimate;
            a["bracket"] = {est.bracket_low, est.bracket_high};
        }
        ordered_json trace = ordered_json::array();
        for (const auto& entry : est.trace) {
            ordered_json e;
            e["kappa"] = entry.kappa;
            e["verdict"] = to_string(entry.verdict);
            trace.push_back(e);
        }
        a["trace"] = trace;
        return a;
    };
    auto holder_json = [&](const HolderEstimate& est) {
        ordered_json h;
        if (est.constant_path) {
            h["status"] = "constant-path";
        } else {
            h["status"] = "ok";
            h["estimate"] = est.exponent;
            h["raw_estimate"] = est.raw_exponent;
            h["ev_coefficient"] = est.ev_coefficient;
        }
        return h;
    };

    if (!inputs.empty()) {
        for (const auto& file : inputs) {
            const SamplePath path = read_sample_path_csv_file(file);
            ordered_json r;
            r["input"] = file;
            if (want_alpha) r["alpha"] = alpha_json(estimate_alpha(path, grid, kappa_grid, rule));
            if (want_holder) {
                ScaleRange range = scale_range;
                if (range.max_level <= 0) {
                    int lv = 0;
                    for (std::size_t m = path.size() - 1; m > 1; m >>= 1) ++lv;
                    range.max_level = lv - 2;
                }
                r["holder"] = holder_json(estimate_holder_exponent(path, range));
            }
            results.push_back(r);
        }
    } else {
        const ProcessSpec spec = build_spec(popts);

        // geometric sampling points for the alpha estimator, anchor included
        std::vector<double> geo_times = build_sequence(grid);
        std::sort(geo_times.begin(), geo_times.end());
        geo_times.insert(geo_times.begin(), 0.0);

        // FLP machinery is shared across paths: the kernel table and the
        // probe weights are the expensive parts
        std::unique_ptr<FlpSampler> flp;
        std::vector<std::vector<double>> flp_weights;
        if (want_alpha && spec.kind == ProcessKind::flp) {
            flp = std::make_unique<FlpSampler>(spec.hurst, *spec.levy, horizon, steps,
                                               spec.window_mult);
            for (double t : geo_times)
                flp_weights.push_back(t == 0.0 ? std::vector<double>{}
                                               : flp->kernel_weights_at(t));
        }

        for (int i = 0; i < paths; ++i) {
            const std::uint64_t seed = derive_seed(g.seed, static_cast<std::uint64_t>(i));
            ordered_json r;
            r["path_index"] = i;
            if (want_alpha) {
                SamplePath path;
                if (spec.kind == ProcessKind::fbm) {
                    path = fbm_path_on_geometric_grid(spec.hurst, spec.var1, grid, seed);
                } else if (spec.kind == ProcessKind::flp) {
                    const std::vector<double> inc = flp->increments(seed);
                    path.times = geo_times;
                    path.values.assign(geo_times.size(), 0.0);
                    for (std::size_t k = 0; k < geo_times.size(); ++k) {
                        double s = 0.0;
                        for (std::size_t j = 0; j < flp_weights[k].size(); ++j)
                            s += flp_weights[k][j] * inc[j];
                        path.values[k] = s;
                    }
                } else {
                    path = deterministic_path_at(spec.det_kind, geo_times, spec.det_beta);
                }
                r["alpha"] = alpha_json(estimate_alpha(path, grid, kappa_grid, rule));
            }
            if (want_holder) {
                SimGrid sim{horizon, steps, seed};
                const SamplePath path = simulate_process(spec, sim);
                ScaleRange range = scale_range;
                if (range.max_level <= 0) {
                    int lv = 0;
                    for (int m = steps; m > 1; m >>= 1) ++lv;
                    range.max_level = lv - 2;
                }
                r["holder"] = holder_json(estimate_holder_exponent(path, range));
            }
            results.push_back(r);
        }
    }

    ordered_json echo;
    echo["command"] = "estimate";
    echo["estimator"] = estimator;
    echo["ratio"] = grid.ratio;
    echo["count"] = grid.count;
    echo["kappa_step"] = kappa_step;
    if (inputs.empty()) echo.update(echo_process(popts));
    ordered_json report = base_report(g, echo);
    ordered_json caveats = ordered_json::array();
    // The diverging half of the dichotomy leans on a Gaussian component in
    // the driver; flag runs where the theoretical backing is weaker.
    if (inputs.empty() && popts.process == "flp" && popts.gauss_sigma == 0.0)
        caveats.push_back(
            "driver has no Gaussian component; the divergence half of the "
            "dichotomy has weaker theoretical backing");
    // Geometric points below the integral discretization step probe the
    // discretized moving average, not the continuum scaling law.
    if (inputs.empty() && popts.process == "flp" && want_alpha) {
        const double deepest = std::pow(grid.ratio, grid.count);
        if (deepest < horizon / steps)
            caveats.push_back(
                "geometric points reach below the discretization step "
                "T/steps; ratios there reflect the discretized integral "
                "rather than the continuum exponent");
    }
    if (!caveats.empty()) report["caveats"] = caveats;

    // median across paths: the accurate statistic for the noisy per-path
    // estimators
    std::vector<double> alpha_ok, holder_ok;
    for (const auto& r : results) {
        if (r.contains("alpha") && r["alpha"]["status"] == "ok")
            alpha_ok.push_back(r["alpha"]["estimate"].get<double>());
        if (r.contains("holder") && r["holder"]["status"] == "ok")
            holder_ok.push_back(r["holder"]["estimate"].get<double>());
    }
    ordered_json summary;
    summary["paths"] = results.size();
    if (!alpha_ok.empty()) {
        summary["alpha_median"] = median(alpha_ok);
        summary["alpha_ok"] = alpha_ok.size();
    }
    if (!holder_ok.empty()) {
        summary["holder_median"] = median(holder_ok);
        summary["holder_ok"] = holder_ok.size();
    }
    report["summary"] = summary;
    report["results"] = results;

    const fs::path out = resolve_out(g, "estimate.json");
    write_json_report(report, out);
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_verify(const GlobalOpts& g, const ProcessOpts& popts, const std::string& checks_csv,
               int paths, int steps, double horizon, double tol_sigmas,
               const std::string& probe_pairs_text, const std::string& orders_text,
               const std::string& times_text, const std::string& lags_text,
               const std::string& anchors_text, int kolmogorov_p) {
    static const std::set<std::string> known{
        "start_at_zero", "covariance", "cumulant_scaling", "stationary_increments",
        "kolmogorov"};
    const auto checks = split(checks_csv, ',');
    if (checks.empty()) {
        std::cerr << "verify: no checks selected\n";
        return 2;
    }
    for (const auto& c : checks)
        if (!known.count(c)) {
            std::cerr << "verify: unknown check id: " << c << '\n';
            return 2;
        }

    const ProcessSpec spec = build_spec(popts);
    McConfig mc;
    mc.paths = static_cast<std::size_t>(paths);
    mc.grid = SimGrid{horizon, steps, g.seed};
    mc.tolerance_sigmas = tol_sigmas;
    const auto mc_violations = mc.validate();
    if (!mc_violations.empty()) {
        for (const auto& v : mc_violations) std::cerr << "config violation: " << v << '\n';
        return 2;
    }

    std::vector<CheckReport> reports;
    for (const auto& c : checks) {
        if (c == "start_at_zero") {
            McConfig small = mc;
            small.paths = std::min<std::size_t>(mc.paths, 50);
            reports.push_back(verify_start_at_zero(spec, small));
        } else if (c == "covariance") {
            std::vector<std::pair<double, double>> pairs;
            for (const auto& pair_text : split(probe_pairs_text, ';')) {
                const auto parts = split(pair_text, ':');
                if (parts.size() != 2)
                    throw std::invalid_argument("bad probe pair: " + pair_text);
                pairs.emplace_back(std::stod(parts[0]), std::stod(parts[1]));
            }
            reports.push_back(verify_covariance(spec, pairs, mc));
        } else if (c == "cumulant_scaling") {
            std::vector<int> orders;
            for (double v : parse_double_list(orders_text))
                orders.push_back(static_cast<int>(v));
            reports.push_back(
                verify_cumulant_scaling(spec, orders, parse_double_list(times_text), mc));
        } else if (c == "stationary_increments") {
            reports.push_back(verify_stationary_increments(
                spec, parse_double_list(lags_text), parse_double_list(anchors_text), mc));
        } else if (c == "kolmogorov") {
            reports.push_back(
                verify_kolmogorov_bound(spec, kolmogorov_p, parse_double_list(lags_text), mc));
        }
    }

    ordered_json echo;
    echo["command"] = "verify";
    echo["checks"] = checks_csv;
    echo["paths"] = paths;
    echo["steps"] = steps;
    echo["horizon"] = horizon;
    echo["tolerance_sigmas"] = tol_sigmas;
    echo.update(echo_process(popts));
    ordered_json report = base_report(g, echo);
    report["results"] = ordered_json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        report["results"].push_back(check_report_to_json(r));
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.check_id << ": stat="
                  << r.statistic << " expected=" << r.expected << " tol=" << r.tolerance
                  << '\n';
    }
    write_json_report(report, resolve_out(g, "verify.json"));
    return all_pass ? 0 : 1;
}

int run_discriminate(const GlobalOpts& g, const std::string& family, double h1, double h2,
                     int paths, const GeometricGrid& grid, const DichotomyRule& rule,
                     bool null_control, double accuracy_floor, double max_undecided) {
    if (h1 == h2 && !null_control) {
        std::cerr << "discriminate: H1 == H2 requires --null-control\n";
        return 2;
    }
    DiscriminationConfig config;
    config.family = family == "power" ? DiscriminationFamily::deterministic_power
                                      : DiscriminationFamily::fbm;
    config.grid = grid;
    config.rule = rule;
    config.null_control = null_control;
    config.accuracy_floor = accuracy_floor;
    config.max_undecided_rate = max_undecided;

    McConfig mc;
    mc.paths = static_cast<std::size_t>(paths);
    mc.grid.seed = g.seed;

    const DiscriminationOutcome outcome = discrimination_experiment(h1, h2, config, mc);

    ordered_json echo;
    echo["command"] = "discriminate";
    echo["family"] = family;
    echo["h1"] = h1;
    echo["h2"] = h2;
    echo["paths_per_side"] = paths;
    echo["ratio"] = grid.ratio;
    echo["count"] = grid.count;
    echo["null_control"] = null_control;
    ordered_json report = base_report(g, echo);
    report["accuracy"] = outcome.accuracy;
    report["undecided_rate"] = outcome.undecided_rate;
    report["decided"] = outcome.decided;
    report["check"] = check_report_to_json(outcome.report);
    ordered_json labels = ordered_json::array();
    for (const auto label : outcome.labels) labels.push_back(to_string(label));
    report["labels"] = labels;

    write_json_report(report, resolve_out(g, "discriminate.json"));
    std::cout << (outcome.report.pass ? "PASS " : "FAIL ") << outcome.report.check_id
              << ": accuracy=" << outcome.accuracy
              << " undecided=" << outcome.undecided_rate << '\n';
    return outcome.report.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilative-stability toolkit: scaling laws, simulation, estimation"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags are accepted after the subcommand too

    GlobalOpts g;
    app.add_option("--seed", g.seed, "Master seed");
    app.add_option("--config", g.config_file, "JSON config file (flags override)");
    app.add_option("--out", g.out, "Output file or directory");
    app.add_option("--format", g.format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--no-timestamp", g.no_timestamp, "Omit timestamps from reports");

    // simulate ---------------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "Write sample path CSVs");
    ProcessOpts sim_p;
    add_process_options(sim, sim_p);
    int sim_steps = 4096, sim_paths = 1;
    double sim_horizon = 1.0;
    sim->add_option("--steps", sim_steps, "Grid steps");
    sim->add_option("--horizon", sim_horizon, "Time horizon T");
    sim->add_option("--paths", sim_paths, "Number of paths");

    // moments ----------------------------------------------------------------
    auto* mom = app.add_subcommand("moments", "Scaled increment moments and bounds");
    ProcessOpts mom_p;
    add_process_options(mom, mom_p);
    std::vector<int> mom_orders{2};
    std::string mom_h = "0.25,0.5,0.75,1";
    double mom_delta = 0.0;
    std::string mom_cumulants = "0,1";
    mom->add_option("--p", mom_orders, "Even moment orders");
    mom->add_option("--lags", mom_h, "Comma list of lags in (0,1]");
    mom->add_option("--delta", mom_delta, "Convolution scaling exponent delta");
    mom->add_option("--cumulants", mom_cumulants, "Comma list c_1,...,c_pmax");

    // estimate ---------------------------------------------------------------
    auto* est = app.add_subcommand("estimate", "Estimate alpha and/or Hexp");
    ProcessOpts est_p;
    add_process_options(est, est_p);
    std::vector<std::string> est_inputs;
    std::string est_which = "alpha";
    int est_paths = 1, est_steps = 4096, est_count = 40, est_window = 32;
    int est_minlvl = 2, est_maxlvl = 0; // 0 = auto: log2(steps) - 2
    double est_horizon = 1.0, est_ratio = 0.5, est_rho_plus = 1.05,
           est_rho_minus = 1.0 / 1.05, est_kappa_step = 0.05, est_kappa_max = 1.5;
    std::string est_direction = "zero";
    est->add_option("--input", est_inputs, "Input CSV path files");
    est->add_option("--estimator", est_which, "alpha|holder|both")
        ->check(CLI::IsMember({"alpha", "holder", "both"}));
    est->add_option("--paths", est_paths, "Inline simulation paths");
    est->add_option("--steps", est_steps, "Inline simulation steps");
    est->add_option("--horizon", est_horizon, "Inline simulation horizon");
    est->add_option("--ratio", est_ratio, "Geometric grid ratio r");
    est->add_option("--count", est_count, "Geometric grid length N");
    est->add_option("--direction", est_direction, "Geometric grid direction: zero|infinity")
        ->check(CLI::IsMember({"zero", "infinity"}));
    est->add_option("--window", est_window, "Dichotomy trend window");
    est->add_option("--rho-plus", est_rho_plus, "Diverge threshold");
    est->add_option("--rho-minus", est_rho_minus, "Vanish threshold");
    est->add_option("--kappa-step", est_kappa_step, "Kappa grid step");
    est->add_option("--kappa-max", est_kappa_max, "Kappa grid maximum");
    est->add_option("--min-level", est_minlvl, "Smallest dyadic level");
    est->add_option("--max-level", est_maxlvl, "Largest dyadic level (0 = auto)");

    // verify -----------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "Run named Monte Carlo checks");
    ProcessOpts ver_p;
    add_process_options(ver, ver_p);
    std::string ver_checks = "start_at_zero";
    int ver_paths = 2000, ver_steps = 256, ver_kp = 4;
    double ver_horizon = 1.0, ver_tol = 4.0;
    std::string ver_pairs = "0.25:0.25;0.5:0.5;1:1;0.25:1;0.5:1;0.25:0.5";
    std::string ver_orders = "2", ver_times = "0.25,0.5,1";
    std::string ver_lags = "0.25,0.5", ver_anchors = "0,0.25,0.5";
    ver->add_option("--checks", ver_checks, "Comma list of check ids");
    ver->add_option("--paths", ver_paths, "Monte Carlo paths");
    ver->add_option("--steps", ver_steps, "Simulation grid steps");
    ver->add_option("--horizon", ver_horizon, "Simulation horizon");
    ver->add_option("--tolerance-sigmas", ver_tol, "Tolerance in standard errors [2,6]");
    ver->add_option("--probe-pairs", ver_pairs, "Covariance probes t1:t2;t1:t2;...");
    ver->add_option("--orders", ver_orders, "Cumulant orders (<= 4)");
    ver->add_option("--times", ver_times, "Cumulant scaling times");
    ver->add_option("--lags", ver_lags, "Increment lags");
    ver->add_option("--anchors", ver_anchors, "Increment anchors");
    ver->add_option("--p", ver_kp, "Kolmogorov moment order (even)");

    // discriminate -------------------------------------------------------------
    auto* dis = app.add_subcommand("discriminate", "Two-hypothesis path discrimination");
    std::string dis_family = "fbm";
    double dis_h1 = 0.6, dis_h2 = 0.8, dis_ratio = 0.7, dis_rho_plus = 1.0125,
           dis_rho_minus = 1.0 / 1.0125, dis_floor = 0.9, dis_undec = 0.2;
    int dis_paths = 200, dis_count = 96, dis_window = 88;
    bool dis_null = false;
    dis->add_option("--family", dis_family, "fbm|power")
        ->check(CLI::IsMember({"fbm", "power"}));
    dis->add_option("--h1", dis_h1, "First hypothesis H");
    dis->add_option("--h2", dis_h2, "Second hypothesis H");
    dis->add_option("--paths", dis_paths, "Paths per side");
    dis->add_option("--ratio", dis_ratio, "Geometric grid ratio");
    dis->add_option("--count", dis_count, "Geometric grid length");
    dis->add_option("--window", dis_window, "Dichotomy trend window");
    dis->add_option("--rho-plus", dis_rho_plus, "Diverge threshold");
    dis->add_option("--rho-minus", dis_rho_minus, "Vanish threshold");
    dis->add_flag("--null-control", dis_null, "Allow H1 == H2 chance-level control");
    dis->add_option("--accuracy-floor", dis_floor, "Pass floor for accuracy");
    dis->add_option("--max-undecided", dis_undec, "Pass cap for undecided rate");

    try {
        app.parse(argc, argv);
        apply_config(app, g.config_file);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (sim->parsed()) return run_simulate(g, sim_p, sim_steps, sim_horizon, sim_paths);
        if (mom->parsed())
            return run_moments(g, mom_p, mom_orders, parse_double_list(mom_h), mom_delta,
                               mom_cumulants, mom->count("--process") > 0);
        if (est->parsed()) {
            const GridDirection dir = est_direction == "infinity"
                                          ? GridDirection::to_infinity
                                          : GridDirection::to_zero;
            GeometricGrid grid{0.0, est_ratio, est_count, dir};
            DichotomyRule rule{est_window, est_rho_plus, est_rho_minus};
            ScaleRange range{est_minlvl, est_maxlvl};
            return run_estimate(g, est_p, est_inputs, est_which, est_paths, est_steps,
                                est_horizon, grid, rule, est_kappa_step, est_kappa_max,
                                range);
        }
        if (ver->parsed())
            return run_verify(g, ver_p, ver_checks, ver_paths, ver_steps, ver_horizon,
                              ver_tol, ver_pairs, ver_orders, ver_times, ver_lags,
                              ver_anchors, ver_kp);
        if (dis->parsed()) {
            GeometricGrid grid{0.0, dis_ratio, dis_count, GridDirection::to_zero};
            DichotomyRule rule{dis_window, dis_rho_plus, dis_rho_minus};
            return run_discriminate(g, dis_family, dis_h1, dis_h2, dis_paths, grid, rule,
                                    dis_null, dis_floor, dis_undec);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
