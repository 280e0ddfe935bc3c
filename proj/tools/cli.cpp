#include "cli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqw/analysis.hpp"
#include "eqw/classical_elephant.hpp"
#include "eqw/io.hpp"
#include "eqw/spectral_channel.hpp"
#include "eqw/walk_engines.hpp"

namespace eqw::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

double parse_angle(const std::string& text, const std::string& field) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
    const auto number = [&](const std::string& part) {
        double v = 0.0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || res.ec != std::errc{} || res.ptr != part.data() + part.size())
            throw ConfigError(field, "cannot parse angle '" + text + "'");
        return v;
    };
    const auto pos = s.find("pi");
    if (pos == std::string::npos) {
        const double v = number(s);
        if (!std::isfinite(v)) throw ConfigError(field, "angle must be finite");
        return v;
    }
    std::string head = s.substr(0, pos), tail = s.substr(pos + 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    double coef = 1.0;
    if (head == "-") {
        coef = -1.0;
    } else if (head == "+") {
        coef = 1.0;
    } else if (!head.empty()) {
        coef = number(head.front() == '+' ? head.substr(1) : head);
    }
    double den = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') throw ConfigError(field, "cannot parse angle '" + text + "'");
        den = number(tail.substr(1));
        if (den == 0.0) throw ConfigError(field, "angle divides by zero");
    }
    return coef * std::numbers::pi / den;
}

std::vector<long long> parse_int_list(const std::string& text, const std::string& field) {
    std::vector<long long> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        std::string part = text.substr(start, end - start);
        part.erase(std::remove_if(part.begin(), part.end(), [](unsigned char c) { return std::isspace(c); }),
                   part.end());
        long long v = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || res.ec != std::errc{} || res.ptr != part.data() + part.size())
            throw ConfigError(field, "expected comma-separated integers, got '" + text + "'");
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

namespace {

const std::vector<std::string> kCommands = {"standard",       "elephant",      "classical", "trace-distance",
                                            "kspace-eigen",   "exact-channel", "fit"};

struct Flags {
    std::string theta = "pi/4", gamma = "pi/2", phi = "0";
    std::string gamma_a = "0", gamma_b = "pi", phi_a = "0", phi_b = "0";
    double delta = 0.0;
    long long center = 0;
    double noise = 0.0;
    std::string rule = "interval";
    long long steps = 64;
    long long trajectories = 1;
    std::string snapshots;
    std::uint64_t seed = 1;
    std::string out = ".";
    std::string format = "csv";
    unsigned threads = 0;
    double p = 0.5, q = 0.5;
    double k_max = std::numbers::pi;
    long long k_points = 101;
    std::string t_list = "1,2,4,8,16,32,64";
    std::string kernel = "discrete";
    long long lattice = 0;
    std::string input;
    std::string x_column = "t", y_column = "var";
    double t_min = std::numeric_limits<double>::quiet_NaN();
    double t_max = std::numeric_limits<double>::quiet_NaN();
};

// Every option keeps its last occurrence, so explicit flags override config values.
template <class T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& target, const std::string& help) {
    return app->add_option("--" + name, target, help)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
        ->capture_default_str();
}

void add_common(CLI::App* app, Flags& f) {
    opt(app, "seed", f.seed, "master seed");
    opt(app, "out", f.out, "output directory");
    opt(app, "format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    opt(app, "threads", f.threads, "worker threads (0: machine parallelism)");
}

void add_walk(CLI::App* app, Flags& f, bool with_rule) {
    opt(app, "theta", f.theta, "coin angle (radians or pi fraction)");
    opt(app, "gamma", f.gamma, "initial coin polar angle");
    opt(app, "phi", f.phi, "initial coin azimuth");
    opt(app, "delta", f.delta, "Gaussian packet coefficient (0: localized start)");
    opt(app, "center", f.center, "initial site");
    opt(app, "noise", f.noise, "coin noise half-width epsilon");
    if (with_rule) opt(app, "rule", f.rule, "interval or unit")->check(CLI::IsMember({"interval", "unit"}));
    opt(app, "steps", f.steps, "number of steps T");
    opt(app, "trajectories", f.trajectories, "ensemble size N");
    opt(app, "snapshots", f.snapshots, "comma-separated snapshot times (default: powers of 2 and T)");
}

// Numeric-looking strings become JSON numbers so the manifest reads naturally.
json echo_value(const std::string& s) {
    long long i = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), i);
    if (!s.empty() && r.ec == std::errc{} && r.ptr == s.data() + s.size()) return i;
    std::uint64_t u = 0;
    r = std::from_chars(s.data(), s.data() + s.size(), u);
    if (!s.empty() && r.ec == std::errc{} && r.ptr == s.data() + s.size()) return u;
    double d = 0;
    r = std::from_chars(s.data(), s.data() + s.size(), d);
    if (!s.empty() && r.ec == std::errc{} && r.ptr == s.data() + s.size() && std::isfinite(d)) return d;
    return s;
}

json echo_params(const CLI::App* sub) {
    json params = json::object();
    for (const CLI::Option* o : sub->get_options()) {
        const std::string name = o->get_lnames().empty() ? "" : o->get_lnames().front();
        if (name.empty() || name == "help") continue;
        const std::string value = o->count() > 0 ? o->as<std::string>() : o->get_default_str();
        if (value.empty()) continue;
        params[name] = echo_value(value);
    }
    return params;
}

std::string token_for(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty()) s += ",";
            s += token_for(e, key);
        }
        return s;
    }
    throw ConfigError(key, "unsupported config value " + v.dump());
}

// Flag tokens taken from a config file: a manifest's "params", or the top level.
std::vector<std::string> config_tokens(const std::string& path, std::string& command) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config", "top level must be an object");
    if (doc.contains("command") && doc["command"].is_string()) command = doc["command"].get<std::string>();
    const nlohmann::json& params = doc.contains("params") ? doc["params"] : doc;
    if (!params.is_object()) throw ConfigError("config", "\"params\" must be an object");
    std::vector<std::string> tokens;
    for (const auto& [key, value] : params.items()) {
        if (doc.contains("params") ? false : (key == "command" || key == "version" || key == "elapsed_seconds"))
            continue;
        if (value.is_null()) continue;
        tokens.push_back("--" + key);
        tokens.push_back(token_for(value, key));
    }
    return tokens;
}

std::vector<std::int64_t> snapshot_times(const Flags& f) {
    std::vector<std::int64_t> out;
    if (!f.snapshots.empty()) {
        for (long long v : parse_int_list(f.snapshots, "snapshots")) {
            if (v < 0 || v > f.steps) throw ConfigError("snapshots", "time " + std::to_string(v) + " outside [0, steps]");
            out.push_back(v);
        }
        return out;
    }
    for (std::int64_t t = 1; t <= f.steps; t *= 2) out.push_back(t);
    if (out.empty() || out.back() != f.steps) out.push_back(f.steps);
    return out;
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError(field, what);
}

OutputFormat output_format(const Flags& f) { return f.format == "json" ? OutputFormat::Json : OutputFormat::Csv; }

WalkState initial_state(const Flags& f) {
    const double gamma = parse_angle(f.gamma, "gamma"), phi = parse_angle(f.phi, "phi");
    require(gamma >= 0.0 && gamma <= std::numbers::pi, "gamma", "must lie in [0, pi]");
    require(f.delta >= 0.0 && std::isfinite(f.delta), "delta", "must be >= 0");
    const CoinBlochState coin{gamma, phi};
    if (f.delta > 0.0) return make_gaussian_packet({f.center, f.delta}, coin);
    return make_localized(f.center, coin);
}

CoinParams coin_params(const Flags& f) {
    const double theta = parse_angle(f.theta, "theta");
    require(f.noise >= 0.0 && std::isfinite(f.noise), "noise", "must be >= 0");
    return {theta, f.noise};
}

void validate_counts(const Flags& f) {
    require(f.steps >= 1, "steps", "must be >= 1");
    require(f.trajectories >= 1, "trajectories", "must be >= 1");
}

void write_distributions(const fs::path& dir, const std::vector<std::int64_t>& times,
                         const std::vector<PositionDistribution>& dists, OutputFormat fmt) {
    for (std::size_t i = 0; i < dists.size(); ++i)
        write_table(dir, "dist_t" + std::to_string(times[i]), distribution_table(dists[i]), fmt);
}

void run_walk(const Flags& f, bool elephant, std::ostream& out) {
    validate_counts(f);
    const CoinParams coin = coin_params(f);
    const StepSizeRule rule = elephant && f.rule == "interval" ? StepSizeRule::Interval : StepSizeRule::Unit;
    const WalkState init = initial_state(f);
    EnsembleOptions eo;
    eo.threads = f.threads;
    const auto res = run_ensemble(init, coin, rule, f.steps, snapshot_times(f),
                                  static_cast<std::size_t>(f.trajectories), f.seed, eo);
    const fs::path dir(f.out);
    write_table(dir, "moments", moments_table(res), output_format(f));
    write_distributions(dir, res.times, res.mean_distributions, output_format(f));
    out << "final variance " << res.moments.variance.back() << " at t=" << res.times.back() << '\n';
}

void run_classical(const Flags& f, std::ostream& out) {
    validate_counts(f);
    require(f.p >= 0.0 && f.p <= 1.0, "p", "must lie in [0, 1]");
    require(f.q >= 0.0 && f.q <= 1.0, "q", "must lie in [0, 1]");
    ErwParams params{f.p, f.q, f.steps, static_cast<std::size_t>(f.trajectories)};
    std::vector<std::int64_t> times;
    if (!f.snapshots.empty()) times = snapshot_times(f);
    const auto m = erw_ensemble_moments(params, f.seed, times, f.threads);
    write_table(fs::path(f.out), "erw_moments", erw_table(m), output_format(f));
    out << "final variance " << m.variance.back() << " at t=" << m.times.back() << '\n';
}

void run_trace(const Flags& f, std::ostream& out) {
    validate_counts(f);
    TraceDistanceConfig cfg;
    cfg.state_a = {parse_angle(f.gamma_a, "gamma-a"), parse_angle(f.phi_a, "phi-a")};
    cfg.state_b = {parse_angle(f.gamma_b, "gamma-b"), parse_angle(f.phi_b, "phi-b")};
    for (const auto& [g, name] : {std::pair{cfg.state_a.gamma, "gamma-a"}, std::pair{cfg.state_b.gamma, "gamma-b"}})
        require(g >= 0.0 && g <= std::numbers::pi, name, "must lie in [0, pi]");
    require(f.delta >= 0.0, "delta", "must be >= 0");
    cfg.packet = {f.center, f.delta};
    cfg.coin = coin_params(f);
    cfg.rule = f.rule == "interval" ? StepSizeRule::Interval : StepSizeRule::Unit;
    cfg.steps = f.steps;
    cfg.trajectories = static_cast<std::size_t>(f.trajectories);
    cfg.seed = f.seed;
    cfg.threads = f.threads;
    const TraceDistanceSeries s = trace_distance_experiment(cfg);
    write_table(fs::path(f.out), "trace", trace_table(s), output_format(f));
    out << "D_0 " << s.distance.front() << ", BLP sum " << s.blp_sum << ", positive velocities "
        << s.positive_events << '\n';
}

void run_eigen(const Flags& f, std::ostream& out) {
    const double theta = parse_angle(f.theta, "theta");
    require(f.k_points >= 2, "k-points", "must be >= 2");
    require(f.k_max > 0.0 && std::isfinite(f.k_max), "k-max", "must be > 0");
    require(f.kernel == "discrete" || f.kernel == "continuous", "kernel", "must be discrete or continuous");
    const auto kernel = f.kernel == "discrete" ? AveragingKernel::Discrete : AveragingKernel::Continuous;
    std::vector<std::int64_t> ts;
    for (long long t : parse_int_list(f.t_list, "t-list")) {
        require(t >= 1, "t-list", "times must be >= 1");
        ts.push_back(t);
    }
    std::vector<EigenRow> rows;
    for (std::int64_t t : ts) {
        for (long long j = 0; j < f.k_points; ++j) {
            const double k = -f.k_max + 2.0 * f.k_max * static_cast<double>(j) / static_cast<double>(f.k_points - 1);
            rows.push_back({k, t, eigenvalues(averaged_step_matrix(k, theta, t, kernel))});
        }
    }
    const fs::path dir(f.out);
    write_table(dir, "eigen", eigen_table(rows), output_format(f));

    const double kmax = 0.1 / static_cast<double>(*std::max_element(ts.begin(), ts.end()));
    std::vector<double> grid;
    for (int j = 1; j <= 20; ++j) grid.push_back(kmax * j / 20.0);
    const auto ex = small_k_expansion(theta, ts, grid, kernel);
    json modes = json::array();
    for (const auto& m : ex.modes)
        modes.push_back({{"decay", m.decay}, {"curvature", m.curvature}, {"r2_decay", m.r2_decay},
                         {"r2_phase", m.r2_phase}});
    json doc = {{"modes", modes},
                {"max_modulus", ex.max_modulus},
                {"max_conjugate_mismatch", ex.max_conjugate_mismatch},
                {"points", ex.points},
                {"valid", ex.valid}};
    std::ofstream(dir / "expansion.json") << doc.dump(2) << '\n';
    out << "eigen rows " << rows.size() << ", small-k fit " << (ex.valid ? "valid" : "flagged") << '\n';
}

void run_channel(const Flags& f, std::ostream& out) {
    require(f.steps >= 1, "steps", "must be >= 1");
    require(f.lattice >= 0, "lattice", "must be 0 (auto) or a power of two");
    require(f.lattice == 0 || std::has_single_bit(static_cast<unsigned long long>(f.lattice)), "lattice",
            "must be 0 (auto) or a power of two");
    const WalkState init = initial_state(f);
    ChannelOptions o;
    o.theta = parse_angle(f.theta, "theta");
    o.steps = f.steps;
    o.averaging = f.rule == "interval" ? ShiftAverage::Interval : ShiftAverage::Unit;
    o.threads = f.threads;
    o.lattice_size = f.lattice > 0 ? static_cast<std::size_t>(f.lattice)
                                   : required_lattice_size(o.theta, o.steps, init, o.averaging);
    o.distribution_times = f.snapshots.empty() ? std::vector<std::int64_t>{f.steps} : snapshot_times(f);
    const auto res = evolve_two_point_channel(o, init);
    const fs::path dir(f.out);
    write_table(dir, "channel_moments", channel_table(res), output_format(f));
    write_distributions(dir, res.distribution_times, res.distributions, output_format(f));
    out << "lattice " << res.lattice_size << ", final variance " << res.variance.back() << ", trace "
        << res.trace.back() << '\n';
}

void run_fit(const Flags& f, std::ostream& out) {
    require(!f.input.empty(), "input", "an input table is required");
    Table t;
    try {
        t = read_table(f.input);
    } catch (const std::exception& e) {
        throw ConfigError("input", e.what());
    }
    std::vector<double> x, y;
    try {
        x = t.values(f.x_column);
    } catch (const std::out_of_range& e) {
        throw ConfigError("x-column", e.what());
    }
    try {
        y = t.values(f.y_column);
    } catch (const std::out_of_range& e) {
        throw ConfigError("y-column", e.what());
    }
    double lo = f.t_min, hi = f.t_max;
    if (std::isnan(lo)) {
        lo = std::numeric_limits<double>::infinity();
        for (double v : x)
            if (v > 0.0) lo = std::min(lo, v);
    }
    if (std::isnan(hi)) {
        hi = -std::numeric_limits<double>::infinity();
        for (double v : x) hi = std::max(hi, v);
    }
    const PowerLawFit fit = fit_power_law(x, y, lo, hi);
    std::ofstream(fs::path(f.out) / "fit.json") << fit_json(fit).dump(2) << '\n';
    out << "exponent " << fit.exponent << " +- " << fit.exponent_se << ", R^2 " << fit.r2 << '\n';
}

}  // namespace

int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    std::string command;
    std::vector<std::string> tokens;
    try {
        std::string config_path;
        std::vector<std::string> explicit_args;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config") {
                if (i + 1 >= args.size()) throw ConfigError("config", "missing file name");
                config_path = args[++i];
            } else if (args[i].rfind("--config=", 0) == 0) {
                config_path = args[i].substr(9);
            } else {
                explicit_args.push_back(args[i]);
            }
        }
        if (!explicit_args.empty() &&
            std::find(kCommands.begin(), kCommands.end(), explicit_args.front()) != kCommands.end()) {
            command = explicit_args.front();
            explicit_args.erase(explicit_args.begin());
        }
        std::vector<std::string> from_config;
        if (!config_path.empty()) {
            std::string cfg_command;
            from_config = config_tokens(config_path, cfg_command);
            if (command.empty()) command = cfg_command;
        }
        if (!command.empty()) tokens.push_back(command);
        tokens.insert(tokens.end(), from_config.begin(), from_config.end());
        tokens.insert(tokens.end(), explicit_args.begin(), explicit_args.end());
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    CLI::App app{"Elephant quantum walk simulations and analysis", "eqw"};
    app.require_subcommand(1);
    app.set_version_flag("--version", EQW_VERSION);

    std::map<std::string, Flags> flags;
    std::map<std::string, CLI::App*> subs;
    const auto make = [&](const std::string& name, const std::string& help) {
        subs[name] = app.add_subcommand(name, help);
        return std::pair<CLI::App*, Flags*>{subs[name], &flags[name]};
    };
    {
        auto [s, f] = make("standard", "standard walk (unit steps)");
        f->steps = 100;
        add_walk(s, *f, false);
        add_common(s, *f);
    }
    {
        auto [s, f] = make("elephant", "elephant walk ensemble");
        f->steps = 128;
        f->trajectories = 1000;
        add_walk(s, *f, true);
        add_common(s, *f);
    }
    {
        auto [s, f] = make("classical", "classical elephant random walk");
        f->steps = 1024;
        f->trajectories = 10000;
        opt(s, "p", f->p, "probability of repeating a remembered step");
        opt(s, "q", f->q, "probability that the first step goes right");
        opt(s, "steps", f->steps, "number of steps T");
        opt(s, "trajectories", f->trajectories, "ensemble size N");
        opt(s, "snapshots", f->snapshots, "comma-separated times (default: every t)");
        add_common(s, *f);
    }
    {
        auto [s, f] = make("trace-distance", "trace distance between two initial coin states");
        f->steps = 100;
        f->trajectories = 1000;
        f->delta = 0.001;
        opt(s, "theta", f->theta, "coin angle");
        opt(s, "gamma-a", f->gamma_a, "polar angle of state A");
        opt(s, "phi-a", f->phi_a, "azimuth of state A");
        opt(s, "gamma-b", f->gamma_b, "polar angle of state B");
        opt(s, "phi-b", f->phi_b, "azimuth of state B");
        opt(s, "delta", f->delta, "Gaussian packet coefficient (0: localized start)");
        opt(s, "center", f->center, "packet center");
        opt(s, "noise", f->noise, "coin noise half-width epsilon");
        opt(s, "rule", f->rule, "interval or unit")->check(CLI::IsMember({"interval", "unit"}));
        opt(s, "steps", f->steps, "number of steps T");
        opt(s, "trajectories", f->trajectories, "ensemble size N");
        add_common(s, *f);
    }
    {
        auto [s, f] = make("kspace-eigen", "eigenvalues of the averaged momentum-space step matrix");
        opt(s, "theta", f->theta, "coin angle");
        opt(s, "t-list", f->t_list, "comma-separated times");
        opt(s, "k-max", f->k_max, "grid spans [-k-max, k-max]");
        opt(s, "k-points", f->k_points, "grid points");
        opt(s, "kernel", f->kernel, "discrete or continuous")->check(CLI::IsMember({"discrete", "continuous"}));
        add_common(s, *f);
    }
    {
        auto [s, f] = make("exact-channel", "exact averaged walk on a periodic lattice");
        f->steps = 64;
        opt(s, "theta", f->theta, "coin angle");
        opt(s, "gamma", f->gamma, "initial coin polar angle");
        opt(s, "phi", f->phi, "initial coin azimuth");
        opt(s, "delta", f->delta, "Gaussian packet coefficient (0: localized start)");
        opt(s, "center", f->center, "initial site");
        opt(s, "rule", f->rule, "interval or unit")->check(CLI::IsMember({"interval", "unit"}));
        opt(s, "steps", f->steps, "number of steps T");
        opt(s, "lattice", f->lattice, "ring size M, a power of two (0: smallest admissible)");
        opt(s, "snapshots", f->snapshots, "times whose distribution is written (default: T)");
        add_common(s, *f);
    }
    {
        auto [s, f] = make("fit", "power-law fit of a column against another");
        opt(s, "input", f->input, "CSV or JSON table");
        opt(s, "x-column", f->x_column, "time column");
        opt(s, "y-column", f->y_column, "value column");
        opt(s, "t-min", f->t_min, "window start (default: smallest positive time)");
        opt(s, "t-max", f->t_max, "window end (default: largest time)");
        add_common(s, *f);
    }

    try {
        std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    Flags& f = flags[command];
    try {
        require(f.threads <= 4096, "threads", "must be <= 4096");
        std::error_code ec;
        fs::create_directories(f.out, ec);
        if (ec) throw ConfigError("out", "cannot create directory '" + f.out + "': " + ec.message());

        if (command == "standard") run_walk(f, false, out);
        else if (command == "elephant") run_walk(f, true, out);
        else if (command == "classical") run_classical(f, out);
        else if (command == "trace-distance") run_trace(f, out);
        else if (command == "kspace-eigen") run_eigen(f, out);
        else if (command == "exact-channel") run_channel(f, out);
        else run_fit(f, out);

        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        json manifest = {{"command", command},
                         {"params", echo_params(sub)},
                         {"seed", f.seed},
                         {"version", EQW_VERSION},
                         {"elapsed_seconds", elapsed}};
        std::ofstream(fs::path(f.out) / "manifest.json") << manifest.dump(2) << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace eqw::cli
