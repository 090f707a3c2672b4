#include "barypoly/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "barypoly/derived.hpp"
#include "barypoly/dual.hpp"
#include "barypoly/io.hpp"

namespace barypoly::cli {

namespace {

using nlohmann::json;

/// Reported with exit code 1.
struct ValidationFailure {
    std::vector<std::string> messages;
};

struct Options {
    std::vector<std::string> configs;
    std::string points;
    std::string t;
    std::optional<std::size_t> p;
    std::optional<std::size_t> n;
    std::string generator;
    std::optional<std::size_t> count;
    std::optional<std::size_t> dim;
    std::optional<double> radius;
    std::optional<double> tol_stationarity, tol_periodicity, tol_regularity, tol_root, tol_alpha_tie;
    std::optional<std::size_t> horizon;
    std::string format;
    std::string out;
    std::size_t jobs = 1;
    // figure
    std::string orders;
    std::string out_dir = ".";
    bool dual = false;
    // alpha
    int alpha_p = 3;
};

std::string join_numbers(std::span<const double> values, char sep = ' ') {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += sep;
        s += io::format_number(values[i]);
    }
    return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

json number_list(const std::string& text) {
    json arr = json::array();
    for (const auto& item : split(text, ',')) arr.push_back(item);
    return arr;
}

/// Merges an optional config file with the inline flags and validates the
/// result through the same path as a config file.
io::SimulationConfig build_config(const Options& o, const std::string& config_path) {
    json doc = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw ValidationFailure{{"cannot read config " + config_path}};
        std::stringstream buf;
        buf << in.rdbuf();
        const auto parsed = io::parse_config(buf.str());
        if (!parsed.ok()) throw ValidationFailure{parsed.errors};
        doc = json::parse(io::serialize_config(*parsed.config));
    }
    if (!o.points.empty()) {
        json rows = json::array();
        for (const auto& row : split(o.points, ';')) rows.push_back(number_list(row));
        doc["points"] = rows;
    }
    if (!o.generator.empty()) {
        json gen = {{"generator", o.generator}};
        if (o.count) gen["count"] = *o.count;
        if (o.dim) gen["dimension"] = *o.dim;
        if (o.radius) gen["radius"] = *o.radius;
        doc["points"] = gen;
    }
    if (!o.t.empty()) doc["t"] = number_list(o.t);
    if (o.p) doc["p"] = *o.p;
    if (o.n) doc["iterations"] = *o.n;
    json& tol = doc["tolerances"];
    if (!tol.is_object()) tol = json::object();
    if (o.tol_stationarity) tol["stationarity"] = *o.tol_stationarity;
    if (o.tol_periodicity) tol["periodicity"] = *o.tol_periodicity;
    if (o.tol_regularity) tol["regularity"] = *o.tol_regularity;
    if (o.tol_root) tol["root_residual"] = *o.tol_root;
    if (o.tol_alpha_tie) tol["alpha_tie"] = *o.tol_alpha_tie;
    if (o.horizon) tol["horizon"] = *o.horizon;
    json& output = doc["output"];
    if (!output.is_object()) output = json::object();
    if (!o.format.empty()) output["format"] = o.format;
    if (!o.out.empty()) output["path"] = o.out;
    if (o.format.empty() && o.out.ends_with(".json")) output["format"] = "json";

    const auto parsed = io::parse_config(doc.dump());
    if (!parsed.ok()) throw ValidationFailure{parsed.errors};
    return *parsed.config;
}

PointFamily family_of(const io::SimulationConfig& cfg) {
    if (!cfg.points) throw ValidationFailure{{"points: required for this command (--points, --generator or config)"}};
    return io::resolve_family(*cfg.points, io::seed_from_env());
}

std::size_t p_of(const io::SimulationConfig& cfg) {
    if (cfg.points) {
        return cfg.points->kind == io::PointSource::Kind::Explicit ? cfg.points->rows.size() : cfg.points->count;
    }
    if (cfg.p) return *cfg.p;
    return cfg.t.size();
}

/// Writes the trace file when a path is configured; "-" sends it to `out`
/// instead of the summary. Returns true when the summary should be printed.
bool emit_trace(const io::TraceTable& table, const io::SimulationConfig& cfg, std::ostream& out) {
    if (cfg.output.path.empty()) return true;
    if (cfg.output.path == "-") {
        out << io::render(table, cfg.output.format);
        return false;
    }
    io::write_trace(table, cfg.output.format, cfg.output.path);
    return true;
}

void run_simulate(const io::SimulationConfig& cfg, std::ostream& out) {
    const auto family = family_of(cfg);
    const auto t = io::resolve_params(cfg, family.size());
    const auto trace = iterate_sequence(family, t, cfg.iterations);
    const auto limit = limit_point(family, t);
    const auto gaps = convergence_gap(trace, limit);
    if (!emit_trace(io::to_table(trace), cfg, out)) return;
    out << "limit: " << join_numbers(limit.coords()) << "\n";
    out << "iterations: " << cfg.iterations << "\n";
    out << "final_gap: " << io::format_number(gaps.back()) << "\n";
}

void run_derive(const io::SimulationConfig& cfg, std::ostream& out) {
    const auto t = io::resolve_params(cfg, p_of(cfg));
    const auto trace = derived_trace(t, cfg.iterations);
    if (!emit_trace(io::to_table(trace, cfg.tolerances), cfg, out)) return;
    out << "steps: " << trace.params.size() - 1 << "\n";
    out << "saturated_at: " << (trace.saturated_at ? std::to_string(*trace.saturated_at) : "none") << "\n";
    out << "last: " << join_numbers(trace.params.back().values()) << "\n";
}

void run_dual(const io::SimulationConfig& cfg, std::ostream& out) {
    const auto family = family_of(cfg);
    const auto t = io::resolve_params(cfg, family.size());
    const auto trace = dual_trace(family, t, cfg.iterations);
    if (!emit_trace(io::to_table(trace, cfg.tolerances), cfg, out)) return;
    out << "centroid: " << join_numbers(trace.centroid.coords()) << "\n";
    out << "last_distance: " << io::format_number(trace.distances.back()) << "\n";
    if (t.size() < 3 && !t.is_regular()) {
        out << "report: unavailable for irregular p = 2 (the dual is periodic)\n";
        return;
    }
    const auto report = centroid_convergence_report(trace);
    out << "first_below_1e-6: " << (report.first_below ? std::to_string(*report.first_below) : "none") << "\n";
    out << "immediate: " << (report.immediate ? "yes" : "no") << "\n";
    out << "fitted_rate: " << (report.fitted_rate ? io::format_number(*report.fitted_rate) : "undefined") << "\n";
    out << "worst_two_step_ratio: " << io::format_number(report.worst_two_step_ratio) << "\n";
    out << "conjectured: " << (report.conjectured ? "yes" : "no") << "\n";
}

void run_classify(const io::SimulationConfig& cfg, std::ostream& out) {
    const auto t = io::resolve_params(cfg, p_of(cfg));
    const auto c = classify_dynamics(t, cfg.tolerances);
    out << to_string(c.verdict);
    if (c.lockin_index) out << " lockin_index=" << *c.lockin_index;
    if (c.parity) out << " parity=" << to_string(*c.parity);
    out << " alpha=" << io::format_number(c.alpha);
    if (c.saturated) out << " saturated_after=" << c.steps_examined;
    out << "\n";
}

std::pair<std::size_t, std::size_t> parse_orders(const std::string& text) {
    const auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            const auto v = static_cast<std::size_t>(std::stoul(text));
            return {v, v};
        }
        const auto lo = static_cast<std::size_t>(std::stoul(text.substr(0, dash)));
        const auto hi = static_cast<std::size_t>(std::stoul(text.substr(dash + 1)));
        if (hi < lo) throw std::invalid_argument("range");
        return {lo, hi};
    } catch (const std::exception&) {
        throw ValidationFailure{{"--orders: expected N or A-B"}};
    }
}

void run_figure(const io::SimulationConfig& cfg, const Options& o, std::ostream& out) {
    const auto family = family_of(cfg);
    const auto t0 = io::resolve_params(cfg, family.size());
    const auto [lo, hi] = o.orders.empty() ? std::pair<std::size_t, std::size_t>{0, 0} : parse_orders(o.orders);
    const auto derived = derived_trace(t0, hi);
    if (derived.params.size() <= hi) throw ValidationFailure{{"derived parameters saturate before the requested order"}};

    const auto document = [&](std::size_t order) {
        io::SvgStyle style;
        if (o.dual) {
            style.title = "dual sequence";
            return io::emit_svg(dual_trace(family, t0, cfg.iterations), style);
        }
        style.title = "derivative of order " + std::to_string(order);
        return io::emit_svg(iterate_sequence(family, derived.params[order], cfg.iterations), style);
    };

    const bool single = (lo == hi) || o.dual;
    if (single && (cfg.output.path.empty() || cfg.output.path == "-")) {
        out << document(lo);
        return;
    }
    if (single) {
        io::write_text(cfg.output.path, document(lo));
        out << "wrote " << cfg.output.path << "\n";
        return;
    }
    std::filesystem::create_directories(o.out_dir);
    for (std::size_t m = lo; m <= hi; ++m) {
        const auto path = std::filesystem::path(o.out_dir) / ("figure_order" + std::to_string(m) + ".svg");
        io::write_text(path, document(m));
        out << "wrote " << path.string() << "\n";
    }
}

void add_config_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.configs, "JSON config file (repeat with --jobs for a batch)");
    cmd->add_option("--points", o.points, "points as \"x,y;x,y;...\"");
    cmd->add_option("--t", o.t, "parameters, comma separated; fractions like 1/61 allowed");
    cmd->add_option("--p", o.p, "component count when a single --t is broadcast without points");
    cmd->add_option("--n", o.n, "iterations / derived steps");
    cmd->add_option("--generator", o.generator, "regular | random (seeded by BARYPOLY_SEED)")
        ->check(CLI::IsMember({"regular", "random"}));
    cmd->add_option("--count", o.count, "generator point count");
    cmd->add_option("--dim", o.dim, "generator dimension (random)");
    cmd->add_option("--radius", o.radius, "generator radius (regular)");
    cmd->add_option("--tol-stationarity", o.tol_stationarity);
    cmd->add_option("--tol-periodicity", o.tol_periodicity);
    cmd->add_option("--tol-regularity", o.tol_regularity);
    cmd->add_option("--tol-root", o.tol_root);
    cmd->add_option("--tol-alpha-tie", o.tol_alpha_tie);
    cmd->add_option("--horizon", o.horizon, "classification horizon in derived steps");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_option("--out", o.out, "trace destination; '-' for stdout");
    cmd->add_option("--jobs", o.jobs, "run several --config files concurrently")->check(CLI::PositiveNumber);
}

struct JobResult {
    int code = kExitOk;
    std::string out;
    std::string err;
};

template <class Body>
JobResult guarded(Body&& body) {
    JobResult r;
    std::ostringstream out;
    try {
        body(out);
    } catch (const ValidationFailure& f) {
        r.code = kExitValidation;
        for (const auto& m : f.messages) r.err += "error: " + m + "\n";
    } catch (const DomainError& e) {
        r.code = kExitValidation;
        r.err = std::string("error: ") + e.what() + "\n";
    } catch (const io::IoError& e) {
        r.code = kExitValidation;
        r.err = std::string("error: ") + e.what() + "\n";
    }
    r.out = out.str();
    return r;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Barypolygonal sequences, derived systems and dual sequences"};
    app.require_subcommand(1);
    Options o;

    auto* simulate = app.add_subcommand("simulate", "iterate the t-barypolygon of a point family");
    auto* derive = app.add_subcommand("derive", "trace the derived parameter system");
    auto* dual = app.add_subcommand("dual", "dual sequence and centroid convergence report");
    auto* classify = app.add_subcommand("classify", "classify the dynamics of the derived system");
    auto* figure = app.add_subcommand("figure", "SVG figures of barypolygonal sequences");
    auto* alpha = app.add_subcommand("alpha", "print the root of x^(p-1) + x - 1 in [0,1]");
    for (auto* cmd : {simulate, derive, dual, classify, figure}) add_config_options(cmd, o);
    figure->add_option("--orders", o.orders, "derivative order N or range A-B");
    figure->add_option("--out-dir", o.out_dir, "directory for multi-order output");
    figure->add_flag("--dual", o.dual, "draw the dual sequence instead");
    alpha->add_option("--p", o.alpha_p, "p >= 2")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (alpha->parsed()) {
        const auto r = guarded([&](std::ostream& os) { os << io::format_number(solve_alpha(o.alpha_p)) << "\n"; });
        out << r.out;
        err << r.err;
        return r.code;
    }

    CLI::App* cmd = app.get_subcommands().front();
    const auto run_one = [&](const std::string& config_path) {
        return guarded([&](std::ostream& os) {
            const auto cfg = build_config(o, config_path);
            if (cmd == simulate) run_simulate(cfg, os);
            else if (cmd == derive) run_derive(cfg, os);
            else if (cmd == dual) run_dual(cfg, os);
            else if (cmd == classify) run_classify(cfg, os);
            else run_figure(cfg, o, os);
        });
    };

    std::vector<std::string> paths = o.configs;
    if (paths.empty()) paths.emplace_back();
    if (paths.size() > 1 && !o.out.empty()) {
        err << "error: --out cannot be shared by several configs; set output.path in each\n";
        return kExitUsage;
    }

    std::vector<JobResult> results(paths.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < paths.size(); i = next++) results[i] = run_one(paths[i]);
    };
    {
        const std::size_t n_threads = std::min(o.jobs, paths.size());
        std::vector<std::jthread> pool;
        for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
        worker();
    }

    int code = kExitOk;
    for (const auto& r : results) {
        out << r.out;
        err << r.err;
        code = std::max(code, r.code);
    }
    return code;
}

}  // namespace barypoly::cli
