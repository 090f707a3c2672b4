#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"

#include "barypoly/io.hpp"

namespace barypoly::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_decimal(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<double> number_of(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_number(j.get<std::string>());
    return std::nullopt;
}

std::optional<std::size_t> count_of(const json& j) {
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::size_t>(j.get<std::int64_t>());
    return std::nullopt;
}

std::optional<Format> format_of(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "svg") return Format::Svg;
    return std::nullopt;
}

std::string_view format_name(Format f) {
    switch (f) {
        case Format::Csv: return "csv";
        case Format::Json: return "json";
        case Format::Svg: return "svg";
    }
    return "csv";
}

class Collector {
public:
    void fail(std::string message) { errors_.push_back(std::move(message)); }
    bool clean() const { return errors_.empty(); }
    std::vector<std::string> take() { return std::move(errors_); }

private:
    std::vector<std::string> errors_;
};

std::optional<PointSource> parse_points(const json& j, Collector& errs) {
    PointSource src;
    if (j.is_array()) {
        src.kind = PointSource::Kind::Explicit;
        bool ok = true;
        for (std::size_t r = 0; r < j.size(); ++r) {
            const json& row = j[r];
            if (!row.is_array() || row.empty()) {
                errs.fail("points[" + std::to_string(r) + "]: expected a non-empty coordinate array");
                ok = false;
                continue;
            }
            std::vector<double> coords;
            for (const json& c : row) {
                const auto v = number_of(c);
                if (!v) {
                    errs.fail("points[" + std::to_string(r) + "]: non-numeric or non-finite coordinate");
                    ok = false;
                    break;
                }
                coords.push_back(*v);
            }
            src.rows.push_back(std::move(coords));
        }
        if (!ok) return std::nullopt;
        if (src.rows.size() < 2) {
            errs.fail("points: at least 2 points required");
            return std::nullopt;
        }
        const std::size_t dim = src.rows.front().size();
        for (const auto& row : src.rows) {
            if (row.size() != dim) {
                errs.fail("points: dimension mismatch");
                return std::nullopt;
            }
        }
        std::vector<AffinePoint> pts;
        for (const auto& row : src.rows) pts.emplace_back(row);
        if (!(PointFamily::unchecked(pts).min_separation() > kDefaultDistinctTolerance)) {
            errs.fail("points not distinct");
        }
        return src;
    }
    if (j.is_object()) {
        const std::string gen = j.value("generator", std::string{});
        if (gen == "regular") src.kind = PointSource::Kind::RegularPolygon;
        else if (gen == "random") src.kind = PointSource::Kind::Random;
        else {
            errs.fail("points.generator: expected \"regular\" or \"random\"");
            return std::nullopt;
        }
        for (const auto& [key, value] : j.items()) {
            if (key == "generator") continue;
            if (key == "count" || key == "dimension") {
                const auto n = count_of(value);
                if (!n) {
                    errs.fail("points." + key + ": expected a non-negative integer");
                    continue;
                }
                (key == "count" ? src.count : src.dimension) = *n;
            } else if (key == "radius") {
                const auto r = number_of(value);
                if (!r || !(*r > 0.0)) errs.fail("points.radius: expected a positive number");
                else src.radius = *r;
            } else {
                errs.fail("points: unknown key \"" + key + "\"");
            }
        }
        if (src.count < 2) errs.fail("points.count: at least 2 points required");
        if (src.dimension < 1) errs.fail("points.dimension: must be >= 1");
        if (src.kind == PointSource::Kind::RegularPolygon && src.dimension != 2)
            errs.fail("points.dimension: regular polygons are planar");
        return src;
    }
    errs.fail("points: expected an array of rows or a generator object");
    return std::nullopt;
}

void parse_tolerances(const json& j, Tolerances& tol, Collector& errs) {
    if (!j.is_object()) {
        errs.fail("tolerances: expected an object");
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "horizon" || key == "confirm_pairs") {
            const auto n = count_of(value);
            if (!n) errs.fail("tolerances." + key + ": expected a non-negative integer");
            else (key == "horizon" ? tol.horizon : tol.confirm_pairs) = *n;
            continue;
        }
        double* slot = key == "stationarity"    ? &tol.stationarity
                       : key == "periodicity"   ? &tol.periodicity
                       : key == "regularity"    ? &tol.regularity
                       : key == "root_residual" ? &tol.root_residual
                       : key == "alpha_tie"     ? &tol.alpha_tie
                                                : nullptr;
        if (!slot) {
            errs.fail("tolerances: unknown key \"" + key + "\"");
            continue;
        }
        const auto v = number_of(value);
        if (!v || !(*v >= 0.0)) errs.fail("tolerances." + key + ": expected a non-negative number");
        else *slot = *v;
    }
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    const auto num = parse_decimal(text.substr(0, slash));
    const auto den = parse_decimal(text.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    const double q = *num / *den;
    if (!std::isfinite(q)) return std::nullopt;
    return q;
}

ConfigResult parse_config(std::string_view text) {
    ConfigResult result;
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        result.errors.push_back("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
        return result;
    }
    Collector errs;
    if (!root.is_object()) {
        result.errors.push_back("config: expected a JSON object");
        return result;
    }

    SimulationConfig cfg;
    bool have_t = false;
    for (const auto& [key, value] : root.items()) {
        if (key == "points") {
            cfg.points = parse_points(value, errs);
        } else if (key == "t") {
            have_t = true;
            const json arr = value.is_array() ? value : json::array({value});
            if (arr.empty()) errs.fail("t: at least one parameter required");
            for (std::size_t k = 0; k < arr.size(); ++k) {
                const auto v = number_of(arr[k]);
                if (!v) {
                    errs.fail("t[" + std::to_string(k) + "]: not a number");
                    continue;
                }
                if (!(*v > 0.0 && *v < 1.0)) {
                    errs.fail("t[" + std::to_string(k) + "] = " + format_number(*v) +
                              ": parameter out of open interval ]0;1[");
                }
                cfg.t.push_back(*v);
            }
        } else if (key == "p") {
            const auto n = count_of(value);
            if (!n || *n < 2) errs.fail("p: expected an integer >= 2");
            else cfg.p = *n;
        } else if (key == "iterations") {
            const auto n = count_of(value);
            if (!n) errs.fail("iterations: expected a non-negative integer");
            else cfg.iterations = *n;
        } else if (key == "tolerances") {
            parse_tolerances(value, cfg.tolerances, errs);
        } else if (key == "output") {
            if (!value.is_object()) {
                errs.fail("output: expected an object");
                continue;
            }
            for (const auto& [okey, ovalue] : value.items()) {
                if (okey == "format") {
                    const auto f = ovalue.is_string() ? format_of(ovalue.get<std::string>()) : std::nullopt;
                    if (!f) errs.fail("output.format: expected \"csv\", \"json\" or \"svg\"");
                    else cfg.output.format = *f;
                } else if (okey == "path") {
                    if (!ovalue.is_string()) errs.fail("output.path: expected a string");
                    else cfg.output.path = ovalue.get<std::string>();
                } else {
                    errs.fail("output: unknown key \"" + okey + "\"");
                }
            }
        } else {
            errs.fail("unknown key \"" + key + "\"");
        }
    }

    if (!have_t) errs.fail("t: missing parameter list");
    std::optional<std::size_t> p = cfg.p;
    if (cfg.points) {
        const std::size_t n = cfg.points->kind == PointSource::Kind::Explicit ? cfg.points->rows.size()
                                                                               : cfg.points->count;
        if (p && *p != n) errs.fail("p: does not match the number of points");
        p = n;
    }
    if (have_t && !cfg.t.empty()) {
        if (p && cfg.t.size() != 1 && cfg.t.size() != *p)
            errs.fail("t: expected 1 or " + std::to_string(*p) + " parameters, got " + std::to_string(cfg.t.size()));
        if (!p && cfg.t.size() < 2) errs.fail("t: a single parameter needs \"p\" or points to broadcast over");
    }

    if (!errs.clean()) {
        result.errors = errs.take();
        return result;
    }
    result.config = std::move(cfg);
    return result;
}

std::string serialize_config(const SimulationConfig& config) {
    json root = json::object();
    if (config.points) {
        const auto& src = *config.points;
        if (src.kind == PointSource::Kind::Explicit) {
            root["points"] = src.rows;
        } else {
            json gen = {{"generator", src.kind == PointSource::Kind::Random ? "random" : "regular"},
                        {"count", src.count},
                        {"dimension", src.dimension}};
            if (src.kind == PointSource::Kind::RegularPolygon) gen["radius"] = src.radius;
            root["points"] = gen;
        }
    }
    root["t"] = config.t;
    if (config.p) root["p"] = *config.p;
    root["iterations"] = config.iterations;
    const auto& tol = config.tolerances;
    root["tolerances"] = {{"stationarity", tol.stationarity}, {"periodicity", tol.periodicity},
                          {"regularity", tol.regularity},     {"root_residual", tol.root_residual},
                          {"alpha_tie", tol.alpha_tie},       {"horizon", tol.horizon},
                          {"confirm_pairs", tol.confirm_pairs}};
    root["output"] = {{"format", format_name(config.output.format)}, {"path", config.output.path}};
    return root.dump(2) + "\n";
}

std::uint64_t seed_from_env() {
    const char* raw = std::getenv("BARYPOLY_SEED");
    if (!raw || !*raw) return 0;
    const std::string_view s(raw);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DomainError("BARYPOLY_SEED: expected a 64-bit unsigned decimal integer");
    }
    return seed;
}

PointFamily resolve_family(const PointSource& source, std::uint64_t seed) {
    std::vector<AffinePoint> pts;
    switch (source.kind) {
        case PointSource::Kind::Explicit:
            for (const auto& row : source.rows) pts.emplace_back(row);
            break;
        case PointSource::Kind::RegularPolygon:
            for (std::size_t k = 0; k < source.count; ++k) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(source.count);
                pts.emplace_back(std::vector<double>{source.radius * std::cos(angle), source.radius * std::sin(angle)});
            }
            break;
        case PointSource::Kind::Random: {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> coord(0.0, 1.0);
            for (std::size_t k = 0; k < source.count; ++k) {
                std::vector<double> c(source.dimension);
                for (double& x : c) x = coord(rng);
                pts.emplace_back(std::move(c));
            }
            break;
        }
    }
    return PointFamily::make(pts);
}

ParamVector resolve_params(const SimulationConfig& config, std::size_t p) {
    if (config.t.size() == 1) return ParamVector::regular(p, config.t.front());
    if (config.t.size() != p) throw DomainError("t: parameter count does not match p");
    return ParamVector(config.t);
}

}  // namespace barypoly::io
