#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "barypoly/io.hpp"

namespace barypoly::io {

namespace {

using nlohmann::ordered_json;

TraceTable skeleton(std::string kind, std::size_t p, std::size_t d, const ParamVector& t0, const Tolerances& tol,
                    std::optional<std::size_t> saturated_at) {
    TraceTable table;
    table.kind = std::move(kind);
    table.p = p;
    table.d = d;
    table.t0.assign(t0.values().begin(), t0.values().end());
    table.tolerances = tol;
    table.saturated_at = saturated_at;
    return table;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_cell(std::string_view cell) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) throw IoError("csv: bad number \"" + std::string(cell) + "\"");
    return v;
}

ordered_json tolerances_json(const Tolerances& tol) {
    return {{"stationarity", tol.stationarity}, {"periodicity", tol.periodicity},
            {"regularity", tol.regularity},     {"root_residual", tol.root_residual},
            {"alpha_tie", tol.alpha_tie},       {"horizon", tol.horizon},
            {"confirm_pairs", tol.confirm_pairs}};
}

}  // namespace

std::string format_number(double value) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

TraceTable to_table(const PolygonTrace& trace) {
    const auto& first = trace.iterates.front();
    TraceTable table = skeleton("polygon", first.size(), first.dimension(), trace.params, Tolerances{}, std::nullopt);
    for (std::size_t k = 1; k <= table.p; ++k)
        for (std::size_t i = 1; i <= table.d; ++i)
            table.columns.push_back("B" + std::to_string(k) + "_x" + std::to_string(i));
    for (const auto& family : trace.iterates) table.rows.emplace_back(family.flat().begin(), family.flat().end());
    return table;
}

TraceTable to_table(const DerivedTrace& trace, const Tolerances& tol) {
    const auto& t0 = trace.params.front();
    TraceTable table = skeleton("derived", t0.size(), 0, t0, tol, trace.saturated_at);
    for (std::size_t k = 1; k <= table.p; ++k) table.columns.push_back("t" + std::to_string(k));
    for (const auto& t : trace.params) table.rows.emplace_back(t.values().begin(), t.values().end());
    return table;
}

TraceTable to_table(const DualTrace& trace, const Tolerances& tol) {
    const auto& t0 = trace.params_used.params.front();
    TraceTable table = skeleton("dual", t0.size(), trace.centroid.dimension(), t0, tol, trace.params_used.saturated_at);
    for (std::size_t i = 1; i <= table.d; ++i) table.columns.push_back("x" + std::to_string(i));
    table.columns.push_back("distance");
    for (std::size_t m = 0; m < trace.points.size(); ++m) {
        std::vector<double> row(trace.points[m].coords().begin(), trace.points[m].coords().end());
        row.push_back(trace.distances[m]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_csv(const TraceTable& table) {
    std::string out = "step";
    for (const auto& c : table.columns) out += "," + c;
    out += "\n";
    for (std::size_t m = 0; m < table.rows.size(); ++m) {
        out += std::to_string(m);
        for (double v : table.rows[m]) out += "," + format_number(v);
        out += "\n";
    }
    return out;
}

TraceTable table_from_csv(std::string_view text) {
    TraceTable table;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (line_no++ == 0) {
            if (cells.empty() || cells.front() != "step") throw IoError("csv: header must start with \"step\"");
            table.columns.assign(cells.begin() + 1, cells.end());
            continue;
        }
        if (cells.size() != table.columns.size() + 1) throw IoError("csv: row " + std::to_string(line_no - 1) + " has wrong column count");
        if (parse_cell(cells.front()) != static_cast<double>(table.rows.size())) throw IoError("csv: step index out of sequence");
        std::vector<double> row;
        row.reserve(table.columns.size());
        for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(parse_cell(cells[i]));
        table.rows.push_back(std::move(row));
    }
    if (line_no == 0) throw IoError("csv: missing header");
    return table;
}

std::string to_json(const TraceTable& table) {
    ordered_json j;
    j["kind"] = table.kind;
    j["p"] = table.p;
    j["d"] = table.d;
    j["t0"] = table.t0;
    j["tolerances"] = tolerances_json(table.tolerances);
    j["saturated_at"] = table.saturated_at ? ordered_json(*table.saturated_at) : ordered_json(nullptr);
    j["columns"] = table.columns;
    j["steps"] = table.rows;
    return j.dump() + "\n";
}

TraceTable table_from_json(std::string_view text) {
    try {
        const auto j = ordered_json::parse(text.begin(), text.end());
        TraceTable table;
        table.kind = j.at("kind").get<std::string>();
        table.p = j.at("p").get<std::size_t>();
        table.d = j.at("d").get<std::size_t>();
        table.t0 = j.at("t0").get<std::vector<double>>();
        const auto& tol = j.at("tolerances");
        table.tolerances.stationarity = tol.at("stationarity").get<double>();
        table.tolerances.periodicity = tol.at("periodicity").get<double>();
        table.tolerances.regularity = tol.at("regularity").get<double>();
        table.tolerances.root_residual = tol.at("root_residual").get<double>();
        table.tolerances.alpha_tie = tol.at("alpha_tie").get<double>();
        table.tolerances.horizon = tol.at("horizon").get<std::size_t>();
        table.tolerances.confirm_pairs = tol.at("confirm_pairs").get<std::size_t>();
        if (!j.at("saturated_at").is_null()) table.saturated_at = j.at("saturated_at").get<std::size_t>();
        table.columns = j.at("columns").get<std::vector<std::string>>();
        table.rows = j.at("steps").get<std::vector<std::vector<double>>>();
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("json trace: ") + e.what());
    }
}

std::string render(const TraceTable& table, Format format) {
    switch (format) {
        case Format::Csv: return to_csv(table);
        case Format::Json: return to_json(table);
        case Format::Svg: break;
    }
    throw IoError("traces are written as csv or json; use the figure command for svg");
}

void write_text(const std::filesystem::path& destination, std::string_view text) {
    std::error_code ec;
    if (destination.has_parent_path()) std::filesystem::create_directories(destination.parent_path(), ec);
    if (ec) throw IoError("cannot create " + destination.parent_path().string() + ": " + ec.message());
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + destination.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write to " + destination.string() + " failed");
}

void write_trace(const TraceTable& table, Format format, const std::filesystem::path& destination) {
    write_text(destination, render(table, format));
}

}  // namespace barypoly::io
