#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "barypoly/affine.hpp"
#include "barypoly/barypolygonal.hpp"
#include "barypoly/derived.hpp"
#include "barypoly/dual.hpp"

namespace barypoly::io {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Where the point family comes from.
struct PointSource {
    enum class Kind { Explicit, RegularPolygon, Random };
    Kind kind = Kind::Explicit;
    std::vector<std::vector<double>> rows;  // Explicit
    std::size_t count = 0;                  // RegularPolygon, Random
    std::size_t dimension = 2;              // Random
    double radius = 1.0;                    // RegularPolygon

    friend bool operator==(const PointSource&, const PointSource&) = default;
};

enum class Format { Csv, Json, Svg };

struct OutputSpec {
    Format format = Format::Csv;
    std::string path;  // empty: no file

    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct SimulationConfig {
    std::optional<PointSource> points;
    std::vector<double> t;  // broadcast to p components when it has one entry
    std::optional<std::size_t> p;
    std::size_t iterations = 50;
    Tolerances tolerances;
    OutputSpec output;

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

struct ConfigResult {
    std::optional<SimulationConfig> config;
    /// Every validation failure found, not only the first.
    std::vector<std::string> errors;
    bool ok() const { return config.has_value(); }
};

/// Parses and validates a JSON configuration document.
///
/// Accepted keys: "points" (array of coordinate rows, or an object
/// {"generator": "regular"|"random", "count", "dimension", "radius"}),
/// "t" (numbers or strings such as "1/61"), "p" (component count used to
/// broadcast a single t when no points are given), "iterations",
/// "tolerances" {"stationarity", "periodicity", "regularity",
/// "root_residual", "alpha_tie", "horizon", "confirm_pairs"} and
/// "output" {"format": "csv"|"json"|"svg", "path"}.
ConfigResult parse_config(std::string_view text);

/// JSON document that `parse_config` maps back to an equal configuration.
std::string serialize_config(const SimulationConfig& config);

/// Parses "0.25", "1/61", "-3e-2" exactly as written; fractions divide two
/// decimal numbers once.
std::optional<double> parse_number(std::string_view text);

std::uint64_t seed_from_env();
PointFamily resolve_family(const PointSource& source, std::uint64_t seed);
ParamVector resolve_params(const SimulationConfig& config, std::size_t p);

/// Shortest-but-complete decimal form: 17 significant digits.
std::string format_number(double value);

/// Flat tabular form shared by all traces.
struct TraceTable {
    std::string kind;  // "polygon", "derived" or "dual"
    std::size_t p = 0;
    std::size_t d = 0;
    std::vector<double> t0;
    Tolerances tolerances;
    std::optional<std::size_t> saturated_at;
    std::vector<std::string> columns;  // after the leading "step" column
    std::vector<std::vector<double>> rows;
};

TraceTable to_table(const PolygonTrace& trace);
TraceTable to_table(const DerivedTrace& trace, const Tolerances& tol = {});
TraceTable to_table(const DualTrace& trace, const Tolerances& tol = {});

std::string to_csv(const TraceTable& table);
std::string to_json(const TraceTable& table);
/// CSV carries only the columns and rows; the metadata fields stay empty.
TraceTable table_from_csv(std::string_view text);
TraceTable table_from_json(std::string_view text);

std::string render(const TraceTable& table, Format format);
void write_text(const std::filesystem::path& destination, std::string_view text);
void write_trace(const TraceTable& table, Format format, const std::filesystem::path& destination);

struct SvgStyle {
    double size_px = 800.0;
    double stroke_px = 1.0;
    double marker_px = 3.0;
    std::string title;
};

/// Nested polygons of a planar trace, graded from the first to the last
/// iterate, with the limit point marked.
std::string emit_svg(const PolygonTrace& trace, const SvgStyle& style = {});
/// The family, the dual points G_m joined in order, and the centroid.
std::string emit_svg(const DualTrace& trace, const SvgStyle& style = {});

}  // namespace barypoly::io
