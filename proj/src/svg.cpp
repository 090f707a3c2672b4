#include <algorithm>
#include <cstdio>
#include <limits>

#include "barypoly/io.hpp"

namespace barypoly::io {

namespace {

struct Frame {
    double min_x, max_y, scale, width, height;

    static Frame around(const PointFamily& family, double size_px) {
        double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
        double lo_y = lo_x, hi_y = -lo_x;
        for (std::size_t k = 0; k < family.size(); ++k) {
            const auto r = family.row(k);
            lo_x = std::min(lo_x, r[0]);
            hi_x = std::max(hi_x, r[0]);
            lo_y = std::min(lo_y, r[1]);
            hi_y = std::max(hi_y, r[1]);
        }
        double span_x = hi_x - lo_x;
        double span_y = hi_y - lo_y;
        if (span_x <= 0.0) span_x = std::max(span_y, 1.0);
        if (span_y <= 0.0) span_y = span_x;
        // 5% margin on each side.
        const double mx = 0.05 * span_x;
        const double my = 0.05 * span_y;
        lo_x -= mx;
        hi_y += my;
        span_x += 2 * mx;
        span_y += 2 * my;
        const double scale = size_px / std::max(span_x, span_y);
        return {lo_x, hi_y, scale, span_x * scale, span_y * scale};
    }

    double x(double v) const { return (v - min_x) * scale; }
    double y(double v) const { return (max_y - v) * scale; }
};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string grade(std::size_t i, std::size_t n) {
    const double s = n <= 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    const auto mix = [s](int a, int b) { return static_cast<int>(a + (b - a) * s + 0.5); };
    char buf[32];
    std::snprintf(buf, sizeof buf, "rgb(%d,%d,%d)", mix(31, 192), mix(78, 57), mix(121, 43));
    return buf;
}

std::string header(const Frame& f, const std::string& title) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + px(f.width) + "\" height=\"" +
           px(f.height) + "\" viewBox=\"0 0 " + px(f.width) + " " + px(f.height) + "\">\n";
    if (!title.empty()) {
        std::string escaped;
        for (char c : title) {
            if (c == '<') escaped += "&lt;";
            else if (c == '>') escaped += "&gt;";
            else if (c == '&') escaped += "&amp;";
            else escaped += c;
        }
        out += "  <title>" + escaped + "</title>\n";
    }
    out += "  <rect x=\"0\" y=\"0\" width=\"" + px(f.width) + "\" height=\"" + px(f.height) + "\" fill=\"white\"/>\n";
    return out;
}

std::string points_attr(const Frame& f, const PointFamily& family) {
    std::string pts;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto r = family.row(k);
        if (k) pts += ' ';
        pts += px(f.x(r[0])) + "," + px(f.y(r[1]));
    }
    return pts;
}

std::string marker(const Frame& f, const AffinePoint& at, double radius, const char* fill) {
    return "  <circle cx=\"" + px(f.x(at[0])) + "\" cy=\"" + px(f.y(at[1])) + "\" r=\"" + px(radius) +
           "\" fill=\"" + fill + "\"/>\n";
}

void require_planar(std::size_t d) {
    if (d != 2) throw DomainError("emit_svg: planar (d = 2) input required");
}

}  // namespace

std::string emit_svg(const PolygonTrace& trace, const SvgStyle& style) {
    const auto& first = trace.iterates.front();
    require_planar(first.dimension());
    const Frame f = Frame::around(first, style.size_px);
    std::string out = header(f, style.title);
    const std::size_t n = trace.iterates.size();
    for (std::size_t i = 0; i < n; ++i) {
        out += "  <polygon points=\"" + points_attr(f, trace.iterates[i]) + "\" fill=\"none\" stroke=\"" +
               grade(i, n) + "\" stroke-width=\"" + px(style.stroke_px) + "\"/>\n";
    }
    out += marker(f, limit_point(first, trace.params), style.marker_px, "black");
    out += "</svg>\n";
    return out;
}

std::string emit_svg(const DualTrace& trace, const SvgStyle& style) {
    require_planar(trace.family.dimension());
    const Frame f = Frame::around(trace.family, style.size_px);
    std::string out = header(f, style.title);
    out += "  <polygon points=\"" + points_attr(f, trace.family) + "\" fill=\"none\" stroke=\"gray\" stroke-width=\"" +
           px(style.stroke_px) + "\"/>\n";
    if (!trace.points.empty()) {
        std::string path;
        for (std::size_t m = 0; m < trace.points.size(); ++m) {
            if (m) path += ' ';
            path += px(f.x(trace.points[m][0])) + "," + px(f.y(trace.points[m][1]));
        }
        out += "  <polyline points=\"" + path + "\" fill=\"none\" stroke=\"silver\" stroke-width=\"" +
               px(style.stroke_px * 0.5) + "\"/>\n";
        for (std::size_t m = 0; m < trace.points.size(); ++m)
            out += marker(f, trace.points[m], style.marker_px * 0.6, grade(m, trace.points.size()).c_str());
    }
    out += marker(f, trace.centroid, style.marker_px, "black");
    out += "</svg>\n";
    return out;
}

}  // namespace barypoly::io
