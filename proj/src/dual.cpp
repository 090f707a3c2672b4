#include "barypoly/dual.hpp"

#include <algorithm>
#include <cmath>

namespace barypoly {

AffinePoint dual_point(const PointFamily& family, const ParamVector& t_m) { return limit_point(family, t_m); }

DualTrace dual_trace(const PointFamily& family, const ParamVector& t0, std::size_t steps) {
    DerivedTrace params = derived_trace(t0, steps);
    AffinePoint g = centroid(family);
    std::vector<AffinePoint> points;
    std::vector<double> distances;
    points.reserve(params.params.size());
    distances.reserve(params.params.size());
    for (const auto& t : params.params) {
        points.push_back(dual_point(family, t));
        distances.push_back(distance(points.back(), g));
    }
    return {std::move(points), std::move(distances), std::move(params), family, std::move(g)};
}

CentroidConvergenceReport centroid_convergence_report(const DualTrace& trace) {
    CentroidConvergenceReport report;
    report.distances = trace.distances;
    const auto& d = report.distances;
    if (d.empty()) return report;

    const auto& t0 = trace.params_used.params.front();
    const std::size_t p = t0.size();
    if (p < 3 && !t0.is_regular()) throw DomainError("centroid_convergence_report: requires p >= 3 or a regular start");
    report.conjectured = p >= 4 && !t0.is_regular(1e-12);

    for (std::size_t m = 0; m < d.size(); ++m) {
        if (d[m] < kCentroidReachedThreshold) {
            report.first_below = m;
            break;
        }
    }
    report.immediate = std::all_of(d.begin(), d.end(), [](double x) { return x <= 1e-12; });

    if (!report.immediate) {
        double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t m = 0; m < d.size(); ++m) {
            if (!(d[m] > kDistanceFloor)) continue;
            const double x = static_cast<double>(m);
            const double y = std::log(d[m]);
            n += 1;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = n * sxx - sx * sx;
        if (n >= 2 && denom != 0.0) report.fitted_rate = std::exp((n * sxy - sx * sy) / denom);
    }

    for (std::size_t m = 0; m + 2 < d.size(); ++m) {
        if (d[m] < 0.1 * d[0] && d[m] > 0.0)
            report.worst_two_step_ratio = std::max(report.worst_two_step_ratio, d[m + 2] / d[m]);
    }
    return report;
}

bool nonincreasing_from(const std::vector<double>& distances, std::size_t from) {
    for (std::size_t m = from; m + 1 < distances.size(); ++m) {
        if (distances[m + 1] > distances[m]) return false;
    }
    return true;
}

}  // namespace barypoly
