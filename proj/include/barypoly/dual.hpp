#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "barypoly/affine.hpp"
#include "barypoly/barypolygonal.hpp"
#include "barypoly/derived.hpp"

namespace barypoly {

/// G_m for a single parameter vector: the limit of the t_m-barypolygonal
/// sequence of `family`.
AffinePoint dual_point(const PointFamily& family, const ParamVector& t_m);

struct DualTrace {
    std::vector<AffinePoint> points;
    /// distance(G_m, centroid(family)).
    std::vector<double> distances;
    DerivedTrace params_used;
    PointFamily family;
    AffinePoint centroid;
};

/// G_0 .. G_M; shorter when the derived trace saturates.
DualTrace dual_trace(const PointFamily& family, const ParamVector& t0, std::size_t steps);

inline constexpr double kCentroidReachedThreshold = 1e-6;

struct CentroidConvergenceReport {
    std::vector<double> distances;
    /// First m with d_m < 1e-6.
    std::optional<std::size_t> first_below;
    /// Every d_m within 1e-12: the dual is stationary at the centroid.
    bool immediate = false;
    /// Least-squares slope of log d_m against m over the points above the
    /// floor, exponentiated; empty when fewer than two usable points.
    std::optional<double> fitted_rate;
    /// Largest d_{m+2}/d_m once d_m < 0.1 d_0 (0 when no such pair).
    double worst_two_step_ratio = 0.0;
    /// Irregular start with p >= 4: convergence is only conjectured.
    bool conjectured = false;
};

/// Floor below which distances are treated as fully converged for the fit.
inline constexpr double kDistanceFloor = 1e-300;

CentroidConvergenceReport centroid_convergence_report(const DualTrace& trace);

/// True when distances[m+1] <= distances[m] for every m >= from.
bool nonincreasing_from(const std::vector<double>& distances, std::size_t from);

}  // namespace barypoly
