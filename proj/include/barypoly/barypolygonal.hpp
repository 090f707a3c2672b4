#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "barypoly/affine.hpp"
#include "barypoly/split.hpp"

namespace barypoly {

inline constexpr std::size_t kDefaultTraceCap = 10'000;
inline constexpr double kDefaultDiameterStop = 1e-12;

/// Parameters t_1..t_p, each strictly inside ]0;1[.
///
/// Each component is stored together with its complement 1 - t_k so that
/// parameters produced by the derived recurrence keep full relative
/// precision on both ends of the interval.
class ParamVector {
public:
    explicit ParamVector(std::vector<double> t);
    /// From explicit (t, 1 - t) pairs; both members must be positive.
    static ParamVector from_split(SplitVector<double> split);
    static ParamVector regular(std::size_t p, double t);

    std::size_t size() const noexcept { return split_.size(); }
    double operator[](std::size_t k) const { return split_.value[k]; }
    double complement(std::size_t k) const { return split_.complement[k]; }
    std::span<const double> values() const noexcept { return split_.value; }
    std::span<const double> complements() const noexcept { return split_.complement; }
    const SplitVector<double>& split() const noexcept { return split_; }

    /// max_k t_k - min_k t_k <= tolerance.
    bool is_regular(double tolerance = 0.0) const;

private:
    explicit ParamVector(SplitVector<double> split);
    SplitVector<double> split_;
};

struct PolygonTrace {
    std::vector<PointFamily> iterates;
    ParamVector params;
};

/// B_k = t_k A_k + (1 - t_k) A_{k+1}, indices cyclic.
PointFamily barypolygon_step(const PointFamily& current, const ParamVector& t);

/// iterates[0] = start, iterates[m+1] = barypolygon_step(iterates[m], t).
/// Throws when n + 1 exceeds `cap`; use `iterate_final` for long runs.
PolygonTrace iterate_sequence(const PointFamily& start, const ParamVector& t, std::size_t n,
                              std::size_t cap = kDefaultTraceCap);

/// Streaming variant: keeps only the latest family.
PointFamily iterate_final(const PointFamily& start, const ParamVector& t, std::size_t n);

struct StopResult {
    PointFamily family;
    std::size_t steps;
    bool converged;
};

/// Iterates until diameter < epsilon or `max_steps` is reached.
StopResult iterate_until_diameter(const PointFamily& start, const ParamVector& t,
                                  double epsilon = kDefaultDiameterStop,
                                  std::size_t max_steps = 1'000'000);

/// Product-form weights w_k = prod_{i != k} (1 - t_i).
std::vector<double> product_weights(const ParamVector& t);

/// Reciprocal-form weights 1 / (1 - t_k).
std::vector<double> reciprocal_weights(const ParamVector& t);

/// Limit of the t-barypolygonal sequence of `family`: the barycenter with
/// product-form weights. Weights are rescaled in log space so that the
/// largest equals 1, which keeps them representable when the t_k are
/// extremely close to 1.
AffinePoint limit_point(const PointFamily& family, const ParamVector& t);

/// max_k distance(B_k, target) for every iterate.
std::vector<double> convergence_gap(const PolygonTrace& trace, const AffinePoint& target);

}  // namespace barypoly
