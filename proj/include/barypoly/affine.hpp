#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "barypoly/error.hpp"

namespace barypoly {

inline constexpr double kDefaultDistinctTolerance = 1e-12;

/// A point of a real affine space of finite dimension d >= 1.
class AffinePoint {
public:
    explicit AffinePoint(std::vector<double> coords);

    std::size_t dimension() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    friend bool operator==(const AffinePoint&, const AffinePoint&) = default;

private:
    std::vector<double> coords_;
};

/// Ordered family of p >= 2 points sharing one dimension, stored row-major.
///
/// `make` enforces pairwise distinctness (up to a tolerance); `unchecked`
/// only enforces shape, which is what iterates of the barypolygon step need
/// since they may nearly coincide close to the limit.
class PointFamily {
public:
    static PointFamily make(const std::vector<AffinePoint>& points,
                            double distinct_tolerance = kDefaultDistinctTolerance);
    static PointFamily unchecked(const std::vector<AffinePoint>& points);
    static PointFamily from_rows(std::size_t dimension, std::vector<double> flat);

    std::size_t size() const noexcept { return data_.size() / dim_; }
    std::size_t dimension() const noexcept { return dim_; }

    std::span<const double> row(std::size_t k) const { return {data_.data() + k * dim_, dim_}; }
    AffinePoint point(std::size_t k) const;
    std::vector<AffinePoint> points() const;
    std::span<const double> flat() const noexcept { return data_; }

    /// Smallest pairwise Euclidean distance.
    double min_separation() const;

    friend bool operator==(const PointFamily&, const PointFamily&) = default;

private:
    PointFamily(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {}

    std::size_t dim_;
    std::vector<double> data_;
};

/// Strictly positive barycentric coefficients.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> values() const noexcept { return weights_; }

private:
    std::vector<double> weights_;
};

double distance(std::span<const double> a, std::span<const double> b);
double distance(const AffinePoint& a, const AffinePoint& b);

/// Weighted barycenter; weights are normalized by their sum before combining.
AffinePoint barycenter(const PointFamily& family, const WeightVector& weights);

AffinePoint centroid(const PointFamily& family);

/// Largest pairwise distance (0 for a family of coincident points).
double diameter(const PointFamily& family);

}  // namespace barypoly
