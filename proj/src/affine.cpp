#include "barypoly/affine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace barypoly {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite coordinate");
    }
}

std::vector<double> flatten(const std::vector<AffinePoint>& points) {
    if (points.size() < 2) throw DomainError("point family needs at least 2 points");
    const std::size_t dim = points.front().dimension();
    std::vector<double> flat;
    flat.reserve(points.size() * dim);
    for (const auto& pt : points) {
        if (pt.dimension() != dim) throw DomainError("point family: dimension mismatch");
        flat.insert(flat.end(), pt.coords().begin(), pt.coords().end());
    }
    return flat;
}

}  // namespace

AffinePoint::AffinePoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("affine point needs dimension >= 1");
    require_finite(coords_, "affine point");
}

PointFamily PointFamily::unchecked(const std::vector<AffinePoint>& points) {
    const std::size_t dim = points.empty() ? 1 : points.front().dimension();
    return PointFamily(dim, flatten(points));
}

PointFamily PointFamily::make(const std::vector<AffinePoint>& points, double distinct_tolerance) {
    PointFamily family = unchecked(points);
    if (!(family.min_separation() > distinct_tolerance)) {
        throw DomainError("points not distinct");
    }
    return family;
}

PointFamily PointFamily::from_rows(std::size_t dimension, std::vector<double> flat) {
    if (dimension == 0) throw DomainError("affine point needs dimension >= 1");
    if (flat.size() % dimension != 0) throw DomainError("point family: ragged coordinate rows");
    if (flat.size() / dimension < 2) throw DomainError("point family needs at least 2 points");
    require_finite(flat, "point family");
    return PointFamily(dimension, std::move(flat));
}

AffinePoint PointFamily::point(std::size_t k) const {
    auto r = row(k);
    return AffinePoint(std::vector<double>(r.begin(), r.end()));
}

std::vector<AffinePoint> PointFamily::points() const {
    std::vector<AffinePoint> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) out.push_back(point(k));
    return out;
}

double PointFamily::min_separation() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) best = std::min(best, distance(row(i), row(j)));
    return best;
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw DomainError("weight vector is empty");
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("non-positive weight");
    }
}

double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("distance: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double distance(const AffinePoint& a, const AffinePoint& b) { return distance(a.coords(), b.coords()); }

AffinePoint barycenter(const PointFamily& family, const WeightVector& weights) {
    if (weights.size() != family.size()) throw DomainError("barycenter: weight count does not match family size");
    const auto w = weights.values();
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<double> out(family.dimension(), 0.0);
    for (std::size_t k = 0; k < family.size(); ++k) {
        const double lambda = w[k] / total;
        const auto r = family.row(k);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += lambda * r[i];
    }
    return AffinePoint(std::move(out));
}

AffinePoint centroid(const PointFamily& family) {
    return barycenter(family, WeightVector(std::vector<double>(family.size(), 1.0)));
}

double diameter(const PointFamily& family) {
    double best = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            best = std::max(best, distance(family.row(i), family.row(j)));
    return best;
}

}  // namespace barypoly
