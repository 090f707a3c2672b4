#include "barypoly/barypolygonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "barypoly/kernels.hpp"

namespace barypoly {

namespace {

// Below this many coordinates the OpenMP fork costs more than the step.
constexpr std::size_t kParallelStepThreshold = 1u << 15;

void require_match(const PointFamily& family, const ParamVector& t) {
    if (family.size() != t.size()) {
        throw DomainError("parameter count " + std::to_string(t.size()) + " does not match family size " +
                          std::to_string(family.size()));
    }
}

}  // namespace

ParamVector::ParamVector(std::vector<double> t) : ParamVector(SplitVector<double>::from_values(std::move(t))) {
    for (double v : split_.value) {
        if (!(v > 0.0 && v < 1.0)) throw DomainError("parameter out of open interval ]0;1[");
    }
}

ParamVector::ParamVector(SplitVector<double> split) : split_(std::move(split)) {
    if (split_.size() < 2) throw DomainError("parameter vector needs p >= 2 components");
    if (split_.complement.size() != split_.value.size()) throw DomainError("parameter split: length mismatch");
}

ParamVector ParamVector::from_split(SplitVector<double> split) {
    ParamVector out(std::move(split));
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double v = out.split_.value[k];
        const double c = out.split_.complement[k];
        if (!(v > 0.0 && c > 0.0 && v <= 1.0 && c <= 1.0)) {
            throw DomainError("parameter out of open interval ]0;1[");
        }
    }
    return out;
}

ParamVector ParamVector::regular(std::size_t p, double t) { return ParamVector(std::vector<double>(p, t)); }

bool ParamVector::is_regular(double tolerance) const {
    const auto spread = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    // Components near 1 are only told apart by their complements.
    return spread(split_.value) <= tolerance && spread(split_.complement) <= tolerance;
}

PointFamily barypolygon_step(const PointFamily& current, const ParamVector& t) {
    require_match(current, t);
    std::vector<double> out(current.flat().size());
    const kernels::FamilyView view{current.flat(), current.dimension()};
    if (out.size() >= kParallelStepThreshold)
        kernels::parallel::barypolygon_step(view, t.values(), t.complements(), out);
    else
        kernels::serial::barypolygon_step(view, t.values(), t.complements(), out);
    return PointFamily::from_rows(current.dimension(), std::move(out));
}

PolygonTrace iterate_sequence(const PointFamily& start, const ParamVector& t, std::size_t n, std::size_t cap) {
    require_match(start, t);
    if (n + 1 > cap) {
        throw DomainError("trace of " + std::to_string(n + 1) + " iterates exceeds cap " + std::to_string(cap));
    }
    PolygonTrace trace{{start}, t};
    trace.iterates.reserve(n + 1);
    for (std::size_t m = 0; m < n; ++m) trace.iterates.push_back(barypolygon_step(trace.iterates.back(), t));
    return trace;
}

PointFamily iterate_final(const PointFamily& start, const ParamVector& t, std::size_t n) {
    require_match(start, t);
    PointFamily current = start;
    for (std::size_t m = 0; m < n; ++m) current = barypolygon_step(current, t);
    return current;
}

StopResult iterate_until_diameter(const PointFamily& start, const ParamVector& t, double epsilon,
                                  std::size_t max_steps) {
    require_match(start, t);
    PointFamily current = start;
    std::size_t steps = 0;
    while (!(diameter(current) < epsilon)) {
        if (steps == max_steps) return {std::move(current), steps, false};
        current = barypolygon_step(current, t);
        ++steps;
    }
    return {std::move(current), steps, true};
}

std::vector<double> product_weights(const ParamVector& t) {
    std::vector<double> w(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        double prod = 1.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (i != k) prod *= t.complement(i);
        w[k] = prod;
    }
    return w;
}

std::vector<double> reciprocal_weights(const ParamVector& t) {
    std::vector<double> w(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) w[k] = 1.0 / t.complement(k);
    return w;
}

AffinePoint limit_point(const PointFamily& family, const ParamVector& t) {
    require_match(family, t);
    const std::size_t p = t.size();
    std::vector<double> logs(p);
    for (std::size_t k = 0; k < p; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            if (i != k) s += detail::log_complement(t[i], t.complement(i));
        logs[k] = s;
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    std::vector<double> w(p);
    for (std::size_t k = 0; k < p; ++k) w[k] = std::exp(logs[k] - top);
    return barycenter(family, WeightVector(std::move(w)));
}

std::vector<double> convergence_gap(const PolygonTrace& trace, const AffinePoint& target) {
    std::vector<double> gaps;
    gaps.reserve(trace.iterates.size());
    for (const auto& family : trace.iterates) {
        if (family.dimension() != target.dimension()) throw DomainError("convergence_gap: dimension mismatch");
        double worst = 0.0;
        for (std::size_t k = 0; k < family.size(); ++k)
            worst = std::max(worst, distance(family.row(k), target.coords()));
        gaps.push_back(worst);
    }
    return gaps;
}

}  // namespace barypoly
