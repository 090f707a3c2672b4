#pragma once

// Precision-generic core of the derived recurrence
//
//     t'_k = prod_{i != k} (1 - t_i)
//
// Every component is carried as a pair (value, complement) with
// value + complement == 1 in exact arithmetic. Products are formed from
// whichever member of the pair is known to full relative precision, so
// components drifting towards 0 *and* towards 1 both stay resolvable until
// one side genuinely underflows.

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include <boost/math/special_functions/expm1.hpp>
#include <boost/math/special_functions/log1p.hpp>

namespace barypoly {

template <class Real>
struct SplitVector {
    std::vector<Real> value;
    std::vector<Real> complement;

    static SplitVector from_values(std::vector<Real> v) {
        SplitVector s;
        s.complement.reserve(v.size());
        for (const Real& x : v) s.complement.push_back(Real(1) - x);
        s.value = std::move(v);
        return s;
    }

    /// Same pairs with the roles of value and complement exchanged.
    SplitVector swapped() const { return {complement, value}; }

    std::size_t size() const noexcept { return value.size(); }

    /// True once any component has lost its representation (one side of a
    /// pair is exactly 0).
    bool saturated() const {
        for (std::size_t k = 0; k < size(); ++k) {
            if (value[k] == Real(0) || complement[k] == Real(0)) return true;
        }
        return false;
    }
};

namespace detail {

template <class Real>
Real log1p_(const Real& x) {
    if constexpr (std::is_floating_point_v<Real>) return std::log1p(x);
    else return boost::math::log1p(x);
}

template <class Real>
Real expm1_(const Real& x) {
    if constexpr (std::is_floating_point_v<Real>) return std::expm1(x);
    else {
        using std::isinf;
        if (isinf(x)) return x < 0 ? Real(-1) : x;
        return boost::math::expm1(x);
    }
}

template <class Real>
Real log_(const Real& x) {
    using std::log;
    return log(x);
}

/// log(1 - v) from a pair (v, c = 1 - v), using the accurate member.
template <class Real>
Real log_complement(const Real& v, const Real& c) {
    return v < Real(0.5) ? log1p_(-v) : log_(c);
}

template <class Real>
Real ipow(Real x, int n) {
    Real r(1);
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace detail

/// One step of the derived recurrence on (t, 1 - t) pairs.
///
/// Products skip index k in ascending order, so a regular input yields
/// bitwise identical components.
template <class Real>
SplitVector<Real> derived_advance(const SplitVector<Real>& s) {
    const std::size_t p = s.size();
    SplitVector<Real> out;
    out.value.resize(p);
    out.complement.resize(p);
    if (p == 2) {
        // t'_1 = 1 - t_2 and t'_2 = 1 - t_1: an exact swap.
        out.value = {s.complement[1], s.complement[0]};
        out.complement = {s.value[1], s.value[0]};
        return out;
    }
    for (std::size_t k = 0; k < p; ++k) {
        Real prod(1);
        for (std::size_t i = 0; i < p; ++i)
            if (i != k) prod *= s.complement[i];
        out.value[k] = prod;
        if (prod <= Real(0.5)) {
            out.complement[k] = Real(1) - prod;
        } else {
            Real sum(0);
            for (std::size_t i = 0; i < p; ++i)
                if (i != k) sum += detail::log_complement(s.value[i], s.complement[i]);
            out.complement[k] = -detail::expm1_(sum);
        }
    }
    return out;
}

/// Orbit t^(0), ..., t^(M); stops after the first saturated state, which is
/// reported through `saturated_at` and not included.
template <class Real>
struct SplitOrbit {
    std::vector<SplitVector<Real>> states;
    std::ptrdiff_t saturated_at = -1;
};

template <class Real>
SplitOrbit<Real> derived_orbit(SplitVector<Real> start, std::size_t steps) {
    SplitOrbit<Real> orbit;
    orbit.states.reserve(steps + 1);
    orbit.states.push_back(std::move(start));
    for (std::size_t m = 1; m <= steps; ++m) {
        SplitVector<Real> next = derived_advance(orbit.states.back());
        if (next.saturated()) {
            orbit.saturated_at = static_cast<std::ptrdiff_t>(m);
            break;
        }
        orbit.states.push_back(std::move(next));
    }
    return orbit;
}

/// Root of x^(p-1) + x - 1 on [0, 1]: bisection to a narrow bracket, then
/// Newton in the same scalar type.
template <class Real>
Real solve_alpha_in(int p) {
    const auto g = [p](const Real& x) { return detail::ipow(x, p - 1) + x - Real(1); };
    Real lo(0), hi(1);
    for (int i = 0; i < 40; ++i) {
        Real mid = (lo + hi) / 2;
        if (g(mid) < Real(0)) lo = mid;
        else hi = mid;
    }
    Real x = (lo + hi) / 2;
    for (int i = 0; i < 12; ++i) {
        const Real slope = Real(p - 1) * detail::ipow(x, p - 2) + Real(1);
        x -= g(x) / slope;
    }
    return x;
}

}  // namespace barypoly
