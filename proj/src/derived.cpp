#include "barypoly/derived.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace barypoly {

namespace {

void require_p3(std::size_t p, const char* what) {
    if (p != 3) throw DomainError(std::string(what) + ": requires p = 3");
}

/// a <= b for two (value, complement) pairs, comparing whichever members
/// carry full relative precision.
bool split_le(double va, double ca, double vb, double cb) {
    if (va >= 0.5 && vb >= 0.5) return ca >= cb;
    return va <= vb;
}

/// b - a for two pairs with a <= b.
double split_diff(double va, double ca, double vb, double cb) {
    if (va >= 0.5 && vb >= 0.5) return ca - cb;
    return vb - va;
}

bool state_sorted(const ConjugateState& s) {
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (!split_le(s[k - 1], s.complement(k - 1), s[k], s.complement(k))) return false;
    }
    return true;
}

enum class Side { Below, Above, None };

Side side_of(const ConjugateState& s, double alpha, double tie) {
    bool below = true;
    bool above = true;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double u = s[k];
        if (std::abs(u - alpha) <= tie) return Side::None;
        below = below && u > 0.0 && u < alpha;
        above = above && u > alpha && s.complement(k) > 0.0;
    }
    if (below) return Side::Below;
    if (above) return Side::Above;
    return Side::None;
}

bool alternates(const ConjugateTrace& trace, std::size_t from, double alpha, double tie) {
    Side prev = side_of(trace.states[from], alpha, tie);
    if (prev == Side::None) return false;
    for (std::size_t m = from + 1; m < trace.states.size(); ++m) {
        const Side cur = side_of(trace.states[m], alpha, tie);
        if (cur == Side::None || cur == prev) return false;
        prev = cur;
    }
    return true;
}

Parity parity_from(Side side_at_m, std::size_t m) {
    const bool even_index = (m % 2 == 0);
    // Below alpha at an even index means the even subsequence tends to 0.
    return ((side_at_m == Side::Below) == even_index) ? Parity::EvenToZero : Parity::OddToZero;
}

/// Scalar pair (x, 1 - x) used by the tau sequence.
struct UnitPair {
    double x;
    double c;
};

UnitPair square_map(UnitPair a) { return {a.c * (1.0 + a.x), a.x * a.x}; }

}  // namespace

ParamVector derived_step(const ParamVector& t) {
    auto next = derived_advance(t.split());
    if (next.saturated()) throw DomainError("derived step saturated: a component rounds to 0 or 1");
    return ParamVector::from_split(std::move(next));
}

ConjugateState::ConjugateState(std::vector<double> u) : split_(SplitVector<double>::from_values(std::move(u))) {
    if (split_.size() < 2) throw DomainError("conjugate state needs p >= 2 components");
    for (double v : split_.value) {
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError("conjugate component outside [0;1]");
    }
}

ConjugateState ConjugateState::from_params(const ParamVector& t) { return from_split(t.split().swapped()); }

ConjugateState ConjugateState::from_split(SplitVector<double> split) {
    if (split.size() < 2 || split.complement.size() != split.size())
        throw DomainError("conjugate state needs p >= 2 components");
    for (std::size_t k = 0; k < split.size(); ++k) {
        if (!(split.value[k] >= 0.0 && split.complement[k] >= 0.0))
            throw DomainError("conjugate component outside [0;1]");
    }
    return ConjugateState(std::move(split));
}

ParamVector ConjugateState::to_params() const { return ParamVector::from_split(split_.swapped()); }

ConjugateState conjugate_step(const ConjugateState& u) {
    return ConjugateState::from_split(derived_advance(u.split().swapped()).swapped());
}

DerivedTrace derived_trace(const ParamVector& t0, std::size_t steps) {
    auto orbit = derived_orbit(t0.split(), steps);
    DerivedTrace trace;
    trace.params.reserve(orbit.states.size());
    for (auto& s : orbit.states) trace.params.push_back(ParamVector::from_split(std::move(s)));
    if (orbit.saturated_at >= 0) trace.saturated_at = static_cast<std::size_t>(orbit.saturated_at);
    return trace;
}

ConjugateTrace conjugate_trace(const ConjugateState& u0, std::size_t steps) {
    auto orbit = derived_orbit(u0.split().swapped(), steps);
    ConjugateTrace trace;
    trace.states.reserve(orbit.states.size());
    for (auto& s : orbit.states) trace.states.push_back(ConjugateState::from_split(s.swapped()));
    if (orbit.saturated_at >= 0) trace.saturated_at = static_cast<std::size_t>(orbit.saturated_at);
    return trace;
}

ConjugateTrace to_conjugate(const DerivedTrace& trace) {
    ConjugateTrace out;
    out.states.reserve(trace.params.size());
    for (const auto& t : trace.params) out.states.push_back(ConjugateState::from_params(t));
    out.saturated_at = trace.saturated_at;
    return out;
}

double solve_alpha(int p) {
    if (p < 2) throw DomainError("solve_alpha: requires p >= 2");
    const long double wide = solve_alpha_in<long double>(p);
    const auto residual = [p](double x) {
        const long double lx = x;
        return std::abs(detail::ipow(lx, p - 1) + lx - 1.0L);
    };
    // Round the extended-precision root, then keep the neighbour with the
    // smallest residual.
    double best = static_cast<double>(wide);
    for (double cand : {std::nextafter(best, 0.0), std::nextafter(best, 1.0)}) {
        if (residual(cand) < residual(best)) best = cand;
    }
    return best;
}

double eval_f(int p, double x) {
    if (p < 3) throw DomainError("eval_f: requires p >= 3");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eval_f: x outside [0;1]");
    return 1.0 - detail::ipow(x, p - 1);
}

double eval_h(int p, double x) {
    if (p < 3) throw DomainError("eval_h: requires p >= 3");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eval_h: x outside [0;1]");
    return 1.0 - x - detail::ipow(1.0 - detail::ipow(x, p - 1), p - 1);
}

double eval_h_prime(int p, double x) {
    if (p < 3) throw DomainError("eval_h_prime: requires p >= 3");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eval_h_prime: x outside [0;1]");
    const double q = static_cast<double>(p - 1);
    return -1.0 + q * q * detail::ipow(x, p - 2) * detail::ipow(1.0 - detail::ipow(x, p - 1), p - 2);
}

CriticalPoint critical_mu(int p) {
    if (p < 3) throw DomainError("critical_mu: requires p >= 3");
    const double theta = std::pow(1.0 / p, 1.0 / (p - 1));
    return {theta, eval_h_prime(p, theta)};
}

double sigma_residual3(const Triple& u) {
    return std::max({std::abs(1.0 - u[1] * u[2] - u[0]), std::abs(1.0 - u[0] * u[2] - u[1]),
                     std::abs(1.0 - u[0] * u[1] - u[2])});
}

StationaryPoints3 stationary_points3() {
    StationaryPoints3 out{};
    const double a = solve_alpha(3);
    out.alpha = a;
    out.conjugate = {Triple{1, 1, 0}, Triple{0, 1, 1}, Triple{1, 0, 1}, Triple{a, a, a}};
    for (std::size_t i = 0; i < 4; ++i) {
        const Triple& u = out.conjugate[i];
        out.derived[i] = {1.0 - u[0], 1.0 - u[1], 1.0 - u[2]};
        out.conjugate_residual[i] = sigma_residual3(u);
        const Triple& t = out.derived[i];
        out.derived_residual[i] =
            std::max({std::abs((1 - t[1]) * (1 - t[2]) - t[0]), std::abs((1 - t[0]) * (1 - t[2]) - t[1]),
                      std::abs((1 - t[0]) * (1 - t[1]) - t[2])});
    }
    return out;
}

Linearization3 jacobian_eigen3() {
    Linearization3 out{};
    const double a = solve_alpha(3);
    out.alpha = a;
    // d u'_i / d u_j = -prod_{l != i, j} u_l = -a for i != j.
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out.jacobian[i][j] = (i == j) ? 0.0 : -a;
    const auto& m = out.jacobian;
    const double trace = m[0][0] + m[1][1] + m[2][2];
    const double minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                          (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    out.charpoly = {-trace, minors, -det};
    out.expected_charpoly = {0.0, -3.0 * a * a, 2.0 * a * a * a};
    out.eigenvalues = {-2.0 * a, a, a};
    out.spectral_radius = 2.0 * a;
    return out;
}

std::string_view to_string(Dynamics d) {
    switch (d) {
        case Dynamics::Stationary: return "Stationary";
        case Dynamics::Periodic2: return "Periodic2";
        case Dynamics::AlternatingDivergent: return "AlternatingDivergent";
        case Dynamics::ConjecturedAlternating: return "ConjecturedAlternating";
    }
    return "?";
}

std::string_view to_string(Parity p) { return p == Parity::EvenToZero ? "even-to-zero" : "odd-to-zero"; }

std::optional<std::size_t> find_lockin(const ConjugateTrace& trace, double alpha, double tie,
                                       std::size_t confirm_pairs) {
    const std::size_t n = trace.states.size();
    for (std::size_t m = 0; m + 2 * confirm_pairs < n; ++m) {
        if (side_of(trace.states[m], alpha, tie) == Side::None) continue;
        if (alternates(trace, m, alpha, tie)) return m;
    }
    return std::nullopt;
}

bool alternates_from(const ConjugateTrace& trace, std::size_t from, double alpha) {
    if (from >= trace.states.size()) return false;
    return alternates(trace, from, alpha, 0.0);
}

DynamicsClass classify_dynamics(const ParamVector& t0, const Tolerances& tol) {
    const std::size_t p = t0.size();
    DynamicsClass out{};
    out.alpha = solve_alpha(static_cast<int>(p));

    const ConjugateTrace trace = conjugate_trace(ConjugateState::from_params(t0), tol.horizon);
    out.steps_examined = trace.states.size() - 1;
    out.saturated = trace.saturated_at.has_value();

    if (p == 2) {
        const double mismatch = std::abs(t0[1] - t0.complement(0));
        out.verdict = mismatch <= tol.stationarity ? Dynamics::Stationary : Dynamics::Periodic2;
        return out;
    }

    if (t0.is_regular(tol.regularity)) {
        const double u = t0.complement(0);
        if (std::abs(u - out.alpha) <= tol.stationarity) {
            out.verdict = Dynamics::Stationary;
            return out;
        }
        out.verdict = Dynamics::AlternatingDivergent;
        out.parity = u < out.alpha ? Parity::EvenToZero : Parity::OddToZero;
        out.lockin_index = 0;
        return out;
    }

    out.verdict = (p == 3) ? Dynamics::AlternatingDivergent : Dynamics::ConjecturedAlternating;
    out.lockin_index = find_lockin(trace, out.alpha, tol.alpha_tie, tol.confirm_pairs);
    if (out.lockin_index) {
        const Side s = side_of(trace.states[*out.lockin_index], out.alpha, tol.alpha_tie);
        out.parity = parity_from(s, *out.lockin_index);
    }
    return out;
}

bool order_check(const ConjugateTrace& trace) {
    if (trace.states.empty()) return true;
    require_p3(trace.states.front().size(), "order_check");
    if (!state_sorted(trace.states.front())) throw DomainError("order_check: initial state must be sorted ascending");
    return std::all_of(trace.states.begin(), trace.states.end(), state_sorted);
}

RatioBoundReport ratio_bound_check(const ConjugateTrace& trace) {
    RatioBoundReport report;
    if (trace.states.empty()) return report;
    const auto& first = trace.states.front();
    require_p3(first.size(), "ratio_bound_check");
    if (!state_sorted(first)) throw DomainError("ratio_bound_check: initial state must be sorted ascending");

    const auto gap = [](const ConjugateState& s, std::size_t lo, std::size_t hi) {
        return split_diff(s[lo], s.complement(lo), s[hi], s.complement(hi)) / s[lo];
    };

    report.regular = gap(first, 0, 2) == 0.0;
    double prev_vu = 0.0;
    double prev_wv = 0.0;
    double prev_wu = 0.0;
    for (std::size_t m = 0, q = 0; m < trace.states.size(); m += 2, ++q) {
        const auto& s = trace.states[m];
        const double wu = gap(s, 0, 2);
        const double vu = gap(s, 0, 1);
        const double wv = gap(s, 1, 2);
        report.gaps.push_back(wu);
        if (report.regular) continue;

        if (wu == 0.0 && !report.resolution_floor) report.resolution_floor = q;
        if (!report.resolution_floor && !(wu > 0.0)) report.positive = false;

        const double bound = std::ldexp(report.gaps.front(), -static_cast<int>(q));
        const bool within = (q == 0) ? wu <= bound : wu < bound;
        if (!within) report.geometric_bound = false;

        if (q > 0 && (vu > prev_vu || wv > prev_wv || wu > prev_wu)) report.ratios_monotone = false;
        prev_vu = vu;
        prev_wv = wv;
        prev_wu = wu;
    }
    return report;
}

double km_cm_residual(const Triple& s) {
    const double u = s[0], v = s[1], w = s[2];
    const double u1 = 1.0 - v * w;
    const double v1 = 1.0 - u * w;
    const double w1 = 1.0 - u * v;
    const double u2 = 1.0 - v1 * w1;
    const double w2 = 1.0 - u1 * v1;
    const double k = v - u * v * w;
    const double c = u * w;
    return std::max(std::abs(u2 - (k * u + c)), std::abs(w2 - (k * w + c)));
}

double km_cm_residual(const ConjugateState& state) {
    require_p3(state.size(), "km_cm_residual");
    return km_cm_residual(Triple{state[0], state[1], state[2]});
}

TauReport tau_comparison(const ConjugateTrace& trace, std::size_t m0, double slack) {
    if (trace.states.empty()) throw DomainError("tau_comparison: empty trace");
    require_p3(trace.states.front().size(), "tau_comparison");
    if (m0 + 1 >= trace.states.size()) throw DomainError("tau_comparison: trace too short after m0");
    const double alpha = solve_alpha(3);
    const auto& start = trace.states[m0];
    for (std::size_t k = 0; k < 3; ++k) {
        if (!(start[k] > 0.0 && start[k] < alpha))
            throw DomainError("tau_comparison: state at m0 is not inside ]0;alpha[^3");
    }

    // Largest component of an even state, and the smallest of an odd state
    // through its complement (components there sit close to 1).
    const auto largest = [](const ConjugateState& s) {
        UnitPair best{s[0], s.complement(0)};
        for (std::size_t k = 1; k < s.size(); ++k)
            if (!split_le(s[k], s.complement(k), best.x, best.c)) best = {s[k], s.complement(k)};
        return best;
    };
    const auto smallest = [](const ConjugateState& s) {
        UnitPair best{s[0], s.complement(0)};
        for (std::size_t k = 1; k < s.size(); ++k)
            if (split_le(s[k], s.complement(k), best.x, best.c)) best = {s[k], s.complement(k)};
        return best;
    };

    const UnitPair w0 = largest(start);
    const UnitPair u1 = smallest(trace.states[m0 + 1]);
    const UnitPair fw = square_map(w0);
    UnitPair tau{};
    if (!split_le(u1.x, u1.c, fw.x, fw.c)) {
        tau = w0;
    } else {
        // f^{-1}(y) = sqrt(1 - y); 1 - sqrt(1 - y) = y / (1 + sqrt(1 - y)).
        const double r = std::sqrt(u1.c);
        tau = {r, u1.x / (1.0 + r)};
    }

    TauReport report;
    report.tau = tau.x;
    const auto note = [&](double violation, bool& flag) {
        if (violation > 0.0) {
            report.worst_violation = std::max(report.worst_violation, violation);
            if (violation > slack) flag = false;
        }
    };
    for (std::size_t m = m0; m < trace.states.size(); ++m) {
        const auto& s = trace.states[m];
        if ((m - m0) % 2 == 0) {
            // tau >= w on the side tending to 0.
            const UnitPair w = largest(s);
            note((w.x - tau.x) / w.x, report.upper_holds);
            ++report.pairs_checked;
        } else {
            // tau <= u on the side tending to 1, i.e. 1 - tau >= 1 - u.
            const UnitPair u = smallest(s);
            if (u.c > 0.0) note((u.c - tau.c) / u.c, report.lower_holds);
        }
        tau = square_map(tau);
    }
    return report;
}

}  // namespace barypoly
