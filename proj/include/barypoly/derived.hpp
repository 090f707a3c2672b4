#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "barypoly/barypolygonal.hpp"
#include "barypoly/split.hpp"

namespace barypoly {

struct Tolerances {
    double stationarity = 1e-9;
    double periodicity = 1e-9;
    double regularity = 1e-12;
    double root_residual = 1e-14;
    /// A conjugate component this close to alpha blocks lock-in at that index.
    double alpha_tie = 1e-15;
    std::size_t horizon = 200;
    std::size_t confirm_pairs = 3;

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// t'_k = prod_{i != k} (1 - t_i). Throws if the result leaves ]0;1[ in the
/// working precision (see `derived_trace` for the saturating variant).
ParamVector derived_step(const ParamVector& t);

/// State u = 1 - t of the conjugate system. Components may sit on the
/// closed interval [0, 1] so that the boundary fixed points are expressible.
class ConjugateState {
public:
    explicit ConjugateState(std::vector<double> u);
    static ConjugateState from_params(const ParamVector& t);
    /// Pairs (u, 1 - u).
    static ConjugateState from_split(SplitVector<double> split);

    std::size_t size() const noexcept { return split_.size(); }
    double operator[](std::size_t k) const { return split_.value[k]; }
    /// 1 - u_k, i.e. the corresponding derived parameter t_k.
    double complement(std::size_t k) const { return split_.complement[k]; }
    std::span<const double> values() const noexcept { return split_.value; }
    const SplitVector<double>& split() const noexcept { return split_; }

    ParamVector to_params() const;

private:
    explicit ConjugateState(SplitVector<double> split) : split_(std::move(split)) {}
    SplitVector<double> split_;
};

/// u'_k = 1 - prod_{i != k} u_i.
ConjugateState conjugate_step(const ConjugateState& u);

struct DerivedTrace {
    std::vector<ParamVector> params;
    /// First index whose state could no longer be represented strictly
    /// inside ]0;1[; that state is not stored.
    std::optional<std::size_t> saturated_at;
};

DerivedTrace derived_trace(const ParamVector& t0, std::size_t steps);

struct ConjugateTrace {
    std::vector<ConjugateState> states;
    std::optional<std::size_t> saturated_at;
};

ConjugateTrace conjugate_trace(const ConjugateState& u0, std::size_t steps);
ConjugateTrace to_conjugate(const DerivedTrace& trace);

/// Unique root in [0,1] of x^(p-1) + x - 1.
double solve_alpha(int p);

/// f_p(x) = 1 - x^(p-1), for p >= 3 and x in [0,1].
double eval_f(int p, double x);
/// h_p(x) = f_p(f_p(x)) - x = 1 - x - (1 - x^(p-1))^(p-1).
double eval_h(int p, double x);
/// h_p'(x) = -1 + (p-1)^2 x^(p-2) (1 - x^(p-1))^(p-2).
double eval_h_prime(int p, double x);

struct CriticalPoint {
    double theta;  // (1/p)^(1/(p-1)), where h_p' is maximal
    double mu;     // h_p'(theta)
};

CriticalPoint critical_mu(int p);

using Triple = std::array<double, 3>;

/// Stationary points of the p = 3 systems and their one-step residuals.
struct StationaryPoints3 {
    double alpha;
    std::array<Triple, 4> conjugate;  // (1,1,0), (0,1,1), (1,0,1), (a,a,a)
    std::array<Triple, 4> derived;    // (0,0,1), (1,0,0), (0,1,0), (1-a,1-a,1-a)
    std::array<double, 4> conjugate_residual;
    std::array<double, 4> derived_residual;
};

StationaryPoints3 stationary_points3();

/// Linearization of (Sigma) at (a,a,a) for p = 3.
struct Linearization3 {
    double alpha;
    std::array<Triple, 3> jacobian;
    /// Monic characteristic polynomial X^3 + c[0] X^2 + c[1] X + c[2],
    /// computed from the matrix entries.
    Triple charpoly;
    /// Expansion of (X - a)^2 (X + 2a) in the same layout.
    Triple expected_charpoly;
    Triple eigenvalues;  // {-2a, a, a}
    double spectral_radius;
};

Linearization3 jacobian_eigen3();

/// Max-norm one-step residual of (Sigma) at u (p = 3), plain arithmetic.
double sigma_residual3(const Triple& u);

enum class Dynamics { Stationary, Periodic2, AlternatingDivergent, ConjecturedAlternating };

/// Which parity of the conjugate sequence u tends to 0.
enum class Parity { EvenToZero, OddToZero };

std::string_view to_string(Dynamics d);
std::string_view to_string(Parity p);

struct DynamicsClass {
    Dynamics verdict;
    std::optional<Parity> parity;
    std::optional<std::size_t> lockin_index;
    double alpha;
    bool saturated = false;
    /// Number of derived steps actually available for the decision.
    std::size_t steps_examined = 0;
};

DynamicsClass classify_dynamics(const ParamVector& t0, const Tolerances& tol = {});

/// First m such that every component of state m lies strictly on one side
/// of alpha (none within `tie` of it) and the states then alternate sides
/// for at least `confirm_pairs` full pairs, or up to the end of the trace.
std::optional<std::size_t> find_lockin(const ConjugateTrace& trace, double alpha, double tie,
                                       std::size_t confirm_pairs);

/// True when every state from `from` on lies in ]0,a[^p or ]a,1[^p and the
/// side flips at every step.
bool alternates_from(const ConjugateTrace& trace, std::size_t from, double alpha);

/// Sort order u <= v <= w of the initial state is kept at every step (p = 3).
bool order_check(const ConjugateTrace& trace);

struct RatioBoundReport {
    bool regular = false;
    /// w_{2q}/u_{2q} - 1 for every even index available.
    std::vector<double> gaps;
    /// First q where the gap rounds to zero although the start is irregular:
    /// the ratio is no longer resolvable in the working precision and the
    /// strict positivity check stops there.
    std::optional<std::size_t> resolution_floor;
    bool positive = true;
    bool geometric_bound = true;
    bool ratios_monotone = true;
    bool holds() const { return positive && geometric_bound && ratios_monotone; }
};

/// Checks 0 < w_{2q}/u_{2q} - 1 < (1/2)^q (w_0/u_0 - 1) and the monotone
/// decrease of the three even-index ratios (p = 3, sorted start).
RatioBoundReport ratio_bound_check(const ConjugateTrace& trace);

/// Two-step identities u_{m+2} = K u + C and w_{m+2} = K w + C with
/// K = v - u v w and C = u w: returns the largest absolute discrepancy
/// against the directly iterated values.
double km_cm_residual(const ConjugateState& state);
double km_cm_residual(const Triple& u);

struct TauReport {
    double tau = 0.0;
    std::size_t pairs_checked = 0;
    /// tau_{m0+2q} >= w_{m0+2q} for all checked q.
    bool upper_holds = true;
    /// tau_{m0+2q+1} <= u_{m0+2q+1} for all checked q.
    bool lower_holds = true;
    /// Largest relative violation seen (0 when all inequalities are strict or exact).
    double worst_violation = 0.0;
    bool holds() const { return upper_holds && lower_holds; }
};

/// Comparison with tau_{m+1} = 1 - tau_m^2 starting at m0, where state m0
/// lies in ]0,a[^3. `slack` is the relative rounding allowance.
TauReport tau_comparison(const ConjugateTrace& trace, std::size_t m0, double slack = 1e-12);

}  // namespace barypoly
