// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "barypoly/cli.hpp"
#include "barypoly/derived.hpp"
#include "barypoly/dual.hpp"
#include "barypoly/io.hpp"
#include "barypoly/kernels.hpp"
#include "support.hpp"

using namespace barypoly;

namespace {

// Tolerances of the criteria.
constexpr double kConvergenceGap = 1e-8;
constexpr double kConvergenceSeconds = 5.0;
constexpr double kWeightRelative = 1e-12;
constexpr double kAlpha3 = 1e-12;
constexpr double kAlpha2 = 1e-14;
constexpr double kRootResidual = 1e-14;
constexpr double kPeriodic = 1e-12;
constexpr double kStationaryBand = 1e-9;
constexpr double kFixedResidual = 1e-12;
constexpr double kGridThreshold = 1e-3;
constexpr double kCharpoly = 1e-12;
constexpr double kPerturbation = 1e-6;
constexpr double kEscape = 1e-2;
constexpr double kIdentity = 1e-12;
constexpr double kCentroid = 1e-6;
constexpr double kRoundTrip = 1e-15;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Note {
public:
    template <class... Args>
    void operator()(const char* fmt, Args... args) {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, args...);
        if (!text_.empty()) text_ += "; ";
        text_ += buf;
    }
    std::string str() const { return text_; }

private:
    std::string text_;
};

using Quad = boost::multiprecision::cpp_bin_float_quad;

// 1
Outcome limit_convergence() {
    std::mt19937_64 rng(1001);
    std::vector<kernels::ConvergenceJob> jobs;
    for (int j = 0; j < 50; ++j) {
        const std::size_t p = 2 + j % 7;
        const std::size_t d = 1 + (j / 7) % 4;
        const auto family = testing::random_family(rng, p, d);
        const auto t = testing::random_params(rng, p, 0.2, 0.8);
        jobs.push_back({std::vector<double>(family.flat().begin(), family.flat().end()), d,
                        std::vector<double>(t.values().begin(), t.values().end()), 400});
    }
    const auto start = std::chrono::steady_clock::now();
    const auto results = kernels::parallel::run_convergence_batch(jobs);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double worst = 0.0;
    for (const auto& r : results) worst = std::max(worst, r.final_gap);
    Note note;
    note("50 configurations, worst gap %.3g, %.3f s", worst, seconds);
    return {worst <= kConvergenceGap && seconds < kConvergenceSeconds, note.str()};
}

// 2
Outcome weight_equivalence() {
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int j = 0; j < 1000; ++j) {
        const auto t = testing::random_params(rng, 2 + j % 9);
        const auto a = product_weights(t);
        const auto b = reciprocal_weights(t);
        double sa = 0.0, sb = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) sa += a[k], sb += b[k];
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double x = a[k] / sa, y = b[k] / sb;
            worst = std::max(worst, std::abs(x - y) / y);
        }
    }
    Note note;
    note("1000 vectors, worst relative error %.3g", worst);
    return {worst <= kWeightRelative, note.str()};
}

// 3
Outcome alpha_values() {
    const double a3 = std::abs(solve_alpha(3) - (std::sqrt(5.0) - 1) / 2);
    const double a2 = std::abs(solve_alpha(2) - 0.5);
    double worst = 0.0;
    for (int p = 2; p <= 20; ++p) {
        const long double a = solve_alpha(p);
        worst = std::max(worst, static_cast<double>(std::abs(std::pow(a, p - 1) + a - 1.0L)));
    }
    Note note;
    note("|a3 - (sqrt5-1)/2| = %.3g, |a2 - 1/2| = %.3g, worst residual %.3g", a3, a2, worst);
    return {a3 <= kAlpha3 && a2 <= kAlpha2 && worst <= kRootResidual, note.str()};
}

// 4
Outcome two_point_dynamics() {
    std::mt19937_64 rng(1004);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    bool pass = true;
    double worst = 0.0, smallest_step = 1e300;
    for (int j = 0; j < 20; ++j) {
        const double t1 = u(rng);
        if (classify_dynamics(ParamVector({t1, 1 - t1})).verdict != Dynamics::Stationary) pass = false;
        double t2;
        do t2 = u(rng);
        while (std::abs(t2 - (1 - t1)) < 1e-3);
        const ParamVector t({t1, t2});
        if (classify_dynamics(t).verdict != Dynamics::Periodic2) pass = false;
        const auto family = testing::random_family(rng, 2, 1 + j % 4);
        const auto trace = dual_trace(family, t, 20);
        smallest_step = std::min(smallest_step, distance(trace.points[0], trace.points[1]));
        for (std::size_t m = 0; m + 2 < trace.points.size(); ++m)
            worst = std::max(worst, distance(trace.points[m], trace.points[m + 2]));
    }
    Note note;
    note("20 + 20 starts, max |G_{m+2} - G_m| = %.3g, min |G_1 - G_0| = %.3g", worst, smallest_step);
    return {pass && worst <= kPeriodic && smallest_step > kPeriodic, note.str()};
}

// 5
Outcome regular_dynamics() {
    bool pass = true;
    Note note;
    double quad_worst = 0.0;
    std::string binary64;
    for (int p = 3; p <= 8; ++p) {
        const Quad a = solve_alpha_in<Quad>(p);
        SplitVector<Quad> start;
        start.value.assign(p, Quad(1) - a);
        start.complement.assign(p, a);
        const auto orbit = derived_orbit(start, 50);
        if (orbit.states.size() != 51) pass = false;
        for (const auto& s : orbit.states)
            for (const auto& v : s.value) quad_worst = std::max(quad_worst, static_cast<double>(abs(v - start.value[0])));

        const double ad = solve_alpha(p);
        const auto dt = derived_trace(ParamVector::regular(p, 1 - ad), 50);
        double dworst = 0.0;
        for (const auto& t : dt.params) dworst = std::max(dworst, std::abs(t[0] - (1 - ad)));
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s%d:%.1e", binary64.empty() ? "" : " ", p, dworst);
        binary64 += buf;

        for (const double shift : {0.1, -0.1}) {
            const auto trace = to_conjugate(derived_trace(ParamVector::regular(p, 1 - ad + shift), 100));
            if (!trace.saturated_at) {
                pass = false;
                continue;
            }
            const auto& st = trace.states;
            // Conjugate value of the even and odd subsequences, compared through
            // the complement when close to 1.
            auto key = [&](std::size_t m) { return std::pair{st[m][0], -st[m].complement(0)}; };
            for (std::size_t parity = 0; parity < 2; ++parity) {
                const bool rising = key(parity + 2 > st.size() - 1 ? parity : parity + 2) > key(parity);
                for (std::size_t m = parity; m + 2 < st.size(); m += 2) {
                    if (rising ? !(key(m + 2) >= key(m)) : !(key(m + 2) <= key(m))) pass = false;
                }
                std::size_t last = st.size() - 1;
                if (last % 2 != parity) --last;
                const double to_edge = rising ? st[last].complement(0) : st[last][0];
                if (to_edge > 1e-12) pass = false;
            }
            if (st.back()[0] > 1e-12 == st[st.size() - 2][0] > 1e-12) pass = false;
        }
    }
    note("stationary within %.2g over 50 steps in 113-bit precision", quad_worst);
    note("binary64 drift per p {%s}", binary64.c_str());
    note("%s", "shifted starts saturate within 100 steps with monotone subsequences");
    return {pass && quad_worst <= kStationaryBand, note.str()};
}

// 6
Outcome fixed_points() {
    const auto s = stationary_points3();
    double worst = 0.0;
    for (double r : s.conjugate_residual) worst = std::max(worst, r);
    const auto candidates = kernels::parallel::fixed_point_scan3(100, kGridThreshold);
    std::size_t extra = 0;
    for (const auto& c : candidates) {
        bool near_known = false;
        for (const auto& k : s.conjugate)
            near_known = near_known || testing::max_abs_diff(c.u, k) <= 0.01;
        if (!near_known) ++extra;
    }
    Note note;
    note("worst residual %.3g, %zu grid candidates, %zu unexplained", worst, candidates.size(), extra);
    return {worst <= kFixedResidual && extra == 0, note.str()};
}

// 7
Outcome linearization() {
    const auto lin = jacobian_eigen3();
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(lin.charpoly[i] - lin.expected_charpoly[i]));
    const double a = lin.alpha;
    bool escaped_all = true;
    std::size_t slowest = 0;
    const std::vector<Triple> directions{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {-1, -1, -1}, {1, 1, 0}};
    for (const auto& dir : directions) {
        ConjugateState u({a + kPerturbation * dir[0], a + kPerturbation * dir[1], a + kPerturbation * dir[2]});
        std::size_t steps = 0;
        bool escaped = false;
        for (; steps < 60 && !escaped;) {
            u = conjugate_step(u);
            ++steps;
            for (std::size_t k = 0; k < 3; ++k) escaped = escaped || std::abs(u[k] - a) > kEscape;
        }
        escaped_all = escaped_all && escaped;
        slowest = std::max(slowest, steps);
    }
    Note note;
    note("charpoly error %.3g, %zu perturbations escape, slowest after %zu steps", worst, directions.size(), slowest);
    return {worst <= kCharpoly && escaped_all, note.str()};
}

// 8
Outcome ratio_bound() {
    std::mt19937_64 rng(1008);
    std::size_t held = 0, floors = 0, qs = 0;
    for (int j = 0; j < 20; ++j) {
        const auto report = ratio_bound_check(conjugate_trace(ConjugateState(testing::random_sorted_triple(rng, 0.02, 0.98)), 200));
        if (report.holds() && !report.regular) ++held;
        if (report.resolution_floor) ++floors;
        qs += report.gaps.size();
    }
    const double grid = kernels::parallel::km_cm_grid_residual(0.05, 0.95, 9);
    Note note;
    note("bound holds on %d/20 starts (%zu q values, %zu reach the resolution floor)", static_cast<int>(held), qs, floors);
    note("two-step identity residual %.3g on the 10^3 grid", grid);
    return {held == 20 && grid <= kIdentity, note.str()};
}

struct IrregularCase {
    PointFamily family;
    ParamVector t;
};

std::vector<IrregularCase> irregular_cases(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::vector<IrregularCase> out;
    while (static_cast<int>(out.size()) < n) {
        auto t = testing::random_params(rng, 3, 0.02, 0.98);
        if (t.is_regular(1e-6)) continue;
        out.push_back({testing::random_family(rng, 3, 2), std::move(t)});
    }
    return out;
}

// 9
Outcome dual_convergence() {
    std::size_t below = 0, monotone = 0;
    std::string offenders;
    int index = 0;
    for (const auto& c : irregular_cases(1009, 20)) {
        const auto trace = dual_trace(c.family, c.t, 400);
        const auto report = centroid_convergence_report(trace);
        const auto cls = classify_dynamics(c.t);
        if (report.first_below && *report.first_below < trace.points.size()) ++below;
        if (cls.lockin_index && nonincreasing_from(trace.distances, *cls.lockin_index)) ++monotone;
        else offenders += (offenders.empty() ? "" : ",") + std::to_string(index);
        ++index;
    }
    Note note;
    note("below %.0e before saturation on %zu/20", kCentroid, below);
    note("non-increasing after lock-in on %zu/20", monotone);
    if (!offenders.empty()) note("increasing steps in cases %s", offenders.c_str());
    return {below == 20 && monotone == 20, note.str()};
}

// 10
Outcome lockin_and_tau() {
    const double a = solve_alpha(3);
    std::size_t locked = 0, alternating = 0, tau_ok = 0, pairs = 0;
    const auto cases = irregular_cases(1010, 30);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto trace = to_conjugate(derived_trace(cases[i].t, 400));
        const auto m0 = find_lockin(trace, a, Tolerances{}.alpha_tie, Tolerances{}.confirm_pairs);
        if (!m0) continue;
        ++locked;
        if (alternates_from(trace, *m0, a)) ++alternating;
        if (i < 10) {
            // The comparison starts from the state of the pair lying below alpha.
            const std::size_t start = trace.states[*m0][0] < a ? *m0 : *m0 + 1;
            const auto tau = tau_comparison(trace, start);
            pairs += tau.pairs_checked;
            if (tau.holds() && tau.pairs_checked > 0) ++tau_ok;
        }
    }
    Note note;
    note("lock-in found %zu/30, strict alternation %zu/30", locked, alternating);
    note("tau comparison holds %zu/10 (%zu pairs)", tau_ok, pairs);
    return {locked == 30 && alternating == 30 && tau_ok == 10, note.str()};
}

// 11
Outcome h_roots() {
    bool pass = true;
    for (int p = 3; p <= 8; ++p) {
        const auto brackets = kernels::parallel::h_sign_scan(p, 10000);
        const std::array<double, 3> roots{0.0, solve_alpha(p), 1.0};
        if (brackets.size() != 3) {
            pass = false;
            continue;
        }
        for (std::size_t i = 0; i < 3; ++i)
            if (!(brackets[i].lo <= roots[i] && roots[i] <= brackets[i].hi)) pass = false;
    }
    double smallest_mu = 1e300;
    for (int p = 3; p <= 20; ++p) smallest_mu = std::min(smallest_mu, critical_mu(p).mu);
    Note note;
    note("roots {0, alpha_p, 1} for p = 3..8, smallest mu %.4g", smallest_mu);
    return {pass && smallest_mu > 0.0, note.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "barypoly");
    std::ostringstream out, err;
    return cli::dispatch(args, out, err);
}

// 12
Outcome io_determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "barypoly_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    ::setenv("BARYPOLY_SEED", "12", 1);

    bool identical = true;
    double worst_trip = 0.0;
    const std::vector<std::vector<std::string>> commands{
        {"simulate", "--generator", "random", "--count", "5", "--t", "1/61,1/41,1/28,1/19,1/13", "--n", "50"},
        {"derive", "--t", "0.2,0.3,0.4", "--n", "40"},
        {"dual", "--points", "0,0;1,0;0,1", "--t", "0.2,0.3,0.4", "--n", "40"},
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
        for (const std::string ext : {"csv", "json"}) {
            std::string first;
            for (int rep = 0; rep < 2; ++rep) {
                const auto path = dir / (std::to_string(i) + "_" + std::to_string(rep) + "." + ext);
                auto args = commands[i];
                args.insert(args.end(), {"--format", ext, "--out", path.string()});
                if (run_cli(args) != 0) identical = false;
                const auto text = slurp(path);
                if (rep == 0) first = text;
                else identical = identical && !text.empty() && text == first;
            }
            const auto table = ext == "csv" ? io::table_from_csv(first) : io::table_from_json(first);
            const auto again = ext == "csv" ? io::table_from_csv(io::to_csv(table)) : io::table_from_json(io::to_json(table));
            if (again.rows.size() != table.rows.size()) identical = false;
            for (std::size_t m = 0; m < table.rows.size() && m < again.rows.size(); ++m)
                worst_trip = std::max(worst_trip, testing::max_abs_diff(table.rows[m], again.rows[m]));
        }
    }

    // In-memory round trip of full-precision values.
    std::mt19937_64 rng(1012);
    const auto family = testing::random_family(rng, 4, 3);
    const auto trace = io::to_table(iterate_sequence(family, testing::random_params(rng, 4), 30));
    const auto back = io::table_from_json(io::to_json(trace));
    const auto back_csv = io::table_from_csv(io::to_csv(trace));
    for (std::size_t m = 0; m < trace.rows.size(); ++m) {
        worst_trip = std::max(worst_trip, testing::max_abs_diff(trace.rows[m], back.rows[m]));
        worst_trip = std::max(worst_trip, testing::max_abs_diff(trace.rows[m], back_csv.rows[m]));
    }

    std::size_t valid = 0;
    const auto figures = dir / "figures";
    if (run_cli({"figure", "--generator", "regular", "--count", "4", "--t", "0.2", "--n", "20", "--orders", "0-5",
                 "--out-dir", figures.string()}) == 0) {
        for (int m = 0; m <= 5; ++m) {
            const auto svg = slurp(figures / ("figure_order" + std::to_string(m) + ".svg"));
            if (!svg.empty() && svg.find("<svg") != std::string::npos && testing::tags_balanced(svg)) ++valid;
        }
    }
    ::unsetenv("BARYPOLY_SEED");
    std::filesystem::remove_all(dir);

    Note note;
    note("repeated runs %s", identical ? "byte-identical" : "differ");
    note("worst round-trip error %.3g", worst_trip);
    note("%zu/6 figure documents valid", valid);
    return {identical && worst_trip <= kRoundTrip && valid == 6, note.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"limit point convergence", limit_convergence},
        {"weight form equivalence", weight_equivalence},
        {"alpha values", alpha_values},
        {"p = 2 stationary or periodic", two_point_dynamics},
        {"regular stationarity and alternation", regular_dynamics},
        {"fixed points for p = 3", fixed_points},
        {"linearization and instability", linearization},
        {"ratio bound and two-step identity", ratio_bound},
        {"dual sequence reaches the centroid", dual_convergence},
        {"lock-in, alternation, square-map comparison", lockin_and_tau},
        {"h_p root structure", h_roots},
        {"I/O determinism and figures", io_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %2zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
