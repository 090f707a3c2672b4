#include <algorithm>
#include <cmath>

#include "barypoly/barypolygonal.hpp"
#include "barypoly/derived.hpp"
#include "barypoly/kernels.hpp"

namespace barypoly::kernels::serial {

void barypolygon_step(FamilyView in, std::span<const double> t, std::span<const double> complement,
                      std::span<double> out) {
    const std::size_t p = in.count();
    const std::size_t d = in.dim;
    for (std::size_t k = 0; k < p; ++k) {
        const std::size_t next = (k + 1 == p) ? 0 : k + 1;
        for (std::size_t i = 0; i < d; ++i)
            out[k * d + i] = t[k] * in.coords[k * d + i] + complement[k] * in.coords[next * d + i];
    }
}

std::vector<GridCandidate> fixed_point_scan3(std::size_t n, double threshold) {
    std::vector<GridCandidate> found;
    const double step = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t k = 0; k <= n; ++k) {
                const Triple u{static_cast<double>(i) * step, static_cast<double>(j) * step,
                               static_cast<double>(k) * step};
                const double r = sigma_residual3(u);
                if (r < threshold) found.push_back({u, r});
            }
    return found;
}

std::vector<RootBracket> h_sign_scan(int p, std::size_t n) {
    std::vector<RootBracket> found;
    const double step = 1.0 / static_cast<double>(n);
    double prev_x = 0.0;
    double prev = eval_h(p, 0.0);
    if (prev == 0.0) found.push_back({0.0, 0.0});
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = (i == n) ? 1.0 : static_cast<double>(i) * step;
        const double h = eval_h(p, x);
        if (h == 0.0) found.push_back({x, x});
        else if (prev != 0.0 && std::signbit(h) != std::signbit(prev)) found.push_back({prev_x, x});
        prev = h;
        prev_x = x;
    }
    return found;
}

double km_cm_grid_residual(double lo, double hi, std::size_t n) {
    const double step = (hi - lo) / static_cast<double>(n);
    double worst = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t k = 0; k <= n; ++k) {
                const Triple u{lo + static_cast<double>(i) * step, lo + static_cast<double>(j) * step,
                               lo + static_cast<double>(k) * step};
                worst = std::max(worst, km_cm_residual(u));
            }
    return worst;
}

std::vector<ConvergenceOutcome> run_convergence_batch(std::span<const ConvergenceJob> jobs) {
    std::vector<ConvergenceOutcome> out;
    out.reserve(jobs.size());
    for (const auto& job : jobs) {
        const auto family = PointFamily::from_rows(job.dim, job.coords);
        const ParamVector t(job.t);
        const auto last = iterate_final(family, t, job.iterations);
        const auto target = limit_point(family, t);
        double gap = 0.0;
        for (std::size_t k = 0; k < last.size(); ++k) gap = std::max(gap, distance(last.row(k), target.coords()));
        out.push_back({gap, diameter(family)});
    }
    return out;
}

}  // namespace barypoly::kernels::serial
