#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "barypoly/barypolygonal.hpp"
#include "barypoly/derived.hpp"
#include "barypoly/kernels.hpp"

namespace barypoly::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace parallel {

void barypolygon_step(FamilyView in, std::span<const double> t, std::span<const double> complement,
                      std::span<double> out) {
    const auto p = static_cast<std::ptrdiff_t>(in.count());
    const std::size_t d = in.dim;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < p; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        const std::size_t next = (k + 1 == p) ? 0 : kk + 1;
        for (std::size_t i = 0; i < d; ++i)
            out[kk * d + i] = t[kk] * in.coords[kk * d + i] + complement[kk] * in.coords[next * d + i];
    }
}

std::vector<GridCandidate> fixed_point_scan3(std::size_t n, double threshold) {
    std::vector<GridCandidate> found;
    const double step = 1.0 / static_cast<double>(n);
    const auto side = static_cast<std::ptrdiff_t>(n + 1);
#pragma omp parallel
    {
        std::vector<GridCandidate> local;
#pragma omp for collapse(2) schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < side; ++i)
            for (std::ptrdiff_t j = 0; j < side; ++j)
                for (std::ptrdiff_t k = 0; k < side; ++k) {
                    const Triple u{static_cast<double>(i) * step, static_cast<double>(j) * step,
                                   static_cast<double>(k) * step};
                    const double r = sigma_residual3(u);
                    if (r < threshold) local.push_back({u, r});
                }
#pragma omp critical
        found.insert(found.end(), local.begin(), local.end());
    }
    std::sort(found.begin(), found.end(), [](const GridCandidate& a, const GridCandidate& b) { return a.u < b.u; });
    return found;
}

std::vector<RootBracket> h_sign_scan(int p, std::size_t n) {
    const double step = 1.0 / static_cast<double>(n);
    std::vector<double> values(n + 1);
    const auto count = static_cast<std::ptrdiff_t>(n + 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const double x = (i == count - 1) ? 1.0 : static_cast<double>(i) * step;
        values[static_cast<std::size_t>(i)] = eval_h(p, x);
    }
    std::vector<RootBracket> found;
    const auto abscissa = [&](std::size_t i) { return i == n ? 1.0 : static_cast<double>(i) * step; };
    if (values[0] == 0.0) found.push_back({0.0, 0.0});
    for (std::size_t i = 1; i <= n; ++i) {
        if (values[i] == 0.0) found.push_back({abscissa(i), abscissa(i)});
        else if (values[i - 1] != 0.0 && std::signbit(values[i]) != std::signbit(values[i - 1]))
            found.push_back({abscissa(i - 1), abscissa(i)});
    }
    return found;
}

double km_cm_grid_residual(double lo, double hi, std::size_t n) {
    const double step = (hi - lo) / static_cast<double>(n);
    const auto side = static_cast<std::ptrdiff_t>(n + 1);
    double worst = 0.0;
#pragma omp parallel for collapse(2) reduction(max : worst) schedule(static)
    for (std::ptrdiff_t i = 0; i < side; ++i)
        for (std::ptrdiff_t j = 0; j < side; ++j)
            for (std::ptrdiff_t k = 0; k < side; ++k) {
                const Triple u{lo + static_cast<double>(i) * step, lo + static_cast<double>(j) * step,
                               lo + static_cast<double>(k) * step};
                worst = std::max(worst, km_cm_residual(u));
            }
    return worst;
}

std::vector<ConvergenceOutcome> run_convergence_batch(std::span<const ConvergenceJob> jobs) {
    // Validate serially: an exception escaping the parallel region would terminate.
    std::vector<PointFamily> families;
    std::vector<ParamVector> params;
    families.reserve(jobs.size());
    params.reserve(jobs.size());
    for (const auto& job : jobs) {
        families.push_back(PointFamily::from_rows(job.dim, job.coords));
        params.emplace_back(job.t);
    }

    std::vector<ConvergenceOutcome> out(jobs.size());
    const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        const auto& job = jobs[static_cast<std::size_t>(j)];
        const auto& family = families[static_cast<std::size_t>(j)];
        const auto& t = params[static_cast<std::size_t>(j)];
        const auto last = iterate_final(family, t, job.iterations);
        const auto target = limit_point(family, t);
        double gap = 0.0;
        for (std::size_t k = 0; k < last.size(); ++k) gap = std::max(gap, distance(last.row(k), target.coords()));
        out[static_cast<std::size_t>(j)] = {gap, diameter(family)};
    }
    return out;
}

}  // namespace parallel
}  // namespace barypoly::kernels
