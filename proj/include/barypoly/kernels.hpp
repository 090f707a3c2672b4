#pragma once

// Data-parallel kernels. Each kernel exists twice with the same signature:
// `serial::` is the reference implementation used by the tests, `parallel::`
// distributes the outer loop with OpenMP. Results agree exactly except for
// the order in which candidates are reported, which both sort.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace barypoly::kernels {

/// Flat row-major family of `count` points of dimension `dim`.
struct FamilyView {
    std::span<const double> coords;
    std::size_t dim;
    std::size_t count() const noexcept { return coords.size() / dim; }
};

/// Point of the (Sigma) grid scan whose one-step residual fell below the threshold.
struct GridCandidate {
    std::array<double, 3> u;
    double residual;
    friend bool operator==(const GridCandidate&, const GridCandidate&) = default;
};

/// Sign change of h_p between two consecutive scan abscissae (or an exact zero).
struct RootBracket {
    double lo;
    double hi;
    friend bool operator==(const RootBracket&, const RootBracket&) = default;
};

/// Input of one independent barypolygonal simulation.
struct ConvergenceJob {
    std::vector<double> coords;  // row-major, p rows of dimension dim
    std::size_t dim;
    std::vector<double> t;
    std::size_t iterations;
};

/// max_k ||B_k^(n) - G|| after `iterations` steps, G the closed-form limit.
struct ConvergenceOutcome {
    double final_gap;
    double initial_diameter;
};

// Kernel set, declared identically in both namespaces:
//
//   barypolygon_step      out_k = t_k A_k + c_k A_{k+1} (cyclic), c_k = 1 - t_k
//   fixed_point_scan3     grid points of [0,1]^3 (n intervals per axis) whose
//                         one-step residual under (Sigma) is below `threshold`,
//                         sorted lexicographically
//   h_sign_scan           sign changes (or exact zeros) of h_p on the uniform
//                         grid of [0,1] with n intervals, sorted
//   km_cm_grid_residual   largest two-step K/C identity residual over the grid
//                         of [lo,hi]^3 with n intervals per axis
//   run_convergence_batch independent simulations, results in input order

namespace serial {
void barypolygon_step(FamilyView in, std::span<const double> t, std::span<const double> complement,
                      std::span<double> out);
std::vector<GridCandidate> fixed_point_scan3(std::size_t n, double threshold);
std::vector<RootBracket> h_sign_scan(int p, std::size_t n);
double km_cm_grid_residual(double lo, double hi, std::size_t n);
std::vector<ConvergenceOutcome> run_convergence_batch(std::span<const ConvergenceJob> jobs);
}  // namespace serial

namespace parallel {
void barypolygon_step(FamilyView in, std::span<const double> t, std::span<const double> complement,
                      std::span<double> out);
std::vector<GridCandidate> fixed_point_scan3(std::size_t n, double threshold);
std::vector<RootBracket> h_sign_scan(int p, std::size_t n);
double km_cm_grid_residual(double lo, double hi, std::size_t n);
std::vector<ConvergenceOutcome> run_convergence_batch(std::span<const ConvergenceJob> jobs);
}  // namespace parallel

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

}  // namespace barypoly::kernels
