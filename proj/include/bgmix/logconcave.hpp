#pragma once

#include <cstddef>
#include <vector>

#include "bgmix/bands.hpp"
#include "bgmix/decomposition.hpp"

namespace bgmix {

// --- piecewise-log-linear quadrature -------------------------------------

/// Mean of exp over a unit segment with endpoint log-values x, y:
/// (e^x - e^y)/(x - y), continued as e^x at x = y. Stable for tiny |x - y|
/// and for very negative arguments.
double lambda_segment(double x, double y);

/// Partial derivatives of lambda_segment.
double lambda_segment_dx(double x, double y);
double lambda_segment_dy(double x, double y);

/// Exact integral of exp(piecewise-linear interpolant of v) on an equispaced
/// grid with step `spacing`: spacing * sum_j lambda(v_j, v_{j+1}).
double objective_exact(const std::vector<double>& v, double spacing);
std::vector<double> objective_exact_gradient(const std::vector<double>& v, double spacing);

/// Trapezoid-in-exp variant: spacing * (e^{v_0}/2 + e^{v_1} + ... + e^{v_{n-1}}/2).
double objective_riemann(const std::vector<double>& v, double spacing);
std::vector<double> objective_riemann_gradient(const std::vector<double>& v, double spacing);

// --- discretized maximization problem ------------------------------------

enum class Objective { Exact, Riemann };

/// maximize Lambda(v) over concave v with v <= u = log f on the grid.
/// Constraint system: (n-2) second-difference rows -v_{j-1}+2v_j-v_{j+1} >= 0
/// followed by n bound rows -v_j >= -u_j.
struct LogConcaveProblem {
    std::vector<double> points;
    std::vector<double> upper;  // u_j = log f(t_j)
    std::vector<double> v_init; // u - d
    double spacing = 0.0;
    double init_offset = 0.0;

    std::size_t constraint_rows() const { return 2 * points.size() - 2; }

    /// A v - b for all constraint rows (concavity rows first, then bounds);
    /// feasibility means every entry >= 0.
    std::vector<double> constraint_values(const std::vector<double>& v) const;
};

/// u = log f, v_init = u - d. Requires every f value to exceed the positivity
/// floor; use extract_logconcave for automatic support trimming.
LogConcaveProblem build_problem(const DensityGrid& f, double d, double floor_eps = 1e-12);

struct SolverReport {
    std::vector<double> v_star;
    double objective = 0.0;
    std::size_t iterations = 0;
    double kkt_residual = 0.0;
    double feasibility_violation = 0.0;
    bool converged = false;
};

struct SolveOptions {
    Objective objective = Objective::Exact;
    double d_init = 0.02;
    double tol = 1e-8;        // feasibility tolerance
    std::size_t max_iter = 500;
    std::size_t n_starts = 5; // v_init plus shifted/truncated alternates
    double floor_eps = 1e-12;
};

/// SQP-style ascent from a repaired-feasible start: quadratic subproblems with
/// the exact (tridiagonal) objective Hessian, linear constraints handled
/// exactly, ending with an exact concavity/bound repair. The returned iterate
/// is feasible to within tol and satisfies first-order stationarity up to the
/// reported residual; the maximum is local (solutions need not be unique).
SolverReport solve(const LogConcaveProblem& problem, Objective objective = Objective::Exact,
                   double tol = 1e-8, std::size_t max_iter = 500);

/// Multi-start variant: deterministic alternates (mass-truncated and shifted
/// copies of v_init), best objective wins, ties to the lower start index.
SolverReport solve_multistart(const LogConcaveProblem& problem, const SolveOptions& options);

struct LogConcaveResult {
    BackgroundDecomposition decomposition;
    SolverReport report;
    std::size_t run_begin = 0; // grid index range the problem was solved on
    std::size_t run_end = 0;
};

/// Largest log-concave background component of a gridded density.
/// Grid points with f below the positivity floor are trimmed; if trimming
/// splits the support, every maximal run is solved and the best value wins.
BackgroundDecomposition extract_logconcave(const DensityGrid& f, const SolveOptions& options = {});
LogConcaveResult extract_logconcave_detailed(const DensityGrid& f,
                                             const SolveOptions& options = {});

struct LogConcaveInterval {
    double pi_lower = 0.0;
    double pi_upper = 1.0;
    DensityGrid h_lower;
    DensityGrid h_upper;
};

/// Solve values on the band's lower and upper curves. An all-zero (or
/// sub-floor) lower curve yields pi_lower = 0. The upper value is floored at
/// the lower one (the lower solution is feasible there) and capped at 1.
LogConcaveInterval logconcave_interval(const ConfidenceBand& band,
                                       const SolveOptions& options = {});

} // namespace bgmix
