#include "bgmix/logconcave.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bgmix/qp.hpp"

namespace bgmix {

namespace {

// psi(s) = (e^s - 1 - s)/s^2, the segment-mean weight behind the lambda
// derivatives: d(lambda)/dx = e^x psi(y - x).
double psi(double s) {
    if (std::abs(s) < 1e-4)
        return 0.5 + s * (1.0 / 6.0 + s * (1.0 / 24.0 + s * (1.0 / 120.0)));
    if (s > 700.0)
        return std::exp(s - 2.0 * std::log(s));
    return (std::expm1(s) - s) / (s * s);
}

// psi'(s) = (e^s (s - 2) + s + 2)/s^3
double dpsi(double s) {
    if (std::abs(s) < 2e-2)
        return 1.0 / 6.0 + s * (1.0 / 12.0 + s * (1.0 / 40.0 + s * (1.0 / 180.0)));
    if (s > 700.0)
        return std::exp(s - 2.0 * std::log(s)) / s * (s - 2.0) / s;
    return (std::exp(s) * (s - 2.0) + s + 2.0) / (s * s * s);
}

double sinhc(double t) {
    if (std::abs(t) < 1e-4)
        return 1.0 + t * t * (1.0 / 6.0) * (1.0 + t * t * (1.0 / 20.0));
    return std::sinh(t) / t;
}

} // namespace

double lambda_segment(double x, double y) {
    const double t = 0.5 * (x - y);
    if (t == 0.0)
        return std::exp(x);
    if (std::abs(t) > 300.0)
        return (std::exp(x) - std::exp(y)) / (x - y);
    return std::exp(0.5 * (x + y)) * sinhc(t);
}

double lambda_segment_dx(double x, double y) {
    return std::exp(x) * psi(y - x);
}

double lambda_segment_dy(double x, double y) {
    return std::exp(y) * psi(x - y);
}

double objective_exact(const std::vector<double>& v, double spacing) {
    if (v.size() < 2)
        throw std::invalid_argument("objective_exact: need at least 2 values");
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < v.size(); ++j)
        s += lambda_segment(v[j], v[j + 1]);
    return spacing * s;
}

std::vector<double> objective_exact_gradient(const std::vector<double>& v, double spacing) {
    const std::size_t n = v.size();
    std::vector<double> g(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        g[j] += spacing * lambda_segment_dx(v[j], v[j + 1]);
        g[j + 1] += spacing * lambda_segment_dy(v[j], v[j + 1]);
    }
    return g;
}

double objective_riemann(const std::vector<double>& v, double spacing) {
    if (v.size() < 2)
        throw std::invalid_argument("objective_riemann: need at least 2 values");
    double s = 0.5 * (std::exp(v.front()) + std::exp(v.back()));
    for (std::size_t j = 1; j + 1 < v.size(); ++j)
        s += std::exp(v[j]);
    return spacing * s;
}

std::vector<double> objective_riemann_gradient(const std::vector<double>& v, double spacing) {
    const std::size_t n = v.size();
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        g[j] = spacing * w * std::exp(v[j]);
    }
    return g;
}

namespace {

double objective_value(Objective obj, const std::vector<double>& v, double spacing) {
    return obj == Objective::Exact ? objective_exact(v, spacing) : objective_riemann(v, spacing);
}

// gradient plus tridiagonal Hessian (diag, superdiag) of the chosen objective
void grad_hess(Objective obj, const std::vector<double>& v, double spacing,
               std::vector<double>& g, std::vector<double>& hd, std::vector<double>& he) {
    const std::size_t n = v.size();
    g.assign(n, 0.0);
    hd.assign(n, 0.0);
    he.assign(n - 1, 0.0);
    if (obj == Objective::Riemann) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
            g[j] = spacing * w * std::exp(v[j]);
            hd[j] = g[j];
        }
        return;
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double x = v[j], y = v[j + 1];
        const double s = y - x;
        const double ex = std::exp(x), ey = std::exp(y);
        const double ps = psi(s), pms = psi(-s);
        const double dps = dpsi(s), dpms = dpsi(-s);
        g[j] += spacing * ex * ps;
        g[j + 1] += spacing * ey * pms;
        hd[j] += spacing * ex * (ps - dps);
        hd[j + 1] += spacing * ey * (pms - dpms);
        he[j] += spacing * ex * dps;
    }
}

// weighted PAVA, means constrained non-increasing
std::vector<double> isotonic_nonincreasing(const std::vector<double>& s) {
    const std::size_t n = s.size();
    std::vector<double> mean;
    std::vector<std::size_t> count;
    mean.reserve(n);
    count.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        mean.push_back(s[i]);
        count.push_back(1);
        while (mean.size() >= 2 && mean[mean.size() - 2] < mean.back()) {
            const double m2 = mean.back();
            const std::size_t c2 = count.back();
            mean.pop_back();
            count.pop_back();
            const double m1 = mean.back();
            const std::size_t c1 = count.back();
            mean.back() = (m1 * static_cast<double>(c1) + m2 * static_cast<double>(c2)) /
                          static_cast<double>(c1 + c2);
            count.back() = c1 + c2;
        }
    }
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t b = 0; b < mean.size(); ++b)
        out.insert(out.end(), count[b], mean[b]);
    return out;
}

// Nearest-in-slope concave sequence below u: pool slopes monotone, then shift
// down by the worst bound excess. Identity on already-feasible input.
std::vector<double> make_feasible(const std::vector<double>& v, const std::vector<double>& u) {
    const std::size_t n = v.size();
    std::vector<double> w(n);
    if (n == 1) {
        w[0] = std::min(v[0], u[0]);
        return w;
    }
    std::vector<double> slopes(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        slopes[i] = v[i + 1] - v[i];
    const std::vector<double> pooled = isotonic_nonincreasing(slopes);
    w[0] = v[0];
    for (std::size_t i = 0; i + 1 < n; ++i)
        w[i + 1] = w[i] + pooled[i];
    double excess = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        excess = std::max(excess, w[i] - u[i]);
    if (excess > 0.0)
        for (double& wi : w)
            wi -= excess;
    return w;
}

} // namespace

std::vector<double> LogConcaveProblem::constraint_values(const std::vector<double>& v) const {
    const std::size_t n = points.size();
    std::vector<double> vals;
    vals.reserve(2 * n - 2);
    for (std::size_t j = 0; j + 2 < n; ++j)
        vals.push_back(-v[j] + 2.0 * v[j + 1] - v[j + 2]);
    for (std::size_t j = 0; j < n; ++j)
        vals.push_back(upper[j] - v[j]); // -v_j - (-u_j)
    return vals;
}

LogConcaveProblem build_problem(const DensityGrid& f, double d, double floor_eps) {
    LogConcaveProblem p;
    p.points = f.points;
    p.spacing = f.spacing;
    p.init_offset = d;
    p.upper.resize(f.size());
    p.v_init.resize(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!(f.values[j] > floor_eps))
            throw std::invalid_argument(
                "build_problem: density at grid index " + std::to_string(j) +
                " is at/below the positivity floor; trim the support first");
        p.upper[j] = std::log(f.values[j]);
        p.v_init[j] = p.upper[j] - d;
    }
    return p;
}

SolverReport solve(const LogConcaveProblem& problem, Objective objective, double tol,
                   std::size_t max_iter) {
    const std::size_t n = problem.points.size();
    if (n < 2)
        throw std::invalid_argument("solve: need at least 2 grid points");
    if (!(tol > 0.0))
        throw std::invalid_argument("solve: tol must be positive");
    const double spacing = problem.spacing;
    const std::vector<double>& u = problem.upper;

    std::vector<double> v = make_feasible(problem.v_init, u);
    double value = objective_value(objective, v, spacing);

    ConcaveBoundQP qp;
    ConcaveBoundQP::Result qpres;
    std::vector<double> g, hd, he, lower(n >= 3 ? n - 2 : 0), ub(n), q(n);
    double step_norm = 1.0;
    std::size_t small_gain = 0;
    SolverReport rep;

    std::size_t iter = 0;
    for (iter = 1; iter <= max_iter; ++iter) {
        grad_hess(objective, v, spacing, g, hd, he);
        double hmax = 0.0;
        for (double h : hd)
            hmax = std::max(hmax, h);
        const double reg = std::max(1e-12, 1e-8 * hmax);
        std::vector<double> pd(hd);
        for (double& p : pd)
            p += reg;
        for (std::size_t j = 0; j < n; ++j) {
            q[j] = -g[j];
            ub[j] = u[j] - v[j];
        }
        for (std::size_t i = 0; i + 2 < n; ++i)
            lower[i] = -(-v[i] + 2.0 * v[i + 1] - v[i + 2]);

        ConcaveBoundQP::Settings st;
        st.eps_abs = st.eps_rel = std::clamp(0.05 * step_norm, 1e-11, 1e-6);
        st.max_iter = 4000;
        qpres = qp.solve(pd, he, q, lower, ub, st, iter > 1);

        std::vector<double> vn(n);
        for (std::size_t j = 0; j < n; ++j)
            vn[j] = v[j] + qpres.x[j];
        double vnew = objective_value(objective, vn, spacing);
        if (vnew < value - 1e-13 * (1.0 + std::abs(value))) {
            // inexact subproblem; re-solve tightly once, else stop here
            ConcaveBoundQP::Settings tight = st;
            tight.eps_abs = tight.eps_rel = 1e-11;
            tight.max_iter = 20000;
            qpres = qp.solve(pd, he, q, lower, ub, tight, true);
            for (std::size_t j = 0; j < n; ++j)
                vn[j] = v[j] + qpres.x[j];
            vnew = objective_value(objective, vn, spacing);
            if (vnew < value - 1e-13 * (1.0 + std::abs(value)))
                break;
        }

        step_norm = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            step_norm = std::max(step_norm, std::abs(qpres.x[j]));
        const double gain = vnew - value;
        v = std::move(vn);
        value = vnew;

        const auto cons = problem.constraint_values(v);
        double violation = 0.0;
        for (double c : cons)
            violation = std::max(violation, -c);

        small_gain = (gain <= 1e-6 * std::max(1.0, std::abs(value)) &&
                      step_norm <= 1e-6 * (1.0 + std::abs(value)))
                         ? small_gain + 1
                         : 0;
        if (violation <= tol &&
            (step_norm <= 1e-9 * (1.0 + std::abs(value)) || small_gain >= 2)) {
            rep.converged = true;
            break;
        }
    }

    // exact repair: pooled slopes are non-increasing and the shift restores
    // the bounds, so only rounding-level violations can remain
    v = make_feasible(v, u);
    rep.v_star = v;
    rep.objective = objective_value(objective, v, spacing);
    rep.iterations = std::min(iter, max_iter);

    const auto cons = problem.constraint_values(v);
    double violation = 0.0;
    for (double c : cons)
        violation = std::max(violation, -c);
    rep.feasibility_violation = violation;
    if (violation > tol)
        rep.converged = false;

    grad_hess(objective, v, spacing, g, hd, he);
    std::vector<double> resid(g);
    if (!qpres.mu_concavity.empty()) {
        for (std::size_t i = 0; i + 2 < n; ++i) {
            resid[i] -= qpres.mu_concavity[i];
            resid[i + 1] += 2.0 * qpres.mu_concavity[i];
            resid[i + 2] -= qpres.mu_concavity[i];
        }
        for (std::size_t j = 0; j < n; ++j)
            resid[j] -= qpres.mu_bound[j];
    }
    double gmax = 0.0, rmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        gmax = std::max(gmax, std::abs(g[j]));
        rmax = std::max(rmax, std::abs(resid[j]));
    }
    rep.kkt_residual = rmax / (1.0 + gmax);
    return rep;
}

namespace {

std::vector<std::vector<double>> make_starts(const LogConcaveProblem& p, std::size_t n_starts) {
    const std::size_t n = p.points.size();
    std::vector<std::vector<double>> starts;
    starts.push_back(p.v_init);
    if (n_starts <= 1 || n < 5)
        return starts;

    // cumulative mass of exp(u) to place the truncation cuts
    std::vector<double> cum(n, 0.0);
    for (std::size_t j = 1; j < n; ++j)
        cum[j] = cum[j - 1] +
                 0.5 * (std::exp(p.upper[j - 1]) + std::exp(p.upper[j])) * p.spacing;
    const double total = cum.back();
    auto mass_index = [&](double frac) {
        const double target = frac * total;
        std::size_t j = 0;
        while (j + 1 < n && cum[j] < target)
            ++j;
        return j;
    };
    constexpr double kDrop = 40.0; // e^-40 ~ 4e-18, effectively zero mass

    auto truncated = [&](std::size_t lo, std::size_t hi) {
        std::vector<double> s = p.v_init;
        for (std::size_t j = 0; j < n; ++j)
            if (j < lo || j > hi)
                s[j] -= kDrop;
        return s;
    };

    starts.push_back(truncated(0, mass_index(0.6)));                  // keep left mass
    if (starts.size() < n_starts)
        starts.push_back(truncated(mass_index(0.4), n - 1));          // keep right mass
    if (starts.size() < n_starts)
        starts.push_back(truncated(mass_index(0.15), mass_index(0.85)));
    if (starts.size() < n_starts) {
        std::vector<double> s = p.v_init;
        for (double& x : s)
            x -= 1.0;
        starts.push_back(std::move(s));
    }
    if (starts.size() > n_starts)
        starts.resize(n_starts);
    return starts;
}

} // namespace

SolverReport solve_multistart(const LogConcaveProblem& problem, const SolveOptions& options) {
    const auto starts = make_starts(problem, std::max<std::size_t>(1, options.n_starts));
    SolverReport best;
    bool have = false;
    for (const auto& s : starts) {
        LogConcaveProblem p = problem;
        p.v_init = s;
        SolverReport rep = solve(p, options.objective, options.tol, options.max_iter);
        if (!have || rep.objective > best.objective) { // ties keep the earlier start
            best = std::move(rep);
            have = true;
        }
    }
    return best;
}

namespace {

struct Run {
    std::size_t begin = 0;
    std::size_t end = 0; // exclusive
};

std::vector<Run> positive_runs(const DensityGrid& f, double floor_eps) {
    std::vector<Run> runs;
    std::size_t j = 0;
    const std::size_t n = f.size();
    while (j < n) {
        if (f.values[j] > floor_eps) {
            std::size_t b = j;
            while (j < n && f.values[j] > floor_eps)
                ++j;
            if (j - b >= 2)
                runs.push_back({b, j});
        } else {
            ++j;
        }
    }
    return runs;
}

} // namespace

LogConcaveResult extract_logconcave_detailed(const DensityGrid& f, const SolveOptions& options) {
    const auto runs = positive_runs(f, options.floor_eps);
    if (runs.empty())
        throw std::invalid_argument(
            "extract_logconcave: density has no positive support run (all values at/below "
            "the positivity floor)");

    LogConcaveResult best;
    bool have = false;
    for (const auto& run : runs) {
        std::vector<double> pts(f.points.begin() + run.begin, f.points.begin() + run.end);
        std::vector<double> vals(f.values.begin() + run.begin, f.values.begin() + run.end);
        const LogConcaveProblem problem =
            build_problem(DensityGrid(std::move(pts), std::move(vals)), options.d_init,
                          options.floor_eps);
        SolverReport rep = solve_multistart(problem, options);
        if (!have || rep.objective > best.report.objective) {
            best.report = std::move(rep);
            best.run_begin = run.begin;
            best.run_end = run.end;
            have = true;
        }
    }

    std::vector<double> h(f.size(), 0.0);
    for (std::size_t j = best.run_begin; j < best.run_end; ++j)
        h[j] = std::exp(best.report.v_star[j - best.run_begin]);
    DensityGrid h0(f.points, std::move(h));
    best.decomposition.pi0 = std::min(integrate(h0), 1.0);
    best.decomposition.g0 = normalize_background(h0, best.decomposition.pi0);
    best.decomposition.h0 = std::move(h0);
    best.decomposition.shape = Shape::LogConcave;
    return best;
}

BackgroundDecomposition extract_logconcave(const DensityGrid& f, const SolveOptions& options) {
    return extract_logconcave_detailed(f, options).decomposition;
}

LogConcaveInterval logconcave_interval(const ConfidenceBand& band, const SolveOptions& options) {
    LogConcaveInterval out;
    const std::size_t n = band.lower.size();

    if (positive_runs(band.lower, options.floor_eps).empty()) {
        out.pi_lower = 0.0;
        out.h_lower = DensityGrid(band.lower.points, std::vector<double>(n, 0.0));
    } else {
        const auto low = extract_logconcave_detailed(band.lower, options);
        out.pi_lower = low.decomposition.pi0;
        out.h_lower = low.decomposition.h0;
    }

    const auto up = extract_logconcave_detailed(band.upper, options);
    out.h_upper = up.decomposition.h0;
    // the lower solution is feasible under the upper curve, so its value is a
    // valid fallback if the upper solve lands in a worse local maximum
    out.pi_upper = std::min(1.0, std::max(up.decomposition.pi0, out.pi_lower));
    return out;
}

} // namespace bgmix
