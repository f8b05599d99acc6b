#include "bgmix/qp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bgmix {

std::vector<double> second_differences(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 3)
        return {};
    std::vector<double> c(n - 2);
    for (std::size_t i = 0; i + 2 < n; ++i)
        c[i] = -x[i] + 2.0 * x[i + 1] - x[i + 2];
    return c;
}

void PentaCholesky::factor(const std::vector<double>& d0, const std::vector<double>& d1,
                           const std::vector<double>& d2) {
    const std::size_t n = d0.size();
    l0.assign(n, 0.0);
    l1.assign(n > 1 ? n - 1 : 0, 0.0);
    l2.assign(n > 2 ? n - 2 : 0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double a20 = 0.0; // L[i][i-2]
        double a10 = 0.0; // L[i][i-1]
        if (i >= 2)
            a20 = d2[i - 2] / l0[i - 2];
        if (i >= 1) {
            double num = d1[i - 1];
            if (i >= 2)
                num -= a20 * l1[i - 2];
            a10 = num / l0[i - 1];
        }
        double diag = d0[i] - a10 * a10 - a20 * a20;
        if (diag <= 0.0)
            throw std::runtime_error("PentaCholesky: matrix not positive definite");
        l0[i] = std::sqrt(diag);
        if (i >= 1)
            l1[i - 1] = a10;
        if (i >= 2)
            l2[i - 2] = a20;
    }
}

void PentaCholesky::solve(std::vector<double>& b) const {
    const std::size_t n = l0.size();
    // forward: L y = b (l1[i-1] is L[i][i-1], l2[i-2] is L[i][i-2])
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        if (i >= 1)
            s -= l1[i - 1] * b[i - 1];
        if (i >= 2)
            s -= l2[i - 2] * b[i - 2];
        b[i] = s / l0[i];
    }
    // backward: L' x = y
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        if (ii + 1 < n)
            s -= l1[ii] * b[ii + 1];
        if (ii + 2 < n)
            s -= l2[ii] * b[ii + 2];
        b[ii] = s / l0[ii];
    }
}

namespace {

void apply_ct(const std::vector<double>& w, std::vector<double>& out) {
    // out += C' w
    const std::size_t m = w.size();
    for (std::size_t i = 0; i < m; ++i) {
        out[i] -= w[i];
        out[i + 1] += 2.0 * w[i];
        out[i + 2] -= w[i];
    }
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

ConcaveBoundQP::Result ConcaveBoundQP::solve(const std::vector<double>& pd,
                                             const std::vector<double>& pe,
                                             const std::vector<double>& q,
                                             const std::vector<double>& l,
                                             const std::vector<double>& u,
                                             const Settings& settings, bool warm) {
    const std::size_t n = pd.size();
    const std::size_t m = n >= 2 ? n - 2 : 0;
    if (q.size() != n || u.size() != n || (n >= 3 && l.size() != m) ||
        pe.size() + 1 != n)
        throw std::invalid_argument("ConcaveBoundQP: inconsistent sizes");

    if (!warm || n_ != n) {
        x_.assign(n, 0.0);
        z1_.assign(m, 0.0);
        z2_.assign(n, 0.0);
        y1_.assign(m, 0.0);
        y2_.assign(n, 0.0);
        n_ = n;
        rho_ = settings.rho;
        // start inside the constraint sets
        for (std::size_t i = 0; i < m; ++i)
            z1_[i] = std::max(0.0, l[i]);
        for (std::size_t j = 0; j < n; ++j)
            z2_[j] = std::min(0.0, u[j]);
    }

    double rho = rho_;
    const double sigma = settings.sigma;

    PentaCholesky chol;
    auto refactor = [&](double r) {
        std::vector<double> d0(n), d1(n - 1, 0.0), d2(n >= 2 ? n - 2 : 0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            d0[i] = pd[i] + sigma + r; // rho * I from the bound block
        for (std::size_t i = 0; i + 1 < n; ++i)
            d1[i] = pe[i];
        for (std::size_t i = 0; i < m; ++i) { // rho * C'C
            d0[i] += r;
            d0[i + 1] += 4.0 * r;
            d0[i + 2] += r;
            d1[i] += -2.0 * r;
            d1[i + 1] += -2.0 * r;
            d2[i] += r;
        }
        chol.factor(d0, d1, d2);
    };
    refactor(rho);

    Result res;
    std::vector<double> rhs(n), cx(m), px(n), dual(n);
    const double alpha = settings.relax;

    for (std::size_t iter = 1; iter <= settings.max_iter; ++iter) {
        // x-update: (P + sigma I + rho C'C + rho I) x = sigma x - q + C'(rho z1 - y1) + rho z2 - y2
        for (std::size_t j = 0; j < n; ++j)
            rhs[j] = sigma * x_[j] - q[j] + rho * z2_[j] - y2_[j];
        if (m > 0) {
            std::vector<double> w(m);
            for (std::size_t i = 0; i < m; ++i)
                w[i] = rho * z1_[i] - y1_[i];
            apply_ct(w, rhs);
        }
        chol.solve(rhs);
        x_ = rhs;

        cx = second_differences(x_);
        for (std::size_t i = 0; i < m; ++i) {
            const double zt = alpha * cx[i] + (1.0 - alpha) * z1_[i];
            const double znew = std::max(l[i], zt + y1_[i] / rho);
            y1_[i] += rho * (zt - znew);
            z1_[i] = znew;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double zt = alpha * x_[j] + (1.0 - alpha) * z2_[j];
            const double znew = std::min(u[j], zt + y2_[j] / rho);
            y2_[j] += rho * (zt - znew);
            z2_[j] = znew;
        }

        if (iter % 10 == 0 || iter == settings.max_iter) {
            double rprim = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                rprim = std::max(rprim, std::abs(cx[i] - z1_[i]));
            for (std::size_t j = 0; j < n; ++j)
                rprim = std::max(rprim, std::abs(x_[j] - z2_[j]));

            // dual residual: P x + q + C' y1 + y2
            for (std::size_t j = 0; j < n; ++j) {
                double s = pd[j] * x_[j] + q[j] + y2_[j];
                if (j >= 1)
                    s += pe[j - 1] * x_[j - 1];
                if (j + 1 < n)
                    s += pe[j] * x_[j + 1];
                dual[j] = s;
                px[j] = s - q[j] - y2_[j];
            }
            if (m > 0)
                apply_ct(y1_, dual);
            double rdual = inf_norm(dual);

            const double sprim = std::max({inf_norm(cx), inf_norm(z1_), inf_norm(x_), 1e-30});
            const double sdual = std::max({inf_norm(px), inf_norm(q), 1e-30});
            res.primal_residual = rprim;
            res.dual_residual = rdual;
            if (rprim <= settings.eps_abs + settings.eps_rel * sprim &&
                rdual <= settings.eps_abs + settings.eps_rel * sdual) {
                res.converged = true;
                res.iterations = iter;
                break;
            }
            if (iter % 30 == 0 && iter + 30 <= settings.max_iter) {
                const double pr = rprim / sprim;
                const double dr = rdual / sdual;
                if (pr > 2.0 * dr || dr > 2.0 * pr) {
                    const double factor = std::sqrt(std::max(pr, 1e-30) / std::max(dr, 1e-30));
                    const double newrho = std::clamp(rho * factor, 1e-6, 1e6);
                    if (newrho != rho) {
                        rho = newrho;
                        refactor(rho);
                    }
                }
            }
            res.iterations = iter;
        }
    }

    res.x = x_;
    res.mu_concavity.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        res.mu_concavity[i] = std::max(0.0, -y1_[i]); // active at lower side -> y1 <= 0
    res.mu_bound.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        res.mu_bound[j] = std::max(0.0, y2_[j]); // active at upper side -> y2 >= 0
    return res;
}

} // namespace bgmix
