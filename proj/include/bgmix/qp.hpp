#pragma once

#include <cstddef>
#include <vector>

namespace bgmix {

/// Convex QP specialized to the extractor's constraint pattern:
///
///   minimize    0.5 x' P x + q' x
///   subject to  (C x)_i >= l_i     (second differences: -x_i + 2 x_{i+1} - x_{i+2})
///               x_j <= u_j
///
/// with P symmetric tridiagonal positive (semi)definite. Solved by an
/// over-relaxed ADMM splitting; the linear system P + sigma I + rho C'C + rho I
/// is pentadiagonal, so each iteration is O(n) via a banded Cholesky.
class ConcaveBoundQP {
public:
    struct Settings {
        double eps_abs = 1e-10;
        double eps_rel = 1e-9;
        std::size_t max_iter = 20000;
        double rho = 1.0;
        double sigma = 1e-6;
        double relax = 1.6;
    };

    struct Result {
        std::vector<double> x;
        std::vector<double> mu_concavity; // multipliers for Cx >= l (>= 0)
        std::vector<double> mu_bound;     // multipliers for x <= u  (>= 0)
        std::size_t iterations = 0;
        double primal_residual = 0.0;
        double dual_residual = 0.0;
        bool converged = false;
    };

    /// pd: P diagonal (n), pe: P superdiagonal (n-1), l: (n-2), u: (n).
    /// `warm` reuses the previous solution/multipliers when sizes match.
    Result solve(const std::vector<double>& pd, const std::vector<double>& pe,
                 const std::vector<double>& q, const std::vector<double>& l,
                 const std::vector<double>& u, const Settings& settings, bool warm);

    void reset() { n_ = 0; }

private:
    std::size_t n_ = 0;
    std::vector<double> x_, z1_, z2_, y1_, y2_;
};

/// Second differences (C x)_i = -x_i + 2 x_{i+1} - x_{i+2}, length n-2.
std::vector<double> second_differences(const std::vector<double>& x);

/// Cholesky factorization/solve for a symmetric positive definite band matrix
/// with bandwidth 2 (diagonals d0[n], d1[n-1], d2[n-2]).
struct PentaCholesky {
    std::vector<double> l0, l1, l2;
    void factor(const std::vector<double>& d0, const std::vector<double>& d1,
                const std::vector<double>& d2);
    void solve(std::vector<double>& rhs_inout) const;
};

} // namespace bgmix
