#include "bgmix/kde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bgmix {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kKernelCut = 9.0; // in bandwidths; phi(9) ~ 1e-18

std::vector<double> kde_values(const std::vector<double>& sorted, double n_orig, double h,
                               const std::vector<double>& grid_points) {
    std::vector<double> vals(grid_points.size(), 0.0);
    const double cut = kKernelCut * h;
    const double scale = 1.0 / (n_orig * h) * kInvSqrt2Pi;
    for (std::size_t i = 0; i < grid_points.size(); ++i) {
        const double t = grid_points[i];
        auto lo = std::lower_bound(sorted.begin(), sorted.end(), t - cut);
        auto hi = std::upper_bound(lo, sorted.end(), t + cut);
        double s = 0.0;
        for (auto it = lo; it != hi; ++it) {
            const double z = (t - *it) / h;
            s += std::exp(-0.5 * z * z);
        }
        vals[i] = s * scale;
    }
    return vals;
}

} // namespace

DensityGrid gaussian_kde(const Sample& sample, double bandwidth,
                         const std::vector<double>& grid_points) {
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("gaussian_kde: bandwidth must be positive");
    if (sample.values.empty())
        throw std::invalid_argument("gaussian_kde: empty sample");
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    auto vals = kde_values(sorted, static_cast<double>(sorted.size()), bandwidth, grid_points);
    return DensityGrid(grid_points, std::move(vals));
}

DensityGrid reflected_kde(const Sample& sample, double boundary, double bandwidth,
                          const std::vector<double>& grid_points) {
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("reflected_kde: bandwidth must be positive");
    if (sample.values.empty())
        throw std::invalid_argument("reflected_kde: empty sample");
    std::vector<double> aug;
    aug.reserve(2 * sample.size());
    for (double x : sample.values) {
        if (x < boundary)
            throw std::invalid_argument("reflected_kde: sample value " + std::to_string(x) +
                                        " below boundary " + std::to_string(boundary));
        aug.push_back(x);
        aug.push_back(2.0 * boundary - x);
    }
    for (double t : grid_points)
        if (t < boundary - 1e-12)
            throw std::invalid_argument("reflected_kde: grid point below boundary");
    std::sort(aug.begin(), aug.end());
    // augmented 2n-sample KDE times 2 == 1/(n h) sum over pairs
    auto vals = kde_values(aug, static_cast<double>(sample.size()), bandwidth, grid_points);
    return DensityGrid(grid_points, std::move(vals));
}

double silverman_bandwidth(const Sample& sample) {
    const std::size_t n = sample.size();
    if (n < 2)
        throw std::invalid_argument("silverman_bandwidth: need n >= 2");
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    double mean = 0.0;
    for (double x : sorted)
        mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : sorted)
        ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    auto quantile = [&](double p) {
        const double idx = p * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(idx);
        const double frac = idx - static_cast<double>(lo);
        return lo + 1 < n ? sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac : sorted[lo];
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    double scale = sd;
    if (iqr > 0.0)
        scale = std::min(scale, iqr / 1.34);
    if (!(scale > 0.0))
        throw std::invalid_argument("silverman_bandwidth: degenerate sample");
    return 1.06 * scale * std::pow(static_cast<double>(n), -0.2);
}

std::vector<double> default_lscv_candidates(const Sample& sample) {
    const double rot = silverman_bandwidth(sample);
    const std::size_t m = 40;
    std::vector<double> cands(m);
    const double lo = std::log(0.1 * rot);
    const double hi = std::log(4.0 * rot);
    for (std::size_t i = 0; i < m; ++i)
        cands[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1));
    return cands;
}

namespace {

// Sorted nonnegative pairwise differences x_j - x_i, i < j.
std::vector<double> sorted_pair_diffs(const std::vector<double>& sorted) {
    const std::size_t n = sorted.size();
    std::vector<double> diffs;
    diffs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            diffs.push_back(sorted[j] - sorted[i]);
    std::sort(diffs.begin(), diffs.end());
    return diffs;
}

double lscv_from_diffs(const std::vector<double>& diffs, std::size_t n, double h) {
    // One exp per pair: e2 = exp(-q) covers the sqrt(2)h kernel and e2^2 the
    // h kernel, with q = d^2 / (4 h^2).
    const double dn = static_cast<double>(n);
    double s_conv = 0.0; // sum over pairs of phi(d / (sqrt2 h)), unnormalized exp part
    double s_loo = 0.0;  // sum over pairs of phi(d / h), unnormalized exp part
    const double cut = kKernelCut * h * std::sqrt(2.0);
    auto end = std::upper_bound(diffs.begin(), diffs.end(), cut);
    for (auto it = diffs.begin(); it != end; ++it) {
        const double q = (*it) * (*it) / (4.0 * h * h);
        const double e2 = std::exp(-q);
        s_conv += e2;
        s_loo += e2 * e2;
    }
    const double int_f2 =
        (dn + 2.0 * s_conv) * kInvSqrt2Pi / (dn * dn * h * std::sqrt(2.0));
    const double loo_mean = 2.0 * s_loo * kInvSqrt2Pi / (dn * (dn - 1.0) * h);
    return int_f2 - 2.0 * loo_mean;
}

} // namespace

double lscv_score(const Sample& sample, double bandwidth) {
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    return lscv_from_diffs(sorted_pair_diffs(sorted), sorted.size(), bandwidth);
}

double select_bandwidth_lscv(const Sample& sample, const std::vector<double>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("select_bandwidth_lscv: no candidates");
    for (double h : candidates)
        if (!(h > 0.0))
            throw std::invalid_argument("select_bandwidth_lscv: candidates must be positive");
    if (candidates.size() == 1)
        return candidates.front();

    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() == sorted.front())
        throw std::invalid_argument("select_bandwidth_lscv: degenerate sample (all values equal)");

    const auto diffs = sorted_pair_diffs(sorted);
    std::vector<double> order(candidates);
    std::sort(order.begin(), order.end());

    double best_h = order.front();
    double best_score = lscv_from_diffs(diffs, sorted.size(), best_h);
    for (std::size_t i = 1; i < order.size(); ++i) {
        const double score = lscv_from_diffs(diffs, sorted.size(), order[i]);
        if (score <= best_score) { // ties -> larger bandwidth
            best_score = score;
            best_h = order[i];
        }
    }
    return best_h;
}

} // namespace bgmix
