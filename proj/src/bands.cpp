#include "bgmix/bands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bgmix/rng.hpp"

namespace bgmix {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kKernelCut = 9.0;

// Precomputed kernel weights from each grid point to the (augmented) sample,
// so every bootstrap curve is a weighted sum with integer resample counts --
// no exp() in the bootstrap loop.
struct KernelTable {
    std::size_t n = 0;                    // original sample size
    std::vector<std::size_t> row_start;   // per grid point, into vals/orig
    std::vector<double> vals;             // phi((t - a_j)/h) / (n h)
    std::vector<std::uint32_t> orig;      // a_j's original (sorted-sample) index
};

KernelTable build_table(const std::vector<double>& sorted, double h,
                        std::optional<double> boundary,
                        const std::vector<double>& grid_points) {
    const std::size_t n = sorted.size();
    std::vector<double> aug;
    std::vector<std::uint32_t> aug_orig;
    if (boundary) {
        aug.resize(2 * n);
        aug_orig.resize(2 * n);
        // reflections of ascending values are descending; merge back to sorted
        for (std::size_t i = 0; i < n; ++i) {
            aug[i] = 2.0 * *boundary - sorted[n - 1 - i];
            aug_orig[i] = static_cast<std::uint32_t>(n - 1 - i);
            aug[n + i] = sorted[i];
            aug_orig[n + i] = static_cast<std::uint32_t>(i);
        }
    } else {
        aug = sorted;
        aug_orig.resize(n);
        std::iota(aug_orig.begin(), aug_orig.end(), 0);
    }

    KernelTable table;
    table.n = n;
    table.row_start.assign(grid_points.size() + 1, 0);
    const double cut = kKernelCut * h;
    const double scale = kInvSqrt2Pi / (static_cast<double>(n) * h);
    for (std::size_t g = 0; g < grid_points.size(); ++g) {
        const double t = grid_points[g];
        const auto lo = std::lower_bound(aug.begin(), aug.end(), t - cut);
        const auto hi = std::upper_bound(lo, aug.end(), t + cut);
        for (auto it = lo; it != hi; ++it) {
            const double z = (t - *it) / h;
            table.vals.push_back(scale * std::exp(-0.5 * z * z));
            table.orig.push_back(aug_orig[static_cast<std::size_t>(it - aug.begin())]);
        }
        table.row_start[g + 1] = table.vals.size();
    }
    return table;
}

std::vector<double> curve_from_counts(const KernelTable& t, const std::vector<double>& counts) {
    const std::size_t m = t.row_start.size() - 1;
    std::vector<double> out(m);
    for (std::size_t g = 0; g < m; ++g) {
        double s = 0.0;
        for (std::size_t k = t.row_start[g]; k < t.row_start[g + 1]; ++k)
            s += t.vals[k] * counts[t.orig[k]];
        out[g] = s;
    }
    return out;
}

struct BandCore {
    std::vector<double> fhat;
    double q = 0.0;
};

BandCore band_core(const Sample& sample, const std::vector<double>& grid_points, double alpha,
                   std::size_t B, double bandwidth, std::optional<double> boundary,
                   std::uint64_t seed) {
    if (B < 100)
        throw std::invalid_argument("bootstrap_band: need B >= 100");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("bootstrap_band: alpha must lie in (0, 1)");
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("bootstrap_band: bandwidth must be positive");
    if (boundary) {
        for (double x : sample.values)
            if (x < *boundary)
                throw std::invalid_argument("bootstrap_band: sample value below boundary");
    }

    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    const KernelTable table = build_table(sorted, bandwidth, boundary, grid_points);

    std::vector<double> ones(n, 1.0);
    BandCore core;
    core.fhat = curve_from_counts(table, ones);

    std::vector<double> sup_dev(B);
    std::vector<double> counts(n);
    for (std::size_t b = 0; b < B; ++b) {
        Rng rng(derive_seed(seed, b));
        std::fill(counts.begin(), counts.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            counts[rng.bounded(n)] += 1.0;
        const auto curve = curve_from_counts(table, counts);
        double s = 0.0;
        for (std::size_t g = 0; g < curve.size(); ++g)
            s = std::max(s, std::abs(curve[g] - core.fhat[g]));
        sup_dev[b] = s;
    }
    std::sort(sup_dev.begin(), sup_dev.end());
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil((1.0 - alpha) * static_cast<double>(B)));
    core.q = sup_dev[std::min(rank, B) - 1];
    return core;
}

} // namespace

ConfidenceBand bootstrap_band(const Sample& sample, const std::vector<double>& grid_points,
                              double alpha, std::size_t B, double bandwidth,
                              std::optional<double> boundary, std::uint64_t seed) {
    const BandCore core = band_core(sample, grid_points, alpha, B, bandwidth, boundary, seed);
    std::vector<double> lo(core.fhat.size()), hi(core.fhat.size());
    for (std::size_t g = 0; g < core.fhat.size(); ++g) {
        lo[g] = std::max(core.fhat[g] - core.q, 0.0);
        hi[g] = core.fhat[g] + core.q;
    }
    ConfidenceBand band;
    band.lower = DensityGrid(grid_points, std::move(lo));
    band.upper = DensityGrid(grid_points, std::move(hi));
    band.alpha = alpha;
    return band;
}

double bootstrap_band_halfwidth(const Sample& sample, const std::vector<double>& grid_points,
                                double alpha, std::size_t B, double bandwidth,
                                std::optional<double> boundary, std::uint64_t seed) {
    return band_core(sample, grid_points, alpha, B, bandwidth, boundary, seed).q;
}

} // namespace bgmix
