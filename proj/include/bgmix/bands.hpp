#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bgmix/grid.hpp"
#include "bgmix/sample.hpp"

namespace bgmix {

/// Simultaneous confidence band for a density: lower <= upper pointwise
/// on a shared grid, at level 1 - alpha.
struct ConfidenceBand {
    DensityGrid lower;
    DensityGrid upper;
    double alpha = 0.05;
};

/// Sup-norm percentile bootstrap band around the kernel estimate.
///
/// Computes fhat on the grid (reflected at `boundary` when set), draws B
/// nonparametric resamples, takes the sup deviation of each bootstrap curve
/// from fhat, and widens fhat by the empirical (1-alpha) quantile of those
/// deviations. The sample is sorted internally, so the band is invariant
/// under permutation of the input. Replicate b uses a seed derived from
/// (seed, b); results do not depend on evaluation order.
ConfidenceBand bootstrap_band(const Sample& sample, const std::vector<double>& grid_points,
                              double alpha, std::size_t B, double bandwidth,
                              std::optional<double> boundary = std::nullopt,
                              std::uint64_t seed = 0);

/// The band half-width q for the same inputs (exposed for diagnostics/tests).
double bootstrap_band_halfwidth(const Sample& sample, const std::vector<double>& grid_points,
                                double alpha, std::size_t B, double bandwidth,
                                std::optional<double> boundary = std::nullopt,
                                std::uint64_t seed = 0);

} // namespace bgmix
