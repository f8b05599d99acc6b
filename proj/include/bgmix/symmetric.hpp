#pragma once

#include <functional>
#include <vector>

#include "bgmix/bands.hpp"
#include "bgmix/decomposition.hpp"

namespace bgmix {

/// Largest background component symmetric about `center`:
/// h0(t) = min{f(t), f(2c - t)}. The grid must be symmetric about the
/// center (index i mirrors to n-1-i), so the minimum is exact.
BackgroundDecomposition extract_symmetric(const DensityGrid& f, double center);

/// Center search over explicit candidates, re-gridding per candidate through
/// `builder` (which must return a grid symmetric about its argument).
/// Returns the candidate with maximal pi0; ties prefer the smallest |c|,
/// then the smallest c.
std::pair<double, BackgroundDecomposition>
search_center(const std::function<DensityGrid(double)>& builder,
              const std::vector<double>& candidates);

/// Grid-only overload: candidates snap to the nearest half-grid offset so the
/// reflection maps grid points to grid points; mirror values falling outside
/// the grid count as zero (the grid is expected to pad into negligible tails).
std::pair<double, BackgroundDecomposition>
search_center(const DensityGrid& f, const std::vector<double>& candidates);

/// Interval and band curves implied by a density confidence band:
/// the symmetric minimum applied to each of the band's curves.
struct SymmetricInterval {
    double pi_lower = 0.0;
    double pi_upper = 1.0;
    DensityGrid h_lower;
    DensityGrid h_upper;
};

SymmetricInterval symmetric_interval(const ConfidenceBand& band, double center);

/// Default candidate centers: 101 equispaced values between the 40th and
/// 60th percentiles of the sample.
std::vector<double> default_center_candidates(const std::vector<double>& data);

} // namespace bgmix
