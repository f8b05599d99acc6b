#pragma once

#include "bgmix/bands.hpp"
#include "bgmix/decomposition.hpp"

namespace bgmix {

/// Largest non-increasing background component on a grid starting at the
/// support lower bound: h0 is the running minimum of f from the left.
BackgroundDecomposition extract_monotone(const DensityGrid& f);

struct MonotoneInterval {
    double pi_lower = 0.0;
    double pi_upper = 1.0;
    DensityGrid h_lower;
    DensityGrid h_upper;
};

/// Running minima of the band's curves, integrated.
MonotoneInterval monotone_interval(const ConfidenceBand& band);

} // namespace bgmix
