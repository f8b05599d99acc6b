#pragma once

#include <cstdint>
#include <optional>

#include "bgmix/decomposition.hpp"
#include "bgmix/logconcave.hpp"
#include "bgmix/sample.hpp"

namespace bgmix {

/// Full sample pipeline configuration: bandwidth -> density estimate ->
/// extraction -> bootstrap band -> proportion interval.
struct FitOptions {
    Shape shape = Shape::Symmetric;
    std::optional<double> center;            // symmetric; nullopt => search
    std::vector<double> center_candidates;   // optional explicit search set
    double support_start = 0.0;              // monotone boundary
    double alpha = 0.05;
    std::size_t bootstrap = 500;
    std::optional<double> bandwidth;         // nullopt => least-squares CV
    std::size_t grid_points = 2001;          // symmetric/monotone grids
    double logconcave_spacing = 0.02;        // target solver grid spacing
    std::size_t logconcave_max_points = 1001;
    SolveOptions solver;
    std::uint64_t seed = 0;
    bool with_band = true;
};

/// Bands are undersmoothed relative to the point estimate's bandwidth.
constexpr double kBandUndersmooth = 0.7;

struct FitResult {
    Shape shape = Shape::Symmetric;
    std::optional<double> center;
    double pi0 = 0.0;
    double pi_lower = 0.0;
    double pi_upper = 1.0;
    bool has_band = false;
    double bandwidth = 0.0;
    DensityGrid f_hat;
    DensityGrid h0;
    DensityGrid g0;
    DensityGrid h_lower;
    DensityGrid h_upper;
};

FitResult fit_sample(const Sample& sample, const FitOptions& options);

} // namespace bgmix
