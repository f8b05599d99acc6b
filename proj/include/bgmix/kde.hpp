#pragma once

#include <vector>

#include "bgmix/grid.hpp"
#include "bgmix/sample.hpp"

namespace bgmix {

/// Gaussian kernel density estimate on the given (equispaced) grid points:
/// f(t) = (1/(n h)) sum phi((t - x_i)/h). Kernels are truncated at 9
/// bandwidths, far below double precision of the result.
DensityGrid gaussian_kde(const Sample& sample, double bandwidth,
                         const std::vector<double>& grid_points);

/// Boundary-corrected estimate for data on [boundary, inf): plain KDE of the
/// sample augmented with its reflection 2*boundary - x, doubled, evaluated at
/// grid points >= boundary. Integrates to 1 over [boundary, inf).
DensityGrid reflected_kde(const Sample& sample, double boundary, double bandwidth,
                          const std::vector<double>& grid_points);

/// Normal-reference rule with robust scale: 1.06 min(sd, IQR/1.34) n^(-1/5).
double silverman_bandwidth(const Sample& sample);

/// 40 log-spaced candidates spanning [0.1, 4] x silverman_bandwidth.
std::vector<double> default_lscv_candidates(const Sample& sample);

/// Least-squares cross-validation score for a Gaussian-kernel bandwidth:
/// integral of fhat^2 minus twice the mean leave-one-out density at the data.
double lscv_score(const Sample& sample, double bandwidth);

/// Candidate minimizing LSCV; ties go to the larger bandwidth.
/// Throws on a degenerate (constant) sample.
double select_bandwidth_lscv(const Sample& sample, const std::vector<double>& candidates);

} // namespace bgmix
