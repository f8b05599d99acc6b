#pragma once

#include <optional>
#include <string>

#include "bgmix/fit.hpp"
#include "bgmix/mixture.hpp"
#include "bgmix/rng.hpp"

namespace bgmix {

struct TruePi0Options {
    std::optional<double> center;          // symmetric; nullopt => search
    std::vector<double> center_candidates; // optional explicit search set
    std::size_t grid_points = 4001;        // symmetric/monotone resolution
    std::size_t k = 400;                   // logconcave grid half-count
    SolveOptions solver;
};

/// Oracle proportion: the extractor applied to the exact mixture density on a
/// fine grid spanning the mixture tails. Monotone shape requires a spec whose
/// support is bounded below.
double true_pi0(const MixtureSpec& spec, Shape shape, const TruePi0Options& options = {});

struct ReplicationOptions {
    std::size_t n = 1000;
    std::size_t reps = 100;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool with_intervals = true;
    std::optional<double> true_value; // coverage target; computed when absent
    std::size_t threads = 0;          // 0 => hardware concurrency
    FitOptions fit;                   // shape, center, bandwidth, solver, ...
};

struct ReplicationSummary {
    std::string estimator;
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0;
    std::size_t reps = 0;
    std::optional<std::size_t> coverage_count;
    std::size_t failures = 0;
    std::optional<double> true_value;
    std::vector<double> estimates; // sorted ascending over successful reps
};

/// Monte-Carlo harness: per replicate draw a sample, fit, extract, and (when
/// requested) compute the proportion interval. Per-replicate seeds derive
/// from (seed, index), and the sorted-aggregation makes the summary identical
/// across thread counts. Per-replicate failures are counted, not fatal.
ReplicationSummary run_replications(const MixtureSpec& spec, Shape shape,
                                    const ReplicationOptions& options);

} // namespace bgmix
