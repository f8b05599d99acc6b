#include "bgmix/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "bgmix/monotone.hpp"
#include "bgmix/symmetric.hpp"

namespace bgmix {

namespace {

std::vector<double> mixture_center_candidates(const MixtureSpec& spec) {
    // 101 candidates between the mixture's 40th and 60th percentiles,
    // located from the exact density's CDF on a fine grid
    const auto [lo, hi] = mixture_tail_range(spec);
    const auto grid = grid_from_mixture(spec, lo, hi, 8001);
    std::vector<double> cum(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i)
        cum[i] = cum[i - 1] + 0.5 * (grid.values[i - 1] + grid.values[i]) * grid.spacing;
    const double total = cum.back();
    auto quantile = [&](double p) {
        const double target = p * total;
        std::size_t i = 0;
        while (i + 1 < cum.size() && cum[i] < target)
            ++i;
        return grid.points[i];
    };
    const double q40 = quantile(0.40);
    const double q60 = quantile(0.60);
    std::vector<double> cands(101);
    for (std::size_t i = 0; i < cands.size(); ++i)
        cands[i] = q40 + (q60 - q40) * static_cast<double>(i) / 100.0;
    return cands;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                body(i);
            }
        });
    for (auto& th : pool)
        th.join();
}

} // namespace

double true_pi0(const MixtureSpec& spec, Shape shape, const TruePi0Options& options) {
    spec.validate();
    const auto [lo, hi] = mixture_tail_range(spec);

    switch (shape) {
    case Shape::Symmetric: {
        const std::size_t half = (std::max<std::size_t>(options.grid_points, 3) - 1) / 2;
        auto builder = [&](double c) {
            const double half_width = std::max(hi - c, c - lo);
            return grid_from_mixture(spec, symmetric_points(c, half_width / half, half));
        };
        if (options.center)
            return extract_symmetric(builder(*options.center), *options.center).pi0;
        const auto candidates = options.center_candidates.empty()
                                    ? mixture_center_candidates(spec)
                                    : options.center_candidates;
        return search_center(builder, candidates).second.pi0;
    }
    case Shape::Monotone: {
        const auto start = spec.support_lower();
        if (!start)
            throw std::invalid_argument(
                "true_pi0: monotone shape needs a mixture supported on [a, inf)");
        const auto grid = grid_from_mixture(
            spec, linspace(*start, hi, std::max<std::size_t>(options.grid_points, 3)));
        return extract_monotone(grid).pi0;
    }
    case Shape::LogConcave: {
        const double center = 0.5 * (lo + hi);
        const double step = (hi - lo) / static_cast<double>(2 * options.k);
        const auto grid = grid_from_mixture(spec, symmetric_points(center, step, options.k));
        return extract_logconcave(grid, options.solver).pi0;
    }
    }
    throw std::logic_error("true_pi0: unreachable");
}

ReplicationSummary run_replications(const MixtureSpec& spec, Shape shape,
                                    const ReplicationOptions& options) {
    if (options.reps < 1)
        throw std::invalid_argument("run_replications: need reps >= 1");
    spec.validate();

    std::optional<double> truth = options.true_value;
    if (options.with_intervals && !truth) {
        TruePi0Options tp;
        tp.center = options.fit.center;
        tp.solver = options.fit.solver;
        truth = true_pi0(spec, shape, tp);
    }

    struct RepResult {
        double pi0 = 0.0;
        double pi_lower = 0.0;
        double pi_upper = 1.0;
        bool ok = false;
        bool covered = false;
    };
    std::vector<RepResult> results(options.reps);

    FitOptions fit = options.fit;
    fit.shape = shape;
    fit.alpha = options.alpha;
    fit.with_band = options.with_intervals;

    parallel_for(options.reps, options.threads, [&](std::size_t r) {
        const std::uint64_t rep_seed = derive_seed(options.seed, r);
        try {
            const Sample sample = sample_mixture(spec, options.n, rep_seed);
            FitOptions fo = fit;
            fo.seed = derive_seed(rep_seed, 1);
            const FitResult res = fit_sample(sample, fo);
            results[r].pi0 = res.pi0;
            results[r].pi_lower = res.pi_lower;
            results[r].pi_upper = res.pi_upper;
            results[r].ok = true;
            if (options.with_intervals && truth)
                results[r].covered = res.pi_lower <= *truth && *truth <= res.pi_upper;
        } catch (const std::exception&) {
            results[r].ok = false;
        }
    });

    ReplicationSummary summary;
    summary.estimator = "pi0[" + shape_name(shape) + "]";
    summary.reps = options.reps;
    summary.true_value = truth;
    std::size_t covered = 0;
    for (const auto& res : results) {
        if (!res.ok) {
            ++summary.failures;
            continue;
        }
        summary.estimates.push_back(res.pi0);
        if (res.covered)
            ++covered;
    }
    std::sort(summary.estimates.begin(), summary.estimates.end());
    const std::size_t m = summary.estimates.size();
    if (m > 0) {
        double sum = 0.0;
        for (double x : summary.estimates)
            sum += x;
        summary.mean = sum / static_cast<double>(m);
        summary.median = (m % 2 == 1)
                             ? summary.estimates[m / 2]
                             : 0.5 * (summary.estimates[m / 2 - 1] + summary.estimates[m / 2]);
        if (m >= 2) {
            double ss = 0.0;
            for (double x : summary.estimates)
                ss += (x - summary.mean) * (x - summary.mean);
            summary.sd = std::sqrt(ss / static_cast<double>(m - 1));
        }
    }
    if (options.with_intervals)
        summary.coverage_count = covered;
    return summary;
}

} // namespace bgmix
