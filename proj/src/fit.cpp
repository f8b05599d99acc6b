#include "bgmix/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bgmix/kde.hpp"
#include "bgmix/monotone.hpp"
#include "bgmix/symmetric.hpp"

namespace bgmix {

namespace {

std::size_t odd_clamped(std::size_t m, std::size_t lo, std::size_t hi) {
    m = std::clamp(m, lo, hi);
    return (m % 2 == 0) ? m - 1 : m;
}

} // namespace

FitResult fit_sample(const Sample& sample, const FitOptions& options) {
    FitResult out;
    out.shape = options.shape;

    const double h = options.bandwidth
                         ? *options.bandwidth
                         : select_bandwidth_lscv(sample, default_lscv_candidates(sample));
    if (!(h > 0.0))
        throw std::invalid_argument("fit_sample: bandwidth must be positive");
    out.bandwidth = h;
    const double h_band = kBandUndersmooth * h;

    const auto [mn_it, mx_it] = std::minmax_element(sample.values.begin(), sample.values.end());
    const double lo = *mn_it - 5.0 * h;
    const double hi = *mx_it + 5.0 * h;

    switch (options.shape) {
    case Shape::Symmetric: {
        const std::size_t half = (std::max<std::size_t>(options.grid_points, 3) - 1) / 2;
        auto builder = [&](double c) {
            const double half_width = std::max(hi - c, c - lo);
            return gaussian_kde(sample, h, symmetric_points(c, half_width / half, half));
        };
        double center;
        BackgroundDecomposition dec;
        if (options.center) {
            center = *options.center;
            dec = extract_symmetric(builder(center), center);
        } else {
            const auto candidates = options.center_candidates.empty()
                                        ? default_center_candidates(sample.values)
                                        : options.center_candidates;
            std::tie(center, dec) = search_center(builder, candidates);
        }
        out.center = center;
        out.pi0 = dec.pi0;
        out.f_hat = builder(center);
        out.h0 = std::move(dec.h0);
        out.g0 = std::move(dec.g0);
        if (options.with_band) {
            const auto band = bootstrap_band(sample, out.f_hat.points, options.alpha,
                                             options.bootstrap, h_band, std::nullopt,
                                             options.seed);
            auto iv = symmetric_interval(band, center);
            out.pi_lower = iv.pi_lower;
            out.pi_upper = iv.pi_upper;
            out.h_lower = std::move(iv.h_lower);
            out.h_upper = std::move(iv.h_upper);
            out.has_band = true;
        }
        break;
    }
    case Shape::Monotone: {
        const double start = options.support_start;
        for (double x : sample.values)
            if (x < start)
                throw std::invalid_argument("fit_sample: value " + std::to_string(x) +
                                            " lies below the support start " +
                                            std::to_string(start));
        const auto pts = linspace(start, hi, std::max<std::size_t>(options.grid_points, 3));
        out.f_hat = reflected_kde(sample, start, h, pts);
        auto dec = extract_monotone(out.f_hat);
        out.pi0 = dec.pi0;
        out.h0 = std::move(dec.h0);
        out.g0 = std::move(dec.g0);
        if (options.with_band) {
            const auto band = bootstrap_band(sample, pts, options.alpha, options.bootstrap,
                                             h_band, start, options.seed);
            auto iv = monotone_interval(band);
            out.pi_lower = iv.pi_lower;
            out.pi_upper = iv.pi_upper;
            out.h_lower = std::move(iv.h_lower);
            out.h_upper = std::move(iv.h_upper);
            out.has_band = true;
        }
        break;
    }
    case Shape::LogConcave: {
        const std::size_t m = odd_clamped(
            static_cast<std::size_t>(std::lround((hi - lo) / options.logconcave_spacing)) + 1,
            51, options.logconcave_max_points);
        const auto pts = linspace(lo, hi, m);
        out.f_hat = gaussian_kde(sample, h, pts);
        auto res = extract_logconcave_detailed(out.f_hat, options.solver);
        out.pi0 = res.decomposition.pi0;
        out.h0 = std::move(res.decomposition.h0);
        out.g0 = std::move(res.decomposition.g0);
        if (options.with_band) {
            const auto band = bootstrap_band(sample, pts, options.alpha, options.bootstrap,
                                             h_band, std::nullopt, options.seed);
            auto iv = logconcave_interval(band, options.solver);
            out.pi_lower = iv.pi_lower;
            out.pi_upper = iv.pi_upper;
            out.h_lower = std::move(iv.h_lower);
            out.h_upper = std::move(iv.h_upper);
            out.has_band = true;
        }
        break;
    }
    }
    return out;
}

} // namespace bgmix
