#include "bgmix/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bgmix {

namespace {

void check_symmetric_grid(const std::vector<double>& pts, double center) {
    const std::size_t n = pts.size();
    const double tol = 1e-9 * std::max(1.0, std::abs(pts.back() - pts.front()));
    for (std::size_t i = 0; i < n / 2 + 1; ++i) {
        const double mirror = 2.0 * center - pts[n - 1 - i];
        if (std::abs(mirror - pts[i]) > tol)
            throw std::invalid_argument("grid not symmetric about center " +
                                        std::to_string(center));
    }
}

std::vector<double> symmetric_min(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i)
        h[i] = std::min(v[i], v[n - 1 - i]);
    return h;
}

} // namespace

BackgroundDecomposition extract_symmetric(const DensityGrid& f, double center) {
    check_symmetric_grid(f.points, center);
    DensityGrid h0(f.points, symmetric_min(f.values));
    BackgroundDecomposition out;
    out.pi0 = std::min(integrate(h0), 1.0);
    out.g0 = normalize_background(h0, out.pi0);
    out.h0 = std::move(h0);
    out.center = center;
    out.shape = Shape::Symmetric;
    return out;
}

std::pair<double, BackgroundDecomposition>
search_center(const std::function<DensityGrid(double)>& builder,
              const std::vector<double>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("search_center: no candidates");
    bool have = false;
    double best_c = 0.0;
    BackgroundDecomposition best;
    for (double c : candidates) {
        BackgroundDecomposition dec = extract_symmetric(builder(c), c);
        const bool better =
            !have || dec.pi0 > best.pi0 ||
            (dec.pi0 == best.pi0 &&
             (std::abs(c) < std::abs(best_c) ||
              (std::abs(c) == std::abs(best_c) && c < best_c)));
        if (better) {
            best = std::move(dec);
            best_c = c;
            have = true;
        }
    }
    return {best_c, std::move(best)};
}

std::pair<double, BackgroundDecomposition>
search_center(const DensityGrid& f, const std::vector<double>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("search_center: no candidates");
    const std::size_t n = f.size();
    const double t0 = f.points.front();
    const double half = 0.5 * f.spacing;

    bool have = false;
    double best_c = 0.0;
    BackgroundDecomposition best;
    for (double c_raw : candidates) {
        // snap so that 2c - t_i lands on the grid lattice
        const double c = t0 + half * std::round((c_raw - t0) / half);
        const double shift = 2.0 * (c - t0) / f.spacing; // mirror index of i is shift - i
        const long mirror_base = std::lround(shift);
        std::vector<double> h(n);
        for (std::size_t i = 0; i < n; ++i) {
            const long j = mirror_base - static_cast<long>(i);
            const double mirrored =
                (j >= 0 && j < static_cast<long>(n)) ? f.values[static_cast<std::size_t>(j)] : 0.0;
            h[i] = std::min(f.values[i], mirrored);
        }
        const double pi0 = std::min(trapezoid(h, f.spacing), 1.0);
        const bool better =
            !have || pi0 > best.pi0 ||
            (pi0 == best.pi0 && (std::abs(c) < std::abs(best_c) ||
                                 (std::abs(c) == std::abs(best_c) && c < best_c)));
        if (better) {
            DensityGrid h0(f.points, std::move(h));
            best.pi0 = pi0;
            best.g0 = normalize_background(h0, pi0);
            best.h0 = std::move(h0);
            best.center = c;
            best.shape = Shape::Symmetric;
            best_c = c;
            have = true;
        }
    }
    return {best_c, std::move(best)};
}

SymmetricInterval symmetric_interval(const ConfidenceBand& band, double center) {
    check_symmetric_grid(band.lower.points, center);
    SymmetricInterval out;
    out.h_lower = DensityGrid(band.lower.points, symmetric_min(band.lower.values));
    out.h_upper = DensityGrid(band.upper.points, symmetric_min(band.upper.values));
    out.pi_lower = integrate(out.h_lower);
    out.pi_upper = std::min(integrate(out.h_upper), 1.0);
    return out;
}

std::vector<double> default_center_candidates(const std::vector<double>& data) {
    std::vector<double> sorted = data;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    auto quantile = [&](double p) {
        const double idx = p * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(idx);
        const double frac = idx - static_cast<double>(lo);
        return lo + 1 < n ? sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac : sorted[lo];
    };
    const double q40 = quantile(0.40);
    const double q60 = quantile(0.60);
    std::vector<double> cands(101);
    for (std::size_t i = 0; i < cands.size(); ++i)
        cands[i] = q40 + (q60 - q40) * static_cast<double>(i) / 100.0;
    return cands;
}

} // namespace bgmix
