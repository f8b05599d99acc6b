#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bgmix/bands.hpp"
#include "bgmix/mixture.hpp"
#include "bgmix/rng.hpp"
#include "test_models.hpp"

using namespace bgmix;

TEST_CASE("band construction keeps fhat between lower and upper") {
    const auto sample = sample_mixture(testmodels::s1(), 400, 17);
    const auto pts = linspace(-4.0, 7.0, 301);
    const auto band = bootstrap_band(sample, pts, 0.05, 150, 0.3, std::nullopt, 5);
    const auto fhat = DensityGrid(pts, std::vector<double>(pts.size(), 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(band.lower.values[i] <= band.upper.values[i]);
        CHECK(band.lower.values[i] >= 0.0);
    }
    // constant width above the clamp: upper - lower <= 2q with equality
    // wherever the lower bound is not clamped at zero
    double width = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        width = std::max(width, band.upper.values[i] - band.lower.values[i]);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (band.lower.values[i] > 0.0)
            CHECK(band.upper.values[i] - band.lower.values[i] ==
                  doctest::Approx(width).epsilon(1e-9));
}

TEST_CASE("band rejects bad parameters") {
    const auto sample = sample_mixture(testmodels::std_normal(), 50, 1);
    const auto pts = linspace(-3.0, 3.0, 31);
    CHECK_THROWS_AS(bootstrap_band(sample, pts, 0.05, 99, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_band(sample, pts, 0.0, 200, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_band(sample, pts, 1.0, 200, 0.3), std::invalid_argument);
}

TEST_CASE("band is invariant under permutation of the sample") {
    auto values = sample_mixture(testmodels::s1(), 200, 3).values;
    const auto pts = linspace(-4.0, 7.0, 101);
    const auto band1 = bootstrap_band(Sample(values), pts, 0.05, 120, 0.3, std::nullopt, 9);
    std::reverse(values.begin(), values.end());
    std::swap(values[0], values[57]);
    const auto band2 = bootstrap_band(Sample(values), pts, 0.05, 120, 0.3, std::nullopt, 9);
    CHECK(band1.lower.values == band2.lower.values);
    CHECK(band1.upper.values == band2.upper.values);
}

TEST_CASE("degenerate sample gives a zero-width band") {
    Sample flat(std::vector<double>(120, 2.0));
    const auto pts = linspace(0.0, 4.0, 41);
    const double q = bootstrap_band_halfwidth(flat, pts, 0.05, 100, 0.5, std::nullopt, 11);
    CHECK(q == 0.0);
}

TEST_CASE("shrinking alpha widens the band on the same resamples") {
    const auto sample = sample_mixture(testmodels::std_normal(), 300, 8);
    const auto pts = linspace(-4.0, 4.0, 161);
    const double q10 = bootstrap_band_halfwidth(sample, pts, 0.10, 200, 0.25, std::nullopt, 4);
    const double q01 = bootstrap_band_halfwidth(sample, pts, 0.01, 200, 0.25, std::nullopt, 4);
    CHECK(q01 >= q10);
}

TEST_CASE("coverage study: the truth stays inside the band") {
    // 200 seeded replications; the bootstrap band should cover the central
    // part of the true density in at least 90% of them
    const auto truth_grid = linspace(-3.0, 3.0, 241);
    const auto truth = grid_from_mixture(testmodels::std_normal(), truth_grid);
    int covered = 0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        const auto sample = sample_mixture(testmodels::std_normal(), 1000,
                                           derive_seed(20240601, static_cast<std::uint64_t>(r)));
        // undersmoothed fixed bandwidth, as the fit pipeline would choose
        const auto band = bootstrap_band(sample, truth_grid, 0.05, 500, 0.7 * 0.266,
                                         std::nullopt, derive_seed(1, static_cast<std::uint64_t>(r)));
        bool ok = true;
        for (std::size_t i = 0; i < truth_grid.size() && ok; ++i)
            ok = band.lower.values[i] <= truth.values[i] &&
                 truth.values[i] <= band.upper.values[i];
        covered += ok ? 1 : 0;
    }
    CHECK(covered >= 180);
}

TEST_CASE("band width shrinks with the sample size") {
    const auto pts = linspace(-4.0, 4.0, 161);
    std::vector<double> q1000, q4000;
    for (int r = 0; r < 11; ++r) {
        const auto small = sample_mixture(testmodels::std_normal(), 1000,
                                          derive_seed(5, static_cast<std::uint64_t>(r)));
        const auto large = sample_mixture(testmodels::std_normal(), 4000,
                                          derive_seed(6, static_cast<std::uint64_t>(r)));
        q1000.push_back(
            bootstrap_band_halfwidth(small, pts, 0.05, 200, 0.186, std::nullopt, 2));
        q4000.push_back(
            bootstrap_band_halfwidth(large, pts, 0.05, 200, 0.141, std::nullopt, 2));
    }
    std::sort(q1000.begin(), q1000.end());
    std::sort(q4000.begin(), q4000.end());
    CHECK(q4000[5] < q1000[5]);
}

TEST_CASE("reflected band respects the boundary") {
    const auto sample = sample_mixture(testmodels::m1(), 400, 19);
    const auto pts = linspace(0.0, 10.0, 201);
    const auto band = bootstrap_band(sample, pts, 0.05, 120, 0.25, 0.0, 3);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(band.lower.values[i] <= band.upper.values[i]);
    CHECK(band.upper.values[0] > 0.5); // boundary mass is not washed out
}
