#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bgmix/kde.hpp"
#include "bgmix/rng.hpp"
#include "test_models.hpp"

using namespace bgmix;

TEST_CASE("one-point KDE is the kernel itself") {
    Sample s({0.0});
    const auto g = gaussian_kde(s, 1.0, linspace(-5.0, 5.0, 11));
    CHECK(g.values[5] == doctest::Approx(0.398942).epsilon(1e-5));
}

TEST_CASE("KDE integrates to one and is close to the truth at the mode") {
    const auto sample = sample_mixture(testmodels::std_normal(), 1000, 2024);
    const double h = select_bandwidth_lscv(sample, default_lscv_candidates(sample));
    const auto [mn, mx] = std::minmax_element(sample.values.begin(), sample.values.end());
    const auto pts = linspace(*mn - 5.0 * h, *mx + 5.0 * h, 2001);
    const auto g = gaussian_kde(sample, h, pts);
    CHECK(integrate(g) == doctest::Approx(1.0).epsilon(1e-3));

    double at0 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(g.points[i]) < g.spacing)
            at0 = std::max(at0, g.values[i]);
    CHECK(at0 == doctest::Approx(0.398942).epsilon(0.13)); // within 0.05 absolute
    CHECK(std::abs(at0 - 0.398942) < 0.05);
}

TEST_CASE("windowed evaluation matches the full sum") {
    const auto sample = sample_mixture(testmodels::s1(), 300, 5);
    const auto pts = linspace(-5.0, 7.0, 101);
    const auto g = gaussian_kde(sample, 0.3, pts);
    constexpr double inv_sqrt_2pi = 0.39894228040143267794;
    for (std::size_t i = 0; i < pts.size(); i += 17) {
        double brute = 0.0;
        for (double x : sample.values) {
            const double z = (pts[i] - x) / 0.3;
            brute += std::exp(-0.5 * z * z);
        }
        brute *= inv_sqrt_2pi / (0.3 * static_cast<double>(sample.size()));
        CHECK(g.values[i] == doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("reflected KDE doubles the boundary kernel for a boundary point") {
    Sample s({0.0});
    const auto g = reflected_kde(s, 0.0, 1.0, linspace(0.0, 5.0, 6));
    CHECK(g.values[0] == doctest::Approx(0.797885).epsilon(1e-5));
}

TEST_CASE("reflected KDE equals doubled plain KDE of the augmented sample") {
    const auto sample = sample_mixture(testmodels::m1(), 400, 11);
    const double h = 0.25;
    const auto pts = linspace(0.0, 10.0, 501);
    const auto refl = reflected_kde(sample, 0.0, h, pts);

    std::vector<double> aug = sample.values;
    for (double x : sample.values)
        aug.push_back(-x);
    const auto plain = gaussian_kde(Sample(aug), h, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(refl.values[i] == doctest::Approx(2.0 * plain.values[i]).epsilon(1e-12));
}

TEST_CASE("reflected KDE conserves mass on the half line") {
    const auto sample = sample_mixture(testmodels::m1(), 500, 21);
    const double h = 0.3;
    const double hi = *std::max_element(sample.values.begin(), sample.values.end()) + 5.0 * h;
    const auto g = reflected_kde(sample, 0.0, h, linspace(0.0, hi, 2001));
    CHECK(integrate(g) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("reflected KDE fixes the boundary bias of the plain KDE") {
    MixtureSpec expo;
    expo.components = {{Family::Exponential, 1.0, 0.0, 1.0}};
    const auto sample = sample_mixture(expo, 1000, 33);
    const double h = 0.25;
    const auto pts = linspace(0.0, 9.0, 901);
    const double reflected_at0 = reflected_kde(sample, 0.0, h, pts).values[0];
    const double plain_at0 = gaussian_kde(sample, h, pts).values[0];
    CHECK(std::abs(reflected_at0 - 1.0) < 0.15);
    CHECK(std::abs(reflected_at0 - 1.0) < std::abs(plain_at0 - 1.0));
}

TEST_CASE("reflected KDE rejects data below the boundary") {
    Sample s({-0.5, 1.0});
    CHECK_THROWS_AS(reflected_kde(s, 0.0, 1.0, linspace(0.0, 2.0, 3)),
                    std::invalid_argument);
}

TEST_CASE("LSCV selection lands in a sane range on standard normal data") {
    const auto sample = sample_mixture(testmodels::std_normal(), 1000, 99);
    // rule-of-thumb anchor: 1.06 sigma n^{-1/5} ~ 0.266
    CHECK(silverman_bandwidth(sample) == doctest::Approx(0.266).epsilon(0.15));

    std::vector<double> cands;
    for (int i = 0; i < 40; ++i)
        cands.push_back(0.05 * std::pow(2.0 / 0.05, i / 39.0));
    const double h = select_bandwidth_lscv(sample, cands);
    CHECK(h >= 0.15);
    CHECK(h <= 0.8);
}

TEST_CASE("LSCV single candidate short-circuits") {
    const auto sample = sample_mixture(testmodels::std_normal(), 50, 7);
    CHECK(select_bandwidth_lscv(sample, {0.37}) == 0.37);
}

TEST_CASE("LSCV is scale equivariant") {
    const auto sample = sample_mixture(testmodels::std_normal(), 400, 64);
    std::vector<double> cands;
    for (int i = 0; i < 15; ++i)
        cands.push_back(0.08 * std::pow(1.3, i));
    const double h = select_bandwidth_lscv(sample, cands);

    const double c = 2.5;
    std::vector<double> scaled_values;
    for (double x : sample.values)
        scaled_values.push_back(c * x);
    std::vector<double> scaled_cands;
    for (double x : cands)
        scaled_cands.push_back(c * x);
    const double hs = select_bandwidth_lscv(Sample(scaled_values), scaled_cands);
    CHECK(hs == doctest::Approx(c * h).epsilon(1e-12));
}

TEST_CASE("LSCV rejects degenerate samples") {
    Sample flat(std::vector<double>(100, 1.0));
    CHECK_THROWS_AS(select_bandwidth_lscv(flat, {0.1, 0.2}), std::invalid_argument);
}
