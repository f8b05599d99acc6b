#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bgmix/grid.hpp"
#include "bgmix/mixture.hpp"
#include "test_models.hpp"

using namespace bgmix;

TEST_CASE("DensityGrid validates its invariants") {
    CHECK_THROWS_AS(DensityGrid({0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(DensityGrid({0.0, 1.0, 1.5}, {1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(DensityGrid({0.0, 1.0}, {1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(DensityGrid({1.0, 0.0}, {1.0, 1.0}), std::invalid_argument);

    DensityGrid g(linspace(0.0, 1.0, 11), std::vector<double>(11, 1.0));
    CHECK(g.spacing == doctest::Approx(0.1));
}

TEST_CASE("integrate: constant, zero, fine normal") {
    DensityGrid flat(linspace(0.0, 1.0, 11), std::vector<double>(11, 1.0));
    CHECK(integrate(flat) == doctest::Approx(1.0).epsilon(1e-12));

    DensityGrid zero(linspace(0.0, 1.0, 11), std::vector<double>(11, 0.0));
    CHECK(integrate(zero) == 0.0);

    const auto normal = grid_from_mixture(testmodels::std_normal(), -8.0, 8.0, 1601);
    CHECK(integrate(normal) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("integrate is linear") {
    const auto pts = linspace(-2.0, 2.0, 101);
    std::vector<double> fa(pts.size()), fb(pts.size()), combo(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        fa[i] = std::exp(-pts[i] * pts[i]);
        fb[i] = 1.0 + 0.5 * std::sin(pts[i]) + 0.5;
        combo[i] = 2.0 * fa[i] + 3.0 * fb[i];
    }
    const double lhs = integrate(DensityGrid(pts, combo));
    const double rhs =
        2.0 * integrate(DensityGrid(pts, fa)) + 3.0 * integrate(DensityGrid(pts, fb));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("theta0_plugin basics") {
    const auto f = grid_from_mixture(testmodels::std_normal(), -8.0, 8.0, 1601);
    CHECK(theta0_plugin(f, f) == doctest::Approx(1.0));

    // a pointwise zero where g0 is positive forces theta0 = 0
    auto crushed = f;
    crushed.values[800] = 0.0;
    CHECK(theta0_plugin(DensityGrid(crushed.points, crushed.values), f) == 0.0);

    DensityGrid zeros(f.points, std::vector<double>(f.size(), 0.0));
    CHECK_THROWS_AS(theta0_plugin(f, zeros), std::invalid_argument);
}

TEST_CASE("theta0_plugin recovers the known-background weight") {
    // mixture with standard normal background: the ratio dips to the
    // background weight in the left tail
    const auto pts = linspace(-8.0, 10.0, 1801);
    const auto f = grid_from_mixture(testmodels::s1(), pts);
    const auto g0 = grid_from_mixture(testmodels::std_normal(), pts);
    CHECK(theta0_plugin(f, g0) == doctest::Approx(0.850).epsilon(0.0024));
}

TEST_CASE("theta0_plugin never exceeds one and hits one iff f >= g0") {
    const auto pts = linspace(-6.0, 6.0, 601);
    const auto g0 = grid_from_mixture(testmodels::std_normal(), pts);
    std::vector<double> bigger(g0.values);
    for (double& v : bigger)
        v *= 1.3;
    CHECK(theta0_plugin(DensityGrid(pts, bigger), g0) == 1.0);
}

TEST_CASE("symmetric_points mirrors exactly") {
    const auto pts = symmetric_points(0.3, 0.01, 500);
    CHECK(pts.size() == 1001);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(pts[i] + pts[pts.size() - 1 - i] == doctest::Approx(0.6).epsilon(1e-12));
}
