#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bgmix/mixture.hpp"
#include "test_models.hpp"

using namespace bgmix;

TEST_CASE("eval_mixture matches closed forms") {
    CHECK(eval_mixture(testmodels::std_normal(), 0.0) == doctest::Approx(0.398942).epsilon(1e-5));

    const double phi0 = 0.3989422804014327;
    const double phi3 = phi0 * std::exp(-4.5);
    CHECK(eval_mixture(testmodels::s1(), 0.0) ==
          doctest::Approx(0.85 * phi0 + 0.15 * phi3).epsilon(1e-12));
    CHECK(eval_mixture(testmodels::s1(), 0.0) == doctest::Approx(0.339766).epsilon(1e-5));

    MixtureSpec unit;
    unit.components = {{Family::Uniform, 0.0, 1.0, 1.0}};
    CHECK(eval_mixture(unit, 2.0) == 0.0);
    CHECK(eval_mixture(unit, 0.5) == 1.0);
}

TEST_CASE("mixture validation rejects bad specs") {
    MixtureSpec bad;
    bad.components = {{Family::Normal, 0.0, 1.0, 0.5}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.components = {{Family::Normal, 0.0, -1.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.components = {{Family::Uniform, 1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("grid_from_mixture integrates to one on fine grids") {
    const auto g = grid_from_mixture(testmodels::std_normal(), -8.0, 8.0, 1601);
    CHECK(integrate(g) == doctest::Approx(1.0).epsilon(1e-6));

    const auto s1 = grid_from_mixture(testmodels::s1(), -8.0, 10.0, 1801);
    CHECK(integrate(s1) == doctest::Approx(1.0).epsilon(1e-6));
    // peak near the origin
    CHECK(s1.values[800] == doctest::Approx(0.3398).epsilon(1e-3));
}

TEST_CASE("grid_from_mixture keeps uniform edge values") {
    MixtureSpec unit;
    unit.components = {{Family::Uniform, 0.0, 1.0, 1.0}};
    const auto g = grid_from_mixture(unit, -1.0, 2.0, 4);
    CHECK(g.values[0] == 0.0);
    CHECK(g.values[1] == 1.0);
    CHECK(g.values[2] == 1.0);
    CHECK(g.values[3] == 0.0);
}

TEST_CASE("student t density normalizes") {
    const auto g = grid_from_mixture(testmodels::s5(), -40.0, 40.0, 16001);
    CHECK(integrate(g) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("mixture JSON round trip") {
    const std::string text = R"({"components":[
        {"family":"normal","mu":0,"sigma":1,"weight":0.85},
        {"family":"normal","mu":3,"sigma":1,"weight":0.15}]})";
    const auto spec = mixture_from_json(text);
    CHECK(spec.components.size() == 2);
    CHECK(spec.components[0].weight == 0.85);
    const auto again = mixture_from_json(mixture_to_json(spec));
    CHECK(again.components[1].p1 == 3.0);

    CHECK_THROWS_AS(mixture_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(mixture_from_json(R"({"components":[{"family":"cauchy","weight":1}]})"),
                    std::invalid_argument);
}

TEST_CASE("support lower bound per family") {
    CHECK(testmodels::m1().support_lower() == 0.0);
    CHECK_FALSE(testmodels::s1().support_lower().has_value());
    MixtureSpec u;
    u.components = {{Family::Uniform, -2.0, 1.0, 1.0}};
    CHECK(u.support_lower() == -2.0);
}

TEST_CASE("tail range covers essentially all mass") {
    for (const auto& spec : {testmodels::s1(), testmodels::m1(), testmodels::s5()}) {
        const auto [lo, hi] = mixture_tail_range(spec);
        const auto g = grid_from_mixture(spec, lo, hi, 8001);
        CHECK(integrate(g) == doctest::Approx(1.0).epsilon(2e-5));
    }
}
