#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bgmix/rng.hpp"
#include "test_models.hpp"

using namespace bgmix;

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    for (double x : xs)
        m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    for (double x : xs)
        m.var += (x - m.mean) * (x - m.mean);
    m.var /= static_cast<double>(xs.size() - 1);
    return m;
}

} // namespace

TEST_CASE("sampling is deterministic given the seed") {
    const auto a = sample_mixture(testmodels::s1(), 100, 42);
    const auto b = sample_mixture(testmodels::s1(), 100, 42);
    CHECK(a.values == b.values);
    const auto c = sample_mixture(testmodels::s1(), 100, 43);
    CHECK(a.values != c.values);
}

TEST_CASE("derived seeds decorrelate replicates") {
    CHECK(derive_seed(7, 0) != derive_seed(7, 1));
    CHECK(derive_seed(7, 0) != derive_seed(8, 0));
}

TEST_CASE("mixture sample mean matches the model") {
    // mean of the model is 0.15 * 3 = 0.45; sd ~ 1.45
    const std::size_t n = 100000;
    const auto s = sample_mixture(testmodels::s1(), n, 12345);
    const auto m = moments(s.values);
    const double se = std::sqrt(m.var / static_cast<double>(n));
    CHECK(std::abs(m.mean - 0.45) < 3.0 * se);
}

TEST_CASE("single component spec draws only from that family") {
    MixtureSpec u;
    u.components = {{Family::Uniform, 2.0, 3.0, 1.0}};
    const auto s = sample_mixture(u, 1000, 9);
    for (double x : s.values) {
        CHECK(x >= 2.0);
        CHECK(x <= 3.0);
    }
}

TEST_CASE("sampler moments: normal, gamma, exponential, student t") {
    const std::size_t n = 200000;
    Rng rng(777);

    std::vector<double> zs(n);
    for (auto& z : zs)
        z = rng.normal();
    auto m = moments(zs);
    CHECK(std::abs(m.mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(m.var == doctest::Approx(1.0).epsilon(0.02));

    std::vector<double> gs(n);
    for (auto& g : gs)
        g = rng.gamma(50.0, 0.1);
    m = moments(gs);
    CHECK(m.mean == doctest::Approx(5.0).epsilon(0.005));
    CHECK(m.var == doctest::Approx(0.5).epsilon(0.05));

    std::vector<double> es(n);
    for (auto& e : es)
        e = rng.exponential(2.0);
    m = moments(es);
    CHECK(m.mean == doctest::Approx(2.0).epsilon(0.01));
    CHECK(m.var == doctest::Approx(4.0).epsilon(0.05));

    std::vector<double> ts(n);
    for (auto& t : ts)
        t = rng.student_t(6.0);
    m = moments(ts);
    CHECK(std::abs(m.mean) < 0.02);
    CHECK(m.var == doctest::Approx(1.5).epsilon(0.06)); // df/(df-2)

    std::vector<double> small(n);
    for (auto& g : small)
        g = rng.gamma(0.5, 1.0); // shape < 1 branch
    m = moments(small);
    CHECK(m.mean == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("gamma sample support respects the lower bound") {
    const auto s = sample_mixture(testmodels::m1(), 5000, 3);
    REQUIRE(s.support_lower.has_value());
    CHECK(*s.support_lower == 0.0);
    for (double x : s.values)
        CHECK(x >= 0.0);
}
