#include "bgmix/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bgmix {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t Rng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    // 53 random bits; shift into (0,1) by offsetting half an ulp.
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::bounded(std::uint64_t n) {
    // multiply-high mapping; bias < n / 2^64, irrelevant at our sizes
    const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
}

double Rng::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("Rng::gamma: shape and scale must be positive");
    if (shape < 1.0) {
        // boost: G(k) = G(k+1) * U^(1/k)
        const double g = gamma(shape + 1.0, 1.0);
        return scale * g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return scale * d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return scale * d * v;
    }
}

double Rng::exponential(double scale) {
    return -scale * std::log(uniform());
}

double Rng::student_t(double df) {
    const double z = normal();
    const double chi2 = gamma(0.5 * df, 2.0);
    return z / std::sqrt(chi2 / df);
}

double Rng::uniform_ab(double a, double b) {
    return a + (b - a) * uniform();
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ (0xD1B54A32D192ED03ULL * (index + 1)));
}

Sample sample_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n < 1)
        throw std::invalid_argument("sample_mixture: need n >= 1");
    Rng rng(seed);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.uniform();
        const Component* pick = &spec.components.back();
        for (const auto& c : spec.components) {
            if (u < c.weight) {
                pick = &c;
                break;
            }
            u -= c.weight;
        }
        switch (pick->family) {
        case Family::Normal:
            xs[i] = pick->p1 + pick->p2 * rng.normal();
            break;
        case Family::Gamma:
            xs[i] = rng.gamma(pick->p1, pick->p2);
            break;
        case Family::Exponential:
            xs[i] = rng.exponential(pick->p1);
            break;
        case Family::StudentT:
            xs[i] = rng.student_t(pick->p1);
            break;
        case Family::Uniform:
            xs[i] = rng.uniform_ab(pick->p1, pick->p2);
            break;
        }
    }
    return Sample(std::move(xs), spec.support_lower());
}

} // namespace bgmix
