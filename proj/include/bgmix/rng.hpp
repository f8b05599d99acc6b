#pragma once

#include <cstdint>

#include "bgmix/mixture.hpp"
#include "bgmix/sample.hpp"

namespace bgmix {

/// Small deterministic generator (splitmix64 core). Portable across
/// platforms and standard-library versions, unlike std:: distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform in (0, 1): never returns 0, safe for log().
    double uniform();

    /// Uniform integer in [0, n).
    std::uint64_t bounded(std::uint64_t n);

    double normal();                         // standard normal (Marsaglia polar)
    double gamma(double shape, double scale); // Marsaglia-Tsang, any shape > 0
    double exponential(double scale);
    double student_t(double df);
    double uniform_ab(double a, double b);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Per-task seed derived from (master seed, index) by counter-mode hashing;
/// streams are independent of evaluation order and parallelism.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// n i.i.d. draws from the mixture: component picked by weight, then the
/// family sampler. Deterministic given seed.
Sample sample_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed);

} // namespace bgmix
