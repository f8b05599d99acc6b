#include "bgmix/monotone.hpp"

#include <algorithm>
#include <stdexcept>

namespace bgmix {

namespace {

std::vector<double> running_min(const std::vector<double>& v) {
    std::vector<double> h(v.size());
    double m = v.front();
    for (std::size_t i = 0; i < v.size(); ++i) {
        m = std::min(m, v[i]);
        h[i] = m;
    }
    return h;
}

} // namespace

BackgroundDecomposition extract_monotone(const DensityGrid& f) {
    if (f.empty())
        throw std::invalid_argument("extract_monotone: empty grid");
    DensityGrid h0(f.points, running_min(f.values));
    BackgroundDecomposition out;
    out.pi0 = std::min(integrate(h0), 1.0);
    out.g0 = normalize_background(h0, out.pi0);
    out.h0 = std::move(h0);
    out.shape = Shape::Monotone;
    return out;
}

MonotoneInterval monotone_interval(const ConfidenceBand& band) {
    MonotoneInterval out;
    out.h_lower = DensityGrid(band.lower.points, running_min(band.lower.values));
    out.h_upper = DensityGrid(band.upper.points, running_min(band.upper.values));
    out.pi_lower = integrate(out.h_lower);
    out.pi_upper = std::min(integrate(out.h_upper), 1.0);
    return out;
}

} // namespace bgmix
