#include "bgmix/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bgmix {

DensityGrid::DensityGrid(std::vector<double> pts, std::vector<double> vals)
    : points(std::move(pts)), values(std::move(vals)) {
    if (points.size() < 2)
        throw std::invalid_argument("DensityGrid: need at least 2 grid points");
    if (points.size() != values.size())
        throw std::invalid_argument("DensityGrid: points/values length mismatch");

    const std::size_t n = points.size();
    spacing = (points[n - 1] - points[0]) / static_cast<double>(n - 1);
    if (!(spacing > 0.0))
        throw std::invalid_argument("DensityGrid: points must be strictly increasing");

    const double tol = 1e-9 * std::max(1.0, std::abs(spacing));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double step = points[i + 1] - points[i];
        if (std::abs(step - spacing) > tol && std::abs(step - spacing) > 1e-9 * std::abs(spacing))
            throw std::invalid_argument("DensityGrid: points not equispaced near index " +
                                        std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(values[i]) || values[i] < 0.0)
            throw std::invalid_argument("DensityGrid: negative or NaN value at index " +
                                        std::to_string(i));
    }
}

std::vector<double> linspace(double lo, double hi, std::size_t m) {
    if (m < 2)
        throw std::invalid_argument("linspace: need m >= 2");
    if (!(lo < hi))
        throw std::invalid_argument("linspace: need lo < hi");
    std::vector<double> pts(m);
    const double step = (hi - lo) / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i)
        pts[i] = lo + step * static_cast<double>(i);
    pts.back() = hi;
    return pts;
}

std::vector<double> symmetric_points(double center, double step, std::size_t half_count) {
    if (!(step > 0.0))
        throw std::invalid_argument("symmetric_points: step must be positive");
    const std::size_t n = 2 * half_count + 1;
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double j = static_cast<double>(i) - static_cast<double>(half_count);
        pts[i] = center + j * step;
    }
    return pts;
}

double trapezoid(const std::vector<double>& values, double spacing) {
    const std::size_t n = values.size();
    if (n < 2)
        return 0.0;
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < n; ++i)
        sum += values[i];
    return sum * spacing;
}

double integrate(const DensityGrid& grid) {
    return trapezoid(grid.values, grid.spacing);
}

double theta0_plugin(const DensityGrid& f, const DensityGrid& g0, double eps_div) {
    if (f.size() != g0.size())
        throw std::invalid_argument("theta0_plugin: grids differ in size");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f.points[i] - g0.points[i]) > 1e-9 * std::max(1.0, std::abs(f.points[i])))
            throw std::invalid_argument("theta0_plugin: grids differ in points");
    }
    double theta = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (g0.values[i] > eps_div) {
            theta = std::min(theta, f.values[i] / g0.values[i]);
            any = true;
        }
    }
    if (!any)
        throw std::invalid_argument("theta0_plugin: g0 vanishes on the whole grid");
    return std::clamp(theta, 0.0, 1.0);
}

} // namespace bgmix
