#include "bgmix/decomposition.hpp"

#include <cmath>
#include <stdexcept>

namespace bgmix {

std::string shape_name(Shape s) {
    switch (s) {
    case Shape::Symmetric:
        return "symmetric";
    case Shape::Monotone:
        return "monotone";
    case Shape::LogConcave:
        return "logconcave";
    }
    return "?";
}

Shape shape_from_name(const std::string& name) {
    if (name == "symmetric")
        return Shape::Symmetric;
    if (name == "monotone")
        return Shape::Monotone;
    if (name == "logconcave")
        return Shape::LogConcave;
    throw std::invalid_argument("unknown shape '" + name + "'");
}

DensityGrid normalize_background(const DensityGrid& h0, double pi0) {
    std::vector<double> vals(h0.size());
    if (pi0 > 0.0) {
        for (std::size_t i = 0; i < h0.size(); ++i)
            vals[i] = h0.values[i] / pi0;
    } else {
        constexpr double kInvSqrt2Pi = 0.39894228040143267794;
        for (std::size_t i = 0; i < h0.size(); ++i)
            vals[i] = kInvSqrt2Pi * std::exp(-0.5 * h0.points[i] * h0.points[i]);
    }
    return DensityGrid(h0.points, std::move(vals));
}

} // namespace bgmix
