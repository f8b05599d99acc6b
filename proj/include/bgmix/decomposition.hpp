#pragma once

#include <optional>
#include <string>

#include "bgmix/grid.hpp"

namespace bgmix {

enum class Shape { Symmetric, Monotone, LogConcave };

std::string shape_name(Shape s);
Shape shape_from_name(const std::string& name);

/// Output of every extractor: background proportion pi0, sub-density h0,
/// normalized background g0 (standard normal by convention when pi0 = 0),
/// and the center used for the symmetric shape.
struct BackgroundDecomposition {
    double pi0 = 0.0;
    DensityGrid h0;
    DensityGrid g0;
    std::optional<double> center;
    Shape shape = Shape::Symmetric;
};

/// g0 = h0/pi0 when pi0 > 0, else the standard normal evaluated on h0's grid.
DensityGrid normalize_background(const DensityGrid& h0, double pi0);

} // namespace bgmix
