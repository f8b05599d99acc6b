#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgmix {

/// An i.i.d. sample. `support_lower` marks data known to live on [a, inf).
struct Sample {
    std::vector<double> values;
    std::optional<double> support_lower;

    Sample() = default;

    explicit Sample(std::vector<double> v, std::optional<double> lower = std::nullopt)
        : values(std::move(v)), support_lower(lower) {
        if (values.empty())
            throw std::invalid_argument("Sample: empty");
        if (support_lower) {
            for (double x : values)
                if (x < *support_lower)
                    throw std::invalid_argument("Sample: value " + std::to_string(x) +
                                                " below support lower bound " +
                                                std::to_string(*support_lower));
        }
    }

    std::size_t size() const { return values.size(); }
};

} // namespace bgmix
