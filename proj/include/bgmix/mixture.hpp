#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgmix/grid.hpp"

namespace bgmix {

enum class Family { Normal, Gamma, Exponential, StudentT, Uniform };

/// One weighted mixture component. Parameter meaning per family:
///   Normal(mu, sigma), Gamma(shape, scale), Exponential(scale),
///   StudentT(df), Uniform(a, b).
struct Component {
    Family family = Family::Normal;
    double p1 = 0.0; // mu | shape | scale | df | a
    double p2 = 1.0; // sigma | scale | -    | -  | b
    double weight = 1.0;
};

struct MixtureSpec {
    std::vector<Component> components;

    static MixtureSpec normal(double mu, double sigma, double w = 1.0);

    /// Validates weights (positive, summing to 1 within 1e-12) and parameters.
    void validate() const;

    /// Smallest support lower bound, or nullopt if unbounded below.
    /// Gamma/exponential start at 0, uniform at a; normal/t are unbounded.
    std::optional<double> support_lower() const;
};

double component_pdf(const Component& c, double x);

/// Mixture density sum w_i * pdf_i(x).
double eval_mixture(const MixtureSpec& spec, double x);

/// Exact mixture density on an equispaced m-point grid over [lo, hi].
DensityGrid grid_from_mixture(const MixtureSpec& spec, double lo, double hi, std::size_t m);

/// Mixture evaluated on externally supplied points (must be equispaced).
DensityGrid grid_from_mixture(const MixtureSpec& spec, const std::vector<double>& points);

/// [lo, hi] covering all components out to where the mixture density is
/// negligible (per-family tail radii; heavy t tails handled via a Mills-type
/// bound on the tail mass).
std::pair<double, double> mixture_tail_range(const MixtureSpec& spec, double tail_mass = 1e-7);

/// JSON: {"components":[{"family":"normal","mu":0,"sigma":1,"weight":0.85},...]}
MixtureSpec mixture_from_json(const std::string& text);
std::string mixture_to_json(const MixtureSpec& spec);
MixtureSpec mixture_from_json_file(const std::string& path);

} // namespace bgmix
