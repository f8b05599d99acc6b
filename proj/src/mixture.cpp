#include "bgmix/mixture.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bgmix {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

double gamma_pdf(double x, double shape, double scale) {
    if (x < 0.0)
        return 0.0;
    if (x == 0.0)
        return shape > 1.0 ? 0.0 : (shape == 1.0 ? 1.0 / scale : 0.0);
    const double logp = (shape - 1.0) * std::log(x) - x / scale -
                        std::lgamma(shape) - shape * std::log(scale);
    return std::exp(logp);
}

double student_t_pdf(double x, double df) {
    const double logc = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                        0.5 * std::log(df * M_PI);
    return std::exp(logc - 0.5 * (df + 1.0) * std::log1p(x * x / df));
}

} // namespace

MixtureSpec MixtureSpec::normal(double mu, double sigma, double w) {
    MixtureSpec spec;
    spec.components.push_back({Family::Normal, mu, sigma, w});
    return spec;
}

void MixtureSpec::validate() const {
    if (components.empty())
        throw std::invalid_argument("MixtureSpec: no components");
    double wsum = 0.0;
    for (const auto& c : components) {
        if (!(c.weight > 0.0))
            throw std::invalid_argument("MixtureSpec: weights must be positive");
        wsum += c.weight;
        switch (c.family) {
        case Family::Normal:
            if (!(c.p2 > 0.0))
                throw std::invalid_argument("MixtureSpec: normal sigma must be positive");
            break;
        case Family::Gamma:
            if (!(c.p1 > 0.0) || !(c.p2 > 0.0))
                throw std::invalid_argument("MixtureSpec: gamma shape/scale must be positive");
            break;
        case Family::Exponential:
            if (!(c.p1 > 0.0))
                throw std::invalid_argument("MixtureSpec: exponential scale must be positive");
            break;
        case Family::StudentT:
            if (!(c.p1 > 0.0))
                throw std::invalid_argument("MixtureSpec: student_t df must be positive");
            break;
        case Family::Uniform:
            if (!(c.p2 > c.p1))
                throw std::invalid_argument("MixtureSpec: uniform needs b > a");
            break;
        }
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("MixtureSpec: weights must sum to 1");
}

std::optional<double> MixtureSpec::support_lower() const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& c : components) {
        switch (c.family) {
        case Family::Gamma:
        case Family::Exponential:
            lo = std::min(lo, 0.0);
            break;
        case Family::Uniform:
            lo = std::min(lo, c.p1);
            break;
        case Family::Normal:
        case Family::StudentT:
            return std::nullopt;
        }
    }
    return lo;
}

double component_pdf(const Component& c, double x) {
    switch (c.family) {
    case Family::Normal:
        return normal_pdf(x, c.p1, c.p2);
    case Family::Gamma:
        return gamma_pdf(x, c.p1, c.p2);
    case Family::Exponential:
        return x < 0.0 ? 0.0 : std::exp(-x / c.p1) / c.p1;
    case Family::StudentT:
        return student_t_pdf(x, c.p1);
    case Family::Uniform:
        return (x >= c.p1 && x <= c.p2) ? 1.0 / (c.p2 - c.p1) : 0.0;
    }
    return 0.0;
}

double eval_mixture(const MixtureSpec& spec, double x) {
    double f = 0.0;
    for (const auto& c : spec.components)
        f += c.weight * component_pdf(c, x);
    return f;
}

DensityGrid grid_from_mixture(const MixtureSpec& spec, double lo, double hi, std::size_t m) {
    return grid_from_mixture(spec, linspace(lo, hi, m));
}

DensityGrid grid_from_mixture(const MixtureSpec& spec, const std::vector<double>& points) {
    spec.validate();
    std::vector<double> vals(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        vals[i] = eval_mixture(spec, points[i]);
    return DensityGrid(points, std::move(vals));
}

std::pair<double, double> mixture_tail_range(const MixtureSpec& spec, double tail_mass) {
    spec.validate();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& c : spec.components) {
        double clo = 0.0, chi = 0.0;
        switch (c.family) {
        case Family::Normal: {
            // Phi(-9) ~ 1e-19; 9 sigma is past any tail_mass we use.
            const double r = 9.0 * c.p2;
            clo = c.p1 - r;
            chi = c.p1 + r;
            break;
        }
        case Family::Gamma: {
            const double mean = c.p1 * c.p2;
            const double sd = std::sqrt(c.p1) * c.p2;
            clo = 0.0;
            chi = mean + 14.0 * sd + 14.0 * c.p2;
            break;
        }
        case Family::Exponential:
            clo = 0.0;
            chi = -c.p1 * std::log(tail_mass * 0.1);
            break;
        case Family::StudentT: {
            // Mills-type tail bound: P(T > t) <= pdf(t) (t^2+df) / (t (df-1)).
            const double df = c.p1;
            double r = 3.0 * std::sqrt(std::max(df, 1.0));
            while (student_t_pdf(r, df) * (r * r + df) / (r * std::max(df - 1.0, 0.5)) >
                   tail_mass * 0.1)
                r *= 1.25;
            clo = -r;
            chi = r;
            break;
        }
        case Family::Uniform:
            clo = c.p1;
            chi = c.p2;
            break;
        }
        lo = std::min(lo, clo);
        hi = std::max(hi, chi);
    }
    return {lo, hi};
}

namespace {

using nlohmann::json;

Component component_from_json(const json& j) {
    Component c;
    const std::string fam = j.at("family").get<std::string>();
    c.weight = j.value("weight", 1.0);
    if (fam == "normal") {
        c.family = Family::Normal;
        c.p1 = j.at("mu").get<double>();
        c.p2 = j.at("sigma").get<double>();
    } else if (fam == "gamma") {
        c.family = Family::Gamma;
        c.p1 = j.at("shape").get<double>();
        c.p2 = j.at("scale").get<double>();
    } else if (fam == "exponential") {
        c.family = Family::Exponential;
        c.p1 = j.at("scale").get<double>();
    } else if (fam == "student_t") {
        c.family = Family::StudentT;
        c.p1 = j.at("df").get<double>();
    } else if (fam == "uniform") {
        c.family = Family::Uniform;
        c.p1 = j.at("a").get<double>();
        c.p2 = j.at("b").get<double>();
    } else {
        throw std::invalid_argument("mixture JSON: unknown family '" + fam + "'");
    }
    return c;
}

json component_to_json(const Component& c) {
    json j;
    switch (c.family) {
    case Family::Normal:
        j = {{"family", "normal"}, {"mu", c.p1}, {"sigma", c.p2}};
        break;
    case Family::Gamma:
        j = {{"family", "gamma"}, {"shape", c.p1}, {"scale", c.p2}};
        break;
    case Family::Exponential:
        j = {{"family", "exponential"}, {"scale", c.p1}};
        break;
    case Family::StudentT:
        j = {{"family", "student_t"}, {"df", c.p1}};
        break;
    case Family::Uniform:
        j = {{"family", "uniform"}, {"a", c.p1}, {"b", c.p2}};
        break;
    }
    j["weight"] = c.weight;
    return j;
}

} // namespace

MixtureSpec mixture_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("mixture JSON: ") + e.what());
    }
    MixtureSpec spec;
    for (const auto& jc : doc.at("components"))
        spec.components.push_back(component_from_json(jc));
    spec.validate();
    return spec;
}

std::string mixture_to_json(const MixtureSpec& spec) {
    json doc;
    doc["components"] = json::array();
    for (const auto& c : spec.components)
        doc["components"].push_back(component_to_json(c));
    return doc.dump();
}

MixtureSpec mixture_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("mixture JSON: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return mixture_from_json(buf.str());
}

} // namespace bgmix
