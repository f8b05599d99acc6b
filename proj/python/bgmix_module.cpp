#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bgmix/fit.hpp"
#include "bgmix/kde.hpp"
#include "bgmix/logconcave.hpp"
#include "bgmix/monotone.hpp"
#include "bgmix/simulate.hpp"
#include "bgmix/symmetric.hpp"

namespace py = pybind11;
using namespace bgmix;

namespace {

Sample make_sample(const std::vector<double>& values, std::optional<double> lower) {
    return Sample(values, lower);
}

} // namespace

PYBIND11_MODULE(bgmix, m) {
    m.doc() = "Maximal symmetric / monotone / log-concave background components "
              "of one-dimensional densities";

    py::class_<DensityGrid>(m, "DensityGrid")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("points"),
             py::arg("values"))
        .def_readonly("points", &DensityGrid::points)
        .def_readonly("values", &DensityGrid::values)
        .def_readonly("spacing", &DensityGrid::spacing)
        .def("__len__", &DensityGrid::size);

    py::enum_<Shape>(m, "Shape")
        .value("symmetric", Shape::Symmetric)
        .value("monotone", Shape::Monotone)
        .value("logconcave", Shape::LogConcave);

    py::class_<BackgroundDecomposition>(m, "BackgroundDecomposition")
        .def_readonly("pi0", &BackgroundDecomposition::pi0)
        .def_readonly("h0", &BackgroundDecomposition::h0)
        .def_readonly("g0", &BackgroundDecomposition::g0)
        .def_readonly("center", &BackgroundDecomposition::center)
        .def_readonly("shape", &BackgroundDecomposition::shape);

    py::class_<ConfidenceBand>(m, "ConfidenceBand")
        .def_readonly("lower", &ConfidenceBand::lower)
        .def_readonly("upper", &ConfidenceBand::upper)
        .def_readonly("alpha", &ConfidenceBand::alpha);

    m.def("mixture_from_json", &mixture_from_json, py::arg("text"));
    py::class_<MixtureSpec>(m, "MixtureSpec")
        .def_static("from_json", &mixture_from_json)
        .def("to_json", [](const MixtureSpec& s) { return mixture_to_json(s); });

    m.def("eval_mixture", &eval_mixture, py::arg("spec"), py::arg("x"));
    m.def(
        "grid_from_mixture",
        [](const MixtureSpec& spec, double lo, double hi, std::size_t m_) {
            return grid_from_mixture(spec, lo, hi, m_);
        },
        py::arg("spec"), py::arg("lo"), py::arg("hi"), py::arg("m"));
    m.def("integrate", &integrate, py::arg("grid"));
    m.def("theta0_plugin", &theta0_plugin, py::arg("f"), py::arg("g0"),
          py::arg("eps_div") = 1e-12);

    m.def(
        "gaussian_kde",
        [](const std::vector<double>& data, double bandwidth,
           const std::vector<double>& grid) {
            return gaussian_kde(make_sample(data, std::nullopt), bandwidth, grid);
        },
        py::arg("data"), py::arg("bandwidth"), py::arg("grid_points"));
    m.def(
        "reflected_kde",
        [](const std::vector<double>& data, double boundary, double bandwidth,
           const std::vector<double>& grid) {
            return reflected_kde(make_sample(data, std::nullopt), boundary, bandwidth, grid);
        },
        py::arg("data"), py::arg("boundary"), py::arg("bandwidth"), py::arg("grid_points"));
    m.def(
        "select_bandwidth_lscv",
        [](const std::vector<double>& data, const std::vector<double>& candidates) {
            return select_bandwidth_lscv(make_sample(data, std::nullopt), candidates);
        },
        py::arg("data"), py::arg("candidates"));
    m.def(
        "silverman_bandwidth",
        [](const std::vector<double>& data) {
            return silverman_bandwidth(make_sample(data, std::nullopt));
        },
        py::arg("data"));

    m.def("extract_symmetric", &extract_symmetric, py::arg("f"), py::arg("center"));
    m.def(
        "search_center",
        [](const DensityGrid& f, const std::vector<double>& candidates) {
            auto [c, dec] = search_center(f, candidates);
            return py::make_tuple(c, dec);
        },
        py::arg("f"), py::arg("candidates"));
    m.def("extract_monotone", &extract_monotone, py::arg("f"));
    m.def(
        "extract_logconcave",
        [](const DensityGrid& f, double d, std::size_t n_starts, const std::string& objective) {
            SolveOptions opts;
            opts.d_init = d;
            opts.n_starts = n_starts;
            opts.objective = objective == "riemann" ? Objective::Riemann : Objective::Exact;
            return extract_logconcave(f, opts);
        },
        py::arg("f"), py::arg("d") = 0.02, py::arg("n_starts") = 5,
        py::arg("objective") = "exact");

    m.def("lambda_segment", &lambda_segment, py::arg("x"), py::arg("y"));
    m.def("objective_exact", &objective_exact, py::arg("v"), py::arg("spacing"));
    m.def("objective_riemann", &objective_riemann, py::arg("v"), py::arg("spacing"));

    m.def(
        "bootstrap_band",
        [](const std::vector<double>& data, const std::vector<double>& grid, double alpha,
           std::size_t B, double bandwidth, std::optional<double> boundary,
           std::uint64_t seed) {
            return bootstrap_band(make_sample(data, std::nullopt), grid, alpha, B, bandwidth,
                                  boundary, seed);
        },
        py::arg("data"), py::arg("grid_points"), py::arg("alpha"), py::arg("B"),
        py::arg("bandwidth"), py::arg("boundary") = std::nullopt, py::arg("seed") = 0);

    m.def(
        "sample_mixture",
        [](const MixtureSpec& spec, std::size_t n, std::uint64_t seed) {
            return sample_mixture(spec, n, seed).values;
        },
        py::arg("spec"), py::arg("n"), py::arg("seed"));
    m.def(
        "true_pi0",
        [](const MixtureSpec& spec, const std::string& shape, std::optional<double> center,
           std::size_t k) {
            TruePi0Options opts;
            opts.center = center;
            opts.k = k;
            return true_pi0(spec, shape_from_name(shape), opts);
        },
        py::arg("spec"), py::arg("shape"), py::arg("center") = std::nullopt,
        py::arg("k") = 400);

    m.def(
        "fit",
        [](const std::vector<double>& data, const std::string& shape,
           std::optional<double> center, bool center_search, double support_start,
           double alpha, std::size_t bootstrap, std::optional<double> bandwidth,
           std::uint64_t seed) {
            FitOptions opts;
            opts.shape = shape_from_name(shape);
            opts.center = center;
            if (center_search)
                opts.center = std::nullopt;
            opts.support_start = support_start;
            opts.alpha = alpha;
            opts.bootstrap = bootstrap;
            opts.bandwidth = bandwidth;
            opts.seed = seed;
            const auto res =
                fit_sample(make_sample(data, opts.shape == Shape::Monotone
                                                 ? std::optional<double>(support_start)
                                                 : std::nullopt),
                           opts);
            py::dict out;
            out["shape"] = shape_name(res.shape);
            if (res.center)
                out["center"] = *res.center;
            out["pi0"] = res.pi0;
            out["pi_l"] = res.pi_lower;
            out["pi_u"] = res.pi_upper;
            out["bandwidth"] = res.bandwidth;
            out["grid"] = res.f_hat.points;
            out["f_hat"] = res.f_hat.values;
            out["h0"] = res.h0.values;
            out["g0"] = res.g0.values;
            out["h_l"] = res.h_lower.values;
            out["h_u"] = res.h_upper.values;
            return out;
        },
        py::arg("data"), py::arg("shape"), py::arg("center") = std::nullopt,
        py::arg("center_search") = false, py::arg("support_start") = 0.0,
        py::arg("alpha") = 0.05, py::arg("bootstrap") = 500,
        py::arg("bandwidth") = std::nullopt, py::arg("seed") = 0);
}
