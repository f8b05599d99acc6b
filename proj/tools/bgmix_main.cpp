// bgmix command line: fit shape-constrained background components from CSV
// samples, evaluate oracle proportions for mixture models, and run
// Monte-Carlo replication studies. JSON goes to stdout, diagnostics to
// stderr. Exit codes: 0 ok, 2 input error, 3 numeric/solver failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bgmix/fit.hpp"
#include "bgmix/simulate.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> read_csv_column(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");

    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    long column = -1;
    bool header_allowed = true;

    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(s);
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (!s.empty() && s.back() == ',')
            fields.emplace_back();
        return fields;
    };
    auto parse_num = [](const std::string& raw, double& value) {
        std::string t = raw;
        while (!t.empty() && (t.back() == '\r' || t.back() == ' ' || t.back() == '\t'))
            t.pop_back();
        std::size_t b = 0;
        while (b < t.size() && (t[b] == ' ' || t[b] == '\t'))
            ++b;
        t = t.substr(b);
        if (t.empty())
            return false;
        std::size_t pos = 0;
        try {
            value = std::stod(t, &pos);
        } catch (...) {
            return false;
        }
        return pos == t.size();
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line;
        if (!stripped.empty() && stripped.back() == '\r')
            stripped.pop_back();
        if (stripped.empty())
            continue;
        const auto fields = split(stripped);
        if (column < 0) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                double v;
                if (parse_num(fields[i], v)) {
                    column = static_cast<long>(i);
                    out.push_back(v);
                    break;
                }
            }
            if (column < 0) {
                if (header_allowed) { // one header line is fine
                    header_allowed = false;
                    continue;
                }
                throw InputError("line " + std::to_string(lineno) +
                                 ": no numeric column found");
            }
            header_allowed = false;
            continue;
        }
        if (static_cast<std::size_t>(column) >= fields.size())
            throw InputError("line " + std::to_string(lineno) + ": missing column " +
                             std::to_string(column + 1));
        double v;
        const std::string& raw = fields[static_cast<std::size_t>(column)];
        if (!parse_num(raw, v))
            throw InputError("line " + std::to_string(lineno) + ": non-numeric value '" +
                             raw + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw InputError("'" + path + "' holds no data rows");
    return out;
}

ordered_json grid_json(const bgmix::DensityGrid& g) {
    return ordered_json(g.values);
}

void emit_fit_json(const bgmix::FitResult& res) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["shape"] = bgmix::shape_name(res.shape);
    if (res.center)
        doc["center"] = *res.center;
    doc["pi0"] = res.pi0;
    if (res.has_band) {
        doc["pi_l"] = res.pi_lower;
        doc["pi_u"] = res.pi_upper;
    }
    doc["bandwidth"] = res.bandwidth;
    doc["grid"] = ordered_json(res.f_hat.points);
    doc["f_hat"] = grid_json(res.f_hat);
    doc["h0"] = grid_json(res.h0);
    doc["g0"] = grid_json(res.g0);
    if (res.has_band) {
        doc["h_l"] = grid_json(res.h_lower);
        doc["h_u"] = grid_json(res.h_upper);
    }
    std::cout << doc.dump() << "\n";
}

void emit_fit_csv(const bgmix::FitResult& res) {
    std::cout << "t,f_hat,h0,g0,h_l,h_u\n";
    for (std::size_t i = 0; i < res.f_hat.size(); ++i) {
        std::cout << res.f_hat.points[i] << ',' << res.f_hat.values[i] << ','
                  << res.h0.values[i] << ',' << res.g0.values[i] << ',';
        if (res.has_band)
            std::cout << res.h_lower.values[i] << ',' << res.h_upper.values[i];
        else
            std::cout << ',';
        std::cout << '\n';
    }
}

struct ShapeFlags {
    std::string shape;
    double center = 0.0;
    bool center_given = false;
    bool center_search = false;
    double support_start = 0.0;
};

void apply_shape_flags(bgmix::FitOptions& fo, const ShapeFlags& sf) {
    fo.shape = bgmix::shape_from_name(sf.shape);
    if (sf.center_given)
        fo.center = sf.center;
    // symmetric without --center falls back to the candidate search
    fo.support_start = sf.support_start;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shape-constrained background component extraction"};
    app.require_subcommand(1);

    // --- fit ---------------------------------------------------------------
    auto* fit = app.add_subcommand("fit", "fit a background component to CSV data");
    std::string fit_path;
    ShapeFlags fit_shape;
    std::string fit_output = "json";
    bgmix::FitOptions fo;
    std::string fit_objective = "exact";
    double fit_bandwidth = 0.0;
    fit->add_option("input", fit_path, "CSV file, first numeric column used")->required();
    fit->add_option("--shape", fit_shape.shape, "symmetric|monotone|logconcave")->required();
    auto* copt = fit->add_option("--center", fit_shape.center, "symmetry center");
    fit->add_flag("--center-search", fit_shape.center_search,
                  "search the center over candidate locations");
    fit->add_option("--support-start", fit_shape.support_start,
                    "monotone support lower bound (default 0)");
    fit->add_option("--alpha", fo.alpha, "band level alpha (default 0.05)");
    fit->add_option("--bootstrap", fo.bootstrap, "bootstrap replicates (default 500)");
    auto* bopt = fit->add_option("--bandwidth", fit_bandwidth,
                                 "kernel bandwidth (default: least-squares CV)");
    fit->add_option("--grid-points", fo.grid_points, "grid size (default 2001)");
    fit->add_option("--d", fo.solver.d_init, "log-concave init offset (default 0.02)");
    fit->add_option("--objective", fit_objective, "log-concave objective: exact|riemann");
    fit->add_option("--seed", fo.seed, "bootstrap seed");
    fit->add_option("--output", fit_output, "json|csv (default json)");

    // --- true-pi0 ----------------------------------------------------------
    auto* oracle = app.add_subcommand("true-pi0", "oracle proportion of a mixture model");
    std::string model_path;
    ShapeFlags oracle_shape;
    bgmix::TruePi0Options to;
    std::string oracle_objective = "exact";
    oracle->add_option("--model", model_path, "mixture spec JSON file")->required();
    oracle->add_option("--shape", oracle_shape.shape, "symmetric|monotone|logconcave")
        ->required();
    auto* ocopt = oracle->add_option("--center", oracle_shape.center, "symmetry center");
    oracle->add_flag("--center-search", oracle_shape.center_search,
                     "search the center (default when --center absent)");
    oracle->add_option("--grid-points", to.grid_points, "resolution (default 4001)");
    oracle->add_option("--k", to.k, "log-concave grid half-count (default 400)");
    oracle->add_option("--d", to.solver.d_init, "log-concave init offset (default 0.02)");
    oracle->add_option("--objective", oracle_objective, "exact|riemann");

    // --- simulate ----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo replication study");
    std::string sim_model;
    ShapeFlags sim_shape;
    bgmix::ReplicationOptions ro;
    std::string sim_objective = "exact";
    double sim_bandwidth = 0.0;
    sim->add_option("--model", sim_model, "mixture spec JSON file")->required();
    sim->add_option("--shape", sim_shape.shape, "symmetric|monotone|logconcave")->required();
    auto* scopt = sim->add_option("--center", sim_shape.center, "symmetry center");
    sim->add_flag("--center-search", sim_shape.center_search, "search the center");
    sim->add_option("--support-start", sim_shape.support_start, "monotone support start");
    sim->add_option("--n", ro.n, "sample size per replicate")->required();
    sim->add_option("--reps", ro.reps, "number of replicates")->required();
    sim->add_option("--seed", ro.seed, "master seed");
    sim->add_option("--alpha", ro.alpha, "interval level (default 0.05)");
    sim->add_option("--bootstrap", ro.fit.bootstrap, "bootstrap replicates (default 200)");
    auto* sbopt = sim->add_option("--bandwidth", sim_bandwidth,
                                  "fixed bandwidth (default: least-squares CV)");
    sim->add_flag("--no-intervals", "skip interval computation");
    sim->add_option("--threads", ro.threads, "worker threads (default: hardware)");
    sim->add_option("--d", ro.fit.solver.d_init, "log-concave init offset");
    sim->add_option("--objective", sim_objective, "exact|riemann");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit) {
            fit_shape.center_given = copt->count() > 0;
            apply_shape_flags(fo, fit_shape);
            fo.solver.objective = fit_objective == "riemann" ? bgmix::Objective::Riemann
                                                             : bgmix::Objective::Exact;
            if (bopt->count() > 0)
                fo.bandwidth = fit_bandwidth;
            const auto data = read_csv_column(fit_path);
            bgmix::Sample sample(data);
            const auto res = bgmix::fit_sample(sample, fo);
            if (fit_output == "csv")
                emit_fit_csv(res);
            else
                emit_fit_json(res);
        } else if (*oracle) {
            oracle_shape.center_given = ocopt->count() > 0;
            if (oracle_shape.center_given)
                to.center = oracle_shape.center;
            to.solver.objective = oracle_objective == "riemann" ? bgmix::Objective::Riemann
                                                                : bgmix::Objective::Exact;
            const auto spec = bgmix::mixture_from_json_file(model_path);
            const auto shape = bgmix::shape_from_name(oracle_shape.shape);
            const double pi0 = bgmix::true_pi0(spec, shape, to);
            ordered_json doc;
            doc["schema_version"] = kSchemaVersion;
            doc["pi0"] = pi0;
            doc["shape"] = oracle_shape.shape;
            doc["resolution"] = shape == bgmix::Shape::LogConcave ? 2 * to.k + 1
                                                                  : to.grid_points;
            std::cout << doc.dump() << "\n";
        } else if (*sim) {
            sim_shape.center_given = scopt->count() > 0;
            apply_shape_flags(ro.fit, sim_shape);
            ro.fit.solver.objective = sim_objective == "riemann" ? bgmix::Objective::Riemann
                                                                 : bgmix::Objective::Exact;
            ro.fit.solver.n_starts = 1;
            if (sbopt->count() > 0)
                ro.fit.bandwidth = sim_bandwidth;
            ro.with_intervals = sim->count("--no-intervals") == 0;
            const auto spec = bgmix::mixture_from_json_file(sim_model);
            const auto shape = bgmix::shape_from_name(sim_shape.shape);
            const auto summary = bgmix::run_replications(spec, shape, ro);

            ordered_json doc;
            doc["schema_version"] = kSchemaVersion;
            doc["estimator"] = summary.estimator;
            doc["mean"] = summary.mean;
            doc["median"] = summary.median;
            doc["sd"] = summary.sd;
            doc["reps"] = summary.reps;
            doc["failures"] = summary.failures;
            if (summary.true_value)
                doc["true_pi0"] = *summary.true_value;
            if (summary.coverage_count)
                doc["coverage_count"] = *summary.coverage_count;
            std::cout << doc.dump() << "\n";

            std::cerr << "estimator        mean    median  sd      reps  fail\n";
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%-16s %-7.4f %-7.4f %-7.4f %-5zu %zu\n",
                          summary.estimator.c_str(), summary.mean, summary.median, summary.sd,
                          summary.reps, summary.failures);
            std::cerr << buf;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
