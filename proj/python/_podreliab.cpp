#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>

#include <json.hpp>

#include "podreliab/commands.hpp"
#include "podreliab/error_metrics.hpp"
#include "podreliab/errors.hpp"
#include "podreliab/pod.hpp"
#include "podreliab/scenario.hpp"
#include "podreliab/traffic.hpp"
#include "podreliab/trajectory.hpp"

namespace py = pybind11;
using namespace podreliab;

namespace {

AxisTransform transform_arg(const std::string& name) {
    auto t = parse_transform(name);
    if (!t) throw InputError("unknown transform '" + name + "'");
    return *t;
}

LevelData level_data(std::vector<double> levels, std::vector<double> responses) {
    if (levels.size() != responses.size()) throw InputError("levels and responses differ in length");
    return {std::move(levels), std::move(responses)};
}

Vec2 vec(const std::pair<double, double>& p) { return {p.first, p.second}; }

std::vector<Vec2> vecs(const std::vector<std::pair<double, double>>& ps) {
    std::vector<Vec2> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(vec(p));
    return out;
}

py::tuple tup(Vec2 v) { return py::make_tuple(v.x, v.y); }

py::list tups(const std::vector<Vec2>& vs) {
    py::list out;
    for (const auto& v : vs) out.append(tup(v));
    return out;
}

RunConfig config_arg(const std::string& json_text, const std::filesystem::path& base_dir) {
    auto config = config_from_json(nlohmann::json::parse(json_text), base_dir);
    validate(config);
    return config;
}

}  // namespace

PYBIND11_MODULE(_podreliab, mod) {
    mod.doc() = "POAP reliability evaluation for vessel trajectory predictors";
    mod.attr("__version__") = kVersion;

    auto input_error = py::register_exception<InputError>(mod, "InputError", PyExc_ValueError);
    py::register_exception<ParseError>(mod, "ParseError", input_error.ptr());
    py::register_exception<DomainError>(mod, "DomainError", input_error.ptr());
    py::register_exception<AlignmentError>(mod, "AlignmentError", input_error.ptr());
    py::register_exception<SingularDesignError>(mod, "SingularDesignError", input_error.ptr());
    py::register_exception<InternalError>(mod, "InternalError", PyExc_RuntimeError);

    // ---- error metrics

    py::class_<TrafficSituationLabel>(mod, "TrafficSituationLabel")
        .def(py::init<int, int, int>(), py::arg("encounter") = 0, py::arg("overtaking") = 0,
             py::arg("overtaken") = 0)
        .def_readwrite("encounter", &TrafficSituationLabel::encounter)
        .def_readwrite("overtaking", &TrafficSituationLabel::overtaking)
        .def_readwrite("overtaken", &TrafficSituationLabel::overtaken)
        .def("empty", &TrafficSituationLabel::empty)
        .def(py::self == py::self)
        .def("__str__", &label_string)
        .def("__repr__", [](const TrafficSituationLabel& l) {
            return "TrafficSituationLabel('" + label_string(l) + "')";
        });

    py::class_<ErrorSeries>(mod, "ErrorSeries")
        .def(py::init([](std::string id, std::vector<double> h, std::vector<double> e,
                         TrafficSituationLabel label) {
                 return ErrorSeries{std::move(id), label, std::move(h), std::move(e)};
             }),
             py::arg("sample_id"), py::arg("horizons"), py::arg("errors"),
             py::arg("label") = TrafficSituationLabel{})
        .def_readwrite("sample_id", &ErrorSeries::sample_id)
        .def_readwrite("label", &ErrorSeries::label)
        .def_readwrite("horizons", &ErrorSeries::horizons)
        .def_readwrite("errors", &ErrorSeries::errors);

    py::class_<SummaryStats>(mod, "SummaryStats")
        .def_readonly("mean", &SummaryStats::mean)
        .def_readonly("median", &SummaryStats::median)
        .def_readonly("std", &SummaryStats::std)
        .def_readonly("q1", &SummaryStats::q1)
        .def_readonly("q3", &SummaryStats::q3)
        .def_readonly("whisker_low", &SummaryStats::whisker_low)
        .def_readonly("whisker_high", &SummaryStats::whisker_high)
        .def_readonly("n", &SummaryStats::n)
        .def("__str__", [](const SummaryStats& s) { return format_stats_cell(s); });

    mod.def("displacement_error", [](std::pair<double, double> p, std::pair<double, double> t) {
        return displacement_error(vec(p), vec(t));
    }, py::arg("predicted"), py::arg("truth"));

    mod.def("summarize", &summarize, py::arg("values"),
            "Mean, median, population std, quartiles and whiskers; None when empty.");

    mod.def("quantile", [](std::vector<double> values, double p) {
        if (values.empty()) throw InputError("quantile of an empty sequence");
        std::sort(values.begin(), values.end());
        return quantile_sorted(values, p);
    }, py::arg("values"), py::arg("p"));

    auto sample = [](std::vector<std::pair<double, double>> truth,
                     std::vector<std::pair<double, double>> predicted,
                     std::pair<double, double> t0) {
        PredictionSample s;
        s.sample_id = "sample";
        s.truth = vecs(truth);
        s.predicted = vecs(predicted);
        s.t0 = vec(t0);
        return s;
    };
    mod.def("per_step_errors", [sample](std::vector<std::pair<double, double>> truth,
                                        std::vector<std::pair<double, double>> predicted) {
        return per_step_errors(sample(std::move(truth), std::move(predicted), {0.0, 0.0}));
    }, py::arg("truth"), py::arg("predicted"));
    mod.def("densify_3s", [sample](std::vector<std::pair<double, double>> truth,
                                   std::vector<std::pair<double, double>> predicted,
                                   std::pair<double, double> t0) {
        return densify_3s(sample(std::move(truth), std::move(predicted), t0));
    }, py::arg("truth"), py::arg("predicted"), py::arg("t0"));

    // ---- regression and POAP

    py::class_<RegressionFit>(mod, "RegressionFit")
        .def_readonly("b", &RegressionFit::b)
        .def_readonly("m", &RegressionFit::m)
        .def_readonly("tau", &RegressionFit::tau)
        .def_readonly("covariance", &RegressionFit::covariance)
        .def_readonly("n", &RegressionFit::n)
        .def_readonly("r_squared", &RegressionFit::r_squared)
        .def_readonly("degenerate", &RegressionFit::degenerate)
        .def_property_readonly("transform", [](const RegressionFit& f) { return to_string(f.transform); });

    mod.def("fit_mle", [](std::vector<double> levels, std::vector<double> responses,
                          const std::string& transform) {
        return fit_mle(level_data(std::move(levels), std::move(responses)), transform_arg(transform));
    }, py::arg("levels"), py::arg("responses"), py::arg("transform") = "linear-linear");

    mod.def("select_transform", [](std::vector<double> levels, std::vector<double> responses,
                                   double max_residual_correlation) {
        const auto sel = select_transform(level_data(std::move(levels), std::move(responses)),
                                          SelectOptions{max_residual_correlation});
        py::list candidates;
        for (const auto& c : sel.candidates) {
            py::dict d;
            d["transform"] = to_string(c.transform);
            d["admissible"] = c.admissible;
            d["r_squared"] = c.r_squared;
            d["residual_correlation"] = c.residual_correlation;
            candidates.append(d);
        }
        py::dict out;
        out["transform"] = to_string(sel.transform);
        out["fallback"] = sel.fallback;
        out["candidates"] = candidates;
        return out;
    }, py::arg("levels"), py::arg("responses"), py::arg("max_residual_correlation") = 0.7);

    mod.def("normal_cdf", &normal_cdf, py::arg("z"));
    mod.def("normal_quantile", &normal_quantile, py::arg("p"));
    mod.def("poap", &poap, py::arg("fit"), py::arg("threshold"), py::arg("a"));
    mod.def("wald_lower_bound", &wald_lower_bound, py::arg("fit"), py::arg("threshold"),
            py::arg("a"), py::arg("confidence") = 0.95);

    py::class_<ReliabilityHorizon>(mod, "ReliabilityHorizon")
        .def_readonly("minutes", &ReliabilityHorizon::minutes)
        .def_readonly("censored", &ReliabilityHorizon::censored)
        .def_readonly("unreliable", &ReliabilityHorizon::unreliable)
        .def("render", &ReliabilityHorizon::render, py::arg("h_max") = 5.0);

    mod.def("solve_a_at_probability",
            [](const std::function<double(double)>& curve, double target, double h_max) {
                return solve_a_at_probability(curve, target, h_max);
            },
            py::arg("curve"), py::arg("target"), py::arg("h_max"),
            "Largest horizon in (0, h_max] where curve(a) >= target.");

    mod.def("a90", [](const RegressionFit& fit, double threshold, double h_max, double target,
                      std::optional<double> confidence) {
        if (confidence) {
            const double c = *confidence;
            return solve_a_at_probability(
                [&](double a) { return wald_lower_bound(fit, threshold, a, c); }, target, h_max);
        }
        return solve_a_at_probability([&](double a) { return poap(fit, threshold, a); }, target, h_max);
    }, py::arg("fit"), py::arg("threshold"), py::arg("h_max") = 5.0, py::arg("target") = 0.9,
       py::arg("confidence") = std::nullopt,
       "a_90 from the point estimate, or a_90/95 when a confidence is given.");

    py::class_<PoapCurve>(mod, "PoapCurve")
        .def_readonly("threshold", &PoapCurve::threshold)
        .def_readonly("confidence", &PoapCurve::confidence)
        .def_readonly("grid", &PoapCurve::grid)
        .def_readonly("p", &PoapCurve::p)
        .def_readonly("p_lower95", &PoapCurve::p_lower95)
        .def_readonly("a90", &PoapCurve::a90)
        .def_readonly("a90_95", &PoapCurve::a90_95)
        .def_readonly("fit", &PoapCurve::fit)
        .def_readonly("sample_count", &PoapCurve::sample_count)
        .def_property_readonly("levels", [](const PoapCurve& c) { return c.levels.levels; })
        .def_property_readonly("mean_errors", [](const PoapCurve& c) { return c.levels.responses; })
        .def_property_readonly("fallback", [](const PoapCurve& c) { return c.selection.fallback; });

    mod.def("build_poap_curve", [](const std::vector<ErrorSeries>& series, double threshold_m,
                                   double h_max, double confidence, double target,
                                   std::optional<std::string> transform) {
        PoapOptions o;
        o.threshold_m = threshold_m;
        o.h_max = h_max;
        o.confidence = confidence;
        o.target = target;
        if (transform) o.force_transform = transform_arg(*transform);
        return build_poap_curve(series, o);
    }, py::arg("series"), py::arg("threshold_m") = 20.0, py::arg("h_max") = 5.0,
       py::arg("confidence") = 0.95, py::arg("target") = 0.9, py::arg("transform") = std::nullopt);

    mod.def("simulate_errors", [](double b, double m, double tau, std::vector<double> levels,
                                  std::size_t samples_per_level, std::uint64_t seed) {
        return simulate_errors({b, m, tau, std::move(levels), samples_per_level, seed});
    }, py::arg("b"), py::arg("m"), py::arg("tau"), py::arg("levels"),
       py::arg("samples_per_level"), py::arg("seed") = 0);

    // ---- traffic situations

    mod.def("label_string", &label_string, py::arg("label"));
    mod.def("parse_label", &parse_label, py::arg("text"));
    mod.def("coarse_group", [](const TrafficSituationLabel& l) { return to_string(coarse_group(l)); },
            py::arg("label"));

    py::class_<SequenceSample>(mod, "SequenceSample")
        .def_readonly("sample_id", &SequenceSample::sample_id)
        .def_readonly("input_length", &SequenceSample::input_length)
        .def_readonly("output_length", &SequenceSample::output_length)
        .def_property_readonly("ego", [](const SequenceSample& s) {
            std::vector<Vec2> v;
            for (const auto& p : s.ego.points) v.push_back(p.position());
            return tups(v);
        })
        .def_property_readonly("times", [](const SequenceSample& s) {
            std::vector<std::int64_t> v;
            for (const auto& p : s.ego.points) v.push_back(p.timestamp);
            return v;
        })
        .def_property_readonly("neighbor_ids", [](const SequenceSample& s) {
            std::vector<std::string> v;
            for (const auto& n : s.neighbors) v.push_back(n.vessel_id);
            return v;
        });

    mod.def("detect_interactions", [](const SequenceSample& s, std::pair<double, double> axis,
                                      double stationary_threshold_m, std::optional<double> lateral_gate_m) {
        py::list out;
        for (const auto& e : detect_interactions(s, vec(axis), {stationary_threshold_m, lateral_gate_m})) {
            out.append(py::make_tuple(to_string(e.kind), e.neighbor_id, e.event_time));
        }
        return out;
    }, py::arg("sample"), py::arg("river_axis") = std::make_pair(1.0, 0.0),
       py::arg("stationary_threshold_m") = 50.0, py::arg("lateral_gate_m") = std::nullopt,
       "(kind, neighbor_id, event_time) for every detected crossing.");

    mod.def("classify", [](const SequenceSample& s, std::pair<double, double> axis) {
        return classify_sample(detect_interactions(s, vec(axis)));
    }, py::arg("sample"), py::arg("river_axis") = std::make_pair(1.0, 0.0));

    // ---- scenarios and predictors

    mod.def("generate_scene", [](std::uint64_t seed) {
        return generate_scene(random_scenario_spec(seed)).samples;
    }, py::arg("seed"), "Windowed samples of one random synthetic scene.");

    mod.def("constant_velocity_predict", [](const SequenceSample& s) {
        const auto p = constant_velocity_predict(s);
        return py::make_tuple(tups(p.truth), tups(p.predicted), tup(p.t0));
    }, py::arg("sample"), "(truth, predicted, t0) for the output window.");

    // ---- pipeline commands

    mod.def("_run", [](const std::string& command, const std::string& json_text,
                       const std::filesystem::path& base_dir) {
        const auto config = config_arg(json_text, base_dir);
        py::gil_scoped_release release;
        if (command == "ingest") cmd_ingest(config);
        else if (command == "classify") cmd_classify(config);
        else if (command == "evaluate") cmd_evaluate(config);
        else if (command == "demo") cmd_demo(config);
        else throw InputError("unknown command '" + command + "'");
    }, py::arg("command"), py::arg("config_json"), py::arg("base_dir"));
}
