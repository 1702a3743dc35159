#include "podreliab/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "podreliab/errors.hpp"
#include "podreliab/svg.hpp"
#include "podreliab/text.hpp"

namespace podreliab {

namespace {

const std::vector<std::string>& palette() {
    static const std::vector<std::string> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                     "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return kColors;
}

const std::string& color_for(std::size_t i) { return palette()[i % palette().size()]; }

const char* kDashDot = "8,3,2,3";

std::vector<ErrorSeries> filter_series(const std::vector<ErrorSeries>& series, const LabelFilter& f) {
    std::vector<ErrorSeries> out;
    for (const auto& s : series) {
        if (!f || f(s.label)) out.push_back(s);
    }
    return out;
}

std::size_t distinct_samples(const std::map<std::string, std::vector<ErrorSeries>>& by_model,
                             const LabelFilter& f) {
    std::set<std::string> ids;
    for (const auto& [model, series] : by_model) {
        for (const auto& s : series) {
            if (!f || f(s.label)) ids.insert(s.sample_id);
        }
    }
    return ids.size();
}

// Indices of the minimum (or maximum) among present values. Empty when fewer
// than two values are present or all present values are equal.
std::vector<std::size_t> extreme_indices(const std::vector<std::optional<double>>& values, bool want_max) {
    std::vector<std::size_t> present;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) present.push_back(i);
    }
    if (present.size() < 2) return {};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto i : present) {
        lo = std::min(lo, *values[i]);
        hi = std::max(hi, *values[i]);
    }
    if (lo == hi) return {};
    std::vector<std::size_t> out;
    for (auto i : present) {
        if (*values[i] == (want_max ? hi : lo)) out.push_back(i);
    }
    return out;
}

std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

std::string md_row(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) out += " " + c + " |";
    return out + "\n";
}

std::string md_rule(std::size_t columns) {
    std::string out = "|";
    for (std::size_t i = 0; i < columns; ++i) out += "---|";
    return out + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
}

}  // namespace

std::vector<GroupDef> coarse_groups() {
    return {
        {"Overall", nullptr},
        {"Encounter", [](const TrafficSituationLabel& l) { return coarse_group(l) == CoarseGroup::Encounter; }},
        {"Overtaking", [](const TrafficSituationLabel& l) { return coarse_group(l) == CoarseGroup::Overtaking; }},
        {"Overtaken", [](const TrafficSituationLabel& l) { return coarse_group(l) == CoarseGroup::Overtaken; }},
        {"no-interaction", [](const TrafficSituationLabel& l) { return l.empty(); }},
    };
}

std::vector<TrafficSituationLabel> ordered_labels(std::vector<TrafficSituationLabel> labels) {
    auto key = [](const TrafficSituationLabel& l) {
        return std::make_tuple(l.overtaking + l.overtaken, l.overtaken, l.overtaking, l.encounter);
    };
    std::sort(labels.begin(), labels.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

std::string display_label(const TrafficSituationLabel& label) { return capitalize(label_string(label)); }

StatsTable build_stats_table(const std::vector<std::string>& models,
                             const std::map<std::string, std::vector<ErrorSeries>>& per_step,
                             double horizon_min) {
    StatsTable table;
    table.models = models;
    table.horizon_min = horizon_min;
    for (const auto& g : coarse_groups()) {
        StatsRow row;
        row.group = g.name;
        row.count = distinct_samples(per_step, g.filter);
        if (g.name == "no-interaction" && row.count == 0) continue;
        for (const auto& model : models) {
            const auto it = per_step.find(model);
            row.cells.push_back(it == per_step.end() ? std::nullopt
                                                     : aggregate(it->second, g.filter, horizon_min));
        }
        row.stars.assign(models.size(), {});
        auto mark = [&](auto getter, auto setter) {
            std::vector<std::optional<double>> values;
            for (const auto& c : row.cells) values.push_back(c ? std::optional<double>(getter(*c)) : std::nullopt);
            for (auto i : extreme_indices(values, false)) setter(row.stars[i]);
        };
        mark([](const SummaryStats& s) { return s.mean; }, [](StatStars& s) { s.mean = true; });
        mark([](const SummaryStats& s) { return s.median; }, [](StatStars& s) { s.median = true; });
        mark([](const SummaryStats& s) { return s.std; }, [](StatStars& s) { s.std = true; });
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string render_stats_table(const StatsTable& table) {
    std::string out = "Error statistics at prediction step " + format_trimmed(table.horizon_min, 3) +
                      " min: mean (median, std.) [m]; best per statistic marked with *\n\n";
    std::vector<std::string> header{"Traffic situation"};
    header.insert(header.end(), table.models.begin(), table.models.end());
    out += md_row(header);
    out += md_rule(header.size());
    for (const auto& row : table.rows) {
        std::vector<std::string> cells{row.group + " (" + std::to_string(row.count) + ")"};
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            cells.push_back(row.cells[i] ? format_stats_cell(*row.cells[i], row.stars[i])
                                         : "insufficient data");
        }
        out += md_row(cells);
    }
    out += "\nstd is the population standard deviation (divide by n); quartiles use linear "
           "interpolation between order statistics.\n";
    return out;
}

ReliabilityTable build_reliability_table(const std::vector<std::string>& models,
                                         const std::map<std::string, std::vector<ErrorSeries>>& densified,
                                         const PoapOptions& options) {
    ReliabilityTable table;
    table.models = models;
    table.h_max = options.h_max;

    std::vector<TrafficSituationLabel> labels;
    for (const auto& [model, series] : densified) {
        for (const auto& s : series) labels.push_back(s.label);
    }

    std::vector<ReliabilityRow> rows;
    ReliabilityRow overall;
    overall.key = "overall";
    overall.display = "Overall";
    rows.push_back(overall);
    for (const auto& l : ordered_labels(labels)) {
        ReliabilityRow r;
        r.key = label_string(l);
        r.display = display_label(l);
        r.label = l;
        rows.push_back(r);
    }

    for (auto& row : rows) {
        LabelFilter f = nullptr;
        if (row.label) {
            const TrafficSituationLabel want = *row.label;
            f = [want](const TrafficSituationLabel& l) { return l == want; };
        }
        row.count = distinct_samples(densified, f);
        for (const auto& model : models) {
            ReliabilityCell cell;
            const auto it = densified.find(model);
            const auto subset = it == densified.end() ? std::vector<ErrorSeries>{} : filter_series(it->second, f);
            if (subset.empty()) {
                cell.note = "insufficient data";
            } else {
                try {
                    cell.curve = build_poap_curve(subset, options);
                } catch (const InputError& e) {
                    cell.note = "insufficient data";
                }
            }
            row.cells.push_back(std::move(cell));
        }
        assign_markers(row);
        table.rows.push_back(std::move(row));
    }
    return table;
}

void assign_markers(ReliabilityRow& row) {
    std::vector<std::optional<double>> values;
    for (auto& c : row.cells) {
        c.best = c.worst = false;
        if (!c.curve) {
            values.push_back(std::nullopt);
        } else if (c.curve->a90_95.censored) {
            values.push_back(std::numeric_limits<double>::infinity());
        } else {
            values.push_back(c.curve->a90_95.minutes);
        }
    }
    for (auto i : extreme_indices(values, true)) row.cells[i].best = true;
    for (auto i : extreme_indices(values, false)) row.cells[i].worst = true;
}

std::string render_reliability_cell(const ReliabilityCell& cell, double h_max) {
    if (!cell.curve) return cell.note.empty() ? "insufficient data" : cell.note;
    std::string s = cell.curve->a90_95.render(h_max);
    if (cell.best) s += "*";
    if (cell.worst) s += "†";
    return s;
}

std::string render_reliability_table(const ReliabilityTable& table) {
    std::string out = "a_90/95 [min] per traffic situation (sample count); best marked with *, "
                      "worst with †\n\n";
    std::vector<std::string> header{"Traffic situation"};
    header.insert(header.end(), table.models.begin(), table.models.end());
    out += md_row(header);
    out += md_rule(header.size());
    for (const auto& row : table.rows) {
        std::vector<std::string> cells{row.display + " (" + std::to_string(row.count) + ")"};
        for (const auto& c : row.cells) cells.push_back(render_reliability_cell(c, table.h_max));
        out += md_row(cells);
    }
    return out;
}

std::string reliability_csv(const ReliabilityTable& table) {
    std::string out = "situation,count,model,a90,a90_95,a90_censored,a90_95_censored,rendered,marker\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            const auto& c = row.cells[i];
            out += csv_escape(row.key) + "," + std::to_string(row.count) + "," + csv_escape(table.models[i]) + ",";
            if (c.curve) {
                out += format_double(c.curve->a90.minutes) + "," + format_double(c.curve->a90_95.minutes) + "," +
                       (c.curve->a90.censored ? "true" : "false") + "," +
                       (c.curve->a90_95.censored ? "true" : "false") + ",";
            } else {
                out += ",,,,";
            }
            std::string marker = c.best ? "*" : "";
            if (c.worst) marker += "†";
            out += csv_escape(c.curve ? c.curve->a90_95.render(table.h_max) : render_reliability_cell(c, table.h_max)) +
                   "," + marker + "\n";
        }
    }
    return out;
}

std::string stats_csv(const std::vector<StatsRecord>& records) {
    std::string out = "model,group,horizon_min,n,mean,median,std,q1,q3,wlow,whigh\n";
    for (const auto& r : records) {
        out += csv_escape(r.model) + "," + csv_escape(r.group) + "," + r.horizon + ",";
        if (r.stats) {
            const auto& s = *r.stats;
            out += std::to_string(s.n) + "," + format_double(s.mean) + "," + format_double(s.median) + "," +
                   format_double(s.std) + "," + format_double(s.q1) + "," + format_double(s.q3) + "," +
                   format_double(s.whisker_low) + "," + format_double(s.whisker_high) + "\n";
        } else {
            out += "0,,,,,,,\n";
        }
    }
    return out;
}

std::string curve_csv(const PoapCurve& curve) {
    std::string out = "a_min,p,p_lower95\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out += format_double(curve.grid[i]) + "," + format_double(curve.p[i]) + "," +
               format_double(curve.p_lower95[i]) + "\n";
    }
    return out;
}

nlohmann::ordered_json poap_summary(const std::string& model, const std::string& label,
                                    const PoapCurve& curve, double h_max) {
    nlohmann::ordered_json j;
    j["model"] = model;
    j["label"] = label;
    j["transform"] = to_string(curve.fit.transform);
    j["b"] = curve.fit.b;
    j["m"] = curve.fit.m;
    j["tau"] = curve.fit.tau;
    j["r2"] = curve.fit.r_squared;
    j["n"] = curve.fit.n;
    j["threshold_m"] = curve.threshold;
    j["a90"] = curve.a90.minutes;
    j["a90_95"] = curve.a90_95.minutes;
    j["censored"] = curve.a90_95.censored;
    j["a90_censored"] = curve.a90.censored;
    j["a90_95_rendered"] = curve.a90_95.render(h_max);
    j["unreliable"] = curve.a90_95.unreliable;
    j["degenerate"] = curve.fit.degenerate;
    j["transform_fallback"] = curve.selection.fallback;
    j["samples"] = curve.sample_count;
    j["confidence"] = curve.confidence;
    j["covariance"] = curve.fit.covariance;
    j["lower_bound_method"] =
        "Phi(z - q*SE(z)), z = (th - b - m*a)/tau, SE(z)^2 = g' C g, g = (-1/tau, -a/tau, -z/tau), "
        "C = inverse observed information of (b, m, tau), q = one-sided normal quantile";
    return j;
}

Figure poap_figure(const ReliabilityTable& table, const ReliabilityRow& row, double target) {
    Figure fig;
    SvgPlot plot("POAP curves: " + row.display, "Prediction horizon a [min]", "Probability of accurate prediction",
                 {0.0, table.h_max}, {0.0, 1.02});
    fig.csv = "model,a_min,p,p_lower95\n";
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
        const auto& c = row.cells[i];
        if (!c.curve) continue;
        const auto& model = table.models[i];
        const auto& curve = *c.curve;
        plot.polyline(curve.grid, curve.p, color_for(i), "", {{"model", model}, {"series", "p"}});
        plot.polyline(curve.grid, curve.p_lower95, color_for(i), kDashDot,
                      {{"model", model}, {"series", "p_lower95"}});
        plot.legend(model + " POAP", color_for(i), "");
        plot.legend(model + " lower 95%", color_for(i), kDashDot);
        for (std::size_t k = 0; k < curve.grid.size(); ++k) {
            fig.csv += csv_escape(model) + "," + format_double(curve.grid[k]) + "," + format_double(curve.p[k]) +
                       "," + format_double(curve.p_lower95[k]) + "\n";
        }
    }
    plot.hline(target, "#555555", "4,3", format_trimmed(target, 3));
    plot.x_ticks(nice_ticks(0.0, table.h_max));
    plot.y_ticks(nice_ticks(0.0, 1.0, 5));
    fig.svg = plot.str();
    return fig;
}

Figure boxplot_figure(const std::vector<std::string>& models,
                      const std::map<std::string, std::vector<ErrorSeries>>& per_step) {
    struct BoxData {
        std::string model;
        std::string horizon;
        double x = 0.0;
        SummaryStats stats;
    };
    std::vector<double> horizons;
    for (const auto& [model, series] : per_step) {
        for (const auto& s : series) {
            for (double h : s.horizons) {
                if (std::find(horizons.begin(), horizons.end(), h) == horizons.end()) horizons.push_back(h);
            }
        }
    }
    std::sort(horizons.begin(), horizons.end());

    const double group_width = 0.8;
    const double box_half = group_width / (2.0 * std::max<std::size_t>(models.size(), 1)) * 0.8;
    auto x_of = [&](std::size_t group, std::size_t model_idx) {
        const double slot = group_width / static_cast<double>(std::max<std::size_t>(models.size(), 1));
        return static_cast<double>(group + 1) - group_width / 2 + slot * (static_cast<double>(model_idx) + 0.5);
    };

    std::vector<BoxData> boxes;
    double ymax = 0.0;
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        const auto it = per_step.find(models[mi]);
        if (it == per_step.end()) continue;
        for (std::size_t hi = 0; hi <= horizons.size(); ++hi) {
            std::optional<SummaryStats> st;
            std::string label;
            if (hi < horizons.size()) {
                st = aggregate(it->second, nullptr, horizons[hi]);
                label = format_double(horizons[hi]);
            } else {
                st = aggregate_pooled(it->second, nullptr);
                label = "all";
            }
            if (!st) continue;
            ymax = std::max(ymax, st->whisker_high);
            boxes.push_back({models[mi], label, x_of(hi, mi), *st});
        }
    }

    std::vector<double> ticks;
    std::vector<std::string> tick_labels;
    for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
        ticks.push_back(static_cast<double>(hi + 1));
        tick_labels.push_back(format_trimmed(horizons[hi], 3));
    }
    ticks.push_back(static_cast<double>(horizons.size() + 1));
    tick_labels.push_back("all");

    const auto yt = nice_ticks(0.0, ymax > 0.0 ? ymax : 1.0);
    SvgPlot plot("Displacement error by prediction step", "Prediction step [min]", "Displacement error [m]",
                 {0.4, static_cast<double>(horizons.size()) + 1.6}, {0.0, yt.back() > 0.0 ? yt.back() : 1.0});
    Figure fig;
    fig.csv = "model,horizon_min,n,mean,q1,median,q3,wlow,whigh\n";
    for (const auto& b : boxes) {
        const auto mi = static_cast<std::size_t>(std::find(models.begin(), models.end(), b.model) - models.begin());
        const auto& s = b.stats;
        plot.box(b.x, box_half, s.whisker_low, s.q1, s.median, s.q3, s.whisker_high, color_for(mi),
                 {{"model", b.model},
                  {"horizon", b.horizon},
                  {"n", std::to_string(s.n)},
                  {"mean", format_double(s.mean)},
                  {"q1", format_double(s.q1)},
                  {"median", format_double(s.median)},
                  {"q3", format_double(s.q3)},
                  {"wlow", format_double(s.whisker_low)},
                  {"whigh", format_double(s.whisker_high)}});
        fig.csv += csv_escape(b.model) + "," + b.horizon + "," + std::to_string(s.n) + "," + format_double(s.mean) +
                   "," + format_double(s.q1) + "," + format_double(s.median) + "," + format_double(s.q3) + "," +
                   format_double(s.whisker_low) + "," + format_double(s.whisker_high) + "\n";
    }
    for (std::size_t mi = 0; mi < models.size(); ++mi) plot.legend(models[mi], color_for(mi), "");
    plot.x_ticks(ticks, tick_labels);
    plot.y_ticks(yt);
    fig.svg = plot.str();
    return fig;
}

std::string slug(const std::string& key) {
    std::string out;
    for (char c : key) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '-' || c == '.') {
            out += static_cast<char>(std::tolower(u));
        } else {
            out += '_';
        }
    }
    return out.empty() ? "_" : out;
}

EvaluationReport evaluate(const std::vector<PredictionSample>& samples, const PoapOptions& options) {
    if (samples.empty()) throw InputError("no predictions to evaluate");
    EvaluationReport report;
    report.target = options.target;
    report.output_length = samples.front().truth.size();

    std::map<std::string, std::vector<ErrorSeries>> per_step, densified;
    for (const auto& s : samples) {
        if (s.truth.size() != report.output_length) {
            throw InputError("sample '" + s.sample_id + "' has " + std::to_string(s.truth.size()) +
                             " steps, expected " + std::to_string(report.output_length));
        }
        per_step[s.model].push_back(per_step_errors(s));
        densified[s.model].push_back(densify_3s(s));
    }
    for (const auto& [model, series] : per_step) report.models.push_back(model);

    // Fine labels present in the data, for per-situation rows.
    std::vector<TrafficSituationLabel> labels;
    for (const auto& s : samples) labels.push_back(s.label);
    std::vector<GroupDef> groups = coarse_groups();
    for (const auto& l : ordered_labels(labels)) {
        if (l.empty()) continue;
        groups.push_back({label_string(l), [l](const TrafficSituationLabel& x) { return x == l; }});
    }

    const std::set<std::string> always = {"Overall", "Encounter", "Overtaking", "Overtaken"};
    for (const auto& model : report.models) {
        const auto& series = per_step.at(model);
        for (const auto& g : groups) {
            if (!always.count(g.name) && distinct_samples(per_step, g.filter) == 0) continue;
            for (std::size_t k = 1; k <= report.output_length; ++k) {
                report.stats.push_back({model, g.name, std::to_string(k), aggregate(series, g.filter, static_cast<double>(k))});
            }
            report.stats.push_back({model, g.name, "all", aggregate_pooled(series, g.filter)});
        }
    }

    report.table2 = build_stats_table(report.models, per_step, static_cast<double>(report.output_length));
    report.table3 = build_reliability_table(report.models, densified, options);
    report.boxplot = boxplot_figure(report.models, per_step);
    for (const auto& row : report.table3.rows) {
        const bool any = std::any_of(row.cells.begin(), row.cells.end(), [](const auto& c) { return c.curve.has_value(); });
        if (any) report.poap_figures.emplace_back(slug(row.key), poap_figure(report.table3, row, options.target));
    }
    return report;
}

void write_evaluation(const EvaluationReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir / "curves");
    write_file(out_dir / "stats.csv", stats_csv(report.stats));
    write_file(out_dir / "table2.md", render_stats_table(report.table2));
    write_file(out_dir / "table3.md", render_reliability_table(report.table3));
    write_file(out_dir / "table3.csv", reliability_csv(report.table3));
    write_file(out_dir / "boxplot.svg", report.boxplot.svg);
    write_file(out_dir / "boxplot.csv", report.boxplot.csv);

    nlohmann::ordered_json summaries = nlohmann::ordered_json::array();
    for (const auto& row : report.table3.rows) {
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            const auto& c = row.cells[i];
            const auto& model = report.table3.models[i];
            if (!c.curve) {
                nlohmann::ordered_json j;
                j["model"] = model;
                j["label"] = row.key;
                j["status"] = c.note;
                summaries.push_back(j);
                continue;
            }
            summaries.push_back(poap_summary(model, row.key, *c.curve, report.table3.h_max));
            write_file(out_dir / "curves" / (slug(model) + "__" + slug(row.key) + ".csv"), curve_csv(*c.curve));
        }
    }
    write_file(out_dir / "poap_summary.json", summaries.dump(2) + "\n");
    for (const auto& [name, fig] : report.poap_figures) {
        write_file(out_dir / ("poap_" + name + ".svg"), fig.svg);
        write_file(out_dir / ("poap_" + name + ".csv"), fig.csv);
    }
}

}  // namespace podreliab
