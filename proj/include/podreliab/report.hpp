#pragma once

// Error-statistics and reliability tables, POAP/boxplot figures, and the
// file layout written by `podreliab evaluate`.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "podreliab/error_metrics.hpp"
#include "podreliab/pod.hpp"

namespace podreliab {

struct GroupDef {
    std::string name;
    LabelFilter filter;
};

// Overall, Encounter, Overtaking, Overtaken, no-interaction.
std::vector<GroupDef> coarse_groups();

// Labels ordered by interaction complexity: pure encounters first (by count),
// then mixes with overtaking, then with overtaken.
std::vector<TrafficSituationLabel> ordered_labels(std::vector<TrafficSituationLabel> labels);

// "Encounter-1 overtaking-1"
std::string display_label(const TrafficSituationLabel& label);

struct StatsRow {
    std::string group;
    std::size_t count = 0;  // distinct samples in the group
    std::vector<std::optional<SummaryStats>> cells;  // one per model
    std::vector<StatStars> stars;
};

struct StatsTable {
    std::vector<std::string> models;
    double horizon_min = 0.0;
    std::vector<StatsRow> rows;
};

// Error statistics at one horizon, per coarse group and model. A statistic is
// starred where it is lowest across models; ties star every tied model, and
// nothing is starred when all models agree.
StatsTable build_stats_table(const std::vector<std::string>& models,
                             const std::map<std::string, std::vector<ErrorSeries>>& per_step,
                             double horizon_min);

// Markdown, cells as "mean (median, std)".
std::string render_stats_table(const StatsTable& table);

struct ReliabilityCell {
    std::optional<PoapCurve> curve;  // nullopt: insufficient data
    std::string note;                // reason when curve is missing
    bool best = false;               // '*'
    bool worst = false;              // '†'
};

struct ReliabilityRow {
    std::string key;      // "overall" or label_string()
    std::string display;  // "Overall", "Encounter-1", ...
    std::optional<TrafficSituationLabel> label;
    std::size_t count = 0;
    std::vector<ReliabilityCell> cells;
};

struct ReliabilityTable {
    std::vector<std::string> models;
    double h_max = 5.0;
    std::vector<ReliabilityRow> rows;
};

// POAP curves for the whole test set and for every traffic-situation label,
// per model. Rows with fewer than 3 horizon levels or no samples are kept
// with an "insufficient data" cell.
ReliabilityTable build_reliability_table(const std::vector<std::string>& models,
                                         const std::map<std::string, std::vector<ErrorSeries>>& densified,
                                         const PoapOptions& options);

// Largest a_90/95 gets '*', smallest '†'; censored counts as largest.
void assign_markers(ReliabilityRow& row);

std::string render_reliability_cell(const ReliabilityCell& cell, double h_max);

// Markdown with one a_90/95 column per model, e.g. "| Overall (2578) | 2.452† | 3.19 | 3.541* |".
std::string render_reliability_table(const ReliabilityTable& table);
std::string reliability_csv(const ReliabilityTable& table);

// CSV: model,group,horizon_min,n,mean,median,std,q1,q3,wlow,whigh
struct StatsRecord {
    std::string model;
    std::string group;
    std::string horizon;  // minutes, or "all" for pooled horizons
    std::optional<SummaryStats> stats;
};
std::string stats_csv(const std::vector<StatsRecord>& records);

// CSV: a_min,p,p_lower95
std::string curve_csv(const PoapCurve& curve);

nlohmann::ordered_json poap_summary(const std::string& model, const std::string& label,
                                    const PoapCurve& curve, double h_max);

struct Figure {
    std::string svg;
    std::string csv;  // exactly the plotted numbers
};

// POAP point estimates (solid) and lower bounds (dash-dot) of every model for
// one table row, with the target probability as a horizontal reference.
Figure poap_figure(const ReliabilityTable& table, const ReliabilityRow& row, double target);

// One box per model and prediction step, plus a pooled box per model.
Figure boxplot_figure(const std::vector<std::string>& models,
                      const std::map<std::string, std::vector<ErrorSeries>>& per_step);

// File-system safe slug of a row key ("encounter-1 overtaken-1" -> "encounter-1_overtaken-1").
std::string slug(const std::string& key);

struct EvaluationReport {
    std::vector<std::string> models;
    std::size_t output_length = 0;
    std::vector<StatsRecord> stats;
    StatsTable table2;
    ReliabilityTable table3;
    Figure boxplot;
    std::vector<std::pair<std::string, Figure>> poap_figures;  // (slug, figure)
    double target = 0.9;
};

// Runs the whole evaluation for labelled predictions of one or more models.
EvaluationReport evaluate(const std::vector<PredictionSample>& samples, const PoapOptions& options);

// Writes stats.csv, table2.md, boxplot.{svg,csv}, table3.{md,csv},
// poap_summary.json, curves/<model>__<row>.csv and poap_<row>.{svg,csv}.
void write_evaluation(const EvaluationReport& report, const std::filesystem::path& out_dir);

}  // namespace podreliab
