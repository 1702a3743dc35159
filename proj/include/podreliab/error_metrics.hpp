#pragma once

// Displacement errors of predicted positions and their summary statistics.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "podreliab/geometry.hpp"
#include "podreliab/traffic.hpp"

namespace podreliab {

struct PredictionSample {
    std::string sample_id;
    std::string model;
    Vec2 t0;                      // last observed position, shared anchor
    std::vector<Vec2> truth;      // one position per step, 60 s apart
    std::vector<Vec2> predicted;  // same length as truth
    TrafficSituationLabel label;
};

struct ErrorSeries {
    std::string sample_id;
    TrafficSituationLabel label;
    std::vector<double> horizons;  // minutes, strictly increasing
    std::vector<double> errors;    // meters
};

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double std = 0.0;  // population (divide by n)
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::size_t n = 0;
};

double displacement_error(Vec2 predicted, Vec2 truth);

// Errors at the native steps: horizons 1, 2, ..., output_length minutes.
ErrorSeries per_step_errors(const PredictionSample& sample);

// Interpolates both polylines (anchored at t0 for t = 0) every `dt_seconds`
// up to the last step and returns the pointwise errors. Grid times that fall
// on a native step use the step positions directly.
ErrorSeries densify_3s(const PredictionSample& sample, int step_seconds = 60, int dt_seconds = 3);

// Linear interpolation between order statistics (R type 7). `sorted` must be
// ascending and non-empty; p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// nullopt for an empty input.
std::optional<SummaryStats> summarize(std::vector<double> values);

using LabelFilter = std::function<bool(const TrafficSituationLabel&)>;

// Statistics at one horizon over the series accepted by `group`. Throws
// AlignmentError if an accepted series lacks the horizon; nullopt when no
// series is accepted.
std::optional<SummaryStats> aggregate(const std::vector<ErrorSeries>& series,
                                      const LabelFilter& group, double horizon_min);

// Same, pooling every horizon of each accepted series.
std::optional<SummaryStats> aggregate_pooled(const std::vector<ErrorSeries>& series,
                                             const LabelFilter& group);

struct StatStars {
    bool mean = false;
    bool median = false;
    bool std = false;
};

// "25.05 (18.72, 22.79)", with '*' appended to starred statistics.
std::string format_stats_cell(const SummaryStats& stats, const StatStars& stars = {});

// JSON-lines: {"sample_id", "model", "truth": [[x,y],...], "pred": [[x,y],...], "t0": [x,y]}
std::vector<PredictionSample> read_predictions(std::istream& in);
void write_predictions(std::ostream& out, const std::vector<PredictionSample>& samples);

}  // namespace podreliab
