#pragma once

// â-versus-a reliability analysis: level averaging, axis-transform choice,
// maximum-likelihood regression, probability-of-accurate-prediction (POAP)
// curve, its Wald lower confidence bound and the a_90 / a_90/95 horizons.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "podreliab/error_metrics.hpp"

namespace podreliab {

enum class AxisScale { Linear, Logarithmic };

struct AxisTransform {
    AxisScale a_scale = AxisScale::Linear;     // process parameter (horizon)
    AxisScale ahat_scale = AxisScale::Linear;  // response (error)

    friend bool operator==(const AxisTransform&, const AxisTransform&) = default;
};

// "linear-linear", "linear-log", "log-linear", "log-log" (a first, then â).
std::string to_string(const AxisTransform& t);
std::optional<AxisTransform> parse_transform(const std::string& text);

// The four candidates, in tie-break preference order.
const std::array<AxisTransform, 4>& candidate_transforms();

double transform_value(AxisScale scale, double v);

// Paired (a, â) observations. After per-level averaging `a` is strictly
// increasing; raw scatter may repeat levels.
struct LevelData {
    std::vector<double> levels;     // a, minutes
    std::vector<double> responses;  // â, meters

    std::size_t size() const { return levels.size(); }
};

// Arithmetic mean of the errors at each horizon. Every series must share the
// first series' horizon grid (AlignmentError otherwise).
LevelData average_per_level(const std::vector<ErrorSeries>& series);

// Every (horizon, error) pair of every series, unaveraged.
LevelData pool_observations(const std::vector<ErrorSeries>& series);

struct RegressionFit {
    double b = 0.0;    // intercept, transformed units
    double m = 0.0;    // slope, transformed units
    double tau = 0.0;  // residual standard deviation, transformed units
    // Inverse observed Fisher information over (b, m, tau), row-major.
    std::array<std::array<double, 3>, 3> covariance{};
    AxisTransform transform;
    std::size_t n = 0;
    double r_squared = 0.0;
    bool degenerate = false;  // tau == 0: POAP is a step function
};

// Maximum-likelihood fit of â = b + m·a + ε, ε ~ N(0, τ²), on the
// transformed data. (b, m) are the least-squares solution, τ² = SSE/n and
// the covariance is the inverse observed information at the optimum:
// Var(b, m) = τ²(XᵀX)⁻¹, Var(τ) = τ²/(2n), Cov((b, m), τ) = 0.
RegressionFit fit_mle(const LevelData& data, const AxisTransform& transform = {});

struct TransformCandidate {
    AxisTransform transform;
    bool admissible = false;       // defined on the data and passes the screen
    double r_squared = 0.0;
    double residual_correlation = 0.0;  // corr(|residual|, a)
};

struct TransformSelection {
    AxisTransform transform;
    std::vector<TransformCandidate> candidates;
    bool fallback = false;  // every candidate failed the screen
};

struct SelectOptions {
    double max_residual_correlation = 0.7;
};

// Fits all four axis combinations, discards those whose |corr(|residual|, a)|
// exceeds the screen, and keeps the best r². Ties prefer linear-linear, then
// linear-log, log-linear, log-log.
TransformSelection select_transform(const LevelData& data, const SelectOptions& options = {});

double normal_cdf(double z);
double normal_quantile(double p);

// P(â < threshold) at horizon a, evaluated on the fit's transformed scales.
double poap(const RegressionFit& fit, double threshold, double a);

// Delta-method Wald lower bound on poap at the given one-sided confidence.
double wald_lower_bound(const RegressionFit& fit, double threshold, double a,
                        double confidence = 0.95);

struct ReliabilityHorizon {
    double minutes = 0.0;
    bool censored = false;    // curve still >= target at h_max
    bool unreliable = false;  // curve below target already at the smallest horizon

    // "> 5" when censored, otherwise the value with up to three decimals.
    std::string render(double h_max) const;
};

struct SolveOptions {
    double tolerance = 1e-10;   // minutes
    std::size_t scan_points = 1000;
    double min_horizon = 1e-9;  // smallest horizon probed
};

// Largest a in (0, h_max] with curve(a) >= target. The range is scanned from
// h_max downward to bracket the last crossing, which is then bisected.
ReliabilityHorizon solve_a_at_probability(const std::function<double(double)>& curve,
                                          double target, double h_max,
                                          const SolveOptions& options = {});

struct PoapOptions {
    double threshold_m = 20.0;
    double h_max = 5.0;
    double confidence = 0.95;
    double target = 0.9;
    double grid_step = 0.05;  // minutes
    SelectOptions select;
    std::optional<AxisTransform> force_transform;
};

struct PoapCurve {
    double threshold = 0.0;
    double confidence = 0.95;
    std::vector<double> grid;       // horizons, minutes
    std::vector<double> p;          // point estimate
    std::vector<double> p_lower95;  // Wald lower bound
    ReliabilityHorizon a90;
    ReliabilityHorizon a90_95;
    LevelData levels;
    RegressionFit fit;
    TransformSelection selection;
    std::size_t sample_count = 0;
};

// average_per_level -> select_transform -> fit_mle -> curve on the grid ->
// a_90 and a_90/95. Needs at least three distinct horizon levels.
PoapCurve build_poap_curve(const std::vector<ErrorSeries>& series, const PoapOptions& options = {});

}  // namespace podreliab
