#include "podreliab/pod.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "podreliab/errors.hpp"
#include "podreliab/text.hpp"

namespace podreliab {

namespace {

const char* scale_name(AxisScale s) { return s == AxisScale::Linear ? "linear" : "log"; }

double pearson(const std::vector<double>& u, const std::vector<double>& v) {
    const double n = static_cast<double>(u.size());
    const double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
    const double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double suv = 0.0, suu = 0.0, svv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suv += (u[i] - mu) * (v[i] - mv);
        suu += (u[i] - mu) * (u[i] - mu);
        svv += (v[i] - mv) * (v[i] - mv);
    }
    if (suu <= 0.0 || svv <= 0.0) return 0.0;
    return suv / std::sqrt(suu * svv);
}

bool defined_on(const LevelData& data, const AxisTransform& t) {
    auto positive = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
    };
    if (t.a_scale == AxisScale::Logarithmic && !positive(data.levels)) return false;
    if (t.ahat_scale == AxisScale::Logarithmic && !positive(data.responses)) return false;
    return true;
}

// Standardised distance of the threshold from the regression line at a.
double z_score(const RegressionFit& fit, double threshold, double a, double& x) {
    x = transform_value(fit.transform.a_scale, a);
    const double th = transform_value(fit.transform.ahat_scale, threshold);
    return (th - (fit.b + fit.m * x)) / fit.tau;
}

double step_probability(const RegressionFit& fit, double threshold, double a) {
    const double x = transform_value(fit.transform.a_scale, a);
    const double th = transform_value(fit.transform.ahat_scale, threshold);
    return fit.b + fit.m * x < th ? 1.0 : 0.0;
}

}  // namespace

std::string to_string(const AxisTransform& t) {
    return std::string(scale_name(t.a_scale)) + "-" + scale_name(t.ahat_scale);
}

std::optional<AxisTransform> parse_transform(const std::string& text) {
    for (const auto& t : candidate_transforms()) {
        if (to_string(t) == text) return t;
    }
    return std::nullopt;
}

const std::array<AxisTransform, 4>& candidate_transforms() {
    static const std::array<AxisTransform, 4> kCandidates = {
        AxisTransform{AxisScale::Linear, AxisScale::Linear},
        AxisTransform{AxisScale::Linear, AxisScale::Logarithmic},
        AxisTransform{AxisScale::Logarithmic, AxisScale::Linear},
        AxisTransform{AxisScale::Logarithmic, AxisScale::Logarithmic},
    };
    return kCandidates;
}

double transform_value(AxisScale scale, double v) {
    if (scale == AxisScale::Linear) return v;
    if (!(v > 0.0)) throw DomainError("logarithmic axis needs positive values, got " + format_double(v));
    return std::log(v);
}

LevelData average_per_level(const std::vector<ErrorSeries>& series) {
    if (series.empty()) throw InputError("no error series to average");
    const auto& grid = series.front().horizons;
    LevelData out;
    out.levels = grid;
    out.responses.assign(grid.size(), 0.0);
    for (const auto& s : series) {
        if (s.horizons.size() != grid.size() || s.errors.size() != grid.size()) {
            throw AlignmentError(s.sample_id, "horizon grid has " + std::to_string(s.horizons.size()) +
                                                  " levels, expected " + std::to_string(grid.size()));
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (std::fabs(s.horizons[i] - grid[i]) > 1e-9) {
                throw AlignmentError(s.sample_id, "horizon " + format_double(s.horizons[i]) +
                                                      " does not match " + format_double(grid[i]));
            }
            out.responses[i] += s.errors[i];
        }
    }
    for (double& r : out.responses) r /= static_cast<double>(series.size());
    return out;
}

LevelData pool_observations(const std::vector<ErrorSeries>& series) {
    LevelData out;
    for (const auto& s : series) {
        out.levels.insert(out.levels.end(), s.horizons.begin(), s.horizons.end());
        out.responses.insert(out.responses.end(), s.errors.begin(), s.errors.end());
    }
    return out;
}

RegressionFit fit_mle(const LevelData& data, const AxisTransform& transform) {
    if (data.levels.size() != data.responses.size()) {
        throw InputError("levels and responses differ in length");
    }
    if (data.size() < 3) throw InputError("regression needs at least 3 points");

    const std::size_t n = data.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = transform_value(transform.a_scale, data.levels[i]);
        y[i] = transform_value(transform.ahat_scale, data.responses[i]);
    }
    const double nd = static_cast<double>(n);
    const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / nd;
    const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / nd;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
        syy += (y[i] - ybar) * (y[i] - ybar);
    }
    if (!(sxx > 0.0)) throw SingularDesignError("process parameter has zero variance");

    RegressionFit fit;
    fit.transform = transform;
    fit.n = n;
    fit.m = sxy / sxx;
    fit.b = ybar - fit.m * xbar;

    double sse = 0.0;
    double ymax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.b + fit.m * x[i]);
        sse += r * r;
        ymax = std::max(ymax, std::fabs(y[i]));
    }
    fit.tau = std::sqrt(sse / nd);
    // Residuals at rounding level mean the data lie on a line.
    if (fit.tau <= 1e-12 * (1.0 + ymax)) {
        fit.tau = 0.0;
        sse = 0.0;
        fit.degenerate = true;
    }

    const double tau2 = fit.tau * fit.tau;
    const double sum_x2 = sxx + nd * xbar * xbar;
    fit.covariance[0][0] = tau2 * sum_x2 / (nd * sxx);
    fit.covariance[0][1] = fit.covariance[1][0] = -tau2 * xbar / sxx;
    fit.covariance[1][1] = tau2 / sxx;
    fit.covariance[2][2] = tau2 / (2.0 * nd);

    if (syy > 0.0) {
        fit.r_squared = std::clamp(1.0 - sse / syy, 0.0, 1.0);
    } else {
        fit.r_squared = sse == 0.0 ? 1.0 : 0.0;
    }
    return fit;
}

TransformSelection select_transform(const LevelData& data, const SelectOptions& options) {
    if (data.size() < 3) throw InputError("transform selection needs at least 3 levels");
    TransformSelection sel;
    for (const auto& t : candidate_transforms()) {
        TransformCandidate c;
        c.transform = t;
        if (defined_on(data, t)) {
            try {
                const RegressionFit fit = fit_mle(data, t);
                c.r_squared = fit.r_squared;
                if (!fit.degenerate) {
                    std::vector<double> abs_res(data.size()), x(data.size());
                    for (std::size_t i = 0; i < data.size(); ++i) {
                        x[i] = transform_value(t.a_scale, data.levels[i]);
                        const double y = transform_value(t.ahat_scale, data.responses[i]);
                        abs_res[i] = std::fabs(y - (fit.b + fit.m * x[i]));
                    }
                    c.residual_correlation = pearson(abs_res, x);
                }
                c.admissible = std::fabs(c.residual_correlation) <= options.max_residual_correlation;
            } catch (const SingularDesignError&) {
                c.admissible = false;
            }
        }
        sel.candidates.push_back(c);
    }

    auto pick = [&](bool require_admissible) -> std::optional<AxisTransform> {
        std::optional<AxisTransform> best;
        double best_r2 = -1.0;
        for (std::size_t i = 0; i < sel.candidates.size(); ++i) {
            const auto& c = sel.candidates[i];
            if (!defined_on(data, c.transform)) continue;
            if (require_admissible && !c.admissible) continue;
            // Strictly better by more than rounding noise; earlier wins ties.
            if (!best || c.r_squared > best_r2 + 1e-12) {
                best = c.transform;
                best_r2 = c.r_squared;
            }
        }
        return best;
    };

    if (auto t = pick(true)) {
        sel.transform = *t;
    } else if (auto f = pick(false)) {
        sel.transform = *f;
        sel.fallback = true;
    } else {
        throw SingularDesignError("no axis transform can be fitted to the data");
    }
    return sel;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile needs p in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double poap(const RegressionFit& fit, double threshold, double a) {
    if (fit.tau == 0.0) return step_probability(fit, threshold, a);
    double x = 0.0;
    return normal_cdf(z_score(fit, threshold, a, x));
}

double wald_lower_bound(const RegressionFit& fit, double threshold, double a, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InputError("confidence must lie in (0, 1)");
    }
    if (fit.tau == 0.0) return step_probability(fit, threshold, a);
    double x = 0.0;
    const double z = z_score(fit, threshold, a, x);
    const std::array<double, 3> g = {-1.0 / fit.tau, -x / fit.tau, -z / fit.tau};
    double var = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            var += g[i] * fit.covariance[i][j] * g[j];
            scale += std::fabs(g[i] * fit.covariance[i][j] * g[j]);
        }
    }
    if (var < -1e-12 * (1.0 + scale)) throw InternalError("parameter covariance is not positive semi-definite");
    const double se = std::sqrt(std::max(var, 0.0));
    return normal_cdf(z - normal_quantile(confidence) * se);
}

std::string ReliabilityHorizon::render(double h_max) const {
    if (censored) return "> " + format_trimmed(h_max, 3);
    return format_trimmed(minutes, 3);
}

ReliabilityHorizon solve_a_at_probability(const std::function<double(double)>& curve, double target,
                                          double h_max, const SolveOptions& options) {
    if (!(h_max > 0.0)) throw InputError("h_max must be positive");
    ReliabilityHorizon out;
    if (curve(h_max) >= target) {
        out.minutes = h_max;
        out.censored = true;
        return out;
    }
    // Bracket the last crossing: lo satisfies the target, hi does not.
    double hi = h_max;
    std::optional<double> lo;
    const std::size_t n = std::max<std::size_t>(options.scan_points, 1);
    for (std::size_t j = n - 1; j >= 1; --j) {
        const double a = h_max * static_cast<double>(j) / static_cast<double>(n);
        if (curve(a) >= target) {
            lo = a;
            break;
        }
        hi = a;
    }
    if (!lo) {
        if (curve(options.min_horizon) < target) {
            out.unreliable = true;
            return out;
        }
        lo = options.min_horizon;
    }
    double l = *lo;
    while (hi - l > options.tolerance) {
        const double mid = 0.5 * (l + hi);
        if (mid <= l || mid >= hi) break;
        if (curve(mid) >= target) {
            l = mid;
        } else {
            hi = mid;
        }
    }
    out.minutes = l;
    return out;
}

PoapCurve build_poap_curve(const std::vector<ErrorSeries>& series, const PoapOptions& options) {
    if (!(options.threshold_m > 0.0)) throw InputError("decision threshold must be positive");
    if (!(options.h_max > 0.0)) throw InputError("h_max must be positive");
    PoapCurve curve;
    curve.threshold = options.threshold_m;
    curve.confidence = options.confidence;
    curve.sample_count = series.size();
    curve.levels = average_per_level(series);
    if (curve.levels.size() < 3) throw InputError("POAP curve needs at least 3 horizon levels");

    if (options.force_transform) {
        curve.selection.transform = *options.force_transform;
    } else {
        curve.selection = select_transform(curve.levels, options.select);
    }
    curve.fit = fit_mle(curve.levels, curve.selection.transform);

    const auto steps = static_cast<std::size_t>(std::llround(options.h_max / options.grid_step));
    for (std::size_t k = 1; k <= steps; ++k) {
        const double a = static_cast<double>(k) * options.grid_step;
        curve.grid.push_back(a);
        curve.p.push_back(poap(curve.fit, options.threshold_m, a));
        curve.p_lower95.push_back(wald_lower_bound(curve.fit, options.threshold_m, a, options.confidence));
    }
    const auto& fit = curve.fit;
    curve.a90 = solve_a_at_probability(
        [&](double a) { return poap(fit, options.threshold_m, a); }, options.target, options.h_max);
    curve.a90_95 = solve_a_at_probability(
        [&](double a) { return wald_lower_bound(fit, options.threshold_m, a, options.confidence); },
        options.target, options.h_max);
    return curve;
}

}  // namespace podreliab
