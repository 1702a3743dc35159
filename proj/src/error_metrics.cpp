#include "podreliab/error_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "podreliab/errors.hpp"
#include "podreliab/text.hpp"

namespace podreliab {

double displacement_error(Vec2 predicted, Vec2 truth) { return norm(predicted - truth); }

ErrorSeries per_step_errors(const PredictionSample& sample) {
    if (sample.truth.empty() || sample.truth.size() != sample.predicted.size()) {
        throw InputError("sample '" + sample.sample_id +
                         "': truth and prediction need equal, non-zero length");
    }
    ErrorSeries s;
    s.sample_id = sample.sample_id;
    s.label = sample.label;
    for (std::size_t k = 0; k < sample.truth.size(); ++k) {
        s.horizons.push_back(static_cast<double>(k + 1));
        s.errors.push_back(displacement_error(sample.predicted[k], sample.truth[k]));
    }
    return s;
}

namespace {

// Position on the anchored polyline (t0, p[0], p[1], ...) at `t` seconds.
Vec2 polyline_at(Vec2 t0, const std::vector<Vec2>& pts, int t, int step) {
    const int seg = t / step;
    const int rem = t % step;
    const Vec2 start = seg == 0 ? t0 : pts[static_cast<std::size_t>(seg - 1)];
    if (rem == 0) return start;
    return lerp(start, pts[static_cast<std::size_t>(seg)], static_cast<double>(rem) / step);
}

}  // namespace

ErrorSeries densify_3s(const PredictionSample& sample, int step_seconds, int dt_seconds) {
    if (sample.truth.empty() || sample.truth.size() != sample.predicted.size()) {
        throw InputError("sample '" + sample.sample_id +
                         "': truth and prediction need equal, non-zero length");
    }
    if (dt_seconds <= 0 || step_seconds % dt_seconds != 0) {
        throw InputError("densification step must divide the sampling step");
    }
    ErrorSeries s;
    s.sample_id = sample.sample_id;
    s.label = sample.label;
    const int total = step_seconds * static_cast<int>(sample.truth.size());
    for (int t = dt_seconds; t <= total; t += dt_seconds) {
        const Vec2 p = polyline_at(sample.t0, sample.predicted, t, step_seconds);
        const Vec2 q = polyline_at(sample.t0, sample.truth, t, step_seconds);
        s.horizons.push_back(static_cast<double>(t) / 60.0);
        s.errors.push_back(displacement_error(p, q));
    }
    return s;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InputError("quantile of empty data");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::optional<SummaryStats> summarize(std::vector<double> values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    SummaryStats s;
    s.n = values.size();
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / n);
    s.median = quantile_sorted(values, 0.5);
    s.q1 = quantile_sorted(values, 0.25);
    s.q3 = quantile_sorted(values, 0.75);
    const double iqr = s.q3 - s.q1;
    const double lo_fence = s.q1 - 1.5 * iqr;
    const double hi_fence = s.q3 + 1.5 * iqr;
    s.whisker_low = *std::find_if(values.begin(), values.end(),
                                  [&](double v) { return v >= lo_fence; });
    s.whisker_high = *std::find_if(values.rbegin(), values.rend(),
                                   [&](double v) { return v <= hi_fence; });
    // The box edges bound the whiskers even when no datum lies between them.
    s.whisker_low = std::min(s.whisker_low, s.q1);
    s.whisker_high = std::max(s.whisker_high, s.q3);
    return s;
}

std::optional<SummaryStats> aggregate(const std::vector<ErrorSeries>& series,
                                      const LabelFilter& group, double horizon_min) {
    std::vector<double> values;
    for (const auto& s : series) {
        if (group && !group(s.label)) continue;
        auto it = std::find_if(s.horizons.begin(), s.horizons.end(),
                               [&](double h) { return std::fabs(h - horizon_min) < 1e-9; });
        if (it == s.horizons.end()) {
            throw AlignmentError(s.sample_id, "no error at horizon " + format_double(horizon_min));
        }
        values.push_back(s.errors[static_cast<std::size_t>(it - s.horizons.begin())]);
    }
    return summarize(std::move(values));
}

std::optional<SummaryStats> aggregate_pooled(const std::vector<ErrorSeries>& series,
                                             const LabelFilter& group) {
    std::vector<double> values;
    for (const auto& s : series) {
        if (group && !group(s.label)) continue;
        values.insert(values.end(), s.errors.begin(), s.errors.end());
    }
    return summarize(std::move(values));
}

std::string format_stats_cell(const SummaryStats& stats, const StatStars& stars) {
    auto cell = [](double v, bool star) { return format_fixed(v, 2) + (star ? "*" : ""); };
    return cell(stats.mean, stars.mean) + " (" + cell(stats.median, stars.median) + ", " +
           cell(stats.std, stars.std) + ")";
}

namespace {

Vec2 parse_point(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError("expected [x, y]");
    }
    const Vec2 v{j[0].get<double>(), j[1].get<double>()};
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InputError("non-finite coordinate");
    return v;
}

std::vector<Vec2> parse_points(const nlohmann::json& j) {
    if (!j.is_array()) throw InputError("expected an array of [x, y]");
    std::vector<Vec2> out;
    for (const auto& p : j) out.push_back(parse_point(p));
    return out;
}

}  // namespace

std::vector<PredictionSample> read_predictions(std::istream& in) {
    std::vector<PredictionSample> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            PredictionSample s;
            s.sample_id = j.at("sample_id").get<std::string>();
            s.model = j.at("model").get<std::string>();
            s.truth = parse_points(j.at("truth"));
            s.predicted = parse_points(j.at("pred"));
            s.t0 = parse_point(j.at("t0"));
            if (s.truth.empty() || s.truth.size() != s.predicted.size()) {
                throw InputError("truth and pred need equal, non-zero length");
            }
            out.push_back(std::move(s));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(line_no, e.what());
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return out;
}

void write_predictions(std::ostream& out, const std::vector<PredictionSample>& samples) {
    auto points = [](const std::vector<Vec2>& pts) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : pts) arr.push_back({p.x, p.y});
        return arr;
    };
    for (const auto& s : samples) {
        nlohmann::ordered_json j;
        j["sample_id"] = s.sample_id;
        j["model"] = s.model;
        j["truth"] = points(s.truth);
        j["pred"] = points(s.predicted);
        j["t0"] = {s.t0.x, s.t0.y};
        out << j.dump() << '\n';
    }
}

}  // namespace podreliab
