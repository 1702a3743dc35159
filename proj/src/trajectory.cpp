#include "podreliab/trajectory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "podreliab/errors.hpp"
#include "podreliab/text.hpp"

namespace podreliab {

namespace {

constexpr std::array<const char*, 8> kAisColumns = {
    "vessel_id", "timestamp", "lat", "lon", "easting", "northing", "sog", "cog"};

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant's
// days_from_civil).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y = static_cast<int>(yy + (m <= 2));
}

struct RawRow {
    TrackPoint point;
    std::size_t order = 0;  // file order, for last-occurrence dedup
};

std::optional<double> optional_field(const std::string& text, bool& bad) {
    if (trim(text).empty()) return std::nullopt;
    auto v = parse_double(text);
    if (!v) bad = true;
    return v;
}

// Index of the last point with timestamp <= t, or npos.
std::size_t floor_index(const std::vector<TrackPoint>& pts, double t) {
    auto it = std::upper_bound(pts.begin(), pts.end(), t,
                               [](double value, const TrackPoint& p) {
                                   return value < static_cast<double>(p.timestamp);
                               });
    if (it == pts.begin()) return std::string::npos;
    return static_cast<std::size_t>(std::distance(pts.begin(), it)) - 1;
}

void derive_motion(std::vector<TrackPoint>& pts, std::int64_t step_seconds) {
    if (pts.size() < 2) return;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::size_t a = k == 0 ? 0 : k - 1;
        const std::size_t b = k == 0 ? 1 : k;
        const Vec2 d = pts[b].position() - pts[a].position();
        const double dist = norm(d);
        pts[k].speed_over_ground = dist / static_cast<double>(step_seconds);
        if (dist > 0.0) {
            pts[k].course_over_ground = bearing_deg(d);
        } else {
            pts[k].course_over_ground.reset();
        }
    }
}

}  // namespace

std::optional<std::int64_t> parse_timestamp(const std::string& raw) {
    const std::string text(trim(raw));
    if (text.empty()) return std::nullopt;
    if (auto epoch = parse_int(text)) return *epoch;

    int year = 0, month = 0, day = 0, hour = 0, minute = 0;
    double second = 0.0;
    int consumed = 0;
    char sep = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%lf%n", &year, &month, &day, &sep, &hour,
                    &minute, &second, &consumed) != 7) {
        return std::nullopt;
    }
    if (sep != 'T' && sep != ' ') return std::nullopt;
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 ||
        second < 0.0 || second >= 61.0) {
        return std::nullopt;
    }
    std::int64_t offset = 0;
    const std::string rest = text.substr(static_cast<std::size_t>(consumed));
    if (rest.empty() || rest == "Z") {
        offset = 0;
    } else {
        int oh = 0, om = 0;
        char sign = 0;
        if (std::sscanf(rest.c_str(), "%c%2d:%2d", &sign, &oh, &om) != 3 ||
            (sign != '+' && sign != '-')) {
            return std::nullopt;
        }
        offset = (sign == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    }
    const std::int64_t days =
        days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    return days * 86400 + hour * 3600 + minute * 60 +
           static_cast<std::int64_t>(std::floor(second)) - offset;
}

std::string format_iso8601(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y = 0;
    unsigned m = 0, d = 0;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60),
                  static_cast<int>(rem % 60));
    return buf;
}

IngestResult ingest_records(std::istream& source, const IngestOptions& options) {
    IngestResult result;
    std::string line;
    std::size_t line_no = 0;

    // Header.
    bool have_header = false;
    while (std::getline(source, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) continue;
        const auto cols = split_csv_line(line);
        bool ok = cols.size() == kAisColumns.size();
        for (std::size_t i = 0; ok && i < cols.size(); ++i) {
            ok = trim(cols[i]) == kAisColumns[i];
        }
        if (!ok) {
            throw ParseError(line_no,
                             "expected header vessel_id,timestamp,lat,lon,easting,northing,sog,cog");
        }
        have_header = true;
        break;
    }
    if (!have_header) throw InputError("no records");

    std::map<std::string, std::vector<RawRow>> grouped;
    std::size_t order = 0;
    auto reject = [&](std::string reason) {
        result.report.rejects.push_back({line_no, std::move(reason)});
    };

    while (std::getline(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ++result.report.rows_read;
        const auto f = split_csv_line(line);
        if (f.size() != kAisColumns.size()) {
            reject("expected 8 fields, got " + std::to_string(f.size()));
            continue;
        }
        TrackPoint p;
        p.vessel_id = std::string(trim(f[0]));
        if (p.vessel_id.empty()) {
            reject("empty vessel_id");
            continue;
        }
        const auto ts = parse_timestamp(f[1]);
        if (!ts) {
            reject("unparseable timestamp '" + f[1] + "'");
            continue;
        }
        p.timestamp = *ts;

        bool bad = false;
        const auto lat = optional_field(f[2], bad);
        const auto lon = optional_field(f[3], bad);
        const auto east = optional_field(f[4], bad);
        const auto north = optional_field(f[5], bad);
        p.speed_over_ground = optional_field(f[6], bad);
        p.course_over_ground = optional_field(f[7], bad);
        if (bad) {
            reject("unparseable numeric field");
            continue;
        }
        if (east && north) {
            p.easting = *east;
            p.northing = *north;
        } else if (lat && lon) {
            if (!options.projection) {
                reject("lat/lon given but no projection configured");
                continue;
            }
            if (!std::isfinite(*lat) || !std::isfinite(*lon)) {
                reject("non-finite coordinate");
                continue;
            }
            const Vec2 en = options.projection->forward(*lat, *lon);
            p.easting = en.x;
            p.northing = en.y;
        } else {
            reject("no position (need easting,northing or lat,lon)");
            continue;
        }
        if (!std::isfinite(p.easting) || !std::isfinite(p.northing)) {
            reject("non-finite coordinate");
            continue;
        }
        if (p.course_over_ground &&
            !(*p.course_over_ground >= 0.0 && *p.course_over_ground < 360.0)) {
            reject("course outside [0, 360)");
            continue;
        }
        if (p.speed_over_ground && !std::isfinite(*p.speed_over_ground)) {
            reject("non-finite speed");
            continue;
        }
        ++result.report.rows_accepted;
        grouped[p.vessel_id].push_back({std::move(p), order++});
    }

    for (auto& [id, rows] : grouped) {
        std::stable_sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) {
            return a.point.timestamp < b.point.timestamp;
        });
        auto& out = result.tracks[id];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i + 1 < rows.size() && rows[i + 1].point.timestamp == rows[i].point.timestamp) {
                ++result.report.duplicates_collapsed;
                continue;  // keep the last occurrence
            }
            out.push_back(std::move(rows[i].point));
        }
    }
    return result;
}

std::size_t resampled_count(const Trajectory& trajectory, std::int64_t step_seconds) {
    if (trajectory.size() < 2 || step_seconds <= 0) return 0;
    const std::int64_t span = trajectory.end_time() - trajectory.start_time();
    if (span < step_seconds) return 0;
    return static_cast<std::size_t>(span / step_seconds) + 1;
}

std::vector<Trajectory> split_tracks(const std::vector<TrackPoint>& points,
                                     const SplitOptions& options) {
    std::vector<Trajectory> out;
    if (points.size() < 2) return out;

    std::vector<std::size_t> starts{0};
    std::optional<double> prev_heading;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double gap = static_cast<double>(points[i].timestamp - points[i - 1].timestamp);
        if (gap > options.gap_threshold_s) {
            starts.push_back(i);
            prev_heading.reset();
            continue;
        }
        const Vec2 d = points[i].position() - points[i - 1].position();
        if (norm(d) <= 1e-9) continue;  // stationary: heading undefined
        const double heading = bearing_deg(d);
        if (prev_heading &&
            bearing_difference_deg(*prev_heading, heading) > options.turn_threshold_deg) {
            // Segment (i-1 -> i) turns sharply; the new piece starts at the apex.
            if (starts.back() != i - 1) starts.push_back(i - 1);
        }
        prev_heading = heading;
    }
    starts.push_back(points.size());

    for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
        Trajectory t;
        t.vessel_id = points[starts[s]].vessel_id;
        t.points.assign(points.begin() + static_cast<std::ptrdiff_t>(starts[s]),
                        points.begin() + static_cast<std::ptrdiff_t>(starts[s + 1]));
        if (resampled_count(t, options.step_seconds) >= options.min_points) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

Trajectory resample(const Trajectory& trajectory, std::int64_t step_seconds) {
    Trajectory out;
    out.vessel_id = trajectory.vessel_id;
    out.step_seconds = step_seconds;
    const std::size_t count = resampled_count(trajectory, step_seconds);
    if (count == 0) return out;

    const auto& pts = trajectory.points;
    out.points.reserve(count);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const std::int64_t t = trajectory.start_time() + static_cast<std::int64_t>(k) * step_seconds;
        while (seg + 1 < pts.size() && pts[seg + 1].timestamp <= t) ++seg;
        TrackPoint p;
        p.vessel_id = trajectory.vessel_id;
        p.timestamp = t;
        if (pts[seg].timestamp == t) {
            p.easting = pts[seg].easting;
            p.northing = pts[seg].northing;
        } else {
            const auto& a = pts[seg];
            const auto& b = pts[seg + 1];
            const double frac = static_cast<double>(t - a.timestamp) /
                                static_cast<double>(b.timestamp - a.timestamp);
            const Vec2 q = lerp(a.position(), b.position(), frac);
            p.easting = q.x;
            p.northing = q.y;
        }
        out.points.push_back(std::move(p));
    }
    derive_motion(out.points, step_seconds);
    return out;
}

std::optional<Vec2> position_at(const Trajectory& trajectory, double t) {
    const auto& pts = trajectory.points;
    if (pts.empty()) return std::nullopt;
    if (t < static_cast<double>(pts.front().timestamp) ||
        t > static_cast<double>(pts.back().timestamp)) {
        return std::nullopt;
    }
    const std::size_t i = floor_index(pts, t);
    if (static_cast<double>(pts[i].timestamp) == t || i + 1 == pts.size()) {
        return pts[i].position();
    }
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    const double frac = (t - static_cast<double>(a.timestamp)) /
                        static_cast<double>(b.timestamp - a.timestamp);
    return lerp(a.position(), b.position(), frac);
}

bool is_upstream(const Trajectory& trajectory, Vec2 river_axis) {
    if (trajectory.size() < 2) return false;
    return dot(trajectory.points.back().position() - trajectory.points.front().position(),
               river_axis) > 0.0;
}

std::vector<SequenceSample> window_sequences(const Trajectory& trajectory,
                                             const std::vector<Trajectory>& scene,
                                             const WindowOptions& options) {
    std::vector<SequenceSample> out;
    if (options.window == 0 || options.input_length == 0 ||
        options.input_length >= options.window) {
        throw InputError("window must exceed input_length > 0");
    }
    const std::size_t n_windows = trajectory.size() / options.window;
    for (std::size_t w = 0; w < n_windows; ++w) {
        SequenceSample s;
        s.input_length = options.input_length;
        s.output_length = options.window - options.input_length;
        s.ego.vessel_id = trajectory.vessel_id;
        s.ego.step_seconds = trajectory.step_seconds;
        const auto first = trajectory.points.begin() + static_cast<std::ptrdiff_t>(w * options.window);
        s.ego.points.assign(first, first + static_cast<std::ptrdiff_t>(options.window));
        s.sample_id = trajectory.vessel_id + "@" + std::to_string(s.ego.start_time());

        const std::int64_t w0 = s.ego.start_time();
        const std::int64_t w1 = s.ego.end_time();
        for (const auto& other : scene) {
            if (other.empty() || other.vessel_id == trajectory.vessel_id) continue;
            if (other.end_time() < w0 || other.start_time() > w1) continue;
            const auto& pts = other.points;
            std::size_t lo = floor_index(pts, static_cast<double>(w0));
            if (lo == std::string::npos) lo = 0;
            auto hi_it = std::lower_bound(pts.begin(), pts.end(), w1,
                                          [](const TrackPoint& p, std::int64_t value) {
                                              return p.timestamp < value;
                                          });
            std::size_t hi = hi_it == pts.end() ? pts.size() - 1
                                                : static_cast<std::size_t>(hi_it - pts.begin());
            Trajectory seg;
            seg.vessel_id = other.vessel_id;
            seg.step_seconds = other.step_seconds;
            seg.points.assign(pts.begin() + static_cast<std::ptrdiff_t>(lo),
                              pts.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
            s.neighbors.push_back(std::move(seg));
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_ais_csv(std::ostream& out, const std::vector<Trajectory>& trajectories) {
    out << "vessel_id,timestamp,lat,lon,easting,northing,sog,cog\n";
    for (const auto& t : trajectories) {
        for (const auto& p : t.points) {
            out << csv_escape(p.vessel_id) << ',' << p.timestamp << ",,," << format_double(p.easting)
                << ',' << format_double(p.northing) << ','
                << (p.speed_over_ground ? format_double(*p.speed_over_ground) : "") << ','
                << (p.course_over_ground ? format_double(*p.course_over_ground) : "") << '\n';
        }
    }
}

std::vector<Trajectory> read_trajectories(std::istream& in, std::int64_t step_seconds,
                                          const IngestOptions& options) {
    auto ingested = ingest_records(in, options);
    if (!ingested.report.rejects.empty()) {
        const auto& r = ingested.report.rejects.front();
        throw ParseError(r.line, r.reason);
    }
    std::vector<Trajectory> out;
    for (auto& [id, pts] : ingested.tracks) {
        // Pieces of one vessel are separated by anything other than a single step.
        Trajectory current;
        current.vessel_id = id;
        current.step_seconds = step_seconds;
        for (auto& p : pts) {
            if (!current.empty() && p.timestamp - current.end_time() != step_seconds) {
                out.push_back(current);
                current.points.clear();
            }
            current.points.push_back(std::move(p));
        }
        if (!current.empty()) out.push_back(std::move(current));
    }
    return out;
}

}  // namespace podreliab
