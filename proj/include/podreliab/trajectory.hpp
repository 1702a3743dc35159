#pragma once

// Track ingestion, splitting, resampling and windowing.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "podreliab/geometry.hpp"
#include "podreliab/projection.hpp"

namespace podreliab {

struct TrackPoint {
    std::string vessel_id;
    std::int64_t timestamp = 0;  // seconds since epoch
    double easting = 0.0;
    double northing = 0.0;
    std::optional<double> speed_over_ground;   // m/s
    std::optional<double> course_over_ground;  // degrees, [0, 360)

    Vec2 position() const { return {easting, northing}; }
};

struct Trajectory {
    std::string vessel_id;
    std::vector<TrackPoint> points;
    std::int64_t step_seconds = 0;  // 0 while irregularly sampled

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
    std::int64_t start_time() const { return points.front().timestamp; }
    std::int64_t end_time() const { return points.back().timestamp; }
};

// One evaluation unit: a fixed-length ego window plus every co-temporal
// neighbor segment. The first `input_length` ego points condition the
// prediction, the remaining `output_length` are the forecast horizon.
struct SequenceSample {
    std::string sample_id;
    Trajectory ego;
    std::size_t input_length = 5;
    std::size_t output_length = 5;
    std::vector<Trajectory> neighbors;

    const TrackPoint& anchor() const { return ego.points[input_length - 1]; }
};

struct IngestReject {
    std::size_t line = 0;
    std::string reason;
};

struct IngestReport {
    std::size_t rows_read = 0;
    std::size_t rows_accepted = 0;
    std::size_t duplicates_collapsed = 0;
    std::vector<IngestReject> rejects;
};

struct IngestOptions {
    // Required only when rows carry lat/lon instead of easting/northing.
    std::optional<TransverseMercator> projection;
};

struct IngestResult {
    // Keyed by vessel_id; each list time-sorted with unique timestamps.
    std::map<std::string, std::vector<TrackPoint>> tracks;
    IngestReport report;
};

// Parses the AIS CSV schema
//   vessel_id,timestamp,lat,lon,easting,northing,sog,cog
// A missing or wrong header throws ParseError. Row-level problems (bad
// numbers, non-finite coordinates, missing position) reject the row and are
// listed in the report with their 1-based line numbers.
IngestResult ingest_records(std::istream& source, const IngestOptions& options = {});

// Parses integer epoch seconds or ISO-8601 UTC ("2021-01-01T12:00:00Z").
std::optional<std::int64_t> parse_timestamp(const std::string& text);
std::string format_iso8601(std::int64_t epoch_seconds);

struct SplitOptions {
    double gap_threshold_s = 600.0;
    double turn_threshold_deg = 150.0;
    std::int64_t step_seconds = 60;
    std::size_t min_points = 10;  // counted after resampling to step_seconds
};

// Splits one vessel's time-sorted points at time gaps and sharp turns.
// A new trajectory starts at point i when t[i] - t[i-1] > gap threshold, or
// when the heading of segment (i-1 -> i) differs from that of (i -> i+1) by
// more than the turn threshold. Pieces too short to yield `min_points`
// resampled points are dropped.
std::vector<Trajectory> split_tracks(const std::vector<TrackPoint>& points,
                                     const SplitOptions& options = {});

// Number of points resample() would produce for this span.
std::size_t resampled_count(const Trajectory& trajectory, std::int64_t step_seconds);

// Linear interpolation onto t0, t0 + step, ... <= t_end. Points already on
// the grid are copied unchanged; speed and course are re-derived from the
// resampled positions. Returns an empty trajectory when the span is shorter
// than one step.
Trajectory resample(const Trajectory& trajectory, std::int64_t step_seconds = 60);

// Position at an arbitrary time inside [start, end]; nullopt outside.
std::optional<Vec2> position_at(const Trajectory& trajectory, double t);

// Net displacement along the river axis is positive.
bool is_upstream(const Trajectory& trajectory, Vec2 river_axis);

struct WindowOptions {
    std::size_t window = 10;
    std::size_t input_length = 5;
};

// Cuts a resampled trajectory into disjoint windows (stride == window) and
// attaches every other trajectory whose time span overlaps the window. Each
// neighbor is clipped to the points bracketing the window span so that it can
// be interpolated at any ego time it covers.
std::vector<SequenceSample> window_sequences(const Trajectory& trajectory,
                                             const std::vector<Trajectory>& scene,
                                             const WindowOptions& options = {});

// Writes trajectories in the AIS CSV schema (easting/northing populated,
// lat/lon empty).
void write_ais_csv(std::ostream& out, const std::vector<Trajectory>& trajectories);

// Reads an AIS CSV back and rebuilds one trajectory per vessel without
// splitting.
std::vector<Trajectory> read_trajectories(std::istream& in, std::int64_t step_seconds,
                                          const IngestOptions& options = {});

}  // namespace podreliab
