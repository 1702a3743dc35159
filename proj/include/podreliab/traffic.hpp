#pragma once

// Interaction detection between an ego vessel and its neighbors, and the
// traffic-situation labels derived from it.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "podreliab/geometry.hpp"
#include "podreliab/trajectory.hpp"

namespace podreliab {

enum class InteractionKind { Encounter, Overtaking, Overtaken };

std::string to_string(InteractionKind kind);

struct InteractionEvent {
    InteractionKind kind = InteractionKind::Encounter;
    std::string neighbor_id;
    std::int64_t event_time = 0;  // first ego grid time at or past the crossing

    friend bool operator==(const InteractionEvent&, const InteractionEvent&) = default;
};

// Order-free interaction counts of one sample.
struct TrafficSituationLabel {
    int encounter = 0;
    int overtaking = 0;
    int overtaken = 0;

    bool empty() const { return encounter == 0 && overtaking == 0 && overtaken == 0; }
    friend auto operator<=>(const TrafficSituationLabel&, const TrafficSituationLabel&) = default;
};

// Coarse grouping used for the error-statistics table. Overtaken takes
// precedence over Overtaking, which takes precedence over Encounter.
enum class CoarseGroup { NoInteraction, Encounter, Overtaking, Overtaken };

std::string to_string(CoarseGroup group);

struct InteractionOptions {
    // Neighbors whose net along-river displacement over the window is below
    // this are direction-less; a crossing with one counts as an encounter.
    double stationary_threshold_m = 50.0;
    // When set, a crossing only counts if the lateral (cross-river) distance
    // at the crossing time is at most this many meters.
    std::optional<double> lateral_gate_m;
};

double along_river_position(Vec2 position, Vec2 river_axis);
double along_river_position(const TrackPoint& point, Vec2 river_axis);

// Emits at most one event per neighbor: the first change in sign of
// along(ego) - along(neighbor) over the ego grid from the last observed
// position to the end of the prediction window. Crossings that happen while
// the ego is still in its input window are ignored.
std::vector<InteractionEvent> detect_interactions(const SequenceSample& sample, Vec2 river_axis,
                                                  const InteractionOptions& options = {});

TrafficSituationLabel classify_sample(const std::vector<InteractionEvent>& events);

// "encounter-1 overtaken-1"; zero counts omitted; "no-interaction" if empty.
std::string label_string(const TrafficSituationLabel& label);

// Inverse of label_string. nullopt for unrecognised text.
std::optional<TrafficSituationLabel> parse_label(const std::string& text);

CoarseGroup coarse_group(const TrafficSituationLabel& label);

struct LabeledSample {
    std::string sample_id;
    TrafficSituationLabel label;
};

// CSV: sample_id,encounter,overtaking,overtaken,label,coarse_group
void write_label_csv(std::ostream& out, const std::vector<LabeledSample>& rows);
std::vector<LabeledSample> read_label_csv(std::istream& in);

}  // namespace podreliab
