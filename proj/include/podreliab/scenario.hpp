#pragma once

// Synthetic river-traffic scenes with scheduled interactions, reference
// predictors, and a simulator for the linear error model.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "podreliab/error_metrics.hpp"
#include "podreliab/geometry.hpp"
#include "podreliab/traffic.hpp"
#include "podreliab/trajectory.hpp"

namespace podreliab {

struct ScheduledEvent {
    InteractionKind kind = InteractionKind::Encounter;
    double time_min = 0.0;  // along-river crossing time after scene start
    // Optional neighbor identity; two events naming the same neighbor conflict.
    std::string neighbor;
};

// Lateral evasive offsets the ego makes around each crossing (Gaussian bump).
struct ManeuverProfile {
    double encounter_m = 6.0;
    double overtaking_m = 12.0;
    double overtaken_m = 20.0;
    double width_s = 90.0;
};

struct ScenarioSpec {
    std::uint64_t seed = 0;
    int duration_min = 30;  // one ego position per minute, minutes 0 .. duration-1
    Vec2 river_axis{1.0, 0.0};
    Vec2 origin{0.0, 0.0};
    std::int64_t start_time = 1700000040;  // epoch seconds
    double ego_speed = 2.5;                // m/s, upstream along river_axis
    std::vector<ScheduledEvent> events;
    double maneuver_noise = 1.0;  // std of lateral jitter, meters
    ManeuverProfile maneuver;
    WindowOptions window;
    std::string ego_id = "ego";
};

struct GeneratedScene {
    Trajectory ego;
    std::vector<Trajectory> neighbors;  // one per scheduled event, same order
    std::vector<SequenceSample> samples;
};

// Throws InputError on an invalid spec (non-unit axis, events outside the
// duration, a neighbor scheduled for two crossings, ...).
void validate(const ScenarioSpec& spec);

// Deterministic given spec (including seed).
GeneratedScene generate_scene(const ScenarioSpec& spec);

// Random scene for property tests and the demo: 3-6 windows, each prediction
// span holding 0-3 crossings at off-grid times strictly inside it.
ScenarioSpec random_scenario_spec(std::uint64_t seed);

ScenarioSpec read_scenario_spec(std::istream& in);
void write_scenario_spec(std::ostream& out, const ScenarioSpec& spec);

// Velocity from the last two input positions, extrapolated over the output.
PredictionSample constant_velocity_predict(const SequenceSample& sample,
                                           const std::string& model = "constant-velocity");

// Velocity averaged over the whole input window.
PredictionSample mean_velocity_predict(const SequenceSample& sample,
                                       const std::string& model = "mean-velocity");

// Second-order extrapolation from the last three input positions.
PredictionSample constant_acceleration_predict(const SequenceSample& sample,
                                               const std::string& model = "constant-acceleration");

struct SyntheticErrorSpec {
    double b = 0.0;
    double m = 0.0;
    double tau = 0.0;
    std::vector<double> levels;  // horizons, minutes
    std::size_t samples_per_level = 1;
    std::uint64_t seed = 0;
};

// samples_per_level series, each holding one draw per level of
// max(0, b + m·a + ε), ε ~ N(0, tau²).
std::vector<ErrorSeries> simulate_errors(const SyntheticErrorSpec& spec);

}  // namespace podreliab
