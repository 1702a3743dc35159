#include "podreliab/scenario.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <set>

#include <json.hpp>

#include "podreliab/errors.hpp"

namespace podreliab {

namespace {

InteractionKind parse_kind(const std::string& s) {
    if (s == "encounter") return InteractionKind::Encounter;
    if (s == "overtaking") return InteractionKind::Overtaking;
    if (s == "overtaken") return InteractionKind::Overtaken;
    throw InputError("unknown interaction kind '" + s + "'");
}

double bump_amplitude(const ManeuverProfile& p, InteractionKind kind) {
    switch (kind) {
        case InteractionKind::Encounter: return p.encounter_m;
        case InteractionKind::Overtaking: return p.overtaking_m;
        case InteractionKind::Overtaken: return p.overtaken_m;
    }
    return 0.0;
}

TrackPoint make_point(const std::string& id, std::int64_t t, Vec2 pos) {
    TrackPoint p;
    p.vessel_id = id;
    p.timestamp = t;
    p.easting = pos.x;
    p.northing = pos.y;
    return p;
}

void fill_motion(Trajectory& traj) {
    auto& pts = traj.points;
    for (std::size_t k = 0; k < pts.size() && pts.size() >= 2; ++k) {
        const std::size_t a = k == 0 ? 0 : k - 1;
        const std::size_t b = k == 0 ? 1 : k;
        const Vec2 d = pts[b].position() - pts[a].position();
        pts[k].speed_over_ground = norm(d) / static_cast<double>(traj.step_seconds);
        if (norm(d) > 0.0) pts[k].course_over_ground = bearing_deg(d);
    }
}

PredictionSample prediction_frame(const SequenceSample& sample, const std::string& model) {
    if (sample.input_length < 2 || sample.ego.size() < sample.input_length + 1) {
        throw InputError("sample '" + sample.sample_id + "' needs >= 2 input and >= 1 output points");
    }
    PredictionSample out;
    out.sample_id = sample.sample_id;
    out.model = model;
    out.t0 = sample.anchor().position();
    for (std::size_t k = sample.input_length; k < sample.ego.size(); ++k) {
        out.truth.push_back(sample.ego.points[k].position());
    }
    return out;
}

Vec2 input_position(const SequenceSample& sample, std::size_t back) {
    return sample.ego.points[sample.input_length - 1 - back].position();
}

}  // namespace

void validate(const ScenarioSpec& spec) {
    if (std::fabs(norm(spec.river_axis) - 1.0) > 1e-9) throw InputError("river_axis must be a unit vector");
    if (spec.duration_min < 1) throw InputError("duration must be at least one minute");
    if (!(spec.ego_speed > 0.0)) throw InputError("ego_speed must be positive");
    if (!(spec.maneuver_noise >= 0.0)) throw InputError("maneuver_noise must be non-negative");
    if (spec.window.input_length < 2 || spec.window.input_length >= spec.window.window) {
        throw InputError("window needs 2 <= input_length < window");
    }
    std::set<std::string> used;
    for (const auto& e : spec.events) {
        if (!(e.time_min >= 0.0 && e.time_min <= spec.duration_min - 1)) {
            throw InputError("event at minute " + std::to_string(e.time_min) + " lies outside the scene");
        }
        if (!e.neighbor.empty() && !used.insert(e.neighbor).second) {
            throw InputError("neighbor '" + e.neighbor + "' is scheduled for two crossings");
        }
    }
}

GeneratedScene generate_scene(const ScenarioSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> jitter(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const Vec2 axis = spec.river_axis;
    const Vec2 lateral = perpendicular(axis);
    const auto n_points = static_cast<std::size_t>(spec.duration_min);
    auto at = [&](double along, double across) {
        return spec.origin + along * axis + across * lateral;
    };

    GeneratedScene scene;
    scene.ego.vessel_id = spec.ego_id;
    scene.ego.step_seconds = 60;
    for (std::size_t k = 0; k < n_points; ++k) {
        const double t = 60.0 * static_cast<double>(k);
        double across = spec.maneuver_noise * jitter(rng);
        for (const auto& e : spec.events) {
            const double u = (t - 60.0 * e.time_min) / spec.maneuver.width_s;
            across += bump_amplitude(spec.maneuver, e.kind) * std::exp(-u * u);
        }
        scene.ego.points.push_back(make_point(spec.ego_id, spec.start_time + 60 * static_cast<std::int64_t>(k),
                                              at(spec.ego_speed * t, across)));
    }
    fill_motion(scene.ego);

    int counter = 0;
    for (const auto& e : spec.events) {
        ++counter;
        double speed = 0.0;  // along river_axis
        double side = 0.0;
        switch (e.kind) {
            case InteractionKind::Encounter:
                speed = -(2.0 + 2.0 * unit(rng));
                side = 40.0 + 30.0 * unit(rng);
                break;
            case InteractionKind::Overtaking:
                speed = spec.ego_speed * (0.4 + 0.3 * unit(rng));
                side = 30.0 + 20.0 * unit(rng);
                break;
            case InteractionKind::Overtaken:
                speed = spec.ego_speed * (1.4 + 0.4 * unit(rng));
                side = -(30.0 + 20.0 * unit(rng));
                break;
        }
        const double tc = 60.0 * e.time_min;
        const double crossing_along = spec.ego_speed * tc;
        Trajectory nb;
        nb.vessel_id = e.neighbor.empty() ? "nb-" + std::to_string(counter) : e.neighbor;
        nb.step_seconds = 60;
        for (std::size_t k = 0; k < n_points; ++k) {
            const double t = 60.0 * static_cast<double>(k);
            const double across = side + spec.maneuver_noise * jitter(rng);
            nb.points.push_back(make_point(nb.vessel_id, spec.start_time + 60 * static_cast<std::int64_t>(k),
                                           at(crossing_along + speed * (t - tc), across)));
        }
        fill_motion(nb);
        scene.neighbors.push_back(std::move(nb));
    }

    scene.samples = window_sequences(scene.ego, scene.neighbors, spec.window);
    return scene;
}

ScenarioSpec random_scenario_spec(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ScenarioSpec s;
    s.seed = seed;
    const double angle = 2.0 * M_PI * unit(rng);
    s.river_axis = {std::cos(angle), std::sin(angle)};
    s.origin = {400000.0 + 5000.0 * unit(rng), 5500000.0 + 5000.0 * unit(rng)};
    s.ego_speed = 1.5 + 2.0 * unit(rng);
    s.maneuver_noise = 2.0 + 3.0 * unit(rng);
    const int windows = 3 + static_cast<int>(unit(rng) * 4.0);
    const auto win = static_cast<int>(s.window.window);
    const auto in_len = static_cast<int>(s.window.input_length);
    s.duration_min = windows * win;
    for (int w = 0; w < windows; ++w) {
        const double u = unit(rng);
        const int count = u < 0.35 ? 0 : u < 0.75 ? 1 : u < 0.93 ? 2 : 3;
        const double lo = w * win + (in_len - 1) + 0.15;
        const double hi = (w + 1) * win - 1 - 0.15;
        for (int e = 0; e < count; ++e) {
            ScheduledEvent ev;
            const double k = unit(rng);
            ev.kind = k < 0.7 ? InteractionKind::Encounter
                              : k < 0.85 ? InteractionKind::Overtaking : InteractionKind::Overtaken;
            ev.time_min = lo + (hi - lo) * unit(rng);
            s.events.push_back(ev);
        }
    }
    return s;
}

ScenarioSpec read_scenario_spec(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("scenario spec: ") + e.what());
    }
    ScenarioSpec s;
    try {
        s.seed = j.value("seed", s.seed);
        s.duration_min = j.value("duration_min", s.duration_min);
        if (j.contains("river_axis")) s.river_axis = {j["river_axis"].at(0), j["river_axis"].at(1)};
        if (j.contains("origin")) s.origin = {j["origin"].at(0), j["origin"].at(1)};
        s.start_time = j.value("start_time", s.start_time);
        s.ego_speed = j.value("ego_speed", s.ego_speed);
        s.maneuver_noise = j.value("maneuver_noise", s.maneuver_noise);
        s.ego_id = j.value("ego_id", s.ego_id);
        s.window.window = j.value("window", s.window.window);
        s.window.input_length = j.value("input_length", s.window.input_length);
        if (j.contains("maneuver")) {
            const auto& m = j["maneuver"];
            s.maneuver.encounter_m = m.value("encounter_m", s.maneuver.encounter_m);
            s.maneuver.overtaking_m = m.value("overtaking_m", s.maneuver.overtaking_m);
            s.maneuver.overtaken_m = m.value("overtaken_m", s.maneuver.overtaken_m);
            s.maneuver.width_s = m.value("width_s", s.maneuver.width_s);
        }
        for (const auto& e : j.value("events", nlohmann::json::array())) {
            ScheduledEvent ev;
            ev.kind = parse_kind(e.at("kind").get<std::string>());
            ev.time_min = e.at("time_min").get<double>();
            ev.neighbor = e.value("neighbor", std::string());
            s.events.push_back(ev);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("scenario spec: ") + e.what());
    }
    validate(s);
    return s;
}

void write_scenario_spec(std::ostream& out, const ScenarioSpec& s) {
    nlohmann::ordered_json j;
    j["seed"] = s.seed;
    j["duration_min"] = s.duration_min;
    j["river_axis"] = {s.river_axis.x, s.river_axis.y};
    j["origin"] = {s.origin.x, s.origin.y};
    j["start_time"] = s.start_time;
    j["ego_speed"] = s.ego_speed;
    j["maneuver_noise"] = s.maneuver_noise;
    j["ego_id"] = s.ego_id;
    j["window"] = s.window.window;
    j["input_length"] = s.window.input_length;
    j["maneuver"] = {{"encounter_m", s.maneuver.encounter_m},
                     {"overtaking_m", s.maneuver.overtaking_m},
                     {"overtaken_m", s.maneuver.overtaken_m},
                     {"width_s", s.maneuver.width_s}};
    j["events"] = nlohmann::json::array();
    for (const auto& e : s.events) {
        nlohmann::ordered_json ev;
        ev["kind"] = to_string(e.kind);
        ev["time_min"] = e.time_min;
        if (!e.neighbor.empty()) ev["neighbor"] = e.neighbor;
        j["events"].push_back(ev);
    }
    out << j.dump(2) << '\n';
}

PredictionSample constant_velocity_predict(const SequenceSample& sample, const std::string& model) {
    PredictionSample out = prediction_frame(sample, model);
    const Vec2 v = input_position(sample, 0) - input_position(sample, 1);
    for (std::size_t k = 1; k <= out.truth.size(); ++k) {
        out.predicted.push_back(out.t0 + static_cast<double>(k) * v);
    }
    return out;
}

PredictionSample mean_velocity_predict(const SequenceSample& sample, const std::string& model) {
    PredictionSample out = prediction_frame(sample, model);
    const double steps = static_cast<double>(sample.input_length - 1);
    const Vec2 v = (1.0 / steps) * (input_position(sample, 0) - sample.ego.points.front().position());
    for (std::size_t k = 1; k <= out.truth.size(); ++k) {
        out.predicted.push_back(out.t0 + static_cast<double>(k) * v);
    }
    return out;
}

PredictionSample constant_acceleration_predict(const SequenceSample& sample, const std::string& model) {
    if (sample.input_length < 3) return constant_velocity_predict(sample, model);
    PredictionSample out = prediction_frame(sample, model);
    const Vec2 p0 = input_position(sample, 0);
    const Vec2 p1 = input_position(sample, 1);
    const Vec2 p2 = input_position(sample, 2);
    const Vec2 v = p0 - p1;
    const Vec2 acc = (p0 - p1) - (p1 - p2);
    for (std::size_t k = 1; k <= out.truth.size(); ++k) {
        const double kd = static_cast<double>(k);
        out.predicted.push_back(out.t0 + kd * v + (0.5 * kd * (kd + 1.0)) * acc);
    }
    return out;
}

std::vector<ErrorSeries> simulate_errors(const SyntheticErrorSpec& spec) {
    if (!(spec.tau >= 0.0)) throw InputError("tau must be non-negative");
    if (spec.samples_per_level < 1) throw InputError("samples_per_level must be at least 1");
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<ErrorSeries> out;
    out.reserve(spec.samples_per_level);
    for (std::size_t i = 0; i < spec.samples_per_level; ++i) {
        ErrorSeries s;
        s.sample_id = "sim-" + std::to_string(i);
        s.horizons = spec.levels;
        for (double a : spec.levels) {
            double v = spec.b + spec.m * a;
            if (spec.tau > 0.0) v += spec.tau * noise(rng);
            s.errors.push_back(std::max(v, 0.0));
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace podreliab
