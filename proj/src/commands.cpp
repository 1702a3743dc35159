#include "podreliab/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "podreliab/errors.hpp"
#include "podreliab/report.hpp"
#include "podreliab/scenario.hpp"
#include "podreliab/text.hpp"
#include "podreliab/traffic.hpp"
#include "podreliab/trajectory.hpp"

namespace podreliab {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    return in;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
}

nlohmann::json points_json(const std::vector<Vec2>& pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

void write_manifest(const RunConfig& config, const std::string& command,
                    const std::vector<fs::path>& inputs) {
    nlohmann::ordered_json m;
    m["tool"] = "podreliab";
    m["version"] = kVersion;
    m["command"] = command;
    m["config_hash"] = sha256_hex(config_to_json(config).dump());
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& p : inputs) in[p.filename().string()] = sha256_file(p);
    m["input_hashes"] = in;
    m["versions"] = {{"podreliab", kVersion}, {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                                   std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                                   std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    const auto now = std::chrono::system_clock::now();
    m["created_utc"] = format_iso8601(std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count());
    write_text(config.out_dir / "manifest.json", m.dump(2) + "\n");
}

std::vector<Trajectory> build_trajectories(const RunConfig& config, nlohmann::ordered_json* report) {
    auto in = open_input(*config.ais_csv);
    IngestOptions io;
    io.projection = config.projection;
    IngestResult ingested = ingest_records(in, io);
    if (ingested.report.rows_read == 0) throw InputError("no records");

    SplitOptions so;
    so.gap_threshold_s = config.gap_threshold_s;
    so.turn_threshold_deg = config.turn_threshold_deg;
    so.min_points = config.input_length + config.output_length;

    std::vector<Trajectory> out;
    for (const auto& [id, pts] : ingested.tracks) {
        for (const auto& piece : split_tracks(pts, so)) {
            Trajectory r = resample(piece, 60);
            if (r.size() >= so.min_points) out.push_back(std::move(r));
        }
    }
    if (report) {
        auto& r = *report;
        r["rows_read"] = ingested.report.rows_read;
        r["rows_accepted"] = ingested.report.rows_accepted;
        r["duplicates_collapsed"] = ingested.report.duplicates_collapsed;
        r["rejected"] = ingested.report.rejects.size();
        r["rejects"] = nlohmann::ordered_json::array();
        for (const auto& rej : ingested.report.rejects) {
            r["rejects"].push_back({{"line", rej.line}, {"reason", rej.reason}});
        }
        r["vessels"] = ingested.tracks.size();
        r["trajectories"] = out.size();
        std::size_t points = 0;
        for (const auto& t : out) points += t.size();
        r["resampled_points"] = points;
    }
    return out;
}

std::vector<PredictionSample> attach_labels(std::vector<PredictionSample> samples,
                                            const std::vector<LabeledSample>& labels) {
    std::map<std::string, TrafficSituationLabel> by_id;
    for (const auto& l : labels) by_id[l.sample_id] = l.label;
    for (auto& s : samples) {
        const auto it = by_id.find(s.sample_id);
        if (it == by_id.end()) throw InputError("no traffic-situation label for sample '" + s.sample_id + "'");
        s.label = it->second;
    }
    return samples;
}

PoapOptions poap_options(const RunConfig& config) {
    PoapOptions o;
    o.threshold_m = config.threshold_m;
    o.h_max = config.h_max;
    o.confidence = config.confidence;
    return o;
}

std::optional<fs::path> path_field(const nlohmann::json& j, const char* key, const fs::path& base) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    fs::path p = j[key].get<std::string>();
    return p.is_absolute() ? p : base / p;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw InternalError("sha256 failed");
    }
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

std::string sha256_file(const fs::path& path) {
    auto in = open_input(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

RunConfig config_from_json(const nlohmann::json& j, const fs::path& base) {
    RunConfig c;
    try {
        c.ais_csv = path_field(j, "ais_csv", base);
        c.trajectories = path_field(j, "trajectories", base);
        c.predictions = path_field(j, "predictions", base);
        c.labels = path_field(j, "labels", base);
        c.scenario = path_field(j, "scenario", base);
        if (j.contains("river_axis")) c.river_axis = {j["river_axis"].at(0), j["river_axis"].at(1)};
        c.gap_threshold_s = j.value("gap_threshold_s", c.gap_threshold_s);
        c.turn_threshold_deg = j.value("turn_threshold_deg", c.turn_threshold_deg);
        c.input_length = j.value("input_length", c.input_length);
        c.output_length = j.value("output_length", c.output_length);
        c.threshold_m = j.value("threshold_m", c.threshold_m);
        c.h_max = j.value("h_max", c.h_max);
        c.confidence = j.value("confidence", c.confidence);
        if (auto out = path_field(j, "out_dir", base)) c.out_dir = *out;
        c.seed = j.value("seed", c.seed);
        c.demo_scenes = j.value("demo_scenes", c.demo_scenes);
        if (j.contains("projection")) {
            const auto& p = j["projection"];
            if (p.contains("utm_zone")) {
                c.projection = TransverseMercator::utm(p["utm_zone"].get<int>(), p.value("northern", true));
            } else {
                TransverseMercator tm;
                tm.central_meridian_deg = p.at("central_meridian_deg").get<double>();
                tm.scale_factor = p.value("scale_factor", tm.scale_factor);
                tm.false_easting = p.value("false_easting", tm.false_easting);
                tm.false_northing = p.value("false_northing", tm.false_northing);
                c.projection = tm;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    return c;
}

RunConfig load_config(const fs::path& path) {
    auto in = open_input(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("config " + path.string() + ": " + e.what());
    }
    return config_from_json(j, path.parent_path());
}

nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j;
    auto put = [&](const char* key, const std::optional<fs::path>& p) {
        if (p) j[key] = p->filename().string();
    };
    put("ais_csv", c.ais_csv);
    put("trajectories", c.trajectories);
    put("predictions", c.predictions);
    put("labels", c.labels);
    put("scenario", c.scenario);
    j["river_axis"] = {c.river_axis.x, c.river_axis.y};
    j["gap_threshold_s"] = c.gap_threshold_s;
    j["turn_threshold_deg"] = c.turn_threshold_deg;
    j["input_length"] = c.input_length;
    j["output_length"] = c.output_length;
    j["threshold_m"] = c.threshold_m;
    j["h_max"] = c.h_max;
    j["confidence"] = c.confidence;
    j["seed"] = c.seed;
    j["demo_scenes"] = c.demo_scenes;
    if (c.projection) {
        j["projection"] = {{"central_meridian_deg", c.projection->central_meridian_deg},
                           {"scale_factor", c.projection->scale_factor},
                           {"false_easting", c.projection->false_easting},
                           {"false_northing", c.projection->false_northing}};
    }
    return j;
}

void validate(RunConfig& c) {
    if (!(c.threshold_m > 0.0)) throw InputError("threshold_m must be positive");
    if (!(c.confidence > 0.0 && c.confidence < 1.0)) throw InputError("confidence must lie in (0, 1)");
    if (!(c.h_max > 0.0)) throw InputError("h_max must be positive");
    const double len = norm(c.river_axis);
    if (!(len > 0.0) || !std::isfinite(len)) throw InputError("river_axis must be a non-zero vector");
    c.river_axis = (1.0 / len) * c.river_axis;
    if (c.input_length < 2 || c.output_length < 1) {
        throw InputError("need input_length >= 2 and output_length >= 1");
    }
}

void cmd_ingest(const RunConfig& config) {
    if (!config.ais_csv) throw InputError("config needs ais_csv for ingest");
    fs::create_directories(config.out_dir);
    nlohmann::ordered_json report;
    const auto trajectories = build_trajectories(config, &report);
    std::ostringstream csv;
    write_ais_csv(csv, trajectories);
    write_text(config.out_dir / "trajectories.csv", csv.str());
    write_text(config.out_dir / "ingest_report.json", report.dump(2) + "\n");
    write_manifest(config, "ingest", {*config.ais_csv});
}

void cmd_classify(const RunConfig& config) {
    std::vector<Trajectory> trajectories;
    std::vector<fs::path> inputs;
    if (config.trajectories) {
        auto in = open_input(*config.trajectories);
        IngestOptions io;
        io.projection = config.projection;
        trajectories = read_trajectories(in, 60, io);
        inputs.push_back(*config.trajectories);
    } else if (config.ais_csv) {
        trajectories = build_trajectories(config, nullptr);
        inputs.push_back(*config.ais_csv);
    } else {
        throw InputError("config needs trajectories or ais_csv for classify");
    }
    fs::create_directories(config.out_dir);

    WindowOptions wo;
    wo.window = config.input_length + config.output_length;
    wo.input_length = config.input_length;

    std::vector<LabeledSample> labels;
    std::string samples_jsonl;
    std::vector<PredictionSample> baseline;
    for (const auto& ego : trajectories) {
        if (!is_upstream(ego, config.river_axis)) continue;
        for (const auto& sample : window_sequences(ego, trajectories, wo)) {
            const auto label = classify_sample(detect_interactions(sample, config.river_axis));
            labels.push_back({sample.sample_id, label});
            std::vector<Vec2> input, truth;
            for (std::size_t k = 0; k < sample.ego.size(); ++k) {
                (k < sample.input_length ? input : truth).push_back(sample.ego.points[k].position());
            }
            nlohmann::ordered_json j;
            j["sample_id"] = sample.sample_id;
            j["vessel_id"] = sample.ego.vessel_id;
            j["start_time"] = sample.ego.start_time();
            j["label"] = label_string(label);
            j["t0"] = {sample.anchor().easting, sample.anchor().northing};
            j["input"] = points_json(input);
            j["truth"] = points_json(truth);
            samples_jsonl += j.dump() + "\n";
            baseline.push_back(constant_velocity_predict(sample));
        }
    }
    std::ostringstream label_csv, preds;
    write_label_csv(label_csv, labels);
    write_predictions(preds, baseline);
    write_text(config.out_dir / "labels.csv", label_csv.str());
    write_text(config.out_dir / "samples.jsonl", samples_jsonl);
    write_text(config.out_dir / "baseline_predictions.jsonl", preds.str());
    write_manifest(config, "classify", inputs);
}

void cmd_evaluate(const RunConfig& config) {
    if (!config.predictions || !config.labels) throw InputError("config needs predictions and labels for evaluate");
    auto pin = open_input(*config.predictions);
    auto lin = open_input(*config.labels);
    auto samples = attach_labels(read_predictions(pin), read_label_csv(lin));
    if (samples.empty()) throw InputError("no records");
    fs::create_directories(config.out_dir);
    write_evaluation(evaluate(samples, poap_options(config)), config.out_dir);
    write_manifest(config, "evaluate", {*config.predictions, *config.labels});
}

void cmd_demo(const RunConfig& config) {
    fs::create_directories(config.out_dir);
    std::vector<ScenarioSpec> specs;
    std::vector<fs::path> inputs;
    if (config.scenario) {
        auto in = open_input(*config.scenario);
        specs.push_back(read_scenario_spec(in));
        inputs.push_back(*config.scenario);
    } else {
        for (std::size_t i = 0; i < config.demo_scenes; ++i) {
            specs.push_back(random_scenario_spec(config.seed * 1000003ULL + i));
        }
    }

    std::vector<Trajectory> all_tracks;
    std::vector<LabeledSample> labels;
    std::vector<PredictionSample> predictions;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        auto spec = specs[i];
        spec.window.window = config.input_length + config.output_length;
        spec.window.input_length = config.input_length;
        if (!config.scenario) spec.ego_id = "ego-" + std::to_string(i);
        const GeneratedScene scene = generate_scene(spec);
        all_tracks.push_back(scene.ego);
        for (auto nb : scene.neighbors) {
            nb.vessel_id = spec.ego_id + "/" + nb.vessel_id;
            for (auto& p : nb.points) p.vessel_id = nb.vessel_id;
            all_tracks.push_back(std::move(nb));
        }
        for (const auto& sample : scene.samples) {
            const auto label = classify_sample(detect_interactions(sample, spec.river_axis));
            labels.push_back({sample.sample_id, label});
            for (auto p : {constant_velocity_predict(sample), mean_velocity_predict(sample),
                           constant_acceleration_predict(sample)}) {
                p.label = label;
                predictions.push_back(std::move(p));
            }
        }
    }

    std::ostringstream tracks, label_csv, preds;
    write_ais_csv(tracks, all_tracks);
    write_label_csv(label_csv, labels);
    write_predictions(preds, predictions);
    write_text(config.out_dir / "scenes.csv", tracks.str());
    write_text(config.out_dir / "labels.csv", label_csv.str());
    write_text(config.out_dir / "predictions.jsonl", preds.str());
    write_evaluation(evaluate(predictions, poap_options(config)), config.out_dir);
    write_manifest(config, "demo", inputs);
}

}  // namespace podreliab
