#pragma once

// The `podreliab` subcommands as library functions.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "podreliab/geometry.hpp"
#include "podreliab/projection.hpp"

namespace podreliab {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::optional<std::filesystem::path> ais_csv;
    std::optional<std::filesystem::path> trajectories;  // resampled AIS CSV from `ingest`
    std::optional<std::filesystem::path> predictions;   // JSON-lines
    std::optional<std::filesystem::path> labels;        // label CSV from `classify`
    std::optional<std::filesystem::path> scenario;      // ScenarioSpec JSON (demo)
    Vec2 river_axis{1.0, 0.0};
    double gap_threshold_s = 600.0;
    double turn_threshold_deg = 150.0;
    std::size_t input_length = 5;
    std::size_t output_length = 5;
    double threshold_m = 20.0;
    double h_max = 5.0;
    double confidence = 0.95;
    std::filesystem::path out_dir = "podreliab-out";
    std::uint64_t seed = 0;
    std::size_t demo_scenes = 150;
    std::optional<TransverseMercator> projection;
};

// Reads a JSON config; relative paths resolve against the config's directory.
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
nlohmann::json config_to_json(const RunConfig& config);

// Throws InputError unless threshold_m > 0, 0 < confidence < 1, h_max > 0
// and the river axis is non-zero (it is normalised in place).
void validate(RunConfig& config);

// Resample and store trajectories: trajectories.csv, ingest_report.json.
void cmd_ingest(const RunConfig& config);

// Window upstream trajectories and label them: labels.csv, samples.jsonl,
// baseline_predictions.jsonl (constant velocity).
void cmd_classify(const RunConfig& config);

// Statistics, reliability tables and figures for a predictions file.
void cmd_evaluate(const RunConfig& config);

// Synthetic scenes -> baseline predictions -> labels -> full evaluation.
void cmd_demo(const RunConfig& config);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace podreliab
