#pragma once

// Single JSON configuration document with one section per pipeline stage.
// Missing keys keep their defaults; unknown keys are rejected.

#include "pinnfcg/fatigue_physics.hpp"
#include "pinnfcg/signal_prep.hpp"
#include "pinnfcg/synthetic_data.hpp"
#include "pinnfcg/trainer.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace pinnfcg::app {

struct BatchSettings {
    std::size_t count{10};
    double stress_min_mpa{200.0};
    double stress_max_mpa{450.0};
    std::uint64_t seed{0};
    BatchVariation variation;
};

struct PipelineConfig {
    GeometryConfig geometry;
    double murakami_c1{1.43};
    PredictOptions predict;
    PrepConfig prep;
    TrainConfig train;
    GeneratorConfig generator;
    BatchSettings batch;

    void validate() const;
};

/// Parses a config document. Throws ConfigError on bad keys or values.
PipelineConfig parse_config(const std::string& json_text, const std::string& origin = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form, every field present. parse_config(to_json(c)) == c.
std::string config_to_json(const PipelineConfig& config);

}  // namespace pinnfcg::app
