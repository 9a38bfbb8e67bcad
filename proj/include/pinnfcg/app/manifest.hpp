#pragma once

// Run manifest: everything needed to repeat a command. Outputs depend only on
// the fields other than the timestamps.

#include "pinnfcg/app/config.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace pinnfcg::app {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kManifestFile = "manifest.json";

struct InputFile {
    std::string path;
    std::string sha256;
};

struct RunManifest {
    std::string tool_version{kToolVersion};
    std::string command;
    std::uint64_t seed{0};
    PipelineConfig config;
    /// Command options that change outputs, e.g. mode=combined.
    std::map<std::string, std::string> options;
    std::vector<InputFile> inputs;
    std::string started_utc;
    std::string finished_utc;
};

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

std::vector<InputFile> hash_inputs(const std::vector<std::filesystem::path>& paths);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

std::string manifest_to_json(const RunManifest& manifest);
RunManifest parse_manifest(const std::string& text, const std::string& origin);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// Throws ParseError when an input is missing or its content changed.
void verify_inputs(const RunManifest& manifest);

}  // namespace pinnfcg::app
