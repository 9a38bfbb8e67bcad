#pragma once

// The four pipeline commands. Each returns a summary and throws the library's
// exception types; the executable maps those to exit codes.

#include "pinnfcg/app/config.hpp"
#include "pinnfcg/app/formats.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pinnfcg::app {

enum class TrainMode { Individual, Combined };

TrainMode train_mode_from_string(std::string_view name);
std::string_view to_string(TrainMode mode);

struct GenerateOptions {
    std::optional<fs::path> config_path;
    fs::path out_dir;
    std::optional<std::size_t> count;
    std::optional<std::uint64_t> seed;
};

struct GenerateResult {
    std::vector<std::string> ids;
    std::size_t runouts{0};
};

/// Writes <id>.csv, <id>.meta.json and <id>.truth.json per coupon plus a manifest.
GenerateResult cmd_generate(const GenerateOptions& options);

struct PrepareOptions {
    std::vector<std::string> inputs;  ///< files, directories or name globs
    std::optional<fs::path> config_path;
    fs::path out_dir;
};

struct PrepareEntry {
    std::string id;
    bool runout{false};
    std::size_t raw_rows{0};
    std::size_t transition_index{0};
    std::size_t retained_rows{0};
    double sigma_w{0.0};
    double delta_k_th{0.0};
};

struct PrepareResult {
    std::vector<PrepareEntry> entries;
    std::vector<std::string> notices;
};

inline constexpr const char* kPrepReportFile = "prep_report.csv";

/// Prepares every coupon; runouts are skipped with a notice.
PrepareResult cmd_prepare(const PrepareOptions& options);

struct TrainOptions {
    std::vector<std::string> inputs;
    std::optional<fs::path> config_path;
    /// Replays a previous run: config, seed, mode and inputs come from here.
    std::optional<fs::path> manifest_path;
    fs::path out_dir;
    TrainMode mode{TrainMode::Individual};
    int jobs{1};
    bool reference_rows{false};
    std::optional<std::uint64_t> seed;
};

struct TrainResult {
    std::vector<FitRow> fits;
    std::vector<fs::path> models;
};

TrainResult cmd_train(const TrainOptions& options);

struct ReportOptions {
    fs::path run_dir;
    std::optional<fs::path> out_dir;  ///< defaults to run_dir
};

std::vector<fs::path> cmd_report(const ReportOptions& options);

}  // namespace pinnfcg::app
