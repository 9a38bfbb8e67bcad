#pragma once

// On-disk formats. Every writer has a matching reader; doubles are written in
// shortest round-trip form so write-then-read returns the same bits.

#include "pinnfcg/fatigue_physics.hpp"
#include "pinnfcg/network.hpp"
#include "pinnfcg/physics_loss.hpp"
#include "pinnfcg/signal_prep.hpp"
#include "pinnfcg/synthetic_data.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pinnfcg::app {

namespace fs = std::filesystem;

inline constexpr std::string_view kCouponHeader = "cycle,frequency_hz";
inline constexpr std::string_view kPreparedHeader = "cycle,log10_sqrt_area,log10_stress,scaled_log10_cycle,frequency_drop";
inline constexpr std::string_view kLossHeader = "epoch,l_ic,l_bc,l_mon_a,l_mon_k,l_rss,total";
inline constexpr std::string_view kPredictionHeader = "cycle,delta_k,paris_c,paris_m,rate,crack_size";
inline constexpr std::string_view kFitsHeader = "dataset_id,C,m,r_squared,final_crack_mm";

inline constexpr std::string_view kMetaSuffix = ".meta.json";
inline constexpr std::string_view kTruthSuffix = ".truth.json";
inline constexpr std::string_view kPreparedSuffix = ".prepared.csv";
inline constexpr std::string_view kPreparedMetaSuffix = ".prepared.json";
inline constexpr std::string_view kModelSuffix = ".model.json";
inline constexpr std::string_view kLossSuffix = ".loss.csv";
inline constexpr std::string_view kPredictionSuffix = ".prediction.csv";
inline constexpr std::string_view kFitsFile = "fits_summary.csv";

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const fs::path& path, std::string_view content);
std::string read_file(const fs::path& path);

/// Ids become file stems, so only [A-Za-z0-9_.-] is accepted.
void require_valid_id(std::string_view id);

// Coupon record: <id>.csv + <id>.meta.json
void write_coupon(const fs::path& dir, const CouponDataset& dataset);
/// `meta_path` names the .meta.json file; the series is read from the sibling CSV.
CouponDataset read_coupon(const fs::path& meta_path);

void write_truth(const fs::path& dir, const std::string& id, const SyntheticTruth& truth);
SyntheticTruth read_truth(const fs::path& path);

// Prepared dataset: <id>.prepared.csv + <id>.prepared.json
void write_prepared(const fs::path& dir, const PreparedDataset& data);
/// `csv_path` names the .prepared.csv file.
PreparedDataset read_prepared(const fs::path& csv_path);

struct StoredModel {
    Network network;
    OutputScaling scaling;
    std::vector<std::string> dataset_ids;
};

void write_model(const fs::path& path, const StoredModel& model);
StoredModel read_model(const fs::path& path);

void write_loss_history(const fs::path& path, const std::vector<LossBreakdown>& history);
/// Rows come back with raw terms and totals; weights are not stored.
std::vector<LossBreakdown> read_loss_history(const fs::path& path);

void write_prediction(const fs::path& path, const CrackGrowthPrediction& prediction);
/// The fit member is left empty.
CrackGrowthPrediction read_prediction(const fs::path& path);

struct FitRow {
    std::string dataset_id;
    double coeff_c{0.0};
    double exponent_m{0.0};
    double r_squared{0.0};
    double final_crack_mm{0.0};

    bool operator==(const FitRow&) const = default;
};

void write_fits(const fs::path& path, const std::vector<FitRow>& rows);
std::vector<FitRow> read_fits(const fs::path& path);

/// Published constants as fit rows; r_squared and final size are NaN.
std::vector<FitRow> reference_fit_rows();

/// Files in `dir` whose names end with `suffix`, sorted by name.
std::vector<fs::path> list_with_suffix(const fs::path& dir, std::string_view suffix);

/// Expands one input argument: a file is returned as-is, a directory yields
/// its entries ending with `suffix`. Truth files are never returned.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& args, std::string_view suffix);

}  // namespace pinnfcg::app
